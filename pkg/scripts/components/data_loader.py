"""Loading and writing the JSON documents exchanged by the CLI."""

import json
import logging
import tempfile
from pathlib import Path
from typing import Any

from scripts.components.errors import NetworkParseError
from scripts.components.network import NetworkSpec, parse_network
from scripts.components.tables import ObservableTable, table_from_dict, table_to_dict

logger = logging.getLogger(__name__)


def dump_json(doc: dict[str, Any]) -> str:
    """Canonical document text: two-space indent, trailing newline."""
    return json.dumps(doc, indent=2) + "\n"


def read_text(path: Path) -> str:
    path = Path(path)
    if not path.exists():
        raise NetworkParseError(f"File not found: {path}")
    with open(path, encoding="utf-8") as f:
        return f.read()


def load_json_document(path: Path) -> dict[str, Any]:
    """Parse a JSON object from `path`.

    Raises:
        NetworkParseError: if the file is missing, is not JSON or is not an object
    """
    text = read_text(path)
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise NetworkParseError(f"Malformed JSON in {path}: {e}") from e
    if not isinstance(doc, dict):
        raise NetworkParseError(f"Expected a JSON object in {path}")
    logger.debug(f"Loaded document from {Path(path).name}")
    return doc


def load_network(path: Path) -> NetworkSpec:
    net = parse_network(read_text(path))
    logger.info(f"Loaded network with {len(net.nodes)} nodes ({len(net.hidden)} hidden) from {Path(path).name}")
    return net


def load_table(path: Path) -> ObservableTable:
    return table_from_dict(load_json_document(path))


def write_text_atomic(text: str, path: Path) -> None:
    """Write through a uniquely named sibling temporary file and rename over `path`."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    handle = tempfile.NamedTemporaryFile(
        "w", encoding="utf-8", dir=path.parent, prefix=f".{path.name}.", suffix=".tmp", delete=False
    )
    tmp = Path(handle.name)
    try:
        with handle as f:
            f.write(text)
        tmp.replace(path)
    finally:
        # no-op after a successful rename
        tmp.unlink(missing_ok=True)


def write_json_document(doc: dict[str, Any], path: Path) -> None:
    write_text_atomic(dump_json(doc), path)
    logger.info(f"Wrote {Path(path)}")


def write_table(table: ObservableTable, path: Path) -> None:
    write_json_document(table_to_dict(table), path)
