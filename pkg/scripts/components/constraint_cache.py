"""On-disk cache of generated constraint set documents."""

import hashlib
import json
import logging
import os
from collections.abc import Callable
from pathlib import Path

from dotenv import load_dotenv

from scripts.components.constants import CACHE_ENV_VAR
from scripts.components.data_loader import read_text, write_text_atomic
from scripts.components.network import NetworkSpec, network_digest

logger = logging.getLogger(__name__)


def resolve_cache_dir(flag_dir: str | Path | None, config_dir: str | Path | None = None) -> Path | None:
    """BNALG_CACHE (from the environment or a .env file) wins over the flag, the flag over config."""
    load_dotenv()
    chosen = os.getenv(CACHE_ENV_VAR) or flag_dir or config_dir
    return Path(chosen) if chosen else None


class ConstraintCache:
    """Constraint set JSON keyed by network content, family tag and generator options."""

    def __init__(self, cache_dir: Path, enabled: bool = True):
        self.cache_dir = Path(cache_dir)
        self.enabled = enabled
        self.hits = 0
        self.misses = 0

    @staticmethod
    def key(net: NetworkSpec, family: str, options: dict | None = None) -> str:
        payload = json.dumps(
            {"network": network_digest(net), "family": family, "options": options or {}},
            sort_keys=True,
            default=str,
        )
        return hashlib.sha256(payload.encode("utf-8")).hexdigest()

    def path_for(self, key: str) -> Path:
        return self.cache_dir / f"{key}.json"

    def get(self, key: str) -> str | None:
        if not self.enabled:
            return None
        path = self.path_for(key)
        if not path.exists():
            return None
        logger.debug(f"Cache hit {key[:12]}")
        return read_text(path)

    def put(self, key: str, text: str) -> None:
        if self.enabled:
            write_text_atomic(text, self.path_for(key))

    def get_or_create(self, key: str, generate: Callable[[], str]) -> str:
        """Return the cached document text, generating and storing it on a miss."""
        cached = self.get(key)
        if cached is not None:
            self.hits += 1
            return cached
        self.misses += 1
        text = generate()
        self.put(key, text)
        logger.info(f"Cached constraint set {key[:12]} in {self.cache_dir}")
        return text
