"""
bnalg command-line front end

Parses networks, reports dimensions, generates constraint sets, checks them
against observable tables and samples model distributions. Every command
prints (or writes) a JSON document tagged "format": "bnalg-v1"; logs go to
standard error.

Usage:
    bnalg dim networks/nb_2_33.json --seed 1,2,3
    bnalg constraints networks/sextic.json --family SEXTIC_5_3 --out sextic.json
    bnalg check sextic.json table.json --mode rational
    bnalg sample networks/sextic.json --seed 7 --out table.json
    bnalg classify 3 2 2 4
    bnalg dsep networks/chain.json --statement "X2|X3|X1"
"""

import argparse
import logging
import sys
from collections.abc import Sequence
from dataclasses import dataclass, field
from datetime import datetime
from pathlib import Path

import yaml

from scripts.components.constants import (
    DEFAULT_SEEDS,
    DEFAULT_VANISHING_TOL,
    EXIT_INTERNAL_ERROR,
    EXIT_NONVANISHING,
    EXIT_OK,
    EXIT_PARSE_ERROR,
    EXIT_RANK_DISAGREEMENT,
    EXIT_SHAPE_MISMATCH,
    FORMAT_TAG,
    ArithmeticMode,
    ConstraintFamily,
)
from scripts.components.constraint_cache import ConstraintCache, resolve_cache_dir
from scripts.components.data_loader import dump_json, load_json_document, load_network, load_table, write_text_atomic
from scripts.components.errors import (
    InvariantViolationError,
    NetworkParseError,
    RankDisagreementError,
    ShapeMismatchError,
)
from scripts.components.network import d_separated, parse_statement
from scripts.components.parameters import forward_map, sample_parameters
from scripts.components.tables import marginalize, table_to_dict
from scripts.dimension.naive_bayes import (
    NaiveBayesSpec,
    classify_catalisano,
    dp_bound,
    expected_dimension,
    naive_bayes_complete_dimension,
    naive_bayes_standard_dimension,
)
from scripts.dimension.report import dimension_report
from scripts.families.constraint_set import ConstraintSet
from scripts.families.family_registry import FamilyRegistry
from scripts.families.vanishing import check_vanishing

logger = logging.getLogger(__name__)

DEFAULT_CONFIG = Path("configs/bnalg_config.yaml")


@dataclass
class CommandConfig:
    """Settings for one invocation: config file values overridden by flags."""

    command: str
    inputs: list[Path] = field(default_factory=list)
    seeds: tuple[int, ...] = DEFAULT_SEEDS
    mode: ArithmeticMode = ArithmeticMode.RATIONAL
    tol: float = DEFAULT_VANISHING_TOL
    out: Path | None = None
    cache_dir: Path | None = None
    cache_enabled: bool = True
    n_workers: int = 1

    def __post_init__(self):
        self.mode = ArithmeticMode(self.mode)
        if self.tol <= 0:
            raise ValueError(f"Tolerance must be positive, got {self.tol}")
        if not self.seeds:
            raise ValueError("At least one seed is required")
        if self.n_workers < 1:
            raise ValueError(f"n_workers must be >= 1, got {self.n_workers}")

    @classmethod
    def from_args(cls, args: argparse.Namespace, config: dict) -> "CommandConfig":
        sampling = config.get("sampling", {})
        cache = config.get("cache", {})

        if getattr(args, "seed", None):
            seeds = parse_seeds(args.seed)
        else:
            seeds = tuple(int(s) for s in sampling.get("seeds", DEFAULT_SEEDS))
        tol = args.tol if getattr(args, "tol", None) is not None else config.get("vanishing", {}).get("tol")
        workers = getattr(args, "workers", None) or config.get("dimension", {}).get("n_workers", 1)

        return cls(
            command=args.command,
            inputs=[Path(p) for p in getattr(args, "inputs", [])],
            seeds=seeds,
            mode=getattr(args, "mode", None) or sampling.get("mode", ArithmeticMode.RATIONAL.value),
            tol=float(tol if tol is not None else DEFAULT_VANISHING_TOL),
            out=getattr(args, "out", None),
            cache_dir=resolve_cache_dir(getattr(args, "cache", None), cache.get("dir")),
            cache_enabled=cache.get("enabled", True) and not getattr(args, "no_cache", False),
            n_workers=int(workers),
        )


def parse_seeds(text: str) -> tuple[int, ...]:
    """Parse "1,2,3" into (1, 2, 3)."""
    try:
        seeds = tuple(int(part) for part in text.split(",") if part.strip())
    except ValueError as e:
        raise ValueError(f"Seeds must be comma-separated integers, got '{text}'") from e
    if not seeds:
        raise ValueError("At least one seed is required")
    return seeds


def _setup_logging(config: dict) -> None:
    """Configure the root logger from the `logging` section; stdout stays reserved for JSON."""
    log_config = config.get("logging", {})
    level = getattr(logging, str(log_config.get("level", "INFO")).upper(), logging.INFO)

    handlers: list[logging.Handler] = []
    if log_config.get("console_output", True):
        handlers.append(logging.StreamHandler(sys.stderr))

    log_file_template = log_config.get("log_file")
    if log_file_template:
        timestamp = datetime.now().strftime("%Y%m%d_%H%M%S")
        log_path = Path(log_file_template.format(timestamp=timestamp))
        log_path.parent.mkdir(parents=True, exist_ok=True)
        handlers.append(logging.FileHandler(log_path))

    if not handlers:
        handlers.append(logging.NullHandler())

    logging.basicConfig(
        level=level,
        format="%(asctime)s - %(name)s - %(levelname)s - %(message)s",
        handlers=handlers,
        force=True,
    )


def load_config(path: Path) -> dict:
    if not path.exists():
        if path == DEFAULT_CONFIG:
            return {}
        raise NetworkParseError(f"Config file not found: {path}")
    with open(path) as f:
        try:
            return yaml.safe_load(f) or {}
        except yaml.YAMLError as e:
            raise NetworkParseError(f"Malformed config file {path}: {e}") from e


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        write_text_atomic(text, out)
        logger.info(f"Wrote {out}")


def cmd_dim(cfg: CommandConfig) -> int:
    net = load_network(cfg.inputs[0])
    report = dimension_report(net, cfg.seeds, cfg.n_workers)
    _emit(dump_json(report.to_dict()), cfg.out)
    return EXIT_OK


def cmd_constraints(cfg: CommandConfig, family: str, options: dict) -> int:
    net = load_network(cfg.inputs[0])
    generator = FamilyRegistry.create(family, net, **options)

    def generate() -> str:
        return generator.constraints.to_json()

    if cfg.cache_dir is not None and cfg.cache_enabled:
        cache = ConstraintCache(cfg.cache_dir)
        key = ConstraintCache.key(net, generator.family.value, generator.cache_options())
        text = cache.get_or_create(key, generate)
    else:
        text = generate()

    _emit(text, cfg.out)
    return EXIT_OK


def cmd_check(cfg: CommandConfig) -> int:
    constraints_path, table_path = cfg.inputs
    cs = ConstraintSet.from_dict(load_json_document(constraints_path))
    table = load_table(table_path)

    mode = cfg.mode
    if mode is ArithmeticMode.RATIONAL and table.mode is not ArithmeticMode.RATIONAL:
        logger.warning("Table holds float cells; checking in float mode")
        mode = ArithmeticMode.FLOAT

    report = check_vanishing(cs, table, mode, cfg.tol)
    _emit(dump_json(report.to_dict()), cfg.out)
    if not report.all_vanish:
        logger.info(f"{len(report.nonvanishing)} of {len(report.residuals)} generators do not vanish")
        return EXIT_NONVANISHING
    return EXIT_OK


def cmd_sample(cfg: CommandConfig) -> int:
    net = load_network(cfg.inputs[0])
    seed = cfg.seeds[0]
    params = sample_parameters(net, seed, cfg.mode)
    table = marginalize(forward_map(net, params), net.hidden)
    logger.info(f"Sampled observable table of shape {table.cards} from seed {seed}")
    _emit(dump_json(table_to_dict(table)), cfg.out)
    return EXIT_OK


def cmd_classify(cfg: CommandConfig, values: Sequence[str]) -> int:
    try:
        nb = NaiveBayesSpec.parse(values)
    except ValueError as e:
        raise NetworkParseError(str(e)) from e

    verdict = classify_catalisano(nb)
    doc = {
        "format": FORMAT_TAG,
        "model": nb.label,
        "classification": verdict.classification.value,
        "rule": verdict.rule,
        "value": verdict.value,
        "complete": naive_bayes_complete_dimension(nb),
        "standard": naive_bayes_standard_dimension(nb),
        "expected": expected_dimension(nb),
        "dp": dp_bound(nb),
    }
    _emit(dump_json(doc), cfg.out)
    return EXIT_OK


def cmd_dsep(cfg: CommandConfig, statement: str) -> int:
    net = load_network(cfg.inputs[0])
    try:
        stmt = parse_statement(net, statement)
    except ValueError as e:
        raise NetworkParseError(str(e)) from e
    doc = {"format": FORMAT_TAG, "statement": stmt.label(net), "separated": d_separated(net, stmt)}
    _emit(dump_json(doc), cfg.out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bnalg",
        description="Algebraic toolkit for Bayesian networks with hidden variables",
        formatter_class=argparse.RawDescriptionHelpFormatter,
        epilog="""
Exit codes:
  0  success, or every generator vanishes
  1  some generator does not vanish
  2  parse error
  3  exact and numeric ranks disagree
  4  shape or family mismatch
  5  internal error or violated invariant
        """,
    )
    parser.add_argument(
        "--config",
        type=Path,
        default=DEFAULT_CONFIG,
        help="Path to configuration file",
    )
    subparsers = parser.add_subparsers(dest="command", required=True)

    dim = subparsers.add_parser("dim", help="Dimension report for a network")
    dim.add_argument("inputs", nargs=1, metavar="NETWORK")
    dim.add_argument("--seed", help="Comma-separated seeds, e.g. 1,2,3")
    dim.add_argument("--workers", type=int, help="Process pool size for per-seed ranks")
    dim.add_argument("--out", type=Path, help="Write the report here instead of stdout")

    constraints = subparsers.add_parser("constraints", help="Generate a constraint set")
    constraints.add_argument("inputs", nargs=1, metavar="NETWORK")
    constraints.add_argument("--family", required=True, type=str.upper, choices=[f.value for f in ConstraintFamily])
    constraints.add_argument("--statement", help='CI_MINORS statement "A|B|C" with comma-separated node names')
    constraints.add_argument("--conjectural", action="store_true", help="SEXTIC_5_3 on r_1 > 2 (not known to vanish)")
    constraints.add_argument("--out", type=Path, help="Write the constraint set here instead of stdout")
    constraints.add_argument("--cache", type=Path, help="Cache directory (BNALG_CACHE takes precedence)")
    constraints.add_argument("--no-cache", action="store_true", help="Skip the constraint cache")

    check = subparsers.add_parser("check", help="Check a constraint set against a table")
    check.add_argument("inputs", nargs=2, metavar=("CONSTRAINTS", "TABLE"))
    check.add_argument("--mode", choices=[m.value for m in ArithmeticMode])
    check.add_argument("--tol", type=float, help="Float-mode tolerance on |p(t)| / ||p||_1")
    check.add_argument("--out", type=Path, help="Write the report here instead of stdout")

    sample = subparsers.add_parser("sample", help="Sample an observable table from a network")
    sample.add_argument("inputs", nargs=1, metavar="NETWORK")
    sample.add_argument("--seed", help="Seed; the first of a comma-separated list is used")
    sample.add_argument("--mode", choices=[m.value for m in ArithmeticMode])
    sample.add_argument("--out", type=Path, help="Write the table here instead of stdout")

    classify = subparsers.add_parser("classify", help="Classify a naive Bayes model (r : r_1 ... r_n)")
    classify.add_argument("values", nargs="+", metavar="N")
    classify.add_argument("--out", type=Path, help="Write the verdict here instead of stdout")

    dsep = subparsers.add_parser("dsep", help="Test a d-separation statement")
    dsep.add_argument("inputs", nargs=1, metavar="NETWORK")
    dsep.add_argument("--statement", required=True, help='"A|B|C" with comma-separated node names')
    dsep.add_argument("--out", type=Path, help="Write the answer here instead of stdout")

    return parser


def run(args: argparse.Namespace, config: dict) -> int:
    cfg = CommandConfig.from_args(args, config)
    if args.command == "dim":
        return cmd_dim(cfg)
    if args.command == "constraints":
        options = {}
        if args.statement:
            options["statement"] = args.statement
        if args.conjectural:
            options["conjectural"] = True
        return cmd_constraints(cfg, args.family, options)
    if args.command == "check":
        return cmd_check(cfg)
    if args.command == "sample":
        return cmd_sample(cfg)
    if args.command == "classify":
        return cmd_classify(cfg, args.values)
    return cmd_dsep(cfg, args.statement)


def main(argv: Sequence[str] | None = None) -> int:
    """Main entry point; returns the process exit code."""
    args = build_parser().parse_args(argv)

    try:
        config = load_config(args.config)
    except NetworkParseError as e:
        print(f"Error: {e}", file=sys.stderr)
        return EXIT_PARSE_ERROR
    _setup_logging(config)

    try:
        return run(args, config)
    except NetworkParseError as e:
        logger.error(f"Parse error: {e}")
        return EXIT_PARSE_ERROR
    except ShapeMismatchError as e:
        logger.error(f"Shape mismatch: {e}")
        return EXIT_SHAPE_MISMATCH
    except RankDisagreementError as e:
        logger.error(str(e))
        return EXIT_RANK_DISAGREEMENT
    except InvariantViolationError as e:
        logger.error(f"Invariant violated: {e}")
        return EXIT_INTERNAL_ERROR
    except ValueError as e:
        logger.error(f"Invalid argument: {e}")
        return EXIT_PARSE_ERROR
    except Exception as e:
        logger.error(f"Fatal error: {e}", exc_info=True)
        return EXIT_INTERNAL_ERROR


if __name__ == "__main__":
    sys.exit(main())
