"""Vanishing and fit checks of constraint sets against observable tables."""

import logging
from collections.abc import Iterable
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any

import numpy as np
from tqdm import tqdm

from scripts.components.constants import DEFAULT_VANISHING_TOL, FORMAT_TAG, ArithmeticMode
from scripts.components.errors import ShapeMismatchError
from scripts.components.network import NetworkSpec
from scripts.components.parameters import forward_map, sample_parameters
from scripts.components.polynomial import evaluate
from scripts.components.tables import (
    ProbabilityTable,
    marginalize,
    random_simplex_table,
    univariate_marginals,
)
from scripts.families.constraint_set import ConstraintSet

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class Residual:
    index: int
    residual: Fraction | float
    vanishes: bool

    def to_dict(self) -> dict[str, Any]:
        value = str(self.residual) if isinstance(self.residual, Fraction) else float(self.residual)
        return {"index": self.index, "residual": value, "vanishes": self.vanishes}


@dataclass(frozen=True)
class VanishingReport:
    family: str
    mode: ArithmeticMode
    tol: float
    residuals: tuple[Residual, ...]
    fit: float = 0.0

    @property
    def all_vanish(self) -> bool:
        return all(r.vanishes for r in self.residuals)

    @property
    def nonvanishing(self) -> list[int]:
        return [r.index for r in self.residuals if not r.vanishes]

    def to_dict(self) -> dict[str, Any]:
        return {
            "format": FORMAT_TAG,
            "family": self.family,
            "mode": self.mode.value,
            "tol": self.tol,
            "all_vanish": self.all_vanish,
            "fit": self.fit,
            "residuals": [r.to_dict() for r in self.residuals],
        }


def _check_shape(cs: ConstraintSet, table: ProbabilityTable) -> None:
    if cs.cards and tuple(cs.cards) != tuple(table.cards):
        raise ShapeMismatchError(f"Constraints live on shape {cs.cards}, table has shape {table.cards}")


def _normalized_residual(poly, table: ProbabilityTable) -> float:
    return abs(float(evaluate(poly, table))) / float(poly.coefficient_norm())


def check_vanishing(
    cs: ConstraintSet,
    table: ProbabilityTable,
    mode: ArithmeticMode = ArithmeticMode.RATIONAL,
    tol: float = DEFAULT_VANISHING_TOL,
) -> VanishingReport:
    """Evaluate every generator on `table`.

    Rational mode needs a rational table and means exactly zero. Float mode
    compares |p(θ)| / ‖p‖_1 with `tol`.
    """
    mode = ArithmeticMode(mode)
    _check_shape(cs, table)

    residuals = []
    if mode is ArithmeticMode.RATIONAL:
        if table.mode is not ArithmeticMode.RATIONAL:
            raise ValueError("Rational vanishing check needs a rational table")
        for idx, poly in enumerate(cs.polynomials):
            value = evaluate(poly, table)
            residuals.append(Residual(idx, value, value == 0))
    else:
        float_table = table.to_float()
        for idx, poly in enumerate(cs.polynomials):
            value = float(evaluate(poly, float_table))
            residuals.append(Residual(idx, value, abs(value) / float(poly.coefficient_norm()) <= tol))

    report = VanishingReport(cs.family.value, mode, tol, tuple(residuals), fit_statistic(cs, table))
    logger.debug(f"{cs.family.value}: {len(residuals) - len(report.nonvanishing)}/{len(residuals)} vanish")
    return report


def fit_statistic(cs: ConstraintSet, table: ProbabilityTable) -> float:
    """Max over generators of |p(θ)| / ‖p‖_1 on the float image of `table`; 0 for an empty set."""
    _check_shape(cs, table)
    float_table = table.to_float()
    return max((_normalized_residual(poly, float_table) for poly in cs.polynomials), default=0.0)


def complete_independence_test(table: ProbabilityTable, tol: float = DEFAULT_VANISHING_TOL) -> bool:
    """True iff every cell equals the product of its univariate marginals (exactly for rational tables)."""
    expected = None
    for marginal in univariate_marginals(table):
        expected = marginal if expected is None else np.multiply.outer(expected, marginal)
    if expected is None:
        return True

    if table.mode is ArithmeticMode.RATIONAL:
        return bool(np.all(expected == table.cells))
    return float(np.max(np.abs(np.asarray(expected, dtype=np.float64) - table.cells))) <= tol


@dataclass
class SweepResult:
    samples: int = 0
    passed: int = 0
    failing_seeds: list[int] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        return self.samples == self.passed


def vanishing_sweep(
    cs: ConstraintSet, net: NetworkSpec, seeds: Iterable[int], show_progress: bool = False
) -> SweepResult:
    """Sample model distributions of `net` and check that every generator vanishes exactly."""
    result = SweepResult()
    for seed in tqdm(list(seeds), desc=f"{cs.family.value} vanishing", disable=not show_progress):
        params = sample_parameters(net, seed, ArithmeticMode.RATIONAL)
        table = marginalize(forward_map(net, params), net.hidden)
        result.samples += 1
        if check_vanishing(cs, table).all_vanish:
            result.passed += 1
        else:
            result.failing_seeds.append(seed)

    if result.failing_seeds:
        logger.warning(f"{cs.family.value}: generators failed to vanish for seeds {result.failing_seeds}")
    return result


def genericity_sweep(cs: ConstraintSet, seeds: Iterable[int], show_progress: bool = False) -> SweepResult:
    """Count random simplex tables on which at least one generator is nonzero."""
    result = SweepResult()
    for seed in tqdm(list(seeds), desc=f"{cs.family.value} genericity", disable=not show_progress):
        table = random_simplex_table(cs.cards, seed)
        result.samples += 1
        if not check_vanishing(cs, table).all_vanish:
            result.passed += 1
        else:
            result.failing_seeds.append(seed)
    return result
