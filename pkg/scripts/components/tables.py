"""Joint and observable probability tables, marginalization and the table JSON codec."""

import logging
import math
from collections.abc import Iterable, Sequence
from dataclasses import dataclass
from fractions import Fraction
from typing import Any

import numpy as np

from scripts.components.constants import FLOAT_SUM_TOLERANCE, FORMAT_TAG, SAMPLE_NUMERATOR_RANGE, ArithmeticMode
from scripts.components.errors import NetworkParseError, ShapeMismatchError

logger = logging.getLogger(__name__)


def _default_names(n: int) -> tuple[str, ...]:
    return tuple(f"X{i + 1}" for i in range(n))


@dataclass(frozen=True, eq=False)
class ProbabilityTable:
    """Dense row-major table of probabilities indexed by a full multi-index.

    Rational tables hold `Fraction` cells in an object array and must sum to
    exactly 1; float tables hold float64 cells summing to 1 within 1e-12.
    """

    names: tuple[str, ...]
    cards: tuple[int, ...]
    cells: np.ndarray
    mode: ArithmeticMode = ArithmeticMode.RATIONAL

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        object.__setattr__(self, "cards", tuple(int(c) for c in self.cards))
        object.__setattr__(self, "mode", ArithmeticMode(self.mode))

        if len(self.names) != len(self.cards):
            raise ShapeMismatchError(f"{len(self.names)} names for {len(self.cards)} cardinalities")

        if self.mode is ArithmeticMode.RATIONAL:
            cells = np.empty(self.cards, dtype=object)
            flat = np.asarray(self.cells, dtype=object).reshape(-1)
            if flat.size != math.prod(self.cards):
                raise ShapeMismatchError(f"{flat.size} cells do not fill shape {self.cards}")
            cells.reshape(-1)[:] = [_as_fraction(value) for value in flat]
        else:
            cells = np.asarray(self.cells, dtype=np.float64)
            if cells.size != math.prod(self.cards):
                raise ShapeMismatchError(f"{cells.size} cells do not fill shape {self.cards}")
            cells = cells.reshape(self.cards)
        cells.flags.writeable = False
        object.__setattr__(self, "cells", cells)

        if any(value < 0 for value in cells.reshape(-1)):
            raise ValueError("Probability table has negative entries")

        total = self.total()
        if self.mode is ArithmeticMode.RATIONAL:
            if total != 1:
                raise ValueError(f"Rational table sums to {total}, expected exactly 1")
        elif abs(total - 1.0) > FLOAT_SUM_TOLERANCE:
            raise ValueError(f"Float table sums to {total!r}, expected 1 within {FLOAT_SUM_TOLERANCE}")

    @property
    def ndim(self) -> int:
        return len(self.cards)

    def total(self):
        if self.mode is ArithmeticMode.RATIONAL:
            return sum(self.cells.reshape(-1), Fraction(0))
        return float(self.cells.sum())

    def cell(self, index: Sequence[int]):
        return self.cells[tuple(index)]

    def to_float(self):
        if self.mode is ArithmeticMode.FLOAT:
            return self
        values = np.array([float(v) for v in self.cells.reshape(-1)], dtype=np.float64)
        # Renormalize so float rounding never trips the sum check
        values = values / values.sum()
        return type(self)(self.names, self.cards, values.reshape(self.cards), ArithmeticMode.FLOAT)

    def __eq__(self, other) -> bool:
        if not isinstance(other, ProbabilityTable):
            return NotImplemented
        return (
            self.names == other.names
            and self.cards == other.cards
            and self.mode == other.mode
            and bool(np.array_equal(self.cells, other.cells))
        )

    def __hash__(self):
        return hash((self.names, self.cards, self.mode, tuple(self.cells.reshape(-1))))


class JointTable(ProbabilityTable):
    """Table θ_x over every node of a network."""


class ObservableTable(ProbabilityTable):
    """Table over observed nodes only."""


def _as_fraction(value: Any) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise ValueError(f"Boolean is not a probability: {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    if isinstance(value, float):
        raise ValueError(f"Float cell {value!r} in a rational table")
    return Fraction(value)


def marginalize(table: ProbabilityTable, hidden_positions: Iterable[int]) -> ObservableTable:
    """Sum a joint table over the given node positions.

    Args:
        table: Joint table over all nodes
        hidden_positions: Node positions to sum out

    Returns:
        ObservableTable over the remaining positions, in their original order
    """
    hidden = sorted(set(hidden_positions))
    invalid = [pos for pos in hidden if not 0 <= pos < table.ndim]
    if invalid:
        raise ValueError(f"Hidden positions {invalid} out of range for a {table.ndim}-way table")

    keep = [pos for pos in range(table.ndim) if pos not in hidden]
    if hidden:
        cells = np.sum(table.cells, axis=tuple(hidden))
    else:
        cells = table.cells

    return ObservableTable(
        names=tuple(table.names[pos] for pos in keep),
        cards=tuple(table.cards[pos] for pos in keep),
        cells=np.asarray(cells, dtype=table.cells.dtype).reshape([table.cards[pos] for pos in keep]),
        mode=table.mode,
    )


def univariate_marginals(table: ProbabilityTable) -> list[np.ndarray]:
    """One marginal vector per position."""
    marginals = []
    for pos in range(table.ndim):
        others = tuple(axis for axis in range(table.ndim) if axis != pos)
        marginals.append(np.sum(table.cells, axis=others) if others else table.cells.copy())
    return marginals


def uniform_table(
    cards: Sequence[int], mode: ArithmeticMode = ArithmeticMode.RATIONAL, names: Sequence[str] | None = None
) -> ObservableTable:
    n_cells = math.prod(cards)
    value = Fraction(1, n_cells) if mode is ArithmeticMode.RATIONAL else 1.0 / n_cells
    cells = np.full(tuple(cards), value, dtype=object if mode is ArithmeticMode.RATIONAL else np.float64)
    return ObservableTable(tuple(names or _default_names(len(cards))), tuple(cards), cells, mode)


def random_simplex_table(
    cards: Sequence[int],
    seed: int,
    mode: ArithmeticMode = ArithmeticMode.RATIONAL,
    names: Sequence[str] | None = None,
) -> ObservableTable:
    """Random strictly positive table; numerators uniform in 1..1000, then normalized."""
    rng = np.random.default_rng(seed)
    low, high = SAMPLE_NUMERATOR_RANGE
    numerators = [int(v) for v in rng.integers(low, high + 1, size=math.prod(cards))]
    total = sum(numerators)
    if mode is ArithmeticMode.RATIONAL:
        values = np.array([Fraction(v, total) for v in numerators], dtype=object)
    else:
        values = np.array(numerators, dtype=np.float64) / total
    return ObservableTable(tuple(names or _default_names(len(cards))), tuple(cards), values.reshape(cards), mode)


def product_table(
    marginals: Sequence[Sequence[Any]],
    mode: ArithmeticMode = ArithmeticMode.RATIONAL,
    names: Sequence[str] | None = None,
) -> ObservableTable:
    """Table of mutually independent variables with the given univariate marginals."""
    cards = tuple(len(m) for m in marginals)
    if mode is ArithmeticMode.RATIONAL:
        cells = np.array([Fraction(1)], dtype=object).reshape(())
        for marginal in marginals:
            cells = np.multiply.outer(cells, np.array([_as_fraction(v) for v in marginal], dtype=object))
    else:
        cells = np.array(1.0)
        for marginal in marginals:
            cells = np.multiply.outer(cells, np.asarray(marginal, dtype=np.float64))
    return ObservableTable(tuple(names or _default_names(len(cards))), cards, cells, mode)


def mix_tables(first: ProbabilityTable, second: ProbabilityTable, weight) -> ObservableTable:
    """Convex combination (1 - weight) * first + weight * second."""
    if first.cards != second.cards:
        raise ShapeMismatchError(f"Cannot mix tables of shapes {first.cards} and {second.cards}")
    exact = (
        first.mode is ArithmeticMode.RATIONAL
        and second.mode is ArithmeticMode.RATIONAL
        and isinstance(weight, (int, Fraction))
    )
    if exact:
        cells = (1 - weight) * first.cells + weight * second.cells
        return ObservableTable(first.names, first.cards, cells, ArithmeticMode.RATIONAL)

    a, b = first.to_float().cells, second.to_float().cells
    cells = (1.0 - float(weight)) * a + float(weight) * b
    return ObservableTable(first.names, first.cards, cells / cells.sum(), ArithmeticMode.FLOAT)


def format_rational(value: Fraction) -> str:
    value = Fraction(value)
    return f"{value.numerator}/{value.denominator}"


def table_to_dict(table: ProbabilityTable) -> dict[str, Any]:
    flat = table.cells.reshape(-1)
    if table.mode is ArithmeticMode.RATIONAL:
        cells = [format_rational(value) for value in flat]
    else:
        cells = [float(value) for value in flat]
    return {
        "format": FORMAT_TAG,
        "mode": table.mode.value,
        "cards": list(table.cards),
        "observed": list(table.names),
        "cells": cells,
    }


def table_from_dict(doc: dict[str, Any]) -> ObservableTable:
    """Decode a table document; mode comes from 'mode' or from the cell types."""
    if not isinstance(doc, dict):
        raise NetworkParseError("Table document must be a JSON object")
    fmt = doc.get("format")
    if fmt is not None and fmt != FORMAT_TAG:
        raise NetworkParseError(f"Unsupported format '{fmt}' (expected {FORMAT_TAG})")

    try:
        cards = [int(c) for c in doc["cards"]]
        cells = list(doc["cells"])
    except (KeyError, TypeError, ValueError) as e:
        raise NetworkParseError(f"Table document needs 'cards' and 'cells': {e}") from e

    names = doc.get("observed") or list(_default_names(len(cards)))
    if "mode" in doc:
        mode = ArithmeticMode(doc["mode"])
    else:
        mode = ArithmeticMode.RATIONAL if all(isinstance(c, str) for c in cells) else ArithmeticMode.FLOAT

    try:
        if mode is ArithmeticMode.RATIONAL:
            values = np.array([Fraction(str(c)) for c in cells], dtype=object)
        else:
            values = np.array([float(Fraction(c)) if isinstance(c, str) else float(c) for c in cells])
    except (ValueError, ZeroDivisionError) as e:
        raise NetworkParseError(f"Invalid table cell: {e}") from e

    if values.size != math.prod(cards):
        raise ShapeMismatchError(f"{values.size} cells do not fill shape {tuple(cards)}")

    return ObservableTable(tuple(names), tuple(cards), values.reshape(cards), mode)
