"""Exact and numeric matrix rank."""

import logging
import math
from collections.abc import Sequence
from fractions import Fraction

import numpy as np
from scipy.linalg import svdvals

from scripts.components.constants import NUMERIC_RANK_RTOL

logger = logging.getLogger(__name__)


def _integer_rows(matrix: Sequence[Sequence]) -> list[list[int]]:
    """Scale every row by the lcm of its denominators so Bareiss stays in the integers."""
    rows = []
    for row in matrix:
        fractions = [Fraction(value) for value in row]
        scale = math.lcm(*(f.denominator for f in fractions)) if fractions else 1
        rows.append([int(f * scale) for f in fractions])
    return rows


def exact_rank(matrix: Sequence[Sequence] | np.ndarray) -> int:
    """Rank over Q by fraction-free (Bareiss) elimination.

    Float entries are converted with Fraction(float), so the result is the
    exact rank of the binary values, not a tolerance-based one.
    """
    rows = _integer_rows(np.asarray(matrix, dtype=object).tolist() if isinstance(matrix, np.ndarray) else matrix)
    if not rows or not rows[0]:
        return 0

    n_rows, n_cols = len(rows), len(rows[0])
    rank = 0
    prev = 1
    for col in range(n_cols):
        if rank == n_rows:
            break
        pivot = next((r for r in range(rank, n_rows) if rows[r][col] != 0), None)
        if pivot is None:
            continue
        rows[rank], rows[pivot] = rows[pivot], rows[rank]

        pivot_value = rows[rank][col]
        for r in range(rank + 1, n_rows):
            factor = rows[r][col]
            for c in range(col + 1, n_cols):
                # Sylvester's identity keeps this division exact
                rows[r][c] = (pivot_value * rows[r][c] - factor * rows[rank][c]) // prev
            rows[r][col] = 0
        prev = pivot_value
        rank += 1

    return rank


def numeric_rank(matrix: Sequence[Sequence] | np.ndarray, rtol: float = NUMERIC_RANK_RTOL) -> int:
    """Count singular values above rtol · σ_max; 0 for an empty or zero matrix."""
    values = np.asarray(matrix, dtype=np.float64)
    if values.size == 0:
        return 0
    singular = svdvals(np.atleast_2d(values))
    top = float(singular.max(initial=0.0))
    if top == 0.0:
        return 0
    return int(np.sum(singular > top * rtol))
