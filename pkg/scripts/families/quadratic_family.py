"""Quadratic constraints: rank-one slices of a table with one hidden variable summed out."""

import logging
from collections.abc import Sequence

import numpy as np

from scripts.components.constants import ConstraintFamily
from scripts.components.errors import ShapeMismatchError
from scripts.components.polynomial import Polynomial
from scripts.components.tables import JointTable, ProbabilityTable
from scripts.dimension.rank import exact_rank
from scripts.families.base_family import HiddenTripleFamily
from scripts.families.constraint_set import ConstraintSet, minors

logger = logging.getLogger(__name__)


def _check_cards(cards: Sequence[int], hidden_card: int) -> tuple[int, int, int]:
    if len(cards) != 3:
        raise ShapeMismatchError(f"Expected three observed cardinalities, got {tuple(cards)}")
    if hidden_card < 2 or any(c < 2 for c in cards):
        raise ShapeMismatchError(f"Cardinalities must be >= 2, got {tuple(cards)} with hidden {hidden_card}")
    return tuple(cards)


def quadratic_family_constraints(cards: Sequence[int], hidden_card: int) -> ConstraintSet:
    """2×2 minors of the r_2 matrices A_{j+} with (i, k) entry θ_{ijk+}."""
    r1, r2, r3 = _check_cards(cards, hidden_card)
    labelled = []
    for j in range(r2):
        matrix = [[Polynomial.variable((i, j, k)) for k in range(r3)] for i in range(r1)]
        for rows, cols, minor in minors(matrix, 2):
            labelled.append((f"slice X2={j}; rows {list(rows)}; cols {list(cols)}", minor))

    cs = ConstraintSet.build(ConstraintFamily.QUADRATIC_5_1, 2, (r1, r2, r3), labelled)
    logger.info(f"Generated {len(cs)} quadratic constraints for observed {(r1, r2, r3)}")
    return cs


def quadratic_family_dimension(r1: int, r2: int, r3: int) -> int:
    """Join of r_2 Segre varieties P^{r_1-1} x P^{r_3-1}, simplex convention."""
    return r2 * (r1 + r3 - 1) - 1


def lift_quadratic_table(table: ProbabilityTable, hidden_card: int) -> JointTable:
    """Spread an observable table uniformly over a hidden fourth coordinate: P_ijkl = p_ijk / r_4."""
    if table.ndim != 3:
        raise ShapeMismatchError(f"Lift needs a three-way table, got shape {table.cards}")
    cells = np.repeat(table.cells[..., np.newaxis], hidden_card, axis=3)
    if table.cells.dtype == object:
        cells = np.vectorize(lambda value: value / hidden_card, otypes=[object])(cells)
    else:
        cells = cells / hidden_card
    return JointTable((*table.names, "X4"), (*table.cards, hidden_card), cells, table.mode)


def slice_flattening_ranks(joint: ProbabilityTable) -> list[int]:
    """Exact rank of each X2-slice flattened to rows X1 and columns (X3, X4)."""
    r1, r2, r3, r4 = joint.cards
    ranks = []
    for j in range(r2):
        flattened = joint.cells[:, j, :, :].reshape(r1, r3 * r4)
        ranks.append(exact_rank(flattened.tolist()))
    return ranks


class QuadraticFamily(HiddenTripleFamily):
    family = ConstraintFamily.QUADRATIC_5_1
    degree = 2
    # X1 ⊥ {X3, X4} | X2
    MODEL_PARENTS = {"X1": ("X2",), "X3": ("X2",), "X4": ("X2", "X3")}

    def generate(self) -> ConstraintSet:
        return quadratic_family_constraints(self.observed_cards, self.hidden_card)

    @classmethod
    def formula_dimension(cls, cards: Sequence[int], hidden_card: int) -> int:
        return quadratic_family_dimension(*cards)
