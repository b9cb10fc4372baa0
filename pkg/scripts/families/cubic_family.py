"""Cubic constraints: rank-two slices when a binary hidden variable is summed out."""

import logging
from collections.abc import Sequence

from scripts.components.constants import ConstraintFamily
from scripts.components.errors import ShapeMismatchError
from scripts.components.polynomial import Polynomial
from scripts.families.base_family import HiddenTripleFamily
from scripts.families.constraint_set import ConstraintSet, minors

logger = logging.getLogger(__name__)


def cubic_family_constraints(cards: Sequence[int], hidden_card: int = 2) -> ConstraintSet:
    """3×3 minors of the r_1×r_2 matrix with (i, j) entry θ_{ijk+}, one matrix per k.

    Raises:
        ShapeMismatchError: unless the hidden variable is binary
    """
    if len(cards) != 3:
        raise ShapeMismatchError(f"Expected three observed cardinalities, got {tuple(cards)}")
    if hidden_card != 2:
        raise ShapeMismatchError(f"Cubic family needs a binary hidden variable, got cardinality {hidden_card}")
    r1, r2, r3 = cards

    labelled = []
    for k in range(r3):
        matrix = [[Polynomial.variable((i, j, k)) for j in range(r2)] for i in range(r1)]
        for rows, cols, minor in minors(matrix, 3):
            labelled.append((f"slice X3={k}; rows {list(rows)}; cols {list(cols)}", minor))

    cs = ConstraintSet.build(ConstraintFamily.CUBIC_5_2, 3, (r1, r2, r3), labelled)
    if not cs:
        logger.warning(f"Observed {tuple(cards)}: slices smaller than 3x3, cubic set is empty")
    return cs


def cubic_family_formula_dimension(r1: int, r2: int, r3: int) -> int:
    """Join of r_3 rank-two matrix varieties, counted without the simplex -1."""
    return 2 * r1 * r3 + 2 * r2 * r3 - 4 * r3


class CubicFamily(HiddenTripleFamily):
    family = ConstraintFamily.CUBIC_5_2
    degree = 3
    # X1 ⊥ X2 | {X3, X4}
    MODEL_PARENTS = {"X4": ("X3",), "X1": ("X3", "X4"), "X2": ("X3", "X4")}
    FORMULA_CONVENTION = "counted without the simplex -1"

    def check_shape(self) -> None:
        super().check_shape()
        if self.hidden_card != 2:
            raise ShapeMismatchError(f"Cubic family needs a binary hidden node, got {self.hidden_card} states")

    def generate(self) -> ConstraintSet:
        return cubic_family_constraints(self.observed_cards, self.hidden_card)

    @classmethod
    def formula_dimension(cls, cards: Sequence[int], hidden_card: int) -> int | None:
        if hidden_card != 2:
            return None
        return cubic_family_formula_dimension(*cards)
