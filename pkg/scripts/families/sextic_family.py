"""Sextic constraints for three observed nodes with a binary hidden node and r_3 = 3.

For a pair j_1 < j_2 of X2 states, N_j is the 2×3 matrix (θ_{ijk+}) over two
X1 rows. The generator is

    θ_{+j_1 1 +} U_1 V_1 - θ_{+j_1 2 +} U_2 V_2 + θ_{+j_1 3 +} U_3 V_3

where U_s is the 2×2 determinant of N_{j_1} without column s, and V_s is the
determinant of [column s of N_{j_2} | entrywise product of its other two
columns].
"""

import logging
from collections.abc import Sequence
from itertools import combinations

from scripts.components.constants import ConstraintFamily
from scripts.components.errors import ShapeMismatchError
from scripts.components.polynomial import Polynomial, determinant
from scripts.families.base_family import HiddenTripleFamily
from scripts.families.constraint_set import ConstraintSet

logger = logging.getLogger(__name__)

SIGNS = (1, -1, 1)


def _n_matrix(rows: tuple[int, int], j: int) -> list[list[Polynomial]]:
    return [[Polynomial.variable((i, j, k)) for k in range(3)] for i in rows]


def sextic_polynomial(r1: int, rows: tuple[int, int], j1: int, j2: int) -> Polynomial:
    """Sextic generator for the X2 pair (j1, j2) built on the X1 rows `rows`."""
    n1, n2 = _n_matrix(rows, j1), _n_matrix(rows, j2)
    result = Polynomial.zero()
    for s, sign in enumerate(SIGNS):
        t, u = (col for col in range(3) if col != s)
        coefficient = sum((Polynomial.variable((i, j1, s)) for i in range(r1)), Polynomial.zero())
        u_s = determinant([[n1[0][t], n1[0][u]], [n1[1][t], n1[1][u]]])
        v_s = determinant([[n2[0][s], n2[0][t] * n2[0][u]], [n2[1][s], n2[1][t] * n2[1][u]]])
        result = result + sign * coefficient * u_s * v_s
    return result


def sextic_family_constraints(
    cards: Sequence[int], hidden_card: int = 2, conjectural: bool = False
) -> ConstraintSet:
    """One sextic per unordered X2 pair j_1 < j_2.

    Args:
        cards: Observed cardinalities (r_1, r_2, r_3); r_3 must be 3
        hidden_card: Hidden cardinality, must be 2
        conjectural: Allow r_1 > 2, emitting one sextic per X1 row pair and X2 pair.
            The resulting set is flagged as conjectural and is not known to vanish.

    Raises:
        ShapeMismatchError: on any other cardinality pattern
    """
    if len(cards) != 3:
        raise ShapeMismatchError(f"Expected three observed cardinalities, got {tuple(cards)}")
    r1, r2, r3 = cards
    if hidden_card != 2:
        raise ShapeMismatchError(f"Sextic family needs a binary hidden variable, got {hidden_card}")
    if r3 != 3:
        raise ShapeMismatchError(f"Sextic family needs r_3 = 3, got {r3}")
    if r1 != 2 and not conjectural:
        raise ShapeMismatchError(f"Sextic family needs r_1 = 2, got {r1} (pass conjectural=True to extend)")

    flagged = conjectural and r1 > 2
    labelled = []
    for rows in combinations(range(r1), 2):
        for j1, j2 in combinations(range(r2), 2):
            label = f"pair X2=({j1},{j2})"
            if flagged:
                label = f"conjectural; rows X1=({rows[0]},{rows[1]}); {label}"
            labelled.append((label, sextic_polynomial(r1, rows, j1, j2)))

    cs = ConstraintSet.build(ConstraintFamily.SEXTIC_5_3, 6, (r1, r2, r3), labelled, conjectural=flagged)
    logger.info(f"Generated {len(cs)} sextics for observed {(r1, r2, r3)}{' (conjectural)' if flagged else ''}")
    return cs


class SexticFamily(HiddenTripleFamily):
    family = ConstraintFamily.SEXTIC_5_3
    degree = 6
    # X1 ⊥ X3 | {X2, X4} and X2 ⊥ X4 | X3
    MODEL_PARENTS = {"X2": ("X3",), "X4": ("X3",), "X1": ("X2", "X4")}

    def check_shape(self) -> None:
        super().check_shape()
        r1, _, r3 = self.observed_cards
        if self.hidden_card != 2 or r3 != 3 or (r1 != 2 and not self.options.get("conjectural", False)):
            raise ShapeMismatchError(
                f"Sextic family needs observed (2, r_2, 3) with a binary hidden node, "
                f"got {self.observed_cards} with hidden {self.hidden_card}"
            )

    def generate(self) -> ConstraintSet:
        return sextic_family_constraints(
            self.observed_cards, self.hidden_card, conjectural=self.options.get("conjectural", False)
        )
