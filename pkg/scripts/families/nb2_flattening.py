"""3×3 minors of flattenings for two-class naive Bayes models."""

import logging

from scripts.components.constants import ConstraintFamily
from scripts.components.errors import ShapeMismatchError
from scripts.dimension.naive_bayes import NaiveBayesSpec
from scripts.families.base_family import BaseFamily
from scripts.families.constraint_set import Bipartition, ConstraintSet, flatten_indeterminates, minors

logger = logging.getLogger(__name__)


def nb2_flattening_constraints(nb: NaiveBayesSpec) -> ConstraintSet:
    """Union over all bipartitions of the 3×3 minors of each flattening, deduplicated.

    Raises:
        ShapeMismatchError: if the model does not have exactly two classes
    """
    if nb.r != 2:
        raise ShapeMismatchError(f"NB2 flattening constraints need r = 2, got r = {nb.r}")

    net = nb.to_network()
    labelled = []
    for bp in Bipartition.all_for(net):
        matrix = flatten_indeterminates(net, bp)
        if len(matrix) < 3 or len(matrix[0]) < 3:
            continue
        for rows, cols, minor in minors(matrix, 3):
            labelled.append((f"{bp.label(net)}; rows {list(rows)}; cols {list(cols)}", minor))

    cs = ConstraintSet.build(ConstraintFamily.NB2_FLATTENING, 3, nb.cards, labelled)
    if not cs:
        logger.warning(f"{nb.label}: no flattening has a 3x3 submatrix, constraint set is empty")
    else:
        logger.info(f"Generated {len(cs)} flattening minors for {nb.label}")
    return cs


class NB2FlatteningFamily(BaseFamily):
    family = ConstraintFamily.NB2_FLATTENING
    degree = 3

    def check_shape(self) -> None:
        nb = NaiveBayesSpec.from_network(self.net)
        if nb is None:
            raise ShapeMismatchError("NB2 flattening needs a naive Bayes network with one hidden class root")
        if nb.r != 2:
            raise ShapeMismatchError(f"NB2 flattening needs a binary class node, got {nb.r} classes")
        self.nb = nb

    def generate(self) -> ConstraintSet:
        return nb2_flattening_constraints(self.nb)
