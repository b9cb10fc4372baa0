"""Observable constraint families and vanishing checks."""

from scripts.families.base_family import BaseFamily, HiddenTripleFamily
from scripts.families.ci_minors import CIMinorsFamily, ci_minor_ideal
from scripts.families.constraint_set import Bipartition, ConstraintSet, flatten_indeterminates, minors
from scripts.families.cubic_family import CubicFamily, cubic_family_constraints, cubic_family_formula_dimension
from scripts.families.family_registry import FamilyRegistry
from scripts.families.nb2_flattening import NB2FlatteningFamily, nb2_flattening_constraints
from scripts.families.quadratic_family import (
    QuadraticFamily,
    lift_quadratic_table,
    quadratic_family_constraints,
    quadratic_family_dimension,
    slice_flattening_ranks,
)
from scripts.families.sextic_family import SexticFamily, sextic_family_constraints, sextic_polynomial
from scripts.families.vanishing import (
    SweepResult,
    VanishingReport,
    check_vanishing,
    complete_independence_test,
    fit_statistic,
    genericity_sweep,
    vanishing_sweep,
)

__all__ = [
    "BaseFamily",
    "HiddenTripleFamily",
    "Bipartition",
    "ConstraintSet",
    "flatten_indeterminates",
    "minors",
    "CIMinorsFamily",
    "ci_minor_ideal",
    "NB2FlatteningFamily",
    "nb2_flattening_constraints",
    "QuadraticFamily",
    "quadratic_family_constraints",
    "quadratic_family_dimension",
    "lift_quadratic_table",
    "slice_flattening_ranks",
    "CubicFamily",
    "cubic_family_constraints",
    "cubic_family_formula_dimension",
    "SexticFamily",
    "sextic_family_constraints",
    "sextic_polynomial",
    "FamilyRegistry",
    "VanishingReport",
    "SweepResult",
    "check_vanishing",
    "fit_statistic",
    "complete_independence_test",
    "vanishing_sweep",
    "genericity_sweep",
]
