"""Expected, bounded and effective dimensions of hidden-variable models."""

from scripts.dimension.jacobian import jacobian
from scripts.dimension.naive_bayes import (
    CatalisanoVerdict,
    NaiveBayesSpec,
    classify_catalisano,
    dp_bound,
    expected_dimension,
    feature_bipartitions,
    naive_bayes_complete_dimension,
    naive_bayes_standard_dimension,
    segre_dimension,
)
from scripts.dimension.rank import exact_rank, numeric_rank
from scripts.dimension.report import DimensionReport, dimension_report, effective_dimension, rank_at_seed

__all__ = [
    "CatalisanoVerdict",
    "DimensionReport",
    "NaiveBayesSpec",
    "classify_catalisano",
    "dimension_report",
    "dp_bound",
    "effective_dimension",
    "exact_rank",
    "expected_dimension",
    "feature_bipartitions",
    "jacobian",
    "naive_bayes_complete_dimension",
    "naive_bayes_standard_dimension",
    "numeric_rank",
    "rank_at_seed",
    "segre_dimension",
]
