"""Shared constants for the bnalg toolkit."""

from enum import Enum

# Version tag carried by every JSON document we read or write
FORMAT_TAG = "bnalg-v1"

# Tolerances
FLOAT_SUM_TOLERANCE = 1e-12
DEFAULT_VANISHING_TOL = 1e-9
NUMERIC_RANK_RTOL = 1e-9

# Parameter sampling draws numerators uniformly from this closed range
SAMPLE_NUMERATOR_RANGE = (1, 1000)

DEFAULT_SEEDS = (1, 2, 3)

# Largest square matrix the polynomial determinant accepts
MAX_DETERMINANT_SIZE = 4

CACHE_ENV_VAR = "BNALG_CACHE"

# Summed-out position in a marginal coordinate pattern
MARGINAL_TOKEN = "+"


class ArithmeticMode(str, Enum):
    """Exact rationals for vanishing tests, floats for rank and scale work."""

    RATIONAL = "rational"
    FLOAT = "float"


class ConstraintFamily(str, Enum):
    CI_MINORS = "CI_MINORS"
    NB2_FLATTENING = "NB2_FLATTENING"
    QUADRATIC_5_1 = "QUADRATIC_5_1"
    CUBIC_5_2 = "CUBIC_5_2"
    SEXTIC_5_3 = "SEXTIC_5_3"


class Classification(str, Enum):
    EQUALS_COMPLETE = "EQUALS_COMPLETE"
    EQUALS_STANDARD = "EQUALS_STANDARD"
    DEFECTIVE_BY_3_3 = "DEFECTIVE_BY_3_3"
    UNKNOWN = "UNKNOWN"


# CLI exit codes
EXIT_OK = 0
EXIT_NONVANISHING = 1
EXIT_PARSE_ERROR = 2
EXIT_RANK_DISAGREEMENT = 3
EXIT_SHAPE_MISMATCH = 4
EXIT_INTERNAL_ERROR = 5
