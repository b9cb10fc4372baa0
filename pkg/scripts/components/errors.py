"""Exception types raised by the bnalg library."""


class BnalgError(Exception):
    """Base class for toolkit errors."""


class NetworkParseError(BnalgError, ValueError):
    """Network or table document is malformed or violates a structural invariant."""


class ShapeMismatchError(BnalgError, ValueError):
    """Parameters, tables, patterns or families do not fit the network shape."""


class RankDisagreementError(BnalgError, RuntimeError):
    """Exact and numeric Jacobian ranks disagree after every seed was tried."""

    def __init__(self, exact: int, numeric: int):
        self.exact = exact
        self.numeric = numeric
        super().__init__(f"Exact rank {exact} disagrees with numeric rank {numeric}")


class InvariantViolationError(BnalgError, RuntimeError):
    """A computed result breaks a bound it must satisfy (for example effective > expected)."""
