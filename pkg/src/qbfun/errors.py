"""Exception hierarchy shared across the package."""


class QbfunError(Exception):
    """Base class for all package errors."""


class QuiverParseError(QbfunError, ValueError):
    """Malformed quiver string, dimension vector, or index pair."""


class ShapeError(QbfunError, ValueError):
    """Matrix or vector dimensions inconsistent with the quiver data."""


class NotAnInvariantError(QbfunError, ValueError):
    """The pair (p, q) does not label a fundamental relative invariant."""

    def __init__(self, p, q):
        super().__init__(f"({p}, {q}) is not in the invariant index set for this quiver and dimension vector")
        self.p = p
        self.q = q


class DiagnosticError(QbfunError, RuntimeError):
    """An internal consistency assumption failed; surfaced rather than repaired."""


class SingularMatrixError(QbfunError, ZeroDivisionError):
    """Attempted to invert a singular matrix."""


class BudgetExceededError(QbfunError, RuntimeError):
    """A symbolic computation outgrew the configured term or size budget."""

    def __init__(self, what, actual, limit):
        super().__init__(f"budget exceeded: {what} = {actual} > {limit}")
        self.what = what
        self.actual = actual
        self.limit = limit


class OracleIdentityError(QbfunError, RuntimeError):
    """The differential-operator identity did not close; signals a construction bug."""
