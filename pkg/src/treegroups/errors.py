"""Exception types shared across the package.

Everything raised on purpose derives from TreeGroupsError, so callers (and the
CLI) can distinguish mathematical failure modes from plain bugs.
"""


class TreeGroupsError(Exception):
    pass


class ContextMismatch(TreeGroupsError):
    """Operands belong to p-adic contexts with different (p, precision)."""


class PrecisionExhausted(TreeGroupsError):
    """An operation needed a digit beyond the carried precision.

    Raised instead of silently reporting a wrong valuation or truncation.
    """


class DivisionByZero(TreeGroupsError, ZeroDivisionError):
    """Inverse of an element that is zero to the carried precision."""


class DegenerateMatrix(TreeGroupsError):
    """A projective matrix whose determinant is zero to precision."""


class OriginMismatch(TreeGroupsError):
    """Path comparison requires both paths to start at the same vertex."""


class NotHyperbolic(TreeGroupsError):
    """Axis geometry requested for an element with zero translation length."""


class PreconditionViolated(TreeGroupsError):
    """A documented precondition (e.g. strongly reduced input) fails."""


class EllipticEncountered(TreeGroupsError):
    """An operation that needs a purely hyperbolic group met an elliptic."""
