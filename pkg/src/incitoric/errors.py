"""Shared exception types."""


class IncitoricError(Exception):
    """Base class for all package errors."""


class BadParameters(IncitoricError, ValueError):
    """Invalid (n, k, t) or similar parameter combination."""


class DimensionMismatch(IncitoricError, ValueError):
    """Vector/matrix dimensions do not agree."""


class CompositeModulus(IncitoricError, ValueError):
    """A prime was required but a composite number was supplied."""


class RankOutOfRange(IncitoricError, ValueError):
    """Subset rank outside [0, C(n, k))."""


class IndexOutOfRange(IncitoricError, ValueError):
    """A pod or subset index exceeds the ground set."""


class BudgetExceeded(IncitoricError, RuntimeError):
    """An enumeration or pair queue outgrew its configured budget."""


class NotPure(IncitoricError, ValueError):
    """Operation requires a pure simplicial complex."""


class DimensionTooSmall(IncitoricError, ValueError):
    """Complex dimension is too small for the requested operation."""


class NotBalanced(IncitoricError, ValueError):
    """Coloring is not a proper balanced coloring of the complex."""


class PreconditionFailed(IncitoricError, ValueError):
    """A documented precondition does not hold; the message lists which."""
