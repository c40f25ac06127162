"""Exception types shared across the package."""


class SphericityError(Exception):
    """Base class for all package-specific errors."""


class DomainError(SphericityError, ValueError):
    """An argument lies outside the mathematically valid domain."""


class UnsupportedOrderError(SphericityError, ValueError):
    """A series/expansion order above the supported cap was requested."""


class SingularMatrixError(SphericityError, ValueError):
    """A matrix that must be invertible is (numerically) singular."""


class DivergenceError(SphericityError, ArithmeticError):
    """An integral diverges for the given parameters."""


class NonConvergenceError(SphericityError, ArithmeticError):
    """An iterative numerical routine failed to reach its tolerance."""


class OverflowRangeError(SphericityError, OverflowError):
    """A log-space magnitude exceeded the representable range."""
