"""Exception types shared across the package."""


class IneqLabError(Exception):
    """Base class for all package-specific errors."""


class InvalidInput(IneqLabError, ValueError):
    """Input container is malformed (non-finite entries, bad shape, bad dtype)."""


class DimensionMismatch(IneqLabError, ValueError):
    """Operands have incompatible dimensions."""


class PreconditionError(IneqLabError, ValueError):
    """An operation's mathematical precondition is not satisfied."""


class NotHermitian(PreconditionError):
    pass


class NotPositiveSemidefinite(PreconditionError):
    pass


class NotOrthogonalProjection(PreconditionError):
    pass


class SpectrumOutOfRange(PreconditionError):
    pass


class ZeroVector(PreconditionError):
    """Angle operations are undefined for (numerically) zero vectors."""


class ZeroOperator(PreconditionError):
    """Scaled inequalities divide by the operator norm and reject zero operators."""


class ConvergenceError(IneqLabError, RuntimeError):
    """An iterative kernel failed to converge within its iteration cap."""
