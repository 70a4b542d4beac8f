"""Domain error types shared across the library and surfaced by the CLI."""


class OrderConesError(Exception):
    """Base class for every domain error raised by this package."""

    @property
    def kind(self) -> str:
        return type(self).__name__


class UnknownId(OrderConesError):
    """An element, point, or landmark id is not part of the structure."""


class AntisymmetryViolation(OrderConesError):
    """A relation closure produced a 2-cycle between distinct ids."""


class DimensionMismatch(OrderConesError):
    """Vector or matrix sizes do not line up."""


class NotIsotone(OrderConesError):
    """A function fails order preservation where it is required."""


class NegativeValues(OrderConesError):
    """A nonnegative function was required."""


class OrderNotDetermined(OrderConesError):
    """The generator family does not induce the expected order."""


class PointsNotSeparated(OrderConesError):
    """The function family identifies two distinct elements."""


class IndexOutOfRange(OrderConesError):
    """An expression references a generator index past the family."""


class NotHermitian(OrderConesError):
    """A matrix is not self-adjoint within tolerance."""


class NotNormal(OrderConesError):
    """A matrix does not commute with its adjoint within tolerance."""


class NotNormalized(OrderConesError):
    """A state vector is not unit length within tolerance."""


class DomainError(OrderConesError):
    """A scalar function is undefined at a required spectral point."""


class NotARotation(OrderConesError):
    """A 3x3 matrix is not orthogonal with determinant one."""


class InvalidInput(OrderConesError):
    """Malformed structure: broken invariants or unusable parameters."""
