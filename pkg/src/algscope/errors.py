"""Exception types shared across the package."""


class AlgscopeError(Exception):
    """Base class for all errors raised by this package."""


class NonFinite(AlgscopeError):
    """A matrix or vector contains NaN or Inf entries."""


class DimensionMismatch(AlgscopeError):
    """Operands live in spaces of different dimensions."""


class ShapeError(AlgscopeError):
    """An array has an inconsistent or unexpected shape."""


class InvalidGroupTable(AlgscopeError):
    """A Cayley table is not a valid group multiplication table."""


class SingularShift(AlgscopeError):
    """The shifted pencil a - alpha0*b is numerically singular; retry with a
    different shift."""


class NoRegularValue(AlgscopeError):
    """No regular shift could be found: the pencil determinant appears to
    vanish identically, which contradicts the reduced-pencil construction and
    signals broken input data."""


class TheoremViolation(AlgscopeError):
    """A proved identity failed its direct numerical verification.  This means
    a bug or a conditioning problem, never a property of the input."""


class UnknownBuilder(AlgscopeError):
    """The requested builder name is not recognised."""


class BadParams(AlgscopeError):
    """Builder parameters are malformed."""


class ParseError(AlgscopeError):
    """A document failed to parse; carries field-level context."""

    def __init__(self, message, field=None):
        self.field = field
        super().__init__(message if field is None else f"{field}: {message}")
