"""Exception hierarchy shared by all modules."""


class StringZetaError(Exception):
    """Base class for every error raised by the package."""


class DomainError(StringZetaError, ValueError):
    """A coordinate lies outside the string [-a/2, a/2]."""


class ProfileError(StringZetaError, ValueError):
    """A density profile is invalid (non-positive, malformed spec, bad knots)."""


class ParameterError(StringZetaError, ValueError):
    """A numeric parameter is outside its admissible range."""


class OrderingError(StringZetaError, ValueError):
    """The ordered Green's-function branch was called with x < y."""


class CapabilityError(StringZetaError):
    """The request exceeds what a method is configured to handle."""


class DataError(StringZetaError, ValueError):
    """A sum-rule table is missing an order or holds an unusable value."""


class NumericalError(StringZetaError, ArithmeticError):
    """A discretization produced a result that violates a structural property."""


class AccuracyError(StringZetaError):
    """The requested accuracy was not reached.

    The best available value and its error estimate are attached so callers
    can still report a partial result.
    """

    def __init__(self, message, value=None, err_est=None):
        super().__init__(message)
        self.value = value
        self.err_est = err_est


class TailInconsistencyError(StringZetaError, ArithmeticError):
    """Z(q) minus its asymptotic tail is not positive."""
