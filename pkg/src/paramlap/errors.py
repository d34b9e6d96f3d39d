"""Exception hierarchy shared by every paramlap module."""


class ParamlapError(Exception):
    """Base class for all library errors."""


class DomainError(ParamlapError, ValueError):
    """Argument or parameter outside the mathematical domain."""


class RangeError(ParamlapError, OverflowError):
    """Result not representable in double precision.

    ``sign`` carries the sign of the overflowing quantity (+1 or -1).
    """

    def __init__(self, message, sign=1):
        super().__init__(message)
        self.sign = sign


class AccuracyError(ParamlapError, ArithmeticError):
    """Quadrature did not reach the requested tolerance.

    The best available estimate is kept so callers can degrade gracefully.
    """

    def __init__(self, message, best_estimate=None, abs_error_est=None, evaluations=0):
        super().__init__(message)
        self.best_estimate = best_estimate
        self.abs_error_est = abs_error_est
        self.evaluations = evaluations


class NotPointwiseError(DomainError):
    """The requested kernel is a distribution (delta), not a function."""


class ValidityError(DomainError):
    """Sample point outside an identity's region of validity."""

    def __init__(self, message, predicate=""):
        super().__init__(message)
        self.predicate = predicate
