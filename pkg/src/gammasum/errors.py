"""Exception hierarchy for the gammasum package.

Every error raised deliberately by this package derives from GammaSumError,
so callers can catch one base type at an API boundary. Validation failures
additionally derive from ValueError to stay friendly to generic callers.
"""

from __future__ import annotations


class GammaSumError(Exception):
    """Base class for all errors raised by this package."""


class DomainError(GammaSumError, ValueError):
    """An argument lies outside the documented domain of an operation."""


class ConfigError(GammaSumError, ValueError):
    """A configuration value is inconsistent or out of range."""


class ConvergenceError(GammaSumError):
    """An iterative computation did not reach the requested tolerance.

    The best available estimate, when one exists, is attached so callers
    can report a result together with its honest error indication.
    """

    def __init__(self, message, estimate=None):
        super().__init__(message)
        self.estimate = estimate


class PrecisionError(GammaSumError):
    """Estimated rounding or cancellation error exceeds the allowed level."""


class NotPositiveDefiniteError(GammaSumError, ValueError):
    """A matrix required to be positive definite is not."""


class BranchTrackingError(GammaSumError):
    """A complex logarithm branch could not be certified as continuous."""


class NormalizationError(GammaSumError):
    """The built-in normalization self-test failed."""
