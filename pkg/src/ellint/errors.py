"""Exception types raised across the package."""


class EllintError(Exception):
    """Base class for all package errors."""


class InvalidLatticeError(EllintError, ValueError):
    """Generators do not span a lattice (real or undefined ratio)."""


class PoleError(EllintError, ValueError):
    """Evaluation requested at, or too close to, a pole."""


class DomainError(EllintError, ValueError):
    """Argument lies outside the region where a representation is valid."""


class SingularParameterError(EllintError, ValueError):
    """Closed form is singular for the given parameters and no limit is available."""


class UnsupportedConversionError(EllintError, ValueError):
    """No closed-form offset exists between two summation conventions."""


class AccuracyError(EllintError, RuntimeError):
    """Quadrature did not reach the requested tolerance.

    The best available estimate is kept on the exception so callers can
    still inspect it.
    """

    def __init__(self, message, best=None):
        super().__init__(message)
        self.best = best
