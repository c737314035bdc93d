"""Exception types raised by qvac."""


class QvacError(Exception):
    """Base class for all qvac errors."""


class ConfigError(QvacError, ValueError):
    """Invalid physical input or configuration."""


class ConvergenceError(QvacError, ArithmeticError):
    """A quadrature or series failed to reach its tolerance."""


class FitError(QvacError):
    """A tail fit could not be performed (too few points, degenerate data)."""


class RegimeError(QvacError, ValueError):
    """An asymptotic formula was requested outside its range of validity."""
