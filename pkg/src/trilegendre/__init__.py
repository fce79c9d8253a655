"""Fractional-degree Legendre functions, singular quadrature and identity checks."""

from .errors import AccuracyWarning, ConvergenceError, DomainError

__all__ = ["AccuracyWarning", "ConvergenceError", "DomainError"]
__version__ = "0.1.0"
