"""Exception classes for repi numerics.

These exceptions are for SYSTEM errors only (invalid inputs, violated
hypotheses, numerical breakdown). Expected states (a suite that does not
apply to the given input, an infinite divergence) are returned as results
or sentinels - see dto/result_dto.py.
"""

from typing import Any


class RepiError(Exception):
    """Base exception for repi errors."""

    def __init__(self, message: str, *, context: dict[str, Any] | None = None):
        """Initialize the exception.

        Args:
            message: Error description.
            context: Optional diagnostic context for tracing.
        """
        super().__init__(message)
        self.context = context or {}


class ParameterError(RepiError):
    """Invalid family parameters, grid sizes or malformed density files."""


class DegenerateDensityError(RepiError):
    """Raised when a density has zero, negative or non-finite mass."""


class OrderError(RepiError):
    """Raised for an inadmissible Rényi order.

    Attributes:
        r: The offending order.
    """

    def __init__(self, message: str, *, r: float | None = None, context: dict | None = None):
        """Initialize the exception.

        Args:
            message: Error description.
            r: The offending order, if known.
            context: Optional diagnostic context for tracing.
        """
        super().__init__(message, context=context)
        self.r = r


class UndefinedConjugateError(OrderError):
    """The conjugate exponent r/(r-1) does not exist at r = 1."""

    def __init__(self, *, context: dict | None = None):
        """Initialize the exception."""
        super().__init__("Conjugate exponent is undefined at r = 1", r=1.0, context=context)


class IntegrabilityError(RepiError):
    """Raised when the integral of f^r is numerically zero or infinite."""


class ScaleError(RepiError):
    """Raised when scaling a random variable by zero."""


class GridError(RepiError):
    """Incompatible, empty or oversized grids, or convolution mass drift."""


class HypothesisError(RepiError):
    """Raised when the hypotheses of an inequality do not hold.

    Attributes:
        hypothesis: Short name of the violated hypothesis.
    """

    def __init__(self, message: str, *, hypothesis: str, context: dict | None = None):
        """Initialize the exception.

        Args:
            message: Error description.
            hypothesis: Short name of the violated hypothesis.
            context: Optional diagnostic context for tracing.
        """
        super().__init__(message, context=context)
        self.hypothesis = hypothesis


class SimplexError(RepiError):
    """Raised when weights are not on the open probability simplex."""


class DomainError(RepiError):
    """A closed-form constant was evaluated outside its branch.

    Attributes:
        constant: Name of the constant.
        detail: Description of the violated domain.
    """

    def __init__(self, constant: str, detail: str, *, context: dict | None = None):
        """Initialize the exception.

        Args:
            constant: Name of the constant.
            detail: Human-readable description of the violated domain.
            context: Optional diagnostic context for tracing.
        """
        super().__init__(f"{constant}: {detail}", context=context)
        self.constant = constant
        self.detail = detail


class ConsistencyError(RepiError):
    """Two independent evaluations of the same quantity disagree."""


class TransportError(RepiError):
    """Raised when a monotone transport cannot be built or applied."""


__all__ = [
    "RepiError",
    "ParameterError",
    "DegenerateDensityError",
    "OrderError",
    "UndefinedConjugateError",
    "IntegrabilityError",
    "ScaleError",
    "GridError",
    "HypothesisError",
    "SimplexError",
    "DomainError",
    "ConsistencyError",
    "TransportError",
]
