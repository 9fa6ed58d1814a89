"""
Errors
======
Every failure raised by the package derives from ``SummabilityError``.

Validation problems (bad exponents, partitions, shapes, configs) are also
``ValueError``s; numerical breakdowns are also ``ArithmeticError``s. The
command line maps the two families to exit codes 2 and 3.
"""

from __future__ import annotations


class SummabilityError(Exception):
    """Base class for all package errors."""


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


class ValidationError(SummabilityError, ValueError):
    """Input rejected before any computation."""


class ExponentError(ValidationError):
    """An exponent is outside [1, inf] or cannot be parsed."""


class PartitionError(ValidationError):
    """A block partition is not a disjoint covering of {1, ..., m}."""


class HypothesisError(ValidationError):
    """A theorem's hypothesis does not hold for the given exponents."""

    def __init__(self, clause: str, detail: str = "") -> None:
        self.clause = clause
        message = f"hypothesis failed: {clause}"
        if detail:
            message = f"{message} ({detail})"
        super().__init__(message)


class DegenerateExponentError(HypothesisError):
    """A computed reciprocal exponent is not positive."""

    def __init__(self, level: int, reciprocal: float) -> None:
        self.level = level
        self.reciprocal = reciprocal
        super().__init__(
            "degenerate exponent",
            f"1/s_{level} = {reciprocal!r} is not positive",
        )


class DimensionMismatchError(ValidationError):
    """Array shapes do not agree with each other or with a partition."""


class BudgetExceededError(ValidationError):
    """An exhaustive computation would exceed its configured budget."""


class ConfigError(ValidationError):
    """A configuration document is malformed."""


# ---------------------------------------------------------------------------
# Numerical
# ---------------------------------------------------------------------------


class NumericalError(SummabilityError, ArithmeticError):
    """A computation produced an unusable result."""


class DegenerateNormError(NumericalError):
    """The norm estimate vanished while the left-hand side did not."""


class AscentError(NumericalError):
    """An ascent objective decreased beyond rounding slack."""


class ConvergenceError(NumericalError):
    """An iterative estimate stopped on its iteration budget."""
