"""Exception types shared across the package."""

from __future__ import annotations

from fractions import Fraction


class CuspGrowthError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(CuspGrowthError, ValueError):
    """An input violates a documented invariant or precondition.

    Maps to CLI exit code 2.
    """


class ResourceLimitError(CuspGrowthError, RuntimeError):
    """A computation was refused because its raw search space exceeds a cap.

    Maps to CLI exit code 3.
    """

    def __init__(self, message: str, space: int, cap: int):
        super().__init__(message)
        self.space = space
        self.cap = cap


class InexactDivisionError(CuspGrowthError, ArithmeticError):
    """An exact integer division was expected but the quotient is fractional.

    Carries the exact rational so callers can report it verbatim.
    """

    def __init__(self, message: str, ratio: Fraction):
        super().__init__(message)
        self.ratio = ratio
