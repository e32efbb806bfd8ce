"""Exception types shared by the series modules."""
from __future__ import annotations

from fractions import Fraction


class PrecisionError(ArithmeticError):
    """Not enough input precision to deliver the requested output precision."""

    def __init__(self, message: str, required: Fraction | None = None):
        super().__init__(message)
        self.required = required


class IndistinguishableFromZero(ArithmeticError):
    """A series with no known non-zero term below its precision."""

    def __init__(self, precision: Fraction):
        super().__init__(f"indistinguishable from 0 at precision θ^-({precision})")
        self.precision = precision


class ZeroDivisorError(ZeroDivisionError):
    def __init__(self, message: str = "zero divisor at working precision"):
        super().__init__(message)


class DomainError(ValueError):
    """Argument outside the convergence region of a series."""


class BudgetExceeded(RuntimeError):
    def __init__(self, required: int, budget: int):
        super().__init__(f"term budget {budget} too small; {required} terms required")
        self.required = required
        self.budget = budget
