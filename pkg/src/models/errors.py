"""
Domain exceptions.

Game illegality is never raised: the referee records it in the trace.
"""

from typing import Optional


class ZeroDenominatorError(ValueError):
    """A rational point was given with denominator 0."""


class DimensionMismatchError(ValueError):
    """Operands live in spaces of different dimension."""

    def __init__(self, expected: int, got: int, what: str = "point"):
        self.expected = expected
        self.got = got
        super().__init__(f"{what} has dimension {got}, expected {expected}")


class BudgetExceededError(RuntimeError):
    """An enumeration exceeded its configured candidate cap."""

    def __init__(self, budget: int, used: int, where: Optional[str] = None):
        self.budget = budget
        self.used = used
        self.where = where
        location = f" in {where}" if where else ""
        super().__init__(f"candidate budget {budget} exceeded{location} ({used} enumerated)")


class InternalInvariantError(RuntimeError):
    """A search that is guaranteed to succeed found nothing: an arithmetic bug."""


class SingularBasisError(ValueError):
    """Lattice basis is singular at working precision."""


class PrecisionExhaustedError(RuntimeError):
    """Precision doubling hit the configured ceiling without a certified answer."""

    def __init__(self, max_bits: int, what: str = "computation"):
        self.max_bits = max_bits
        super().__init__(f"{what} not certified within {max_bits} bits")


class NoLegalMoveError(RuntimeError):
    """A player could not produce a legal move."""
