"""
Dual vectors, attached hyperplanes and attached lines of a (ball, point) pair.
"""

from fractions import Fraction
from typing import List, Sequence

from pydantic import BaseModel, Field, model_validator

from src.models.rational import EXACT_MODEL_CONFIG, Rational


class DualVector(BaseModel):
    """
    Minimising admissible vector (a, b) for a ball B and rational point P.

    Attributes:
        a: (d-1) integer coefficients
        b: Integer coefficient of the last coordinate
        xi: max(|a|_inf, |b + z_B . a|)
    """

    model_config = EXACT_MODEL_CONFIG

    a: List[int] = Field(..., min_length=1, description="Coefficients on x")
    b: int = Field(..., description="Coefficient on y")
    xi: Rational = Field(..., description="max(|a|_inf, |b + z_B . a|)")

    @model_validator(mode="after")
    def _check_nonzero(self) -> "DualVector":
        if self.b == 0 and not any(self.a):
            raise ValueError("dual vector must be nonzero")
        return self

    @property
    def coefficients(self) -> List[int]:
        """(a_1, ..., a_{d-1}, b)."""
        return list(self.a) + [self.b]


class AttachedHyperplane(BaseModel):
    """
    Integer affine functional F(w) = a . w_x + b * w_y - C vanishing at P.

    Attributes:
        a: (d-1) integer coefficients
        b: Integer coefficient
        C: Integer constant a . p/q + b * s/q
    """

    model_config = EXACT_MODEL_CONFIG

    a: List[int] = Field(..., min_length=1)
    b: int
    C: int

    @model_validator(mode="after")
    def _check_nonzero(self) -> "AttachedHyperplane":
        if self.b == 0 and not any(self.a):
            raise ValueError("hyperplane normal must be nonzero")
        return self

    def lifted_normal(self) -> List[int]:
        """Normal on flattened (x, y, z): (a, b, 0, ..., 0)."""
        return list(self.a) + [self.b] + [0] * len(self.a)

    def evaluate(self, point: Sequence[Fraction]) -> Fraction:
        """F at a point of Q^d."""
        coords = [Fraction(c) for c in point]
        value = sum((ai * wi for ai, wi in zip(self.a, coords)), Fraction(0))
        return value + self.b * coords[len(self.a)] - self.C


class LinePoint(BaseModel):
    """
    Direction (v, u) of the attached line, a nonzero vector of the lattice Z^d + Z P.

    Attributes:
        v: (d-1) rational coordinates
        u: Last coordinate
        c: Multiple of P used, q (v, u) = c (p, s) mod q Z^d
    """

    model_config = EXACT_MODEL_CONFIG

    v: List[Rational] = Field(..., min_length=1)
    u: Rational
    c: int = Field(..., ge=0)

    @model_validator(mode="after")
    def _check_nonzero(self) -> "LinePoint":
        if self.u == 0 and not any(self.v):
            raise ValueError("line direction must be nonzero")
        return self
