"""
Models for the diagonal flow on unimodular lattices.
"""

from fractions import Fraction
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, model_validator

from src.models.enums import BoundednessStatus
from src.models.rational import EXACT_MODEL_CONFIG, Rational


class UnipotentParams(BaseModel):
    """
    Coordinates (x, y, z) of the unipotent matrix u_{x,y,z}.

    u_{x,y,z} has an identity (d-1)-block, the column z above the y entry
    and the column x in the last position.
    """

    model_config = EXACT_MODEL_CONFIG

    x: List[Rational] = Field(..., min_length=1)
    y: Rational
    z: List[Rational] = Field(..., min_length=1)

    @model_validator(mode="after")
    def _check_lengths(self) -> "UnipotentParams":
        if len(self.x) != len(self.z):
            raise ValueError(f"x and z differ in length: {len(self.x)} vs {len(self.z)}")
        return self

    @classmethod
    def from_point(cls, point: Tuple[Fraction, ...]) -> "UnipotentParams":
        """Build from a flattened (x, y, z) point of odd length."""
        coords = [Fraction(c) for c in point]
        if len(coords) % 2 == 0:
            raise ValueError(f"point must have odd length 2d-1, got {len(coords)}")
        m = (len(coords) - 1) // 2
        return cls(x=coords[:m], y=coords[m], z=coords[m + 1 :])

    @property
    def d(self) -> int:
        return len(self.x) + 1

    def as_point(self) -> Tuple[Fraction, ...]:
        return tuple(self.x) + (self.y,) + tuple(self.z)


class SystolePoint(BaseModel):
    """
    Shortest vector of g_t u^{-1} Z^(d+1) at one time.

    Attributes:
        t: Flow time
        length: Euclidean length of a shortest nonzero vector
        length_decimal: Length at full working precision
        vector: The shortest vector
        coefficients: Integer vector m with g_t u^{-1} m = vector
    """

    t: float
    length: float = Field(..., gt=0)
    length_decimal: str
    vector: List[float]
    coefficients: List[int]


class SystoleTrace(BaseModel):
    """Systoles along a time grid."""

    points: List[SystolePoint] = Field(default_factory=list)
    precision_bits: int = Field(..., gt=0, description="Highest precision used")

    @model_validator(mode="after")
    def _check_times(self) -> "SystoleTrace":
        times = [p.t for p in self.points]
        if any(b <= a for a, b in zip(times, times[1:])):
            raise ValueError("trace times must be strictly increasing")
        return self

    def min_point(self) -> Optional[SystolePoint]:
        """Point with the smallest systole, earliest on ties."""
        if not self.points:
            return None
        return min(self.points, key=lambda p: (p.length, p.t))


class BoundednessVerdict(BaseModel):
    """
    Finite-horizon boundedness verdict.

    Attributes:
        status: BOUNDED_SO_FAR or ESCAPED
        time: First time the systole fell below the floor (ESCAPED only)
        floor: Floor used
    """

    status: BoundednessStatus
    time: Optional[float] = None
    floor: float = Field(..., gt=0)
    min_length: Optional[float] = None
