"""
Ball and hyperplane-neighborhood models on R^(2d-1).

Points are flattened as (x_1, ..., x_{d-1}, y, z_1, ..., z_{d-1}).
"""

from fractions import Fraction
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from src.models.rational import EXACT_MODEL_CONFIG, Rational


class Ball(BaseModel):
    """
    Closed sup-norm ball with rational center and rational square radius.

    Attributes:
        x: (d-1) x-coordinates of the center
        y: y-coordinate of the center
        z: (d-1) z-coordinates of the center
        radius: rho
        sqrt_radius: sigma with sigma**2 == rho
    """

    model_config = EXACT_MODEL_CONFIG

    x: List[Rational] = Field(..., min_length=1, description="Center x-part")
    y: Rational = Field(..., description="Center y-coordinate")
    z: List[Rational] = Field(..., min_length=1, description="Center z-part")
    radius: Rational = Field(..., description="Sup-norm radius rho")
    sqrt_radius: Rational = Field(..., description="sigma, with sigma**2 = rho")

    @model_validator(mode="after")
    def _check_invariants(self) -> "Ball":
        if len(self.x) != len(self.z):
            raise ValueError(f"x and z parts differ in length: {len(self.x)} vs {len(self.z)}")
        if self.sqrt_radius <= 0:
            raise ValueError("sqrt_radius must be positive")
        if self.sqrt_radius * self.sqrt_radius != self.radius:
            raise ValueError(f"sqrt_radius**2 != radius ({self.sqrt_radius}**2 vs {self.radius})")
        return self

    @classmethod
    def from_center(
        cls, center: Tuple[Fraction, ...], sqrt_radius: Fraction, d: Optional[int] = None
    ) -> "Ball":
        """
        Build a ball from a flattened center and sigma.

        Args:
            center: Flattened (x, y, z) coordinates, length 2d-1
            sqrt_radius: sigma; the radius is sigma**2
            d: Optional dimension check

        Example:
            >>> Ball.from_center((0, 0, 0), Fraction(1, 2)).radius
            Fraction(1, 4)
        """
        coords = [Fraction(c) for c in center]
        if len(coords) % 2 == 0:
            raise ValueError(f"center must have odd length 2d-1, got {len(coords)}")
        m = (len(coords) - 1) // 2
        if d is not None and m != d - 1:
            raise ValueError(f"center length {len(coords)} does not match d={d}")
        sigma = Fraction(sqrt_radius)
        return cls(
            x=coords[:m],
            y=coords[m],
            z=coords[m + 1 :],
            radius=sigma * sigma,
            sqrt_radius=sigma,
        )

    @property
    def d(self) -> int:
        return len(self.x) + 1

    @property
    def dim(self) -> int:
        """Ambient dimension 2d-1."""
        return 2 * len(self.x) + 1

    @property
    def center(self) -> Tuple[Fraction, ...]:
        """Flattened center (x, y, z)."""
        return tuple(self.x) + (self.y,) + tuple(self.z)

    def with_center(self, center: Tuple[Fraction, ...]) -> "Ball":
        return Ball.from_center(center, self.sqrt_radius)

    def describe(self) -> str:
        coords = ", ".join(str(c) for c in self.center)
        return f"B(({coords}), rho={self.radius})"


class HyperplaneNbhd(BaseModel):
    """
    Open delta-neighborhood of the hyperplane {p : normal . p = offset}.

    A point p is inside iff (normal . p - offset)**2 < delta**2 * |normal|_2**2.

    Attributes:
        normal: Nonzero integer normal vector on flattened (x, y, z)
        offset: Integer offset
        width: delta > 0
        k: Optional family index (set by strategies that emit indexed families)
    """

    model_config = EXACT_MODEL_CONFIG

    normal: List[int] = Field(..., min_length=1, description="Integer normal vector")
    offset: int = Field(..., description="Integer offset")
    width: Rational = Field(..., description="Neighborhood width delta")
    k: Optional[int] = Field(None, ge=1, description="Family index, if any")

    @field_validator("normal")
    @classmethod
    def _normal_nonzero(cls, v: List[int]) -> List[int]:
        if not any(v):
            raise ValueError("normal must be nonzero")
        return v

    @field_validator("width")
    @classmethod
    def _width_positive(cls, v: Fraction) -> Fraction:
        if v <= 0:
            raise ValueError("width must be positive")
        return v

    @property
    def dim(self) -> int:
        return len(self.normal)

    @property
    def norm1(self) -> int:
        return sum(abs(n) for n in self.normal)

    @property
    def norm2_squared(self) -> int:
        return sum(n * n for n in self.normal)

    def evaluate(self, point: Tuple[Fraction, ...]) -> Fraction:
        """normal . point - offset."""
        return sum((Fraction(n) * p for n, p in zip(self.normal, point)), Fraction(0)) - self.offset
