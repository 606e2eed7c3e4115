"""
Weights, reduced rational points and approximation-quality records.
"""

from fractions import Fraction
from math import gcd
from typing import List, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from src.models.enums import CertificateStatus
from src.models.rational import EXACT_MODEL_CONFIG, Rational


class Weight(BaseModel):
    """
    Weight r = (lambda, ..., lambda, mu) on R^d.

    Attributes:
        d: Dimension (>= 2)
        lam: Common weight of the first d-1 coordinates
        mu: Weight of the last coordinate
    """

    model_config = EXACT_MODEL_CONFIG

    d: int = Field(..., ge=2, description="Dimension d")
    lam: Rational = Field(..., description="lambda")
    mu: Rational = Field(..., description="mu")

    @model_validator(mode="after")
    def _check_weight(self) -> "Weight":
        if (self.d - 1) * self.lam + self.mu != 1:
            raise ValueError(f"(d-1)*lambda + mu must be 1, got {(self.d - 1) * self.lam + self.mu}")
        if not (self.lam >= self.mu > 0):
            raise ValueError(f"need lambda >= mu > 0, got lambda={self.lam}, mu={self.mu}")
        return self

    @classmethod
    def parse(cls, text: str) -> "Weight":
        """
        Parse "d:lambda:mu", e.g. "2:1/2:1/2".

        Raises:
            ValueError: On malformed text or invalid weights
        """
        parts = text.split(":")
        if len(parts) != 3:
            raise ValueError(f"weight must look like d:lambda:mu, got {text!r}")
        return cls(d=int(parts[0]), lam=parts[1], mu=parts[2])

    @classmethod
    def uniform(cls, d: int) -> "Weight":
        """Equal weights lambda = mu = 1/d."""
        return cls(d=d, lam=Fraction(1, d), mu=Fraction(1, d))

    def __str__(self) -> str:
        return f"{self.d}:{self.lam}:{self.mu}"


class RationalPoint(BaseModel):
    """
    Reduced rational point P = (p/q, s/q) in Q^d.

    Attributes:
        p: (d-1) integer numerators
        s: Integer numerator of the last coordinate
        q: Positive common denominator, gcd(p, s, q) = 1
    """

    model_config = EXACT_MODEL_CONFIG

    p: List[int] = Field(..., min_length=1, description="Numerators of the first d-1 coordinates")
    s: int = Field(..., description="Numerator of the last coordinate")
    q: int = Field(..., gt=0, description="Common denominator")

    @model_validator(mode="after")
    def _check_reduced(self) -> "RationalPoint":
        g = gcd(*self.p, self.s, self.q)
        if g != 1:
            raise ValueError(f"point is not reduced: gcd(p, s, q) = {g}")
        return self

    @property
    def d(self) -> int:
        return len(self.p) + 1

    def coordinates(self) -> Tuple[Fraction, ...]:
        """(p_1/q, ..., p_{d-1}/q, s/q)."""
        return tuple(Fraction(pi, self.q) for pi in self.p) + (Fraction(self.s, self.q),)

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coordinates()) + ")"


class QualityWitness(BaseModel):
    """
    The two approximation-quality terms of a candidate P at a point (x, y, z).

    term_y = term_y_coefficient * q**mu     with coefficient |q y - s|
    term_x = term_x_coefficient * q**lambda with coefficient |q x - p - (q y - s) z|_inf
    """

    model_config = EXACT_MODEL_CONFIG

    point: RationalPoint
    term_y_coefficient: Rational = Field(..., description="|q y - s|")
    term_y_exponent: Rational = Field(..., description="mu")
    term_x_coefficient: Rational = Field(..., description="|q x - p - (q y - s) z|_inf")
    term_x_exponent: Rational = Field(..., description="lambda")

    @field_validator("term_y_coefficient", "term_x_coefficient")
    @classmethod
    def _nonnegative(cls, v: Fraction) -> Fraction:
        if v < 0:
            raise ValueError("quality terms are nonnegative")
        return v


class EpsilonBound(BaseModel):
    """
    Exact value coefficient * q**exponent of a best-approximation quality.

    Attributes:
        coefficient: Rational factor
        q: Integer base of the power
        exponent: Rational exponent
        decimal: High-precision decimal rendering
        witness: Reduced point achieving the value (None when nothing was searched)
    """

    model_config = EXACT_MODEL_CONFIG

    coefficient: Rational
    q: int = Field(..., gt=0)
    exponent: Rational
    decimal: str
    witness: Optional[QualityWitness] = None

    @property
    def rational_value(self) -> Optional[Fraction]:
        """The value as a Fraction when q**exponent is rational."""
        from src.tools.exact import rational_power

        power = rational_power(self.q, self.exponent)
        return None if power is None else self.coefficient * power


class CertificateResult(BaseModel):
    """
    Outcome of a truncated badly-approximable certificate.

    Attributes:
        status: HOLDS or VIOLATED
        epsilon: Tested epsilon
        max_q: Denominator bound Q
        witness: Reduced violating point with its quality terms
        candidates: Number of enumerated candidates
    """

    model_config = EXACT_MODEL_CONFIG

    status: CertificateStatus
    epsilon: Rational
    max_q: int
    witness: Optional[QualityWitness] = None
    candidates: int = 0

    @property
    def holds(self) -> bool:
        return self.status == CertificateStatus.HOLDS
