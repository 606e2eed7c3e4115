"""
Strategy constants and per-level hyperplane records.
"""

from fractions import Fraction
from typing import List

from pydantic import BaseModel, Field, field_validator

from src.models.diophantine import RationalPoint
from src.models.enums import StrategyMode
from src.models.geometry import Ball
from src.models.rational import EXACT_MODEL_CONFIG, Rational


class StrategyParams(BaseModel):
    """
    Constants of Alice's strategy for a root ball B_0.

    In paper mode R is the least integer meeting both lower bounds and
    epsilon follows its closed formula. In relaxed mode R and epsilon are
    supplied; every condition they break is listed in ``waived``.

    Attributes:
        d: Dimension
        beta: Game parameter in (0, 1)
        gamma: Potential exponent > 0
        root: Root ball B_0
        kappa: max coordinate size over B_0, plus one
        R: Level ratio
        epsilon: Diophantine scale
        mode: PAPER or RELAXED
        waived: Names of conditions that do not hold at (R, epsilon)
    """

    model_config = EXACT_MODEL_CONFIG

    d: int = Field(..., ge=2)
    beta: Rational
    gamma: Rational
    root: Ball
    kappa: Rational
    R: int = Field(..., ge=2)
    epsilon: Rational
    mode: StrategyMode = StrategyMode.PAPER
    waived: List[str] = Field(default_factory=list)

    @field_validator("beta")
    @classmethod
    def _beta_range(cls, v: Fraction) -> Fraction:
        if not 0 < v < 1:
            raise ValueError(f"beta must lie in (0, 1), got {v}")
        return v

    @field_validator("gamma", "epsilon", "kappa")
    @classmethod
    def _positive(cls, v: Fraction) -> Fraction:
        if v <= 0:
            raise ValueError("must be positive")
        return v

    @property
    def rho0(self) -> Fraction:
        return self.root.radius

    def height(self, n: int) -> Fraction:
        """H_n = 2 d^2 eps kappa rho0^-1 R^(n+1)."""
        return 2 * self.d**2 * self.epsilon * self.kappa / self.rho0 * Fraction(self.R) ** (n + 1)

    def level_radius(self, n: int) -> Fraction:
        """R^-n rho0, the top of the level-n radius window."""
        return self.rho0 / Fraction(self.R) ** n

    def e_k(self, k: int) -> int:
        """Exponent 10 d^2 for k = 1, 2 d otherwise."""
        return 10 * self.d**2 if k == 1 else 2 * self.d

    @property
    def is_paper_exact(self) -> bool:
        return not self.waived


class EkRecord(BaseModel):
    """
    Hyperplane E_k(B) found for a level-n ball.

    Attributes:
        k: Family index
        e_k: Exponent of the main estimate
        normal: (a0, b0, 0, ..., 0) on flattened (x, y, z)
        offset: Integer constant C
        source: Minimal-denominator witness P_0
        source_ball: Grid ball B_0' paired with P_0
        width_bound: omega, bound on the half-width needed around E_k(B)
        approximate: True when the sub-ball grid was subsampled
        candidates: Rational points examined
    """

    model_config = EXACT_MODEL_CONFIG

    k: int = Field(..., ge=1)
    e_k: int
    normal: List[int]
    offset: int
    source: RationalPoint
    source_ball: Ball
    width_bound: Rational
    approximate: bool = False
    candidates: int = 0
