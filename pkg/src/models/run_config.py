"""
Game file model for the ``play`` command.
"""

from fractions import Fraction
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator, model_validator

from src.models.diophantine import Weight
from src.models.enums import GameVariant, StrategyMode
from src.models.geometry import Ball
from src.models.rational import EXACT_MODEL_CONFIG, Rational
from src.models.state import GameConfig


class RunConfig(BaseModel):
    """
    One play as described by a YAML game file.

    Unset limits fall back to the ``game`` and ``strategy`` config sections;
    command-line flags override both.

    Attributes:
        variant: hag or hpg
        weight: Weight, given as "d:lambda:mu" or a mapping
        beta: Shrink parameter
        gamma: Potential exponent (hpg)
        center: Flattened center of Bob's opening ball
        sigma: Square root of the opening radius
        alice: Alice strategy name
        bob: Bob strategy name
        target: Target point for the chaser Bob
        mode: How PaperAlice's constants are obtained
        R: Level ratio (relaxed mode)
        epsilon: Diophantine scale; also the verdict's epsilon
        max_q: Verdict truncation
    """

    model_config = EXACT_MODEL_CONFIG

    variant: GameVariant = GameVariant.HPG
    weight: Weight = Field(default_factory=lambda: Weight.uniform(2))
    beta: Rational
    gamma: Optional[Rational] = None
    center: List[Rational] = Field(..., min_length=3)
    sigma: Rational
    alice: Literal["empty", "random", "paper"] = "empty"
    bob: Literal["concentric", "chaser", "random"] = "concentric"
    target: Optional[List[Rational]] = None
    mode: StrategyMode = StrategyMode.PAPER
    R: Optional[int] = Field(None, ge=2)
    epsilon: Optional[Rational] = None
    max_q: Optional[int] = Field(None, ge=1)
    max_turns: Optional[int] = Field(None, ge=1)
    stall_turns: Optional[int] = Field(None, ge=1)
    resolution: Optional[Rational] = None
    seed: Optional[int] = None
    run_id: Optional[str] = None

    @field_validator("weight", mode="before")
    @classmethod
    def _parse_weight(cls, v):
        if isinstance(v, str):
            return Weight.parse(v)
        return v

    @model_validator(mode="after")
    def _check_strategy_variant(self) -> "RunConfig":
        # PaperAlice only plays the potential game
        if self.alice == "paper" and self.variant != GameVariant.HPG:
            raise ValueError(f"alice 'paper' requires variant hpg, got {self.variant.value}")
        return self

    def root(self) -> Ball:
        return Ball.from_center(tuple(self.center), self.sigma, d=self.weight.d)

    def game_config(self, max_turns: int, stall_turns: int, resolution: Fraction) -> GameConfig:
        """Game rules, with this file's limits taking precedence over the given defaults."""
        return GameConfig(
            variant=self.variant,
            beta=self.beta,
            gamma=self.gamma,
            max_turns=self.max_turns or max_turns,
            stall_turns=self.stall_turns or stall_turns,
            resolution=self.resolution or resolution,
        )
