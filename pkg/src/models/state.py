"""
Game state model for refereed plays.

The same model serves as the live state handed to players and as the trace
persisted after the play ends.
"""

from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from pydantic import BaseModel, ConfigDict, Field, model_validator

from src.models.diophantine import CertificateResult, Weight
from src.models.enums import GameOutcome, GameVariant, VerdictKind
from src.models.geometry import Ball, HyperplaneNbhd
from src.models.rational import EXACT_MODEL_CONFIG, Rational
from src.models.strategy import StrategyParams


class GameConfig(BaseModel):
    """
    Rules of one play.

    Attributes:
        variant: HAG or HPG
        beta: Shrink parameter
        gamma: Potential exponent (HPG only)
        max_turns: Turn limit
        resolution: The play stops once Bob's radius drops below this
        stall_turns: Turns Bob may take to shrink his radius by a factor R
    """

    model_config = EXACT_MODEL_CONFIG

    variant: GameVariant = Field(..., description="Game variant")
    beta: Rational = Field(..., description="Shrink parameter beta")
    gamma: Optional[Rational] = Field(None, description="Potential exponent (HPG)")
    max_turns: int = Field(400, ge=1, description="Turn limit")
    resolution: Rational = Field(Fraction(1, 10**9), description="Radius resolution")
    stall_turns: int = Field(64, ge=1, description="Stall window in turns")

    @model_validator(mode="after")
    def _check_variant(self) -> "GameConfig":
        if self.resolution <= 0:
            raise ValueError("resolution must be positive")
        if self.variant == GameVariant.HAG:
            if not 0 < self.beta < Fraction(1, 3):
                raise ValueError(f"HAG requires 0 < beta < 1/3, got {self.beta}")
        else:
            if not 0 < self.beta < 1:
                raise ValueError(f"HPG requires 0 < beta < 1, got {self.beta}")
            if self.gamma is None or self.gamma <= 0:
                raise ValueError("HPG requires gamma > 0")
        return self


class TurnFlags(BaseModel):
    """Legality flags of one turn."""

    model_config = EXACT_MODEL_CONFIG

    alice_legal: bool = True
    bob_legal: bool = True
    reason: Optional[str] = Field(None, description="Why a move was rejected")


class TurnRecord(BaseModel):
    """
    One completed turn i: Alice's move at B_i and Bob's reply B_{i+1}.

    Attributes:
        index: Turn index i
        ball: Bob's reply B_{i+1}
        alice: Alice's move as submitted (voided when flags.alice_legal is False)
        flags: Legality flags
        level: Level n of B_{i+1}, when a strategy tracks levels
    """

    model_config = EXACT_MODEL_CONFIG

    index: int = Field(..., ge=0)
    ball: Ball
    alice: List[HyperplaneNbhd] = Field(default_factory=list)
    flags: TurnFlags = Field(default_factory=TurnFlags)
    level: Optional[int] = None

    @property
    def effective_family(self) -> List[HyperplaneNbhd]:
        """Alice's move as it binds Bob: empty when voided."""
        return list(self.alice) if self.flags.alice_legal else []


class WinVerdict(BaseModel):
    """
    Finite-horizon verdict of a finished play.

    Attributes:
        kind: Which branch decided the verdict
        k: Family index of the containing neighborhood (neighborhood branch)
        turn: Turn at which that neighborhood was declared
        epsilon: Tested epsilon
        max_q: Tested denominator bound
        certificate: Certificate run on the final point
    """

    model_config = EXACT_MODEL_CONFIG

    kind: VerdictKind
    k: Optional[int] = None
    turn: Optional[int] = None
    epsilon: Rational
    max_q: int = Field(..., ge=1)
    certificate: Optional[CertificateResult] = None

    @property
    def alice_wins(self) -> bool:
        return self.kind != VerdictKind.UNDECIDED


class GameTrace(BaseModel):
    """
    State of a play, from Bob's opening ball to the verdict.

    Balls are indexed as in the play: B_0 is ``root`` and B_{i+1} is
    ``turns[i].ball``. Level markers record i_n, the first index with
    B_i in level n, and ``prime_levels`` the levels n whose first ball
    B_{i_n} is prime.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    run_id: str = Field(..., description="Run identifier")
    config: GameConfig
    weight: Optional[Weight] = None
    params: Optional[StrategyParams] = None
    alice: str = Field("", description="Alice strategy name")
    bob: str = Field("", description="Bob strategy name")
    root: Ball = Field(..., description="Bob's opening ball B_0")
    turns: List[TurnRecord] = Field(default_factory=list)
    first_turns: Dict[int, int] = Field(default_factory=dict, description="Level n -> i_n")
    prime_levels: List[int] = Field(default_factory=list, description="Levels in N")
    outcome: GameOutcome = GameOutcome.IN_PROGRESS
    rejected_ball: Optional[Ball] = Field(None, description="Bob's illegal reply, if any")
    verdict: Optional[WinVerdict] = None
    errors: List[str] = Field(default_factory=list)
    approximations: List[str] = Field(default_factory=list)

    @property
    def turn_index(self) -> int:
        """Index i of the turn about to be played."""
        return len(self.turns)

    @property
    def current_ball(self) -> Ball:
        return self.turns[-1].ball if self.turns else self.root

    @property
    def final_point(self) -> Tuple[Fraction, ...]:
        """Center of the last ball."""
        return self.current_ball.center

    @property
    def is_terminated(self) -> bool:
        return self.outcome != GameOutcome.IN_PROGRESS

    def balls(self) -> List[Ball]:
        """B_0, B_1, ... in play order."""
        return [self.root] + [t.ball for t in self.turns]

    def record_turn(self, record: TurnRecord) -> None:
        if self.is_terminated:
            raise ValueError(f"play already ended: {self.outcome.value}")
        if record.index != self.turn_index:
            raise ValueError(f"turn {record.index} recorded out of order (expected {self.turn_index})")
        self.turns.append(record)

    def terminate(self, outcome: GameOutcome, reason: Optional[str] = None) -> None:
        """
        End the play.

        Args:
            outcome: Why the play stopped
            reason: Optional diagnostic kept in ``errors``
        """
        self.outcome = outcome
        if reason:
            self.errors.append(reason)

    def mark_level(self, n: int, index: int, prime: bool) -> None:
        """Record i_n = index for a newly reached level n."""
        if n in self.first_turns:
            return
        self.first_turns[n] = index
        if prime:
            self.prime_levels.append(n)

    def level_opened_at(self, index: int) -> Optional[int]:
        """The level n with i_n == index, if any."""
        for n, i in self.first_turns.items():
            if i == index:
                return n
        return None

    def declared_neighborhoods(self) -> List[Tuple[int, HyperplaneNbhd]]:
        """Every binding neighborhood Alice declared, with its turn index."""
        return [(t.index, nbhd) for t in self.turns for nbhd in t.effective_family]

    def note_approximation(self, message: str) -> None:
        if message not in self.approximations:
            self.approximations.append(message)

    def get_summary(self) -> dict:
        """
        Get summary of the play.

        Returns:
            Dictionary with the play's key facts
        """
        return {
            "run_id": self.run_id,
            "variant": self.config.variant.value,
            "alice": self.alice,
            "bob": self.bob,
            "turns": self.turn_index,
            "outcome": self.outcome.value,
            "final_radius": str(self.current_ball.radius),
            "levels_reached": len(self.first_turns),
            "prime_levels": list(self.prime_levels),
            "neighborhoods_declared": len(self.declared_neighborhoods()),
            "verdict": self.verdict.kind.value if self.verdict else None,
            "approximate": bool(self.approximations),
        }


# Live plays and persisted traces share one model.
GameState = GameTrace
