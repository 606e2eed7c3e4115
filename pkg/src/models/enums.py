"""
Enumerations for game, strategy and verdict models.
"""

from enum import Enum


class Ordering(str, Enum):
    """
    Result of an exact three-way comparison.

    Attributes:
        LT: left operand is smaller
        EQ: operands are equal
        GT: left operand is larger
    """

    LT = "lt"
    EQ = "eq"
    GT = "gt"

    @classmethod
    def from_sign(cls, sign: int) -> "Ordering":
        """Map the sign of (left - right) to an ordering."""
        if sign < 0:
            return cls.LT
        if sign > 0:
            return cls.GT
        return cls.EQ


class GameVariant(str, Enum):
    """
    Hyperplane game variant.

    Attributes:
        HAG: hyperplane absolute game (one slab per turn, Bob must avoid it)
        HPG: hyperplane potential game (countable family, gamma-sum budget)
    """

    HAG = "hag"
    HPG = "hpg"


class StrategyMode(str, Enum):
    """
    How strategy constants are obtained.

    Attributes:
        PAPER: R and epsilon derived from the winning-strategy formulas
        RELAXED: caller-supplied R and epsilon, with waived conditions flagged
    """

    PAPER = "paper"
    RELAXED = "relaxed"


class CertificateStatus(str, Enum):
    """Outcome of a truncated badly-approximable certificate."""

    HOLDS = "holds"
    VIOLATED = "violated"


class BoundednessStatus(str, Enum):
    """Finite-horizon boundedness verdict for an orbit trace."""

    BOUNDED_SO_FAR = "bounded_so_far"
    ESCAPED = "escaped"


class GameOutcome(str, Enum):
    """
    Why a play stopped.

    Attributes:
        IN_PROGRESS: play has not stopped yet
        RESOLUTION_REACHED: Bob's radius fell below the configured resolution
        MAX_TURNS: turn limit reached
        BOB_FORFEIT: Bob made an illegal move or had no legal move
        DEGENERATE_FOR_BOB: Bob's radius stalled (did not shrink by R in time)
        ABORTED: a strategy raised a budget error
    """

    IN_PROGRESS = "in_progress"
    RESOLUTION_REACHED = "resolution_reached"
    MAX_TURNS = "max_turns"
    BOB_FORFEIT = "bob_forfeit"
    DEGENERATE_FOR_BOB = "degenerate_for_bob"
    ABORTED = "aborted"


class VerdictKind(str, Enum):
    """
    Finite-horizon winner verdict.

    Attributes:
        ALICE_BY_CERTIFICATE: final point passes the truncated certificate
        ALICE_BY_NEIGHBORHOOD: final point lies in a declared neighborhood
        UNDECIDED: neither holds at the tested truncation
    """

    ALICE_BY_CERTIFICATE = "alice_by_certificate"
    ALICE_BY_NEIGHBORHOOD = "alice_by_neighborhood"
    UNDECIDED = "undecided"
