"""
Bob strategies.

Every Bob picks a desired center and a radius ratio, clips the center so the
new ball stays inside the current one, and in the absolute game shifts it
off Alice's slab along the sign pattern of the slab normal (the cheapest
direction in the sup norm).
"""

import random
from fractions import Fraction
from math import ceil
from typing import List, Optional, Sequence, Tuple

from src.agents.base_agent import BaseBob
from src.models.enums import GameVariant
from src.models.errors import DimensionMismatchError, NoLegalMoveError
from src.models.geometry import Ball, HyperplaneNbhd
from src.models.state import GameState
from src.tools.exact import rational_power, sqrt_at_least
from src.tools.geometry import ball_avoids_nbhd, ball_subset
from src.tools.referee import alice_hag_legal
from src.utils.logger import get_logger

logger = get_logger(__name__)

RATIO_DENOMINATOR = 1000

Point = Tuple[Fraction, ...]


def shrink_ratio(factor: Fraction) -> Fraction:
    """
    Rational tau in [sqrt(factor), 1] for radius factor tau**2 >= factor.

    Exact for square factors, otherwise rounded up to a multiple of 1/1000.

    Example:
        >>> shrink_ratio(Fraction(1, 4))
        Fraction(1, 2)
    """
    factor = Fraction(factor)
    exact = rational_power(factor, Fraction(1, 2))
    if exact is not None:
        return exact
    tau = Fraction(ceil(sqrt_at_least(factor) * RATIO_DENOMINATOR), RATIO_DENOMINATOR)
    return min(tau, Fraction(1))


def _clip(point: Point, anchor: Point, slack: Fraction) -> Point:
    return tuple(min(max(p, a - slack), a + slack) for p, a in zip(point, anchor))


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def avoiding_centers(center: Point, radius: Fraction, nbhd: HyperplaneNbhd) -> List[Point]:
    """
    Centers that take a ball of the given radius off the neighborhood.

    Returns the center itself when it already avoids, else the two minimal
    shifts (nearer side first) along sign(normal).
    """
    value = nbhd.evaluate(center)
    need = radius * nbhd.norm1 + nbhd.width * sqrt_at_least(nbhd.norm2_squared)
    if abs(value) >= need:
        return [center]
    side = _sign(value) or 1
    shifted = []
    for s in (side, -side):
        t = (need - s * value) / nbhd.norm1
        shifted.append(tuple(c + s * t * _sign(Fraction(n)) for c, n in zip(center, nbhd.normal)))
    return shifted


def place_ball(
    state: GameState,
    family: Sequence[HyperplaneNbhd],
    desired: Point,
    ratios: Sequence[Fraction],
) -> Ball:
    """
    Legal ball closest to ``desired`` for the first workable ratio.

    Args:
        state: Play in progress
        family: Alice's move this turn
        desired: Desired center
        ratios: Candidate sigma ratios tau, tried in order

    Raises:
        NoLegalMoveError: If no ratio admits a legal ball
    """
    ball = state.current_ball
    if len(desired) != ball.dim:
        raise DimensionMismatchError(ball.dim, len(desired), "target")
    config = state.config
    avoid: Optional[HyperplaneNbhd] = None
    if config.variant == GameVariant.HAG and len(family) == 1:
        if alice_hag_legal(family[0], ball, config.beta)[0]:
            avoid = family[0]

    for tau in ratios:
        sigma = ball.sqrt_radius * tau
        radius = sigma * sigma
        center = _clip(tuple(Fraction(c) for c in desired), ball.center, ball.radius - radius)
        options = [center] if avoid is None else avoiding_centers(center, radius, avoid)
        for option in options:
            candidate = Ball.from_center(option, sigma)
            if not ball_subset(candidate, ball):
                continue
            if avoid is not None and not ball_avoids_nbhd(candidate, avoid):
                continue
            return candidate
    raise NoLegalMoveError(f"no legal ball inside {ball.describe()}")


class ConcentricBob(BaseBob):
    """
    Shrinks around the current center by a fixed radius factor.

    Only a slab through the center moves him off it.
    """

    def __init__(self, factor: Optional[Fraction] = None):
        self.factor = None if factor is None else Fraction(factor)

    def execute(self, state: GameState, family: Sequence[HyperplaneNbhd]) -> Ball:
        factor = self.factor if self.factor is not None else state.config.beta
        if factor < state.config.beta or factor >= 1:
            raise ValueError(f"shrink factor {factor} outside [beta, 1)")
        ball = state.current_ball
        ratios = [shrink_ratio(factor), shrink_ratio(state.config.beta)]
        return place_ball(state, family, ball.center, ratios)


class ChaserBob(BaseBob):
    """Steers toward a target point as fast as legality allows."""

    def __init__(self, target: Sequence[Fraction]):
        self.target: Point = tuple(Fraction(t) for t in target)

    def execute(self, state: GameState, family: Sequence[HyperplaneNbhd]) -> Ball:
        ratio = shrink_ratio(state.config.beta)
        return place_ball(state, family, self.target, [ratio])


class RandomBob(BaseBob):
    """Random nested balls, deterministic for a seed."""

    def __init__(self, seed: int = 0, steps: int = 8):
        self.rng = random.Random(seed)
        self.steps = steps

    def execute(self, state: GameState, family: Sequence[HyperplaneNbhd]) -> Ball:
        ball = state.current_ball
        tight = shrink_ratio(state.config.beta)
        loose = (tight + 1) / 2
        tau = self.rng.choice([tight, loose])
        slack = ball.radius * (1 - tau * tau)
        desired = tuple(
            c + slack * Fraction(self.rng.randint(-self.steps, self.steps), self.steps)
            for c in ball.center
        )
        return place_ball(state, family, desired, [tau, tight])


def build_bob(name: str, seed: int = 0, target: Optional[Sequence[Fraction]] = None) -> BaseBob:
    """
    Build a Bob strategy by name ("concentric", "chaser" or "random").

    Raises:
        ValueError: On an unknown name or a chaser without target
    """
    if name == "concentric":
        return ConcentricBob()
    if name == "random":
        return RandomBob(seed=seed)
    if name == "chaser":
        if target is None:
            raise ValueError("chaser Bob needs a target point")
        return ChaserBob(target)
    raise ValueError(f"unknown Bob strategy: {name!r}")
