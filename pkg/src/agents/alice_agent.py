"""
Alice strategies.

PaperAlice plays the level strategy: on the first turn i_n of each prime
level n she declares the neighborhoods of E_k(B_{i_n}) of widths
3 R^-(n+k) rho0 and otherwise moves empty. EmptyAlice never declares
anything and RandomAlice fuzzes the referee with random slabs.
"""

import random
from fractions import Fraction
from typing import List, Optional

from src.agents.base_agent import BaseAlice
from src.models.diophantine import Weight
from src.models.enums import GameVariant
from src.models.geometry import HyperplaneNbhd
from src.models.state import GameState
from src.models.strategy import StrategyParams
from src.tools.diophantine import DEFAULT_CANDIDATE_BUDGET
from src.tools.referee import gamma_sum_legal
from src.tools.subdivisions import DEFAULT_GRID_CAP, family_budget_holds, find_Ek, k_max_for
from src.utils.logger import get_logger

logger = get_logger(__name__)


def legal_prefix(
    family: List[HyperplaneNbhd], bound: Fraction, gamma: Fraction
) -> List[HyperplaneNbhd]:
    """
    Longest leading part of ``family`` whose gamma-sum of widths stays within ``bound**gamma``.

    Example:
        >>> wide = HyperplaneNbhd(normal=[1, 0, 0], offset=0, width=Fraction(1, 2))
        >>> len(legal_prefix([wide, wide], Fraction(1, 2), Fraction(1)))
        1
    """
    kept: List[HyperplaneNbhd] = []
    for nbhd in family:
        if not gamma_sum_legal([n.width for n in kept + [nbhd]], bound, gamma):
            break
        kept.append(nbhd)
    return kept


class EmptyAlice(BaseAlice):
    """Always makes the empty move."""

    def execute(self, state: GameState) -> List[HyperplaneNbhd]:
        return []


class PaperAlice(BaseAlice):
    """
    Level strategy of the potential game.

    Requires the driver to track level markers i_n and the prime levels on
    the state (see ``GameRunner``).
    """

    def __init__(
        self,
        params: StrategyParams,
        w: Weight,
        resolution: Fraction,
        budget: int = DEFAULT_CANDIDATE_BUDGET,
        grid_cap: int = DEFAULT_GRID_CAP,
    ):
        """
        Initialize the strategy.

        Args:
            params: Strategy constants
            w: Weight
            resolution: Families are truncated at k_max for this resolution
            budget: Candidate cap per E_k search
            grid_cap: Sub-ball grid cap per E_k search
        """
        if params.d != w.d:
            raise ValueError(f"params have d={params.d}, weight has d={w.d}")
        self.params = params
        self.w = w
        self.resolution = Fraction(resolution)
        self.budget = budget
        self.grid_cap = grid_cap
        logger.info(f"PaperAlice initialized (R={params.R}, mode={params.mode.value})")

    def family_for(self, state: GameState, n: int) -> List[HyperplaneNbhd]:
        """Neighborhoods of E_k(B) for k = 1..k_max at the current level-n ball."""
        params = self.params
        ball = state.current_ball
        family: List[HyperplaneNbhd] = []
        for k in range(1, k_max_for(n, params, self.resolution) + 1):
            record = find_Ek(ball, n, k, params, self.w, self.budget, self.grid_cap)
            if record is None:
                continue
            if record.approximate:
                state.note_approximation(f"E_{k} at level {n}: sub-ball grid subsampled")
            family.append(
                HyperplaneNbhd(
                    normal=record.normal,
                    offset=record.offset,
                    width=3 * params.level_radius(n + k),
                    k=k,
                )
            )
        return family

    def execute(self, state: GameState) -> List[HyperplaneNbhd]:
        if state.config.variant != GameVariant.HPG:
            raise ValueError("PaperAlice plays the potential game only")
        n = state.level_opened_at(state.turn_index)
        if n is None or n not in state.prime_levels:
            return []
        family = self.family_for(state, n)
        rho = state.current_ball.radius
        bound = state.config.beta * rho
        gamma = state.config.gamma
        # Series bound over every k; valid only under the params' own rules
        covered = (
            (self.params.beta, self.params.gamma) == (state.config.beta, gamma)
            and family_budget_holds(self.params, n, rho)
        )
        if not (covered or gamma_sum_legal([nbhd.width for nbhd in family], bound, gamma)):
            # Keep the widest neighborhoods (lowest k) that fit the potential budget
            kept = legal_prefix(family, bound, gamma)
            logger.warning(
                f"level {n} family exceeds the gamma budget; truncated {len(family)} -> {len(kept)}"
            )
            top = kept[-1].k if kept else 0
            state.note_approximation(f"level {n} family truncated to k <= {top}")
            family = kept
        logger.info(f"level {n}: declaring {len(family)} hyperplane neighborhoods")
        return family


class RandomAlice(BaseAlice):
    """
    Random slabs near the current center, for fuzzing.

    Widths are drawn up to ``width_scale * beta * rho``; a scale above 1
    produces illegal moves that the referee must void.
    """

    def __init__(
        self,
        seed: int = 0,
        max_family: int = 3,
        width_scale: Fraction = Fraction(1),
        max_coefficient: int = 3,
    ):
        self.rng = random.Random(seed)
        self.max_family = max_family
        self.width_scale = Fraction(width_scale)
        self.max_coefficient = max_coefficient

    def _normal(self, dim: int) -> List[int]:
        c = self.max_coefficient
        while True:
            normal = [self.rng.randint(-c, c) for _ in range(dim)]
            if any(normal):
                return normal

    def _nbhd(self, state: GameState, width_cap: Fraction) -> HyperplaneNbhd:
        ball = state.current_ball
        normal = self._normal(ball.dim)
        value = sum(Fraction(n) * c for n, c in zip(normal, ball.center))
        offset = round(value) + self.rng.randint(-1, 1)
        width = width_cap * self.width_scale * Fraction(self.rng.randint(1, 16), 16)
        return HyperplaneNbhd(normal=normal, offset=offset, width=width)

    def execute(self, state: GameState) -> List[HyperplaneNbhd]:
        cap = state.config.beta * state.current_ball.radius
        if state.config.variant == GameVariant.HAG:
            if self.rng.random() < 0.25:
                return []
            return [self._nbhd(state, cap)]
        size = self.rng.randint(0, self.max_family)
        # Spread the budget so scale 1 stays legal for gamma >= 1.
        share = cap / size if size else cap
        return [self._nbhd(state, share) for _ in range(size)]


def build_alice(
    name: str,
    params: Optional[StrategyParams] = None,
    w: Optional[Weight] = None,
    resolution: Fraction = Fraction(1, 10**9),
    seed: int = 0,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
    grid_cap: int = DEFAULT_GRID_CAP,
) -> BaseAlice:
    """
    Build an Alice strategy by name ("empty", "paper" or "random").

    Raises:
        ValueError: On an unknown name or missing params for "paper"
    """
    if name == "empty":
        return EmptyAlice()
    if name == "random":
        return RandomAlice(seed=seed)
    if name == "paper":
        if params is None or w is None:
            raise ValueError("paper Alice needs strategy params and a weight")
        return PaperAlice(params, w, resolution, budget, grid_cap)
    raise ValueError(f"unknown Alice strategy: {name!r}")
