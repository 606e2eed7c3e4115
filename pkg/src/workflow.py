"""
Game driver for refereed plays.

Runs Alice against Bob under the referee, tracks the level markers Alice's
level strategy needs, enforces the stall rule, and attaches a finite-horizon
verdict to the finished trace.
"""

import random
from fractions import Fraction
from typing import List, Optional

from src.agents.alice_agent import PaperAlice
from src.agents.base_agent import BaseAlice, BaseBob
from src.agents.bob_agent import ChaserBob, RandomBob
from src.models.diophantine import Weight
from src.models.enums import GameOutcome, GameVariant, VerdictKind
from src.models.errors import BudgetExceededError, NoLegalMoveError
from src.models.geometry import Ball
from src.models.report import DichotomyReport
from src.models.state import GameConfig, GameTrace
from src.models.strategy import StrategyParams
from src.tools.diophantine import DEFAULT_CANDIDATE_BUDGET
from src.tools.referee import evaluate_win, stalled, step
from src.tools.subdivisions import DEFAULT_GRID_CAP, classify_ball, prime_check
from src.utils.checkpoint_manager import CheckpointManager
from src.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_MAX_Q = 60
DEFAULT_STALL_FACTOR = 2


class GameRunner:
    """
    Plays one game between two strategies.

    Level markers (i_n and the prime levels) are tracked whenever strategy
    params and a weight are given, so PaperAlice can read them off the state.
    """

    def __init__(
        self,
        alice: BaseAlice,
        bob: BaseBob,
        config: GameConfig,
        params: Optional[StrategyParams] = None,
        w: Optional[Weight] = None,
        budget: int = DEFAULT_CANDIDATE_BUDGET,
        checkpoint_manager: Optional[CheckpointManager] = None,
    ):
        """
        Initialize the runner.

        Args:
            alice: Alice strategy
            bob: Bob strategy
            config: Game rules
            params: Strategy constants (needed for level tracking)
            w: Weight (needed for level tracking and the verdict)
            budget: Candidate cap for prime checks and certificates
            checkpoint_manager: Saves the final trace when given
        """
        if params is not None and params.beta != config.beta:
            raise ValueError(f"params beta {params.beta} differs from game beta {config.beta}")
        if params is not None and w is not None and params.d != w.d:
            raise ValueError(f"params have d={params.d}, weight has d={w.d}")
        self.alice = alice
        self.bob = bob
        self.config = config
        self.params = params
        self.w = w
        self.budget = budget
        self.checkpoint_manager = checkpoint_manager

    @property
    def tracks_levels(self) -> bool:
        return self.params is not None and self.w is not None

    def _track_level(self, state: GameTrace, index: int) -> None:
        ball = state.balls()[index]
        n = classify_ball(ball, self.params)
        if index > 0:
            state.turns[-1] = state.turns[-1].model_copy(update={"level": n})
        if n is None or n in state.first_turns:
            return
        parent_flag = (n - 1) in state.prime_levels
        prime = prime_check(ball, n, self.params, self.w, parent_flag, self.budget)
        state.mark_level(n, index, prime)
        logger.debug(f"level {n} opens at B_{index} (prime: {prime})")

    def play(self, root: Optional[Ball] = None, run_id: Optional[str] = None) -> GameTrace:
        """
        Play until the resolution or turn limit is reached, or the play ends early.

        Args:
            root: Bob's opening ball (defaults to the params' root ball)
            run_id: Trace identifier

        Returns:
            The trace, without verdict
        """
        if root is None:
            if self.params is None:
                raise ValueError("an opening ball or strategy params are required")
            root = self.params.root
        config = self.config
        state = GameTrace(
            run_id=run_id or f"{config.variant.value}_{self.alice.name}_{self.bob.name}",
            config=config,
            weight=self.w,
            params=self.params,
            alice=self.alice.name,
            bob=self.bob.name,
            root=root,
        )
        factor = self.params.R if self.params is not None else DEFAULT_STALL_FACTOR
        logger.info(f"Starting play {state.run_id}: {self.alice.name} vs {self.bob.name}")

        try:
            if self.tracks_levels:
                self._track_level(state, 0)

            while not state.is_terminated:
                if state.turn_index >= config.max_turns:
                    state.terminate(GameOutcome.MAX_TURNS)
                    break
                if state.current_ball.radius < config.resolution:
                    state.terminate(GameOutcome.RESOLUTION_REACHED)
                    break

                family = self.alice.run(state)
                try:
                    reply = self.bob.run(state, family)
                except NoLegalMoveError as e:
                    state.terminate(GameOutcome.BOB_FORFEIT, str(e))
                    break

                step(state, family, reply)
                if state.is_terminated:
                    break
                if self.tracks_levels:
                    self._track_level(state, state.turn_index)
                if stalled(state, factor):
                    state.terminate(
                        GameOutcome.DEGENERATE_FOR_BOB,
                        f"radius did not shrink by {factor} within {config.stall_turns} turns",
                    )
        except BudgetExceededError as e:
            logger.warning(f"Play {state.run_id} aborted: {e}")
            state.terminate(GameOutcome.ABORTED, str(e))

        logger.info(f"Play {state.run_id} ended after {state.turn_index} turns: {state.outcome.value}")
        return state

    def run(
        self,
        root: Optional[Ball] = None,
        run_id: Optional[str] = None,
        max_q: int = DEFAULT_MAX_Q,
        epsilon: Optional[Fraction] = None,
    ) -> GameTrace:
        """
        Play and attach the verdict.

        Args:
            root: Bob's opening ball
            run_id: Trace identifier
            max_q: Certificate truncation Q
            epsilon: Certificate epsilon (defaults to the params' epsilon)

        Returns:
            The finished trace

        Example:
            >>> runner = GameRunner(EmptyAlice(), ConcentricBob(), config, params, w)
            >>> trace = runner.run(max_q=20)
            >>> trace.verdict.kind
        """
        state = self.play(root, run_id)
        if epsilon is None and self.params is not None:
            epsilon = self.params.epsilon
        if self.w is not None and epsilon is not None:
            state.verdict = evaluate_win(state, self.w, max_q, Fraction(epsilon), self.budget)
            logger.info(f"Verdict for {state.run_id}: {state.verdict.kind.value}")

        if self.checkpoint_manager:
            self.checkpoint_manager.save(state, stage="final")
        return state


def run_game(
    alice: BaseAlice,
    bob: BaseBob,
    config: GameConfig,
    params: Optional[StrategyParams] = None,
    w: Optional[Weight] = None,
    root: Optional[Ball] = None,
    max_q: int = DEFAULT_MAX_Q,
    epsilon: Optional[Fraction] = None,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
    run_id: Optional[str] = None,
) -> GameTrace:
    """Play one game and return its trace with verdict."""
    runner = GameRunner(alice, bob, config, params, w, budget)
    return runner.run(root=root, run_id=run_id, max_q=max_q, epsilon=epsilon)


def random_targets(root: Ball, count: int, seed: int, max_denominator: int = 6) -> List[tuple]:
    """
    Rational points of small denominator inside the root ball.

    Each coordinate is center + rho * j / q with 1 <= q <= max_denominator.
    """
    rng = random.Random(seed)
    targets = []
    for _ in range(count):
        point = []
        for c in root.center:
            q = rng.randint(1, max_denominator)
            point.append(c + root.radius * Fraction(rng.randint(-q, q), q))
        targets.append(tuple(point))
    return targets


def run_dichotomy_experiment(
    params: StrategyParams,
    w: Weight,
    games: int,
    seed: int = 0,
    max_turns: int = 400,
    resolution: Fraction = Fraction(1, 10**6),
    max_q: int = DEFAULT_MAX_Q,
    epsilon: Optional[Fraction] = None,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
    grid_cap: int = DEFAULT_GRID_CAP,
) -> DichotomyReport:
    """
    PaperAlice against chaser and random Bobs in the potential game.

    Even-numbered plays chase a rational target of small denominator, odd ones
    use a seeded random Bob.

    Args:
        params: Strategy constants (relaxed mode for enumerable ranges)
        w: Weight
        games: Number of plays
        seed: Base seed
        max_turns: Turn limit per play
        resolution: Radius at which a play completes
        max_q: Certificate truncation Q
        epsilon: Certificate epsilon (defaults to params.epsilon)
        budget: Candidate cap
        grid_cap: Sub-ball grid cap

    Returns:
        DichotomyReport
    """
    config = GameConfig(
        variant=GameVariant.HPG,
        beta=params.beta,
        gamma=params.gamma,
        max_turns=max_turns,
        resolution=resolution,
    )
    targets = random_targets(params.root, (games + 1) // 2, seed)
    report = DichotomyReport(games=games)

    for g in range(games):
        alice = PaperAlice(params, w, resolution, budget, grid_cap)
        bob: BaseBob = ChaserBob(targets[g // 2]) if g % 2 == 0 else RandomBob(seed=seed + g)
        run_id = f"dichotomy_{seed}_{g}"
        runner = GameRunner(alice, bob, config, params, w, budget)
        trace = runner.run(run_id=run_id, max_q=max_q, epsilon=epsilon)
        report.run_ids.append(run_id)
        if trace.approximations:
            report.approximate += 1

        if trace.outcome == GameOutcome.BOB_FORFEIT:
            report.forfeits += 1
            continue
        if trace.outcome == GameOutcome.DEGENERATE_FOR_BOB:
            report.degenerate += 1
            continue
        if trace.outcome == GameOutcome.ABORTED:
            report.aborted += 1
            continue

        report.completed += 1
        kind = trace.verdict.kind
        if kind == VerdictKind.ALICE_BY_CERTIFICATE:
            report.by_certificate += 1
        elif kind == VerdictKind.ALICE_BY_NEIGHBORHOOD:
            report.by_neighborhood += 1
        else:
            report.undecided += 1

    logger.info(
        f"Dichotomy: {report.completed}/{games} completed, "
        f"{report.by_certificate} by certificate, {report.by_neighborhood} by neighborhood"
    )
    return report
