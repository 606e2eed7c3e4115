"""
Integration tests for complete plays.

These tests run the referee, both players, level tracking and the verdict
together; the dichotomy batch is marked slow.
"""

import pytest
from fractions import Fraction

from src.agents.alice_agent import EmptyAlice, PaperAlice, RandomAlice
from src.agents.bob_agent import ConcentricBob, RandomBob
from src.models.diophantine import Weight
from src.models.enums import GameOutcome, GameVariant, StrategyMode, VerdictKind
from src.models.geometry import Ball
from src.models.state import GameConfig
from src.tools.referee import revalidate_trace
from src.tools.subdivisions import derive_params
from src.utils.checkpoint_manager import CheckpointManager
from src.workflow import GameRunner, random_targets, run_dichotomy_experiment, run_game


class TestWorkflowIntegration:
    """Integration tests for complete plays."""

    @pytest.fixture
    def w(self):
        return Weight.uniform(2)

    @pytest.fixture
    def hpg_config(self):
        return GameConfig(variant=GameVariant.HPG, beta=Fraction(1, 2), gamma=Fraction(1), max_turns=10)

    @pytest.fixture
    def root(self):
        return Ball.from_center((0, 0, 0), Fraction(1, 2))

    @pytest.fixture
    def params(self, root):
        return derive_params(
            root, Fraction(1, 2), Fraction(2), 2, StrategyMode.RELAXED, R=16, epsilon=Fraction(1, 100000)
        )

    def test_empty_alice_concentric_bob(self, hpg_config, root, w):
        """Test that the final point stays at the center and nothing decides it."""
        trace = run_game(EmptyAlice(), ConcentricBob(), hpg_config, w=w, root=root, epsilon=Fraction(1, 100))

        assert trace.outcome == GameOutcome.MAX_TURNS
        assert trace.turn_index == 10
        assert trace.final_point == (0, 0, 0)
        assert trace.verdict.kind == VerdictKind.UNDECIDED
        assert revalidate_trace(trace) == []

    def test_resolution_stop(self, root, w):
        """Test that plays stop once the radius drops below the resolution."""
        config = GameConfig(
            variant=GameVariant.HPG, beta=Fraction(1, 4), gamma=Fraction(1), resolution=Fraction(1, 100)
        )
        trace = run_game(EmptyAlice(), ConcentricBob(), config, w=w, root=root, epsilon=Fraction(1, 100))

        assert trace.outcome == GameOutcome.RESOLUTION_REACHED
        assert trace.current_ball.radius < Fraction(1, 100)

    def test_deterministic_plays(self, hpg_config, root, w):
        """Test that seeded players reproduce the same trace."""
        traces = [
            run_game(RandomAlice(seed=4), RandomBob(seed=9), hpg_config, w=w, root=root,
                     epsilon=Fraction(1, 100), run_id="repeat")
            for _ in range(2)
        ]

        assert traces[0].model_dump(mode="json") == traces[1].model_dump(mode="json")

    def test_runner_needs_a_root(self, hpg_config):
        with pytest.raises(ValueError):
            GameRunner(EmptyAlice(), ConcentricBob(), hpg_config).play()

    def test_runner_checks_beta(self, params, w):
        config = GameConfig(variant=GameVariant.HPG, beta=Fraction(1, 3), gamma=Fraction(2))
        with pytest.raises(ValueError):
            GameRunner(EmptyAlice(), ConcentricBob(), config, params, w)

    def test_paper_alice_catches_lattice_point(self, params, w, tmp_path):
        """
        Test the level strategy at a root centred on a lattice point.

        The root is a prime level-0 ball, so Alice declares E_1 through (0, 0)
        at once; Bob stays concentric and the final point lies in that slab.
        """
        config = GameConfig(
            variant=GameVariant.HPG,
            beta=Fraction(1, 2),
            gamma=Fraction(2),
            resolution=Fraction(1, 60),
            max_turns=50,
        )
        manager = CheckpointManager(str(tmp_path))
        alice = PaperAlice(params, w, Fraction(1, 60))
        runner = GameRunner(alice, ConcentricBob(), config, params, w, checkpoint_manager=manager)
        trace = runner.run(run_id="paper_origin", max_q=10)

        assert trace.outcome == GameOutcome.RESOLUTION_REACHED
        assert trace.first_turns[0] == 0
        assert trace.prime_levels == [0]
        assert len(trace.turns[0].alice) == 1
        assert trace.turns[0].flags.alice_legal
        assert trace.verdict.kind == VerdictKind.ALICE_BY_NEIGHBORHOOD
        assert trace.verdict.turn == 0
        assert trace.verdict.k == 1
        assert manager.load("paper_origin", stage="final") is not None

    def test_random_targets(self, root):
        targets = random_targets(root, 3, seed=2)

        assert len(targets) == 3
        assert targets == random_targets(root, 3, seed=2)
        assert all(max(abs(c) for c in t) <= root.radius for t in targets)

    @pytest.mark.slow
    def test_dichotomy_experiment(self, w):
        """Test that every play of a small batch is accounted for."""
        root = Ball.from_center((Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)), Fraction(1, 2))
        params = derive_params(
            root, Fraction(1, 2), Fraction(2), 2, StrategyMode.RELAXED, R=16, epsilon=Fraction(1, 100000)
        )
        report = run_dichotomy_experiment(params, w, 2, seed=0, max_turns=30, max_q=20)

        assert report.games == 2
        accounted = report.completed + report.forfeits + report.degenerate + report.aborted
        assert accounted == 2
        assert report.by_certificate + report.by_neighborhood + report.undecided == report.completed
        assert len(report.run_ids) == 2
