"""
Unit tests for data models.
"""

import pytest
from fractions import Fraction

from src.models.diophantine import Weight
from src.models.enums import GameOutcome, GameVariant, Ordering, StrategyMode
from src.models.geometry import Ball
from src.models.report import DichotomyReport, SuiteReport
from src.models.rational import format_rational, parse_rational
from src.models.run_config import RunConfig
from src.models.state import GameConfig, GameTrace, TurnRecord
from src.models.strategy import StrategyParams


class TestRational:
    """Tests for exact rational parsing."""

    @pytest.mark.parametrize(
        "value,expected",
        [
            ("6/8", Fraction(3, 4)),
            (" -2 ", Fraction(-2)),
            ("1.25", Fraction(5, 4)),
            (3, Fraction(3)),
            (Fraction(1, 7), Fraction(1, 7)),
        ],
    )
    def test_parse(self, value, expected):
        """Test accepted inputs."""
        assert parse_rational(value) == expected

    @pytest.mark.parametrize("value", [0.5, True, "1/0", "abc", None])
    def test_parse_rejects(self, value):
        """Test that floats and malformed values are rejected."""
        with pytest.raises(ValueError):
            parse_rational(value)

    def test_format(self):
        """Test canonical output."""
        assert format_rational(Fraction(6, 8)) == "3/4"
        assert format_rational(Fraction(4, 2)) == "2"

    def test_ordering_from_sign(self):
        """Test mapping signs to orderings."""
        assert Ordering.from_sign(-3) == Ordering.LT
        assert Ordering.from_sign(0) == Ordering.EQ
        assert Ordering.from_sign(2) == Ordering.GT


class TestGameConfig:
    """Tests for GameConfig model."""

    def test_hag_beta_range(self):
        """Test that HAG needs beta below 1/3."""
        with pytest.raises(ValueError):
            GameConfig(variant=GameVariant.HAG, beta=Fraction(1, 3))

    def test_hpg_needs_gamma(self):
        """Test that HPG needs a positive gamma."""
        with pytest.raises(ValueError):
            GameConfig(variant=GameVariant.HPG, beta=Fraction(1, 2))

    def test_defaults(self):
        """Test default limits."""
        config = GameConfig(variant=GameVariant.HPG, beta="1/2", gamma=1)
        assert config.beta == Fraction(1, 2)
        assert config.max_turns == 400
        assert config.stall_turns == 64

    def test_float_rejected(self):
        """Test that exact fields refuse floats."""
        with pytest.raises(ValueError):
            GameConfig(variant=GameVariant.HPG, beta=0.5, gamma=1)


class TestGameTrace:
    """Tests for GameTrace model."""

    @pytest.fixture
    def trace(self):
        config = GameConfig(variant=GameVariant.HPG, beta=Fraction(1, 2), gamma=Fraction(1))
        return GameTrace(run_id="run", config=config, root=Ball.from_center((0, 0, 0), 1))

    def test_initial_state(self, trace):
        """Test a fresh trace."""
        assert trace.turn_index == 0
        assert trace.current_ball == trace.root
        assert trace.final_point == (0, 0, 0)
        assert not trace.is_terminated

    def test_record_turn(self, trace):
        """Test recording turns in order."""
        ball = Ball.from_center((0, 0, 0), Fraction(1, 2))
        trace.record_turn(TurnRecord(index=0, ball=ball))

        assert trace.turn_index == 1
        assert trace.balls() == [trace.root, ball]

    def test_record_turn_out_of_order(self, trace):
        """Test that turn indices must follow the play."""
        with pytest.raises(ValueError):
            trace.record_turn(TurnRecord(index=3, ball=trace.root))

    def test_record_after_end(self, trace):
        """Test that a terminated play takes no more turns."""
        trace.terminate(GameOutcome.MAX_TURNS)
        with pytest.raises(ValueError):
            trace.record_turn(TurnRecord(index=0, ball=trace.root))

    def test_level_markers(self, trace):
        """Test i_n bookkeeping and prime levels."""
        trace.mark_level(0, 0, True)
        trace.mark_level(1, 3, False)
        trace.mark_level(1, 5, True)

        assert trace.first_turns == {0: 0, 1: 3}
        assert trace.prime_levels == [0]
        assert trace.level_opened_at(3) == 1
        assert trace.level_opened_at(4) is None

    def test_approximations_deduplicated(self, trace):
        """Test approximation notes."""
        trace.note_approximation("grid")
        trace.note_approximation("grid")
        assert trace.approximations == ["grid"]

    def test_summary(self, trace):
        """Test the play summary."""
        trace.terminate(GameOutcome.RESOLUTION_REACHED)
        summary = trace.get_summary()

        assert summary["run_id"] == "run"
        assert summary["outcome"] == "resolution_reached"
        assert summary["final_radius"] == "1"
        assert summary["verdict"] is None


class TestStrategyParams:
    """Tests for StrategyParams model."""

    @pytest.fixture
    def params(self):
        return StrategyParams(
            d=2,
            beta=Fraction(1, 2),
            gamma=Fraction(1),
            root=Ball.from_center((0, 0, 0), Fraction(1, 2)),
            kappa=Fraction(5, 4),
            R=16,
            epsilon=Fraction(1, 1000),
            mode=StrategyMode.RELAXED,
        )

    def test_height(self, params):
        """H_n = 2 d^2 eps kappa rho0^-1 R^(n+1)."""
        assert params.height(0) == 8 * Fraction(1, 1000) * Fraction(5, 4) * 4 * 16

    def test_level_radius(self, params):
        assert params.level_radius(0) == Fraction(1, 4)
        assert params.level_radius(2) == Fraction(1, 1024)

    def test_e_k(self, params):
        assert params.e_k(1) == 40
        assert params.e_k(3) == 4

    def test_beta_range(self, params):
        with pytest.raises(ValueError):
            StrategyParams(**{**params.model_dump(), "beta": Fraction(1)})


class TestRunConfig:
    """Tests for the game file model."""

    def test_weight_string(self):
        """Test parsing weights given as d:lambda:mu."""
        run = RunConfig(weight="3:2/5:1/5", beta="1/2", gamma=1, center=[0] * 5, sigma="1/2")
        assert run.weight == Weight(d=3, lam=Fraction(2, 5), mu=Fraction(1, 5))
        assert run.root().d == 3

    def test_defaults(self):
        run = RunConfig(beta="1/2", gamma=1, center=[0, 0, 0], sigma="1/2")
        assert run.variant == GameVariant.HPG
        assert run.alice == "empty"
        assert run.bob == "concentric"

    def test_unknown_strategy(self):
        with pytest.raises(ValueError):
            RunConfig(beta="1/2", center=[0, 0, 0], sigma=1, alice="clever")

    def test_paper_alice_needs_potential_game(self):
        """Test that the paper strategy is refused for the absolute game."""
        with pytest.raises(ValueError, match="requires variant hpg"):
            RunConfig(variant="hag", beta="1/2", center=[0, 0, 0], sigma=1, alice="paper")
        run = RunConfig(variant="hag", beta="1/2", center=[0, 0, 0], sigma=1, alice="random")
        assert run.variant == GameVariant.HAG

    def test_root_dimension_mismatch(self):
        with pytest.raises(ValueError):
            RunConfig(beta="1/2", center=[0, 0, 0, 0, 0], sigma=1).root()

    def test_game_config_precedence(self):
        """Test that file limits win over the defaults passed in."""
        run = RunConfig(beta="1/2", gamma=1, center=[0, 0, 0], sigma=1, max_turns=7)
        config = run.game_config(100, 10, Fraction(1, 1000))
        assert config.max_turns == 7
        assert config.stall_turns == 10
        assert config.resolution == Fraction(1, 1000)


class TestReports:
    """Tests for report models."""

    def test_suite_report(self):
        report = SuiteReport(suite="params")
        report.record(True)
        report.record(False, "bad instance")

        assert report.trials == 2
        assert report.failures == 1
        assert report.examples == ["bad instance"]
        assert not report.passed

    def test_suite_report_keeps_few_examples(self):
        report = SuiteReport(suite="params")
        for i in range(10):
            report.record(False, str(i))
        assert len(report.examples) == 5

    def test_dichotomy_fraction(self):
        report = DichotomyReport(games=4, completed=4, by_certificate=1, by_neighborhood=2)
        assert report.alice_fraction == pytest.approx(0.75)
        assert DichotomyReport().alice_fraction == 0.0
