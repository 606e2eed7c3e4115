"""
Unit tests for the game referee.
"""

from fractions import Fraction

import pytest

from src.models.diophantine import Weight
from src.models.enums import GameOutcome, GameVariant, VerdictKind
from src.models.geometry import Ball, HyperplaneNbhd
from src.models.state import GameConfig, GameTrace, TurnRecord
from src.tools.referee import (
    alice_hag_legal,
    alice_hpg_legal,
    bob_legal,
    evaluate_win,
    gamma_sum_legal,
    hag_step,
    hpg_step,
    revalidate_trace,
    stalled,
    step,
)


def _slab(width, normal=(1, 0, 0), offset=0):
    return HyperplaneNbhd(normal=list(normal), offset=offset, width=width)


class TestGammaSum:
    """Tests for gamma_sum_legal."""

    def test_linear(self):
        assert gamma_sum_legal([Fraction(1, 40), Fraction(1, 60)], Fraction(1, 20), Fraction(1))

    def test_irrational_exponent_boundary(self):
        """2 * (1/4)^(1/2) == 1^(1/2) exactly."""
        assert gamma_sum_legal([Fraction(1, 4), Fraction(1, 4)], Fraction(1), Fraction(1, 2))
        assert not gamma_sum_legal(
            [Fraction(1, 4), Fraction(1, 4), Fraction(1, 100)], Fraction(1), Fraction(1, 2)
        )

    def test_empty_family(self):
        assert gamma_sum_legal([], Fraction(1, 20), Fraction(1))


class TestHagReferee:
    """Tests for the hyperplane absolute game."""

    @pytest.fixture
    def state(self):
        config = GameConfig(variant=GameVariant.HAG, beta=Fraction(1, 4))
        return GameTrace(run_id="hag", config=config, root=Ball.from_center((0, 0, 0), 1))

    def test_width_limit(self, state):
        assert alice_hag_legal(_slab(Fraction(1, 4)), state.root, Fraction(1, 4))[0]
        ok, reason = alice_hag_legal(_slab(Fraction(3, 10)), state.root, Fraction(1, 4))
        assert not ok
        assert "exceeds" in reason

    def test_empty_move_is_legal(self, state):
        assert alice_hag_legal(None, state.root, Fraction(1, 4)) == (True, None)

    def test_wrong_dimension(self, state):
        ok, _ = alice_hag_legal(_slab(Fraction(1, 8), normal=(1, 0)), state.root, Fraction(1, 4))
        assert not ok

    def test_legal_turn(self, state):
        reply = Ball.from_center((Fraction(3, 4), 0, 0), Fraction(1, 2))
        hag_step(state, _slab(Fraction(1, 4)), reply)
        assert state.turn_index == 1
        assert state.current_ball == reply
        assert state.turns[0].flags.alice_legal
        assert not state.is_terminated

    def test_voided_move(self, state):
        """A too-wide slab is voided and Bob need not avoid it."""
        reply = Ball.from_center((0, 0, 0), Fraction(1, 2))
        hag_step(state, _slab(Fraction(3, 10)), reply)
        assert not state.turns[0].flags.alice_legal
        assert state.turns[0].effective_family == []
        assert not state.is_terminated

    def test_bob_meets_slab(self, state):
        reply = Ball.from_center((0, 0, 0), Fraction(1, 2))
        hag_step(state, _slab(Fraction(1, 4)), reply)
        assert state.outcome == GameOutcome.BOB_FORFEIT
        assert state.rejected_ball == reply
        assert state.turns == []

    def test_bob_shrinks_too_fast(self, state):
        reply = Ball.from_center((0, 0, 0), Fraction(1, 3))
        hag_step(state, None, reply)
        assert state.outcome == GameOutcome.BOB_FORFEIT

    def test_bob_not_nested(self, state):
        reply = Ball.from_center((1, 0, 0), Fraction(1, 2))
        ok, reason = bob_legal(state.root, reply, Fraction(1, 4))
        assert not ok
        assert "contained" in reason

    def test_several_neighborhoods_voided(self, state):
        reply = Ball.from_center((0, 0, 0), Fraction(1, 2))
        step(state, [_slab(Fraction(1, 8)), _slab(Fraction(1, 8), offset=1)], reply)
        assert not state.turns[0].flags.alice_legal

    def test_step_after_end(self, state):
        state.terminate(GameOutcome.MAX_TURNS)
        with pytest.raises(ValueError):
            hag_step(state, None, state.root)


class TestHpgReferee:
    """Tests for the hyperplane potential game."""

    @pytest.fixture
    def config(self):
        return GameConfig(variant=GameVariant.HPG, beta=Fraction(1, 2), gamma=Fraction(1))

    @pytest.fixture
    def state(self, config):
        return GameTrace(run_id="hpg", config=config, root=Ball.from_center((0, 0, 0), Fraction(1, 3)))

    @pytest.fixture
    def reply(self):
        return Ball.from_center((0, 0, 0), Fraction(1, 4))

    def test_family_within_budget(self, state):
        family = [_slab(Fraction(1, 40)), _slab(Fraction(1, 60), offset=1)]
        assert alice_hpg_legal(family, state.root, Fraction(1, 2), Fraction(1))[0]

    def test_family_over_budget(self, state):
        family = [_slab(Fraction(1, 30)), _slab(Fraction(1, 40), offset=1)]
        assert not alice_hpg_legal(family, state.root, Fraction(1, 2), Fraction(1))[0]

    def test_empty_family(self, state):
        assert alice_hpg_legal([], state.root, Fraction(1, 2), Fraction(1))[0]

    def test_bob_may_enter_family(self, state, reply):
        hpg_step(state, [_slab(Fraction(1, 40))], reply)
        assert state.turns[0].flags.alice_legal
        assert not state.is_terminated

    def test_stalled(self, config):
        config = config.model_copy(update={"stall_turns": 2})
        state = GameTrace(run_id="stall", config=config, root=Ball.from_center((0, 0, 0), 1))
        hpg_step(state, [], state.root)
        assert not stalled(state, 2)
        hpg_step(state, [], state.root)
        assert stalled(state, 2)

    def test_revalidate_sound_trace(self, state, reply):
        hpg_step(state, [_slab(Fraction(1, 40))], reply)
        assert revalidate_trace(state) == []

    def test_revalidate_catches_tampering(self, state):
        outside = Ball.from_center((1, 0, 0), Fraction(1, 4))
        state.turns.append(TurnRecord(index=0, ball=outside))
        violations = revalidate_trace(state)
        assert any("not nested" in v for v in violations)
        assert any("final point outside" in v for v in violations)

    def test_revalidate_catches_forged_legality(self, state, reply):
        wide = [_slab(Fraction(1, 5))]
        state.turns.append(TurnRecord(index=0, ball=reply, alice=wide))
        assert any("marked legal" in v for v in revalidate_trace(state))


class TestEvaluateWin:
    """Tests for the finite-horizon verdict."""

    @pytest.fixture
    def w(self):
        return Weight.uniform(2)

    @pytest.fixture
    def config(self):
        return GameConfig(variant=GameVariant.HPG, beta=Fraction(1, 2), gamma=Fraction(1))

    def test_lattice_point_undecided(self, config, w):
        trace = GameTrace(run_id="v", config=config, root=Ball.from_center((0, 0, 0), Fraction(1, 3)))
        verdict = evaluate_win(trace, w, 5, Fraction(1, 10))
        assert verdict.kind == VerdictKind.UNDECIDED
        assert not verdict.certificate.holds
        assert not verdict.alice_wins

    def test_neighborhood_branch(self, config, w):
        trace = GameTrace(run_id="v", config=config, root=Ball.from_center((0, 0, 0), Fraction(1, 3)))
        hpg_step(trace, [_slab(Fraction(1, 40))], Ball.from_center((0, 0, 0), Fraction(1, 4)))
        verdict = evaluate_win(trace, w, 5, Fraction(1, 10))
        assert verdict.kind == VerdictKind.ALICE_BY_NEIGHBORHOOD
        assert verdict.turn == 0

    def test_certificate_branch(self, config, w):
        root = Ball.from_center((Fraction(1, 2), Fraction(1, 2), 0), Fraction(1, 3))
        trace = GameTrace(run_id="v", config=config, root=root)
        verdict = evaluate_win(trace, w, 1, Fraction(1, 10))
        assert verdict.kind == VerdictKind.ALICE_BY_CERTIFICATE
        assert verdict.alice_wins

    def test_certificate_budget(self, config, w):
        root = Ball.from_center((Fraction(1, 2), Fraction(1, 2), 0), Fraction(1, 3))
        trace = GameTrace(run_id="v", config=config, root=root)
        verdict = evaluate_win(trace, w, 5, Fraction(1, 10), budget=1)
        assert verdict.kind == VerdictKind.UNDECIDED
        assert verdict.certificate is None
        assert trace.errors
