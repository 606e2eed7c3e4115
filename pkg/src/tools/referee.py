"""
Referee for the hyperplane absolute game (HAG) and potential game (HPG).

Legality is decided exactly and recorded in the trace; it is never raised.
An illegal Alice move is voided for that turn, an illegal Bob reply ends the
play as a forfeit.
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from src.models.diophantine import Weight
from src.models.enums import GameOutcome, GameVariant, Ordering, VerdictKind
from src.models.errors import BudgetExceededError
from src.models.geometry import Ball, HyperplaneNbhd
from src.models.state import GameState, GameTrace, TurnFlags, TurnRecord, WinVerdict
from src.tools.diophantine import DEFAULT_CANDIDATE_BUDGET, bad_certificate
from src.tools.exact import compare_power_terms
from src.tools.geometry import ball_avoids_nbhd, ball_contains, ball_subset, nbhd_contains
from src.utils.logger import get_logger

logger = get_logger(__name__)

Legality = Tuple[bool, Optional[str]]


def gamma_sum_legal(widths: Sequence[Fraction], bound: Fraction, gamma: Fraction) -> bool:
    """
    Exact test of sum(delta**gamma) <= bound**gamma.

    Example:
        >>> gamma_sum_legal([Fraction(1, 40), Fraction(1, 60)], Fraction(1, 20), Fraction(1))
        True
    """
    if not widths:
        return True
    lhs = [(1, delta, gamma) for delta in widths]
    return compare_power_terms(lhs, [(1, bound, gamma)]) != Ordering.GT


def _dims_match(family: Sequence[HyperplaneNbhd], ball: Ball) -> Legality:
    for nbhd in family:
        if nbhd.dim != ball.dim:
            return False, f"normal of dimension {nbhd.dim} in R^{ball.dim}"
    return True, None


def alice_hag_legal(nbhd: Optional[HyperplaneNbhd], ball: Ball, beta: Fraction) -> Legality:
    """A single neighborhood with delta <= beta * rho (an empty move is legal)."""
    if nbhd is None:
        return True, None
    ok, reason = _dims_match([nbhd], ball)
    if not ok:
        return ok, reason
    if nbhd.width > beta * ball.radius:
        return False, f"width {nbhd.width} exceeds beta*rho = {beta * ball.radius}"
    return True, None


def alice_hpg_legal(
    family: Sequence[HyperplaneNbhd], ball: Ball, beta: Fraction, gamma: Fraction
) -> Legality:
    """A family with sum(delta**gamma) <= (beta * rho)**gamma."""
    ok, reason = _dims_match(family, ball)
    if not ok:
        return ok, reason
    if not gamma_sum_legal([n.width for n in family], beta * ball.radius, gamma):
        return False, f"gamma-sum of {len(family)} widths exceeds (beta*rho)^gamma"
    return True, None


def bob_legal(
    previous: Ball, reply: Ball, beta: Fraction, avoid: Sequence[HyperplaneNbhd] = ()
) -> Legality:
    """
    Bob's reply is nested, shrinks by at most beta and misses ``avoid``.

    Args:
        previous: B_i
        reply: Proposed B_{i+1}
        beta: Shrink parameter
        avoid: Neighborhoods the reply must miss (HAG only)
    """
    if reply.dim != previous.dim:
        return False, f"ball of dimension {reply.dim} in R^{previous.dim}"
    if not ball_subset(reply, previous):
        return False, "reply is not contained in the current ball"
    if reply.radius < beta * previous.radius:
        return False, f"radius {reply.radius} below beta*rho = {beta * previous.radius}"
    for nbhd in avoid:
        if not ball_avoids_nbhd(reply, nbhd):
            return False, "reply meets Alice's neighborhood"
    return True, None


def _apply(
    state: GameState, family: List[HyperplaneNbhd], alice_check: Legality, bob_reply: Ball
) -> GameState:
    if state.is_terminated:
        raise ValueError(f"play already ended: {state.outcome.value}")
    config = state.config
    previous = state.current_ball
    alice_ok, alice_reason = alice_check
    if not alice_ok:
        logger.info(f"turn {state.turn_index}: Alice move voided ({alice_reason})")

    avoid = family if (alice_ok and config.variant == GameVariant.HAG) else []
    bob_ok, bob_reason = bob_legal(previous, bob_reply, config.beta, avoid)
    if not bob_ok:
        logger.info(f"turn {state.turn_index}: Bob forfeits ({bob_reason})")
        state.rejected_ball = bob_reply
        state.terminate(GameOutcome.BOB_FORFEIT, bob_reason)
        return state

    state.record_turn(
        TurnRecord(
            index=state.turn_index,
            ball=bob_reply,
            alice=family,
            flags=TurnFlags(alice_legal=alice_ok, bob_legal=True, reason=alice_reason),
        )
    )
    return state


def hag_step(state: GameState, alice_move: Optional[HyperplaneNbhd], bob_reply: Ball) -> GameState:
    """
    Play one HAG turn.

    Args:
        state: Play in progress
        alice_move: One neighborhood, or None for an empty move
        bob_reply: Bob's next ball

    Returns:
        The updated state
    """
    ball = state.current_ball
    check = alice_hag_legal(alice_move, ball, state.config.beta)
    family = [] if alice_move is None else [alice_move]
    return _apply(state, family, check, bob_reply)


def hpg_step(state: GameState, alice_family: Sequence[HyperplaneNbhd], bob_reply: Ball) -> GameState:
    """
    Play one HPG turn. Bob need not avoid the family.

    Args:
        state: Play in progress
        alice_family: Alice's family (possibly empty)
        bob_reply: Bob's next ball

    Returns:
        The updated state
    """
    ball = state.current_ball
    family = list(alice_family)
    check = alice_hpg_legal(family, ball, state.config.beta, state.config.gamma)
    return _apply(state, family, check, bob_reply)


def step(state: GameState, family: Sequence[HyperplaneNbhd], bob_reply: Ball) -> GameState:
    """Dispatch to the step of the configured variant."""
    if state.config.variant == GameVariant.HAG:
        if len(family) > 1:
            check = (False, f"HAG move of {len(family)} neighborhoods")
            return _apply(state, list(family), check, bob_reply)
        return hag_step(state, family[0] if family else None, bob_reply)
    return hpg_step(state, family, bob_reply)


def stalled(state: GameState, factor: int) -> bool:
    """
    True iff the radius did not shrink by ``factor`` over the last stall window.
    """
    window = state.config.stall_turns
    balls = state.balls()
    if len(balls) <= window:
        return False
    return balls[-1].radius * factor > balls[-1 - window].radius


def revalidate_trace(trace: GameTrace) -> List[str]:
    """
    Re-check a finished trace from scratch.

    Checks nesting, radius ratios, Alice legality where it was recorded as
    legal, HAG slab avoidance and that the final point lies in every ball.

    Returns:
        Human-readable violations (empty when the trace is sound)
    """
    config = trace.config
    violations: List[str] = []
    previous = trace.root
    for turn in trace.turns:
        if not ball_subset(turn.ball, previous):
            violations.append(f"turn {turn.index}: ball not nested")
        if turn.ball.radius < config.beta * previous.radius:
            violations.append(f"turn {turn.index}: radius ratio below beta")
        if not turn.flags.bob_legal:
            violations.append(f"turn {turn.index}: recorded ball flagged illegal")
        if turn.flags.alice_legal:
            if config.variant == GameVariant.HAG:
                nbhd = turn.alice[0] if turn.alice else None
                ok, reason = alice_hag_legal(nbhd, previous, config.beta)
                if len(turn.alice) > 1:
                    ok, reason = False, "several neighborhoods in one HAG move"
                if ok and nbhd is not None and not ball_avoids_nbhd(turn.ball, nbhd):
                    violations.append(f"turn {turn.index}: ball meets the slab")
            else:
                ok, reason = alice_hpg_legal(turn.alice, previous, config.beta, config.gamma)
            if not ok:
                violations.append(f"turn {turn.index}: Alice move marked legal but {reason}")
        previous = turn.ball

    final = trace.final_point
    for index, ball in enumerate(trace.balls()):
        if not ball_contains(ball, final):
            violations.append(f"final point outside B_{index}")
    return violations


def evaluate_win(
    trace: GameTrace,
    w: Weight,
    max_q: int,
    epsilon: Fraction,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> WinVerdict:
    """
    Finite-horizon verdict for the final point of a play.

    Alice wins by certificate when the final point passes the truncated
    badly-approximable test at (epsilon, max_q), and by neighborhood when it
    lies in one of her binding neighborhoods. A certificate run that exceeds
    the budget leaves only the neighborhood branch.

    Args:
        trace: Finished play
        w: Weight
        max_q: Denominator bound Q
        epsilon: Tested epsilon
        budget: Candidate cap for the certificate

    Returns:
        WinVerdict
    """
    final = trace.final_point
    certificate = None
    try:
        certificate = bad_certificate(final, w, epsilon, max_q, budget)
    except BudgetExceededError as e:
        logger.warning(f"certificate skipped: {e}")
        trace.errors.append(str(e))

    if certificate is not None and certificate.holds:
        return WinVerdict(
            kind=VerdictKind.ALICE_BY_CERTIFICATE,
            epsilon=epsilon,
            max_q=max_q,
            certificate=certificate,
        )

    for turn, nbhd in trace.declared_neighborhoods():
        if nbhd_contains(nbhd, final):
            return WinVerdict(
                kind=VerdictKind.ALICE_BY_NEIGHBORHOOD,
                k=nbhd.k,
                turn=turn,
                epsilon=epsilon,
                max_q=max_q,
                certificate=certificate,
            )

    return WinVerdict(kind=VerdictKind.UNDECIDED, epsilon=epsilon, max_q=max_q, certificate=certificate)
