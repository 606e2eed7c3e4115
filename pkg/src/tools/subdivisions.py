"""
Level structure behind Alice's strategy.

Balls are sorted into levels by radius, rational points into height and
denominator windows per level, and for each level-n ball and k >= 1 a single
hyperplane E_k(B) is extracted from the points that can still threaten it at
level n + k.
"""

from fractions import Fraction
from itertools import product
from math import floor
from typing import List, Optional, Tuple

from src.models.diophantine import RationalPoint, Weight
from src.models.enums import Ordering, StrategyMode
from src.models.errors import InternalInvariantError
from src.models.geometry import Ball
from src.models.strategy import EkRecord, StrategyParams
from src.tools.attachments import attached_hyperplane, dual_search, height
from src.tools.diophantine import DEFAULT_CANDIDATE_BUDGET, enumerate_dangerous_points
from src.tools.exact import (
    compare_monomials,
    compare_power_terms,
    compare_with_power,
    power_ceil,
    sqrt_at_most,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_GRID_CAP = 256

R_LOWER_BOUND = "R >= max(4/beta, 10^4 d^6 kappa^4)"
R_GAMMA_BOUND = "(R^gamma - 1)^-1 <= (beta^2/3)^gamma"
EPSILON_FORMULA = "epsilon = 10^-2 d^-6 kappa^-2 R^(-20 d^2) rho0"
TWO_H1_BELOW_ONE = "2 H_1 < 1"


# ---------------------------------------------------------------------------
# Parameters
# ---------------------------------------------------------------------------


def root_kappa(root: Ball) -> Fraction:
    """max over the ball of max(|x|_inf, |y|, |z|_inf), plus one."""
    return max(abs(c) for c in root.center) + root.radius + 1


def r_lower_bound(beta: Fraction, d: int, kappa: Fraction) -> Fraction:
    return max(4 / Fraction(beta), Fraction(10**4 * d**6) * kappa**4)


def r_gamma_bound_holds(R: int, beta: Fraction, gamma: Fraction) -> bool:
    """(R^gamma - 1)^-1 <= (beta^2/3)^gamma, i.e. R^gamma >= 1 + (3/beta^2)^gamma."""
    order = compare_power_terms([(1, R, gamma)], [(1, 1, 0), (1, 3 / Fraction(beta) ** 2, gamma)])
    return order != Ordering.LT


def paper_epsilon(d: int, kappa: Fraction, R: int, rho0: Fraction) -> Fraction:
    return Fraction(1, 100 * d**6) / kappa**2 / Fraction(R) ** (20 * d**2) * rho0


def _least_integer(start: int, holds) -> int:
    """Least n >= start with holds(n), for a predicate monotone in n."""
    if holds(start):
        return start
    low, step = start, 1
    while not holds(low + step):
        low += step
        step *= 2
    high = low + step
    while high - low > 1:
        mid = (low + high) // 2
        if holds(mid):
            high = mid
        else:
            low = mid
    return high


def derive_params(
    root: Ball,
    beta: Fraction,
    gamma: Fraction,
    d: int,
    mode: StrategyMode = StrategyMode.PAPER,
    R: Optional[int] = None,
    epsilon: Optional[Fraction] = None,
) -> StrategyParams:
    """
    Strategy constants for a root ball.

    Args:
        root: Root ball B_0 with radius at most 1/d
        beta: Game parameter in (0, 1)
        gamma: Potential exponent > 0
        d: Dimension
        mode: PAPER derives R and epsilon, RELAXED takes them from the caller
        R: Level ratio (RELAXED only)
        epsilon: Diophantine scale (RELAXED only)

    Returns:
        StrategyParams, with waived conditions listed in relaxed mode

    Raises:
        ValueError: On invalid beta, gamma, radius or missing overrides

    Example:
        >>> root = Ball.from_center((0, 0, 0), Fraction(1, 2))
        >>> derive_params(root, Fraction(1, 3), Fraction(1), 2).R
        1562500
    """
    beta, gamma = Fraction(beta), Fraction(gamma)
    if not 0 < beta < 1:
        raise ValueError(f"beta must lie in (0, 1), got {beta}")
    if gamma <= 0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    if root.d != d:
        raise ValueError(f"root ball has d={root.d}, expected {d}")
    if root.radius > Fraction(1, d):
        raise ValueError(f"root radius {root.radius} exceeds 1/d")

    kappa = root_kappa(root)
    lower = r_lower_bound(beta, d, kappa)

    if mode == StrategyMode.PAPER:
        start = -floor(-lower)
        R = _least_integer(start, lambda r: r_gamma_bound_holds(r, beta, gamma))
        epsilon = paper_epsilon(d, kappa, R, root.radius)
        waived: List[str] = []
    else:
        if R is None or epsilon is None:
            raise ValueError("relaxed mode needs R and epsilon")
        epsilon = Fraction(epsilon)
        waived = []
        if R < lower:
            waived.append(R_LOWER_BOUND)
        if not r_gamma_bound_holds(R, beta, gamma):
            waived.append(R_GAMMA_BOUND)
        if epsilon != paper_epsilon(d, kappa, R, root.radius):
            waived.append(EPSILON_FORMULA)

    params = StrategyParams(
        d=d, beta=beta, gamma=gamma, root=root, kappa=kappa, R=R, epsilon=epsilon, mode=mode, waived=waived
    )
    if 2 * params.height(1) >= 1:
        if mode == StrategyMode.PAPER:
            raise InternalInvariantError("2 H_1 < 1 fails at derived constants")
        params = params.model_copy(update={"waived": waived + [TWO_H1_BELOW_ONE]})
    if params.waived:
        logger.info(f"relaxed parameters waive: {', '.join(params.waived)}")
    return params


# ---------------------------------------------------------------------------
# Levels and windows
# ---------------------------------------------------------------------------


def classify_ball(ball: Ball, params: StrategyParams) -> Optional[int]:
    """
    The level n with beta R^-n rho0 < rho(B) <= R^-n rho0, or None in a gap.

    With R = 16, beta = 1/2 and rho0 = 1, radius 1/20 lies in (1/32, 1/16] and
    gets level 1, while radius 1/100 falls in the gap above (1/512, 1/256].
    """
    rho = ball.radius
    if rho > params.rho0:
        return None
    n = 0
    while params.level_radius(n + 1) >= rho:
        n += 1
    if params.beta * params.level_radius(n) < rho:
        return n
    return None


def levels_disjoint(params: StrategyParams, depth: int = 8) -> bool:
    """Level windows 0..depth are pairwise disjoint: R^-(n+1) rho0 <= beta R^-n rho0."""
    return all(
        params.level_radius(n + 1) <= params.beta * params.level_radius(n) for n in range(depth)
    )


def _window_exponent(k: int, d: int) -> Tuple[int, int]:
    """R-exponents (lower, upper) of the k-th denominator window."""
    if k == 1:
        return 0, 10 * d * d
    return 10 * d * d + (2 * k - 4) * d, 10 * d * d + (2 * k - 2) * d


def _q_at_least(q: int, h: Fraction, R: int, exponent: int, w: Weight) -> bool:
    """q >= h^(1/(1+lambda)) R^exponent."""
    base = Fraction(q) / Fraction(R) ** exponent
    return compare_with_power(h, base, 1 + w.lam) != Ordering.GT


def _q_at_most(q: int, h: Fraction, R: int, exponent: int, w: Weight) -> bool:
    """q <= h^(1/(1+lambda)) R^exponent."""
    base = Fraction(q) / Fraction(R) ** exponent
    return compare_with_power(h, base, 1 + w.lam) != Ordering.LT


def q_window_index(q: int, n: int, params: StrategyParams, w: Weight) -> Optional[int]:
    """
    Smallest k whose level-n denominator window contains q.

    Windows are H_n^(1/(1+lambda)) times [1, R^(10d^2)] for k = 1 and
    [R^(10d^2+(2k-4)d), R^(10d^2+(2k-2)d)] for k >= 2. Shared endpoints go to
    the smaller k.
    """
    h = params.height(n)
    if not _q_at_least(q, h, params.R, 0, w):
        return None
    k = 1
    while not _q_at_most(q, h, params.R, _window_exponent(k, w.d)[1], w):
        k += 1
    return k


def height_in_window(H: Fraction, n: int, params: StrategyParams) -> bool:
    """H_n <= H <= 2 H_{n+1}."""
    return params.height(n) <= H <= 2 * params.height(n + 1)


def vb_class(
    ball: Ball, P: RationalPoint, n: int, params: StrategyParams, w: Weight
) -> Optional[int]:
    """
    Index k of the subdivision of V_B containing P, or None when P is not in V_B.

    Returns:
        None if H_B(P) is outside [H_n, 2 H_{n+1}], else the smallest k whose
        denominator window contains q(P)
    """
    if not height_in_window(height(ball, P, w), n, params):
        return None
    return q_window_index(P.q, n, params, w)


def denominator_range(n: int, params: StrategyParams, w: Weight) -> Tuple[int, int]:
    """Integer range [ceil(H_n^(1/(1+lambda))), floor(2 H_{n+1})] of denominators in V_B."""
    q_min = max(1, power_ceil(params.height(n), 1 / (1 + w.lam)))
    q_max = floor(2 * params.height(n + 1))
    return q_min, q_max


def window_ratio_bound_holds(params: StrategyParams, w: Weight, k: int) -> bool:
    """
    Symbolic ratio bound for window k >= 2.

    From the window endpoints, H_B(P)/q^(1+lambda) is at most
    2 H_{n+1} / (H_n R^((1+lambda)(10d^2+(2k-4)d))) = 2 R^(1-(1+lambda)(10d^2+(2k-4)d)),
    which must not exceed 2 R^(-8d^2-2kd+1).
    """
    if k < 2:
        raise ValueError("ratio bound applies to k >= 2")
    d = w.d
    lower_exponent = _window_exponent(k, d)[0]
    ratio = 2 * params.height(1) / params.height(0)
    lhs_exponent = -(1 + w.lam) * lower_exponent
    rhs_exponent = -8 * d * d - 2 * k * d + 1
    return compare_monomials(ratio, params.R, lhs_exponent, 2, params.R, rhs_exponent) != Ordering.GT


def ratio_bound_holds(H: Fraction, q: int, params: StrategyParams, w: Weight, k: int) -> bool:
    """H / q^(1+lambda) <= 2 R^(-8d^2-2kd+1) for a concrete point."""
    d = w.d
    return (
        compare_monomials(H, q, -(1 + w.lam), 2, params.R, -8 * d * d - 2 * k * d + 1)
        != Ordering.GT
    )


def main_estimate_bound(params: StrategyParams, k: int, q1: int) -> Fraction:
    """30 d^4 kappa^2 eps q1^-1 R^(e_k+k+1)."""
    d = params.d
    return (
        30 * d**4 * params.kappa**2 * params.epsilon / q1 * Fraction(params.R) ** (params.e_k(k) + k + 1)
    )


def family_budget_holds(params: StrategyParams, n: int, rho: Fraction) -> bool:
    """
    (3 R^-n rho0)^gamma (R^gamma - 1)^-1 <= (beta rho)^gamma.

    Rewritten as (3 R^-n rho0 / (beta rho))^gamma + 1 <= R^gamma.
    """
    ratio = 3 * params.level_radius(n) / (params.beta * Fraction(rho))
    order = compare_power_terms([(1, ratio, params.gamma), (1, 1, 0)], [(1, params.R, params.gamma)])
    return order != Ordering.GT


# ---------------------------------------------------------------------------
# Prime balls and hyperplanes
# ---------------------------------------------------------------------------


def prime_check(
    ball: Ball,
    n: int,
    params: StrategyParams,
    w: Weight,
    parent_flag: bool,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> bool:
    """
    Whether a level-n ball is prime: no P in V_B has Delta_eps(P) meeting it.

    Args:
        ball: Ball of level n
        n: Its level
        params: Strategy constants
        w: Weight
        parent_flag: The ball lies inside a prime ball of level n-1
        budget: Candidate cap

    Raises:
        BudgetExceededError: When the cap is exceeded
    """
    if n == 0:
        return True
    if not parent_flag:
        return False
    q_min, q_max = denominator_range(n, params, w)
    for P in enumerate_dangerous_points(ball, params.epsilon, w, q_min, q_max, budget):
        if height_in_window(height(ball, P, w), n, params):
            logger.debug(f"level {n} ball not prime: {P} threatens it")
            return False
    return True


def _axis_values(lo: Fraction, hi: Fraction, spacing: Fraction) -> List[Fraction]:
    count = floor((hi - lo) / spacing)
    values = [lo + i * spacing for i in range(count + 1)]
    if values[-1] != hi:
        values.append(hi)
    return values


def _subsample(values: List[Tuple[Fraction, ...]], cap: int) -> List[Tuple[Fraction, ...]]:
    if len(values) <= cap:
        return values
    stride = len(values) / cap
    return [values[int(i * stride)] for i in range(cap)]


def sub_ball_grid(
    ball: Ball, m: int, params: StrategyParams, grid_cap: int = DEFAULT_GRID_CAP
) -> Tuple[List[Ball], bool]:
    """
    Level-m sub-balls of ``ball`` on a z-grid.

    Heights depend on a ball only through its z-center and sigma, so the grid
    varies z over the admissible box with spacing beta R^-m rho0 / 2 and keeps
    the (x, y) center. sigma is the largest rational at 48 bits with
    sigma^2 <= R^-m rho0.

    Returns:
        (balls, approximate) where approximate marks grid subsampling
    """
    sigma = sqrt_at_most(params.level_radius(m))
    radius = sigma * sigma
    if radius <= params.beta * params.level_radius(m) or radius > ball.radius:
        return [], False
    slack = ball.radius - radius
    spacing = params.beta * params.level_radius(m) / 2
    axes = [_axis_values(zc - slack, zc + slack, spacing) for zc in ball.z]
    centers = list(product(*axes))
    approximate = len(centers) > grid_cap
    if approximate:
        logger.warning(f"sub-ball grid of {len(centers)} centers subsampled to {grid_cap}")
        centers = _subsample(centers, grid_cap)
    balls = [
        Ball(x=list(ball.x), y=ball.y, z=list(z), radius=radius, sqrt_radius=sigma) for z in centers
    ]
    return balls, approximate


def find_Ek(
    ball: Ball,
    n: int,
    k: int,
    params: StrategyParams,
    w: Weight,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
    grid_cap: int = DEFAULT_GRID_CAP,
) -> Optional[EkRecord]:
    """
    Hyperplane E_k(B) for a level-n ball, or None when no candidate exists.

    Candidates are pairs (B', P) with B' a level-(n+k) sub-ball, P in the
    k-th window of V_{B'} and Delta_eps(P) meeting B. The witness with the
    smallest denominator (first in enumeration order) defines the hyperplane
    {a0 . x + b0 y = C} of F_{B'_0, P_0}.

    Raises:
        BudgetExceededError: When the candidate cap is exceeded
        InternalInvariantError: If the width bound exceeds R^-(n+k) rho0
    """
    m = n + k
    grid, approximate = sub_ball_grid(ball, m, params, grid_cap)
    if not grid:
        return None
    q_min, q_max = denominator_range(m, params, w)
    examined = 0
    for P in enumerate_dangerous_points(ball, params.epsilon, w, q_min, q_max, budget):
        examined += 1
        if q_window_index(P.q, m, params, w) != k:
            continue
        for sub_ball in grid:
            dual = dual_search(sub_ball, P, w)
            if not height_in_window(P.q * dual.xi, m, params):
                continue
            hyperplane = attached_hyperplane(sub_ball, P, w, dual)
            omega = (w.d + 1) * (1 + (w.d - 1) * params.kappa) * params.epsilon / params.height(m)
            if omega > params.level_radius(m):
                raise InternalInvariantError(f"width bound {omega} exceeds level radius")
            logger.debug(f"E_{k} at level {n}: witness {P} with {sub_ball.describe()}")
            return EkRecord(
                k=k,
                e_k=params.e_k(k),
                normal=hyperplane.lifted_normal(),
                offset=hyperplane.C,
                source=P,
                source_ball=sub_ball,
                width_bound=omega,
                approximate=approximate,
                candidates=examined,
            )
    return None


def k_max_for(n: int, params: StrategyParams, resolution: Fraction) -> int:
    """Smallest k with R^-(n+k) rho0 below the resolution."""
    k = 1
    while params.level_radius(n + k) >= resolution:
        k += 1
    return k


def prime_chain_avoids(
    ball: Ball, n: int, params: StrategyParams, w: Weight, budget: int = DEFAULT_CANDIDATE_BUDGET
) -> bool:
    """
    For a prime level-n ball, no P with q^(1+lambda) <= 2 H_{n+1} has Delta_eps(P) meeting it.

    Decided by exhaustive enumeration over q <= (2 H_{n+1})^(1/(1+lambda)).
    """
    bound = 2 * params.height(n + 1)
    q_max = 0
    while compare_with_power(bound, q_max + 1, 1 + w.lam) != Ordering.LT:
        q_max += 1
    points = enumerate_dangerous_points(ball, params.epsilon, w, 1, q_max, budget)
    return next(points, None) is None
