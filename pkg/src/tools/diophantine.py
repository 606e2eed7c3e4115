"""
Weighted Diophantine approximation tools.

Decides membership in the dangerous sets Delta_eps(P), their intersection with
sup-norm balls, and truncated badly-approximable certificates, all in exact
arithmetic.
"""

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import floor, gcd
from typing import Iterator, List, Optional, Sequence, Tuple

import mpmath

from src.models.diophantine import (
    CertificateResult,
    EpsilonBound,
    QualityWitness,
    RationalPoint,
    Weight,
)
from src.models.enums import CertificateStatus, Ordering
from src.models.errors import (
    BudgetExceededError,
    DimensionMismatchError,
    InternalInvariantError,
    ZeroDenominatorError,
)
from src.models.geometry import Ball
from src.tools.exact import (
    PowerSum,
    compare_monomials,
    power_below,
    power_to_mpf,
    power_upper_bound,
)
from src.tools.geometry import ball_contains
from src.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_CANDIDATE_BUDGET = 2_000_000

Point = Tuple[Fraction, ...]


def split_point(point: Sequence[Fraction], d: int) -> Tuple[List[Fraction], Fraction, List[Fraction]]:
    """
    Split a flattened (x, y, z) point of R^(2d-1).

    Raises:
        DimensionMismatchError: If the length is not 2d-1
    """
    if len(point) != 2 * d - 1:
        raise DimensionMismatchError(2 * d - 1, len(point), "point")
    coords = [Fraction(c) for c in point]
    return coords[: d - 1], coords[d - 1], coords[d:]


def _nearest(value: Fraction) -> int:
    return floor(value + Fraction(1, 2))


class _Counter:
    """Shared enumeration budget."""

    def __init__(self, budget: int, where: str):
        self.budget = budget
        self.used = 0
        self.where = where

    def tick(self, n: int = 1) -> None:
        self.used += n
        if self.used > self.budget:
            raise BudgetExceededError(self.budget, self.used, self.where)


def reduce_point(p_raw: Sequence[int], s_raw: int, q_raw: int) -> RationalPoint:
    """
    Reduce (p/q, s/q) to its canonical representative.

    Args:
        p_raw: Integer numerators of the first d-1 coordinates
        s_raw: Integer numerator of the last coordinate
        q_raw: Nonzero integer denominator

    Returns:
        RationalPoint with q > 0 and gcd(p, s, q) = 1

    Raises:
        ZeroDenominatorError: If q_raw == 0

    Example:
        >>> reduce_point([3], -1, -2)
        RationalPoint(p=[-3], s=1, q=2)
    """
    if q_raw == 0:
        raise ZeroDenominatorError("denominator must be nonzero")
    g = gcd(*p_raw, s_raw, q_raw)
    if q_raw < 0:
        g = -g
    return RationalPoint(p=[pi // g for pi in p_raw], s=s_raw // g, q=q_raw // g)


def _quality_terms(
    p: Sequence[int], s: int, q: int, x: Sequence[Fraction], y: Fraction, z: Sequence[Fraction]
) -> Tuple[Fraction, Fraction]:
    offset = q * y - s
    term_y = abs(offset)
    term_x = max(abs(q * xi - pi - offset * zi) for xi, pi, zi in zip(x, p, z))
    return term_y, term_x


def quality(P: RationalPoint, point: Sequence[Fraction], w: Weight) -> QualityWitness:
    """
    Quality terms q^mu |q y - s| and q^lambda |q x - p - (q y - s) z|_inf.

    Raises:
        DimensionMismatchError: If P, point and w disagree on d
    """
    if P.d != w.d:
        raise DimensionMismatchError(w.d, P.d, "rational point")
    x, y, z = split_point(point, w.d)
    term_y, term_x = _quality_terms(P.p, P.s, P.q, x, y, z)
    return QualityWitness(
        point=P,
        term_y_coefficient=term_y,
        term_y_exponent=w.mu,
        term_x_coefficient=term_x,
        term_x_exponent=w.lam,
    )


def _max_term(term_y: Fraction, term_x: Fraction, q: int, w: Weight) -> Tuple[Fraction, Fraction]:
    """The larger of term_y * q**mu and term_x * q**lambda as (coefficient, exponent)."""
    if compare_monomials(term_y, q, w.mu, term_x, q, w.lam) == Ordering.LT:
        return term_x, w.lam
    return term_y, w.mu


def delta_contains(P: RationalPoint, epsilon: Fraction, point: Sequence[Fraction], w: Weight) -> bool:
    """
    True iff point lies in Delta_eps(P), i.e. both quality terms are < eps.

    Example:
        >>> w = Weight.uniform(2)
        >>> P = RationalPoint(p=[0], s=0, q=1)
        >>> delta_contains(P, Fraction(1, 10), (Fraction(1, 20), Fraction(1, 20), Fraction(1, 2)), w)
        True
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    witness = quality(P, point, w)
    return power_below(witness.term_y_coefficient, P.q, w.mu, epsilon) and power_below(
        witness.term_x_coefficient, P.q, w.lam, epsilon
    )


# ---------------------------------------------------------------------------
# Delta_eps(P) against a ball
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class _Bound:
    value: PowerSum
    strict: bool


def _raise_lower(current: Optional[_Bound], new: _Bound) -> _Bound:
    if current is None:
        return new
    order = new.value.compare(current.value)
    if order == Ordering.GT:
        return new
    if order == Ordering.LT:
        return current
    return _Bound(current.value, current.strict or new.strict)


def _lower_upper(current: Optional[_Bound], new: _Bound) -> _Bound:
    if current is None:
        return new
    order = new.value.compare(current.value)
    if order == Ordering.LT:
        return new
    if order == Ordering.GT:
        return current
    return _Bound(current.value, current.strict or new.strict)


def _nonempty(lower: Optional[_Bound], upper: Optional[_Bound]) -> bool:
    if lower is None or upper is None:
        return True
    order = lower.value.compare(upper.value)
    if order == Ordering.LT:
        return True
    if order == Ordering.GT:
        return False
    return not (lower.strict or upper.strict)


def _eta_window(
    P: RationalPoint, epsilon: Fraction, ball: Ball, w: Weight
) -> Optional[Tuple[_Bound, _Bound]]:
    """
    Bounds on eta = y - s/q over Delta_eps(P) meets the ball, or None when empty.

    With eta = y - s/q, the y-constraint is |eta| < eps q^(-1-mu) intersected
    with the ball's closed y-range. For each coordinate, some x_i, z_i in the
    ball satisfy |x_i - p_i/q - eta z_i| < eps q^(-1-lambda) iff two linear
    inequalities in eta hold; the envelope over z_i changes at eta = 0, so
    the halves eta >= 0 and eta <= 0 are solved separately. All interval
    endpoints are sums of rational multiples of 1, q^(-1-lambda) and
    q^(-1-mu), compared exactly with PowerSum.

    The first nonempty half is returned.
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if not (P.d == w.d == ball.d):
        raise DimensionMismatchError(w.d, ball.d if P.d == w.d else P.d, "ball or point")

    q = P.q
    rho = ball.radius
    tau_x = PowerSum.monomial(q, -1 - w.lam, epsilon)
    tau_y = PowerSum.monomial(q, -1 - w.mu, epsilon)
    s_over_q = Fraction(P.s, q)

    def const(value: Fraction) -> PowerSum:
        return PowerSum.constant(q, value)

    base_lower = _raise_lower(_Bound(const(ball.y - rho - s_over_q), False), _Bound(-tau_y, True))
    base_upper = _lower_upper(_Bound(const(ball.y + rho - s_over_q), False), _Bound(tau_y, True))
    if not _nonempty(base_lower, base_upper):
        return None

    for half in (1, -1):
        lower, upper = base_lower, base_upper
        if half > 0:
            lower = _raise_lower(lower, _Bound(const(Fraction(0)), False))
        else:
            upper = _lower_upper(upper, _Bound(const(Fraction(0)), False))
        feasible = _nonempty(lower, upper)

        for i in range(w.d - 1):
            if not feasible:
                break
            center_x, center_z = ball.x[i], ball.z[i]
            p_over_q = Fraction(P.p[i], q)
            k_low = (center_x - rho - p_over_q) - tau_x
            k_high = (center_x + rho - p_over_q) + tau_x
            if half > 0:
                c_low, c_high = center_z + rho, center_z - rho
            else:
                c_low, c_high = center_z - rho, center_z + rho

            # eta * c_low > k_low
            if c_low == 0:
                feasible = k_low.sign() < 0
            elif c_low > 0:
                lower = _raise_lower(lower, _Bound(k_low / c_low, True))
            else:
                upper = _lower_upper(upper, _Bound(k_low / c_low, True))

            # eta * c_high < k_high
            if feasible:
                if c_high == 0:
                    feasible = k_high.sign() > 0
                elif c_high > 0:
                    upper = _lower_upper(upper, _Bound(k_high / c_high, True))
                else:
                    lower = _raise_lower(lower, _Bound(k_high / c_high, True))

            feasible = feasible and _nonempty(lower, upper)

        if feasible:
            return lower, upper
    return None


def delta_intersects_ball(P: RationalPoint, epsilon: Fraction, ball: Ball, w: Weight) -> bool:
    """
    Exact emptiness test for Delta_eps(P) meets the ball.

    Returns:
        True iff the intersection is nonempty
    """
    return _eta_window(P, epsilon, ball, w) is not None


def _rational_inside(lower: _Bound, upper: _Bound, max_bits: int) -> Optional[Fraction]:
    bits = 64
    while bits <= max_bits:
        low = lower.value.bracket(bits)[1]
        high = upper.value.bracket(bits)[0]
        if low < high:
            return (low + high) / 2
        bits *= 2
    # closed one-point window
    low, high = lower.value.bracket(bits)
    if low == high and lower.value.compare(upper.value) == Ordering.EQ:
        return low
    return None


def _closest_pair(
    target: Tuple[Fraction, Fraction],
    shift: Fraction,
    eta: Fraction,
    z_range: Tuple[Fraction, Fraction],
) -> Tuple[Fraction, Fraction]:
    """(x, z) with x in ``target`` and z in ``z_range`` minimizing |x - shift - eta z|."""
    if eta == 0:
        return min(max(shift, target[0]), target[1]), (z_range[0] + z_range[1]) / 2
    ends = sorted((shift + eta * z_range[0], shift + eta * z_range[1]))
    low, high = max(ends[0], target[0]), min(ends[1], target[1])
    if low <= high:
        x = (low + high) / 2
        return x, (x - shift) / eta
    if ends[1] < target[0]:
        x, value = target[0], ends[1]
    else:
        x, value = target[1], ends[0]
    return x, (value - shift) / eta


def delta_ball_sample(
    P: RationalPoint, epsilon: Fraction, ball: Ball, w: Weight, max_bits: int = 4096
) -> Optional[Point]:
    """
    A rational point of Delta_eps(P) inside the ball, or None when they are disjoint.

    eta = y - s/q is taken strictly inside the window found by
    ``delta_intersects_ball``; each (x_i, z_i) pair then minimizes
    |x_i - p_i/q - eta z_i| over the ball.

    Raises:
        InternalInvariantError: If the constructed point fails the exact checks
    """
    window = _eta_window(P, epsilon, ball, w)
    if window is None:
        return None
    eta = _rational_inside(*window, max_bits)
    if eta is None:
        logger.debug(f"no rational eta separated for {P} within {max_bits} bits")
        return None

    rho = ball.radius
    xs, zs = [], []
    for i in range(w.d - 1):
        x, z = _closest_pair(
            (ball.x[i] - rho, ball.x[i] + rho),
            Fraction(P.p[i], P.q),
            eta,
            (ball.z[i] - rho, ball.z[i] + rho),
        )
        xs.append(x)
        zs.append(z)
    point = tuple(xs) + (Fraction(P.s, P.q) + eta,) + tuple(zs)
    if not (ball_contains(ball, point) and delta_contains(P, epsilon, point, w)):
        raise InternalInvariantError(f"sample {point} misses Delta_eps({P}) within {ball.describe()}")
    return point

def candidate_numerators(ball: Ball, q: int, epsilon: Fraction) -> Tuple[List[range], range]:
    """
    Integer windows for p and s such that Delta_eps(p/q, s/q) may meet the ball.

    Uses |y - s/q| < eps/q and |x_i - p_i/q - eta z_i| < eps/q, which
    over-approximate the true windows since q >= 1.

    Returns:
        (p-ranges per coordinate, s-range)
    """
    epsilon = Fraction(epsilon)
    rho = ball.radius
    s_range = range(floor(q * (ball.y - rho) - epsilon), -floor(-(q * (ball.y + rho) + epsilon)) + 1)
    p_ranges = []
    for center_x, center_z in zip(ball.x, ball.z):
        spread = epsilon * (abs(center_z) + rho) + epsilon
        lo = floor(q * (center_x - rho) - spread)
        hi = -floor(-(q * (center_x + rho) + spread))
        p_ranges.append(range(lo, hi + 1))
    return p_ranges, s_range


def enumerate_dangerous_points(
    ball: Ball,
    epsilon: Fraction,
    w: Weight,
    q_min: int,
    q_max: int,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> Iterator[RationalPoint]:
    """
    Yield every reduced P with q_min <= q <= q_max and Delta_eps(P) meeting the ball.

    Points are produced by increasing q, then lexicographically in (p, s).

    Raises:
        BudgetExceededError: When more than ``budget`` candidates are examined
    """
    counter = _Counter(budget, "dangerous-point enumeration")
    for q in range(max(q_min, 1), q_max + 1):
        p_ranges, s_range = candidate_numerators(ball, q, epsilon)
        for p in product(*p_ranges):
            for s in s_range:
                counter.tick()
                if gcd(*p, s, q) != 1:
                    continue
                P = RationalPoint(p=list(p), s=s, q=q)
                if delta_intersects_ball(P, epsilon, ball, w):
                    yield P


# ---------------------------------------------------------------------------
# Certificates
# ---------------------------------------------------------------------------


def bad_certificate(
    point: Sequence[Fraction],
    w: Weight,
    epsilon: Fraction,
    max_q: int,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
) -> CertificateResult:
    """
    Truncated certificate that no P with q(P) <= max_q has quality < eps.

    For each q the numerator s runs over the window |q y - s| < eps q^(-mu)
    widened by one guard integer per side, and p is the nearest integer to
    q x - (q y - s) z, which minimises the x-term. Non-reduced candidates are
    tested as they come; scaling only worsens quality, so the reported
    witness is the reduced form.

    Args:
        point: Flattened (x, y, z)
        w: Weight
        epsilon: Positive epsilon
        max_q: Denominator bound Q
        budget: Candidate cap

    Returns:
        CertificateResult with status HOLDS or VIOLATED

    Raises:
        BudgetExceededError: When the cap is exceeded
    """
    epsilon = Fraction(epsilon)
    if epsilon <= 0:
        raise ValueError("epsilon must be positive")
    if max_q < 1:
        raise ValueError("max_q must be >= 1")
    x, y, z = split_point(point, w.d)
    counter = _Counter(budget, "bad_certificate")

    for q in range(1, max_q + 1):
        half = power_upper_bound(epsilon, q, -w.mu)
        s_lo = floor(q * y - half) - 1
        s_hi = -floor(-(q * y + half)) + 1
        for s in range(s_lo, s_hi + 1):
            counter.tick()
            offset = q * y - s
            if not power_below(abs(offset), q, w.mu, epsilon):
                continue
            p = [_nearest(q * xi - offset * zi) for xi, zi in zip(x, z)]
            term_x = max(abs(q * xi - pi - offset * zi) for xi, pi, zi in zip(x, p, z))
            if power_below(term_x, q, w.lam, epsilon):
                reduced = reduce_point(p, s, q)
                logger.debug(f"certificate violated by {reduced} (q={q})")
                return CertificateResult(
                    status=CertificateStatus.VIOLATED,
                    epsilon=epsilon,
                    max_q=max_q,
                    witness=quality(reduced, point, w),
                    candidates=counter.used,
                )

    logger.debug(f"certificate holds up to Q={max_q} ({counter.used} candidates)")
    return CertificateResult(
        status=CertificateStatus.HOLDS, epsilon=epsilon, max_q=max_q, candidates=counter.used
    )


def best_epsilon(
    point: Sequence[Fraction],
    w: Weight,
    max_q: int,
    budget: int = DEFAULT_CANDIDATE_BUDGET,
    dps: int = 30,
) -> EpsilonBound:
    """
    Minimum quality max-term over reduced P with q(P) <= max_q.

    The s-window for each q shrinks with the running minimum:
    |q y - s| <= best * q^(-mu). Ties keep the earliest (q, s).

    Returns:
        EpsilonBound with the exact value coefficient * q**exponent

    Raises:
        BudgetExceededError: When the cap is exceeded

    Example:
        >>> pt = (Fraction(1, 20), Fraction(1, 20), Fraction(1, 2))
        >>> best_epsilon(pt, Weight.uniform(2), 1).rational_value
        Fraction(1, 20)
    """
    if max_q < 1:
        raise ValueError("max_q must be >= 1")
    x, y, z = split_point(point, w.d)
    counter = _Counter(budget, "best_epsilon")

    def evaluate(s: int, q: int) -> Tuple[Fraction, Fraction, List[int]]:
        offset = q * y - s
        p = [_nearest(q * xi - offset * zi) for xi, zi in zip(x, z)]
        term_y, term_x = _quality_terms(p, s, q, x, y, z)
        coefficient, exponent = _max_term(term_y, term_x, q, w)
        return coefficient, exponent, p

    s0 = _nearest(y)
    best_coef, best_exp, best_p = evaluate(s0, 1)
    best_q, best_s = 1, s0
    best_upper = power_upper_bound(best_coef, 1, best_exp)

    for q in range(1, max_q + 1):
        if best_coef == 0:
            break
        half = best_upper * power_upper_bound(1, q, -w.mu)
        for s in range(-floor(-(q * y - half)), floor(q * y + half) + 1):
            counter.tick()
            coefficient, exponent, p = evaluate(s, q)
            order = compare_monomials(coefficient, q, exponent, best_coef, best_q, best_exp)
            if order == Ordering.LT:
                best_coef, best_exp, best_q, best_s, best_p = coefficient, exponent, q, s, p
                best_upper = power_upper_bound(best_coef, best_q, best_exp)

    witness_point = reduce_point(best_p, best_s, best_q)
    with mpmath.workdps(dps + 10):
        decimal = mpmath.nstr(power_to_mpf(best_coef, best_q, best_exp, dps), dps)
    logger.debug(f"best epsilon up to Q={max_q}: {decimal} at {witness_point}")
    return EpsilonBound(
        coefficient=best_coef,
        q=best_q,
        exponent=best_exp,
        decimal=decimal,
        witness=quality(witness_point, point, w),
    )
