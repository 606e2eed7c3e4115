"""
Dual-vector and line attachments of a rational point to a ball.

For a ball B with center z-part z_B and a reduced point P = (p/q, s/q):

- the admissible set holds nonzero integer (a, b) with a . p + b s = 0 mod q,
  |a|_inf <= q**lambda and |b + z_B . a| <= q**mu + sigma(B);
- ``dual_search`` returns the admissible vector minimising
  xi = max(|a|_inf, |b + z_B . a|), and ``height`` is q * xi;
- ``attach_line`` returns a nonzero vector of Z^d + Z P nearly parallel to
  (z_B, 1) in the weighted sense.

Searches are exact integer enumerations over windows whose bounds come from
integer root isolation.
"""

from fractions import Fraction
from itertools import product
from math import floor
from typing import List, Optional, Sequence, Tuple

from sympy import Matrix
from sympy.matrices.normalforms import hermite_normal_form

from src.models.attachments import AttachedHyperplane, DualVector, LinePoint
from src.models.diophantine import RationalPoint, Weight
from src.models.enums import Ordering
from src.models.errors import DimensionMismatchError, InternalInvariantError
from src.models.geometry import Ball
from src.tools.exact import (
    compare_power_terms,
    compare_with_power,
    power_at_most,
    power_floor,
    power_upper_bound,
)
from src.utils.logger import get_logger

logger = get_logger(__name__)


def _ceil(value: Fraction) -> int:
    return -floor(-value)


def _check_dims(ball: Ball, P: RationalPoint, w: Weight) -> None:
    if P.d != w.d:
        raise DimensionMismatchError(w.d, P.d, "rational point")
    if ball.d != w.d:
        raise DimensionMismatchError(w.d, ball.d, "ball")


def _within_b_window(value: Fraction, q: int, w: Weight, sigma: Fraction) -> bool:
    """|value| <= q**mu + sigma."""
    return compare_with_power(abs(value), q, w.mu, sigma) != Ordering.GT


def dual_search(ball: Ball, P: RationalPoint, w: Weight) -> DualVector:
    """
    Minimising admissible dual vector a+(B, P).

    Enumerates a over the box |a|_inf <= floor(q**lambda) and, per a, b over
    the window |b + z_B . a| <= q**mu + sigma. Ties on xi are broken by
    lexicographic order of (a_1, ..., a_{d-1}, b).

    Args:
        ball: Ball supplying z_B and sigma
        P: Reduced rational point
        w: Weight

    Returns:
        DualVector with its xi

    Raises:
        InternalInvariantError: If the admissible set is found empty

    Example:
        >>> ball = Ball.from_center((0, 0, 0), Fraction(1, 10))
        >>> dual_search(ball, RationalPoint(p=[1], s=1, q=2), Weight.uniform(2)).a
        [-1]
    """
    _check_dims(ball, P, w)
    q = P.q
    a_max = power_floor(q, w.lam)
    b_reach = power_upper_bound(1, q, w.mu) + ball.sqrt_radius

    best: Optional[Tuple[Fraction, Tuple[int, ...]]] = None
    for a in product(range(-a_max, a_max + 1), repeat=w.d - 1):
        za = sum((zi * ai for zi, ai in zip(ball.z, a)), Fraction(0))
        a_norm = max(abs(ai) for ai in a)
        ap = sum(ai * pi for ai, pi in zip(a, P.p))
        for b in range(_ceil(-za - b_reach), floor(-za + b_reach) + 1):
            if b == 0 and a_norm == 0:
                continue
            if (ap + b * P.s) % q != 0:
                continue
            shifted = b + za
            if not _within_b_window(shifted, q, w, ball.sqrt_radius):
                continue
            key = (max(Fraction(a_norm), abs(shifted)), tuple(a) + (b,))
            if best is None or key < best:
                best = key

    if best is None:
        raise InternalInvariantError(f"no admissible dual vector for {P} in {ball.describe()}")
    xi, coefficients = best
    return DualVector(a=list(coefficients[:-1]), b=coefficients[-1], xi=xi)


def height(ball: Ball, P: RationalPoint, w: Weight, dual: Optional[DualVector] = None) -> Fraction:
    """H_B(P) = q(P) * xi(B, P)."""
    dual = dual or dual_search(ball, P, w)
    return P.q * dual.xi


def attached_hyperplane(
    ball: Ball, P: RationalPoint, w: Weight, dual: Optional[DualVector] = None
) -> AttachedHyperplane:
    """
    Integer functional F(w) = a . w_x + b * w_y - C through P.

    Raises:
        InternalInvariantError: If C is not an integer
    """
    dual = dual or dual_search(ball, P, w)
    constant = Fraction(sum(ai * pi for ai, pi in zip(dual.a, P.p)) + dual.b * P.s, P.q)
    if constant.denominator != 1:
        raise InternalInvariantError(f"non-integral hyperplane constant {constant} for {P}")
    return AttachedHyperplane(a=dual.a, b=dual.b, C=int(constant))


def functional_eval(hyperplane: AttachedHyperplane, point: Sequence[Fraction]) -> Fraction:
    """a . w_x + b * w_y - C at a point of Q^d."""
    if len(point) != len(hyperplane.a) + 1:
        raise DimensionMismatchError(len(hyperplane.a) + 1, len(point), "point")
    return hyperplane.evaluate(point)


def scaled_functional(hyperplane: AttachedHyperplane, P: RationalPoint) -> int:
    """
    q(P) * F(P) for a reduced point, always an integer.

    A value of absolute size < 1 therefore forces F(P) = 0.
    """
    value = P.q * functional_eval(hyperplane, P.coordinates())
    if value.denominator != 1:
        raise InternalInvariantError(f"q * F(P) = {value} is not an integer")
    return int(value)


def attach_line(
    ball: Ball, P: RationalPoint, w: Weight, dual: Optional[DualVector] = None
) -> LinePoint:
    """
    Direction v+(B, P) = (v, u) of the attached line.

    Searches c in 0..q-1 and integer corrections so that
    u = c s / q + c_d with |u| <= 2 d xi q**(-lambda-mu), then
    v_i = c p_i / q + c_i with |v_i - u z_i| <= 2 d q**(-lambda).
    The first nonzero solution in lexicographic (c, c_d, c_1, ...) order
    is returned.

    Raises:
        InternalInvariantError: If no solution exists
    """
    _check_dims(ball, P, w)
    dual = dual or dual_search(ball, P, w)
    q, d = P.q, w.d
    u_bound = 2 * d * dual.xi
    u_reach = power_upper_bound(u_bound, q, -(w.lam + w.mu))
    v_reach = power_upper_bound(2 * d, q, -w.lam)

    for c in range(q):
        u_base = Fraction(c * P.s, q)
        for c_d in range(_ceil(-u_reach - u_base), floor(u_reach - u_base) + 1):
            u = u_base + c_d
            if not power_at_most(abs(u), q, w.lam + w.mu, u_bound):
                continue
            options: List[List[Fraction]] = []
            for p_i, z_i in zip(P.p, ball.z):
                v_base = Fraction(c * p_i, q)
                lo = _ceil(u * z_i - v_reach - v_base)
                hi = floor(u * z_i + v_reach - v_base)
                values = [
                    v_base + c_i
                    for c_i in range(lo, hi + 1)
                    if power_at_most(abs(v_base + c_i - u * z_i), q, w.lam, 2 * d)
                ]
                if not values:
                    break
                options.append(values)
            else:
                for v in product(*options):
                    if u != 0 or any(v):
                        return LinePoint(v=list(v), u=u, c=c)

    raise InternalInvariantError(f"no attached line direction for {P} in {ball.describe()}")


def line_in_lattice(line: LinePoint, P: RationalPoint) -> bool:
    """True iff q (v, u) - c (p, s) lies in q Z^d."""
    q = P.q
    diffs = [q * vi - line.c * pi for vi, pi in zip(line.v, P.p)]
    diffs.append(q * line.u - line.c * P.s)
    return all(Fraction(x).denominator == 1 and int(x) % q == 0 for x in diffs)


def line_bounds_hold(ball: Ball, P: RationalPoint, w: Weight, line: LinePoint, xi: Fraction) -> bool:
    """Exact check of |v - u z_B|_inf <= 2d q**(-lambda) and |u| <= 2d xi q**(-lambda-mu)."""
    q, d = P.q, w.d
    if not power_at_most(abs(line.u), q, w.lam + w.mu, 2 * d * xi):
        return False
    return all(
        power_at_most(abs(vi - line.u * zi), q, w.lam, 2 * d) for vi, zi in zip(line.v, ball.z)
    )


def height_bounds_hold(P: RationalPoint, H: Fraction, w: Weight) -> bool:
    """q(P) <= H <= q(P)**(1+lambda), decided exactly."""
    return P.q <= H and compare_with_power(H, P.q, 1 + w.lam) != Ordering.GT


def nested_height_check(outer: Ball, inner: Ball, P: RationalPoint, w: Weight) -> bool:
    """H_outer(P) <= 2 H_inner(P) for nested balls inner within outer."""
    return height(outer, P, w) <= 2 * height(inner, P, w)


def lambda_p_basis(P: RationalPoint) -> List[List[Fraction]]:
    """
    Basis (as columns) of the lattice Z^d + Z P, of covolume 1/q.

    Computed from the Hermite normal form of the integer generators
    q e_1, ..., q e_d, (p, s), then scaled by 1/q.
    """
    q, d = P.q, P.d
    generators = [[q if i == j else 0 for j in range(d)] + [v] for i, v in enumerate(list(P.p) + [P.s])]
    form = hermite_normal_form(Matrix(generators))
    columns = [
        [Fraction(int(form[i, j]), q) for i in range(d)]
        for j in range(form.cols)
        if any(form[i, j] != 0 for i in range(d))
    ]
    if len(columns) != d:
        raise InternalInvariantError(f"lattice basis has {len(columns)} columns, expected {d}")
    return columns


def main_estimate_holds(
    parent: Ball,
    second_ball: Ball,
    P1: RationalPoint,
    P2: RationalPoint,
    kappa: Fraction,
    epsilon: Fraction,
    w: Weight,
) -> bool:
    """
    Constant-free bound on |F_{B2,P2}(P1)| for two points whose dangerous sets meet ``parent``.

    Checks, exactly,
    |F(P1)| <= d |a2|_inf (eps q1^(-1-lambda) + eps q2^(-1-lambda) + 10 kappa rho)
             + |b2 + z_B2 . a2| (eps q1^(-1-mu) + eps q2^(-1-mu) + 2 rho)
    with rho the parent radius and kappa a bound on every coordinate of the
    parent ball plus one.
    """
    dual = dual_search(second_ball, P2, w)
    hyperplane = attached_hyperplane(second_ball, P2, w, dual)
    value = abs(functional_eval(hyperplane, P1.coordinates()))
    a_norm = Fraction(max(abs(ai) for ai in dual.a))
    shifted = abs(dual.b + sum((zi * ai for zi, ai in zip(second_ball.z, dual.a)), Fraction(0)))
    rho = parent.radius
    d = w.d
    rhs = [
        (d * a_norm * epsilon, P1.q, -1 - w.lam),
        (d * a_norm * epsilon, P2.q, -1 - w.lam),
        (d * a_norm * 10 * kappa * rho, 1, 0),
        (shifted * epsilon, P1.q, -1 - w.mu),
        (shifted * epsilon, P2.q, -1 - w.mu),
        (shifted * 2 * rho, 1, 0),
    ]
    return compare_power_terms([(value, 1, 0)], rhs) != Ordering.GT
