"""
Exact sup-norm ball and slab predicates used by the referee and strategies.
"""

from fractions import Fraction
from typing import Sequence

from src.models.errors import DimensionMismatchError
from src.models.geometry import Ball, HyperplaneNbhd


def _check_dim(expected: int, got: int, what: str) -> None:
    if expected != got:
        raise DimensionMismatchError(expected, got, what)


def sup_distance(a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    """Sup-norm distance between two points of equal dimension."""
    _check_dim(len(a), len(b), "point")
    return max((abs(Fraction(u) - Fraction(v)) for u, v in zip(a, b)), default=Fraction(0))


def ball_contains(ball: Ball, point: Sequence[Fraction]) -> bool:
    """
    True iff the sup-norm distance from point to the center is at most rho.

    Raises:
        DimensionMismatchError: If point is not in R^(2d-1)

    Example:
        >>> ball_contains(Ball.from_center((0, 0, 0), 1), (1, 1, 1))
        True
    """
    _check_dim(ball.dim, len(point), "point")
    return sup_distance(ball.center, point) <= ball.radius


def ball_subset(inner: Ball, outer: Ball) -> bool:
    """True iff inner is contained in outer: |c1 - c2|_inf + rho1 <= rho2."""
    _check_dim(outer.dim, inner.dim, "ball")
    return sup_distance(inner.center, outer.center) + inner.radius <= outer.radius


def ball_avoids_nbhd(ball: Ball, nbhd: HyperplaneNbhd) -> bool:
    """
    True iff the closed ball misses the open neighborhood.

    The minimum of |normal . p - offset| over the sup-norm ball is
    max(0, |normal . c - offset| - rho * |normal|_1); the ball avoids the
    neighborhood iff that minimum is at least delta * |normal|_2, compared
    in squares.
    """
    _check_dim(ball.dim, nbhd.dim, "hyperplane normal")
    slack = abs(nbhd.evaluate(ball.center)) - ball.radius * nbhd.norm1
    if slack < 0:
        return False
    return slack * slack >= nbhd.width * nbhd.width * nbhd.norm2_squared


def nbhd_contains(nbhd: HyperplaneNbhd, point: Sequence[Fraction]) -> bool:
    """True iff point lies in the open neighborhood."""
    _check_dim(nbhd.dim, len(point), "point")
    value = nbhd.evaluate(tuple(Fraction(p) for p in point))
    return value * value < nbhd.width * nbhd.width * nbhd.norm2_squared
