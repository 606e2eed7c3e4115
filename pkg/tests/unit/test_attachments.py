"""
Unit tests for dual-vector and line attachments.
"""

from fractions import Fraction

import pytest

from src.models.attachments import DualVector
from src.models.diophantine import RationalPoint, Weight
from src.models.errors import DimensionMismatchError
from src.models.geometry import Ball
from src.tools.attachments import (
    attach_line,
    attached_hyperplane,
    dual_search,
    functional_eval,
    height,
    height_bounds_hold,
    lambda_p_basis,
    line_bounds_hold,
    line_in_lattice,
    main_estimate_holds,
    nested_height_check,
    scaled_functional,
)


class TestDualSearch:
    """Tests for the minimising dual vector and its hyperplane."""

    @pytest.fixture
    def w(self):
        return Weight.uniform(2)

    @pytest.fixture
    def ball(self):
        return Ball.from_center((0, 0, 0), Fraction(1, 10))

    @pytest.fixture
    def half(self):
        return RationalPoint(p=[1], s=1, q=2)

    def test_dual_vector(self, ball, half, w):
        dual = dual_search(ball, half, w)
        assert dual.a == [-1]
        assert dual.b == -1
        assert dual.xi == 1

    def test_height(self, ball, half, w):
        assert height(ball, half, w) == 2
        assert height_bounds_hold(half, height(ball, half, w), w)

    def test_hyperplane(self, ball, half, w):
        hyperplane = attached_hyperplane(ball, half, w)
        assert hyperplane.C == -1
        assert functional_eval(hyperplane, (0, 0)) == 1
        assert scaled_functional(hyperplane, half) == 0

    def test_hyperplane_passes_through_point(self, ball, half, w):
        hyperplane = attached_hyperplane(ball, half, w)
        assert functional_eval(hyperplane, half.coordinates()) == 0

    def test_integer_point_tie_break(self, ball, w):
        """All eight unit vectors tie at xi = 1; the lexicographic least wins."""
        dual = dual_search(ball, RationalPoint(p=[0], s=0, q=1), w)
        assert (dual.a, dual.b) == ([-1], -1)

    def test_sheared_ball(self, w, half):
        """z_B = 1 shifts the b-window; the minimiser still satisfies the congruence."""
        ball = Ball.from_center((0, 0, 1), Fraction(1, 10))
        dual = dual_search(ball, half, w)
        assert (dual.a[0] + dual.b) % 2 == 0
        assert dual.xi == max(abs(dual.a[0]), abs(dual.b + dual.a[0]))

    def test_zero_vector_rejected(self):
        with pytest.raises(ValueError):
            DualVector(a=[0], b=0, xi=0)

    def test_dimension_mismatch(self, ball):
        with pytest.raises(DimensionMismatchError):
            dual_search(ball, RationalPoint(p=[0, 0], s=0, q=1), Weight.uniform(3))

    def test_wrong_point_length(self, ball, half, w):
        hyperplane = attached_hyperplane(ball, half, w)
        with pytest.raises(DimensionMismatchError):
            functional_eval(hyperplane, (0, 0, 0))


class TestAttachLine:
    """Tests for attached line directions."""

    @pytest.fixture
    def w(self):
        return Weight.uniform(2)

    @pytest.fixture
    def ball(self):
        return Ball.from_center((0, 0, 0), Fraction(1, 10))

    def test_integer_point(self, ball, w):
        line = attach_line(ball, RationalPoint(p=[0], s=0, q=1), w)
        assert line.v == [-4]
        assert line.u == -4
        assert line.c == 0

    def test_line_in_lattice_and_bounds(self, ball, w):
        P = RationalPoint(p=[1], s=1, q=2)
        dual = dual_search(ball, P, w)
        line = attach_line(ball, P, w, dual)
        assert line_in_lattice(line, P)
        assert line_bounds_hold(ball, P, w, line, dual.xi)

    def test_higher_dimension(self):
        w = Weight.uniform(3)
        ball = Ball.from_center((0, 0, 0, 0, 0), Fraction(1, 10))
        P = RationalPoint(p=[1, 2], s=1, q=3)
        dual = dual_search(ball, P, w)
        line = attach_line(ball, P, w, dual)
        assert line_in_lattice(line, P)
        assert line_bounds_hold(ball, P, w, line, dual.xi)


class TestLatticeAndEstimates:
    """Tests for the point lattice and height estimates."""

    @pytest.fixture
    def w(self):
        return Weight.uniform(2)

    def test_lambda_p_covolume(self):
        P = RationalPoint(p=[1], s=1, q=2)
        (a, b), (c, d) = lambda_p_basis(P)
        assert abs(a * d - b * c) == Fraction(1, 2)

    def test_lambda_p_contains_point(self):
        """P itself is an integer combination of the basis columns."""
        P = RationalPoint(p=[1], s=2, q=5)
        (a, b), (c, d) = lambda_p_basis(P)
        det = a * d - b * c
        x, y = P.coordinates()
        k1 = (x * d - c * y) / det
        k2 = (a * y - b * x) / det
        assert k1.denominator == 1 and k2.denominator == 1

    def test_nested_heights(self, w):
        outer = Ball.from_center((0, 0, 0), Fraction(1, 10))
        inner = Ball.from_center((0, 0, 0), Fraction(1, 20))
        assert nested_height_check(outer, inner, RationalPoint(p=[1], s=1, q=2), w)

    def test_main_estimate_same_point(self, w):
        parent = Ball.from_center((0, 0, 0), Fraction(1, 10))
        second = Ball.from_center((0, 0, 0), Fraction(1, 20))
        origin = RationalPoint(p=[0], s=0, q=1)
        assert main_estimate_holds(parent, second, origin, origin, Fraction(1), Fraction(1, 10), w)

    def test_main_estimate_fails_for_distant_point(self, w):
        """A point whose Delta misses the parent is not bound by the estimate."""
        parent = Ball.from_center((0, 0, 0), Fraction(1, 10))
        second = Ball.from_center((0, 0, 0), Fraction(1, 20))
        origin = RationalPoint(p=[0], s=0, q=1)
        half = RationalPoint(p=[1], s=1, q=2)
        assert not main_estimate_holds(parent, second, half, origin, Fraction(1), Fraction(1, 10), w)
