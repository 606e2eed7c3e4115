"""
Unit tests for the diagonal-flow systole simulator.
"""

import random
from fractions import Fraction

import mpmath
import pytest

from src.models.diophantine import Weight
from src.models.enums import BoundednessStatus
from src.models.errors import DimensionMismatchError, SingularBasisError
from src.models.lattice import SystolePoint, SystoleTrace, UnipotentParams
from src.tools.lattice import (
    boundedness_verdict,
    flowed_basis,
    hermite_bound,
    mat_mul,
    orbit_trace,
    orbit_verdict,
    rational_collapse_vector,
    systole,
    time_grid,
    u_inverse,
    u_matrix,
    within_hermite_bound,
)


# Frozen regression floor for the 2^(1/3) cubic pair on [0, 15].
CUBIC_PAIR_FLOOR = 1e-3


def _cubic_pair(n):
    """(n^(1/3), n^(2/3)) rounded to 40 digits."""
    with mpmath.workdps(50):
        x = Fraction(mpmath.nstr(mpmath.cbrt(n), 40))
        y = Fraction(mpmath.nstr(mpmath.cbrt(n * n), 40))
    return UnipotentParams(x=[x], y=y, z=[0])


def _point(t, length):
    return SystolePoint(
        t=t, length=length, length_decimal=str(length), vector=[length, 0, 0], coefficients=[1, 0, 0]
    )


class TestUnipotent:
    """Tests for exact unipotent matrices."""

    @pytest.fixture
    def params(self):
        return UnipotentParams(x=[Fraction(1, 2)], y=Fraction(1, 2), z=[Fraction(1, 3)])

    def test_u_inverse_rows(self):
        p = UnipotentParams(x=[Fraction(1, 2)], y=Fraction(1, 2), z=[0])
        assert u_inverse(p) == [
            [1, 0, Fraction(-1, 2)],
            [0, 1, Fraction(-1, 2)],
            [0, 0, 1],
        ]

    def test_inverse_is_inverse(self, params):
        identity = [[Fraction(int(i == j)) for j in range(3)] for i in range(3)]
        assert mat_mul(u_matrix(params), u_inverse(params)) == identity
        assert mat_mul(u_inverse(params), u_matrix(params)) == identity

    def test_from_point(self, params):
        assert UnipotentParams.from_point(params.as_point()) == params
        assert params.d == 2

    def test_odd_length_required(self):
        with pytest.raises(ValueError):
            UnipotentParams.from_point((0, 0))

    def test_collapse_vector(self):
        p = UnipotentParams(x=[Fraction(1, 2)], y=Fraction(1, 2), z=[0])
        assert rational_collapse_vector(p) == [1, 1, 2]


class TestSystole:
    """Tests for shortest-vector computation."""

    def test_identity(self):
        result = systole([[1, 0, 0], [0, 1, 0], [0, 0, 1]])
        assert float(result.length) == pytest.approx(1.0)

    def test_diagonal(self):
        result = systole([[2, 0, 0], [0, 1, 0], [0, 0, Fraction(1, 2)]])
        assert float(result.length) == pytest.approx(0.5)
        assert [abs(c) for c in result.coefficients] == [0, 0, 1]

    def test_unimodular_change_of_basis(self):
        """A sheared basis of Z^3 still has systole 1."""
        result = systole([[1, 7, -3], [0, 1, 5], [0, 0, 1]])
        assert float(result.length) == pytest.approx(1.0)

    def test_singular(self):
        with pytest.raises(SingularBasisError):
            systole([[1, 0, 0], [0, 0, 0], [0, 0, 1]])

    def test_invariant_under_unimodular_columns(self):
        """Random integer column operations never change the systole."""
        rng = random.Random(11)
        for _ in range(50):
            params = UnipotentParams(
                x=[Fraction(rng.randint(-9, 9), rng.randint(1, 9))],
                y=Fraction(rng.randint(-9, 9), rng.randint(1, 9)),
                z=[Fraction(rng.randint(-9, 9), rng.randint(1, 9))],
            )
            scale = Fraction(rng.randint(1, 6), rng.randint(1, 6))
            basis = mat_mul(
                [[scale, 0, 0], [0, 1 / scale, 0], [0, 0, Fraction(1)]], u_inverse(params)
            )
            changed = basis
            for _ in range(4):
                i, j = rng.sample(range(3), 2)
                shear = [[Fraction(int(r == c)) for c in range(3)] for r in range(3)]
                shear[i][j] = Fraction(rng.randint(-4, 4))
                changed = mat_mul(changed, shear)

            a = systole(basis).length
            b = systole(changed).length
            assert abs(a - b) <= a * mpmath.mpf(10) ** -20
            assert within_hermite_bound(a, 3)


class TestHermiteBound:
    """Tests for the largest systole allowed by covolume."""

    def test_three_dimensional_constant(self):
        assert float(hermite_bound(3)) == pytest.approx(2 ** (1 / 6))
        assert float(hermite_bound(3, 8)) == pytest.approx(2 * 2 ** (1 / 6))

    def test_unimodular_threshold(self):
        assert within_hermite_bound(mpmath.mpf("1.12"), 3)
        assert within_hermite_bound(hermite_bound(3), 3)
        assert not within_hermite_bound(mpmath.mpf("1.13"), 3)
        assert not within_hermite_bound(mpmath.mpf("1.1547"), 3)

    def test_hexagonal_lattice_attains_bound(self):
        """The hexagonal plane lattice has systole exactly (4/3)^(1/4) |det|^(1/2)."""
        with mpmath.workprec(192):
            basis = [[1, mpmath.mpf(1) / 2], [0, mpmath.sqrt(3) / 2]]
            length = systole(basis).length
            bound = hermite_bound(2, mpmath.sqrt(3) / 2)
            assert abs(length - bound) < mpmath.mpf(10) ** -20

    def test_face_centred_cubic_attains_bound(self):
        basis = [[1, 1, 0], [1, 0, 1], [0, 1, 1]]
        length = systole(basis).length
        assert float(length) == pytest.approx(2 ** 0.5)
        assert within_hermite_bound(length, 3, 2)
        assert not within_hermite_bound(length * (1 + mpmath.mpf(10) ** -4), 3, 2)

    def test_unsupported_dimension(self):
        with pytest.raises(ValueError):
            hermite_bound(7)

    def test_zero_covolume(self):
        with pytest.raises(SingularBasisError):
            hermite_bound(3, 0)


class TestOrbit:
    """Tests for orbit traces and verdicts."""

    @pytest.fixture
    def w(self):
        return Weight.uniform(2)

    @pytest.fixture
    def rational(self):
        return UnipotentParams(x=[Fraction(1, 2)], y=Fraction(1, 2), z=[0])

    def test_rational_point_collapses(self, rational, w):
        """(1, 1, 2) flows to length 2 e^(-t) = 1/10 at t = ln 20."""
        trace = orbit_trace(rational, w, [mpmath.log(20)])
        assert trace.points[0].length <= 0.1 + 1e-12

    def test_flowed_basis_dimension(self, rational):
        with pytest.raises(DimensionMismatchError):
            flowed_basis(rational, Weight.uniform(3), 0)

    def test_times_must_increase(self, rational, w):
        with pytest.raises(ValueError):
            orbit_trace(rational, w, [1, 1])

    def test_negative_time(self, rational, w):
        with pytest.raises(ValueError):
            orbit_trace(rational, w, [-1])

    def test_time_grid(self):
        grid = time_grid(2, 5)
        assert [float(t) for t in grid] == [0.0, 0.5, 1.0, 1.5, 2.0]
        assert time_grid(3, 1) == [0]

    def test_time_grid_invalid(self):
        with pytest.raises(ValueError):
            time_grid(1, 0)

    def test_rational_point_escapes(self, rational, w):
        trace, verdict = orbit_verdict(rational, w, time_grid(6, 7), 0.05)
        assert verdict.status == BoundednessStatus.ESCAPED
        assert verdict.time is not None
        assert verdict.min_length < 0.05

    @pytest.mark.slow
    def test_cubic_pair_stays_bounded(self, w):
        """(2^(1/3), 4^(1/3)) at 40 digits keeps its systole above the recorded floor up to t = 15."""
        trace = orbit_trace(_cubic_pair(2), w, time_grid(15, 31))
        assert trace.min_point().length >= CUBIC_PAIR_FLOOR

    @pytest.mark.slow
    def test_rational_and_cubic_panel(self, w):
        """Over a shared horizon every rational point dips below every cubic pair."""
        rng = random.Random(5)
        rational = []
        for _ in range(10):
            q = rng.randint(2, 6)
            x = Fraction(rng.randint(0, q - 1), q)
            y = Fraction(rng.randint(1, q - 1), q)
            rational.append(UnipotentParams(x=[x], y=y, z=[0]))
        cubic = [_cubic_pair(n) for n in (2, 3, 5, 6, 7, 10, 11, 12, 13, 15)]
        grid = time_grid(10, 21)

        def lowest(params):
            return orbit_trace(params, w, grid).min_point().length

        collapsed = [lowest(p) for p in rational]
        bounded = [lowest(p) for p in cubic]

        assert len(collapsed) + len(bounded) == 20
        assert max(collapsed) <= 6 * mpmath.exp(-10) * (1 + mpmath.mpf(10) ** -9)
        assert max(collapsed) < min(bounded)


class TestBoundednessVerdict:
    """Tests for boundedness_verdict."""

    def test_empty_trace(self):
        verdict = boundedness_verdict(SystoleTrace(points=[], precision_bits=64), 0.5)
        assert verdict.status == BoundednessStatus.BOUNDED_SO_FAR
        assert verdict.min_length is None

    def test_constant_trace(self):
        trace = SystoleTrace(points=[_point(0.0, 1.0), _point(1.0, 1.0)], precision_bits=64)
        verdict = boundedness_verdict(trace, 0.5)
        assert verdict.status == BoundednessStatus.BOUNDED_SO_FAR
        assert verdict.min_length == 1.0

    def test_first_escape_time(self):
        trace = SystoleTrace(
            points=[_point(0.0, 1.0), _point(1.0, 0.2), _point(2.0, 0.05), _point(3.0, 0.01)],
            precision_bits=64,
        )
        verdict = boundedness_verdict(trace, 0.1)
        assert verdict.status == BoundednessStatus.ESCAPED
        assert verdict.time == 2.0
        assert verdict.min_length == 0.01

    def test_invalid_floor(self):
        with pytest.raises(ValueError):
            boundedness_verdict(SystoleTrace(points=[], precision_bits=64), 0)

    def test_unordered_trace_rejected(self):
        with pytest.raises(ValueError):
            SystoleTrace(points=[_point(1.0, 1.0), _point(0.0, 1.0)], precision_bits=64)
