"""
Exact comparisons against rational powers.

Everything here works on ``fractions.Fraction`` values and never decides an
inequality in floating point. Three layers are provided:

- ``cmp_power`` / ``compare_with_power``: order of ``c`` against
  ``base**(m/w) + shift`` by raising both sides to the w-th power.
- ``PowerSum``: sums of rational multiples of rational powers of a single
  rational base, with an exact sign test (the base is rewritten as
  ``root**k`` with ``root`` not a perfect power, so ``root**(1/W)`` has degree
  ``W`` over Q and a polynomial in it vanishes only when all its coefficients
  vanish; nonzero values are then separated from 0 by rational brackets).
- ``power_terms_sign`` / ``compare_power_terms``: sums over several bases,
  exact whenever every term is rational or all irrational terms share one
  primitive root, otherwise certified interval evaluation with precision
  doubling.
"""

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import gcd, lcm
from typing import Dict, Iterable, List, Optional, Sequence, Tuple, Union

import mpmath
from sympy import Rational as SymRational
from sympy import integer_nthroot, perfect_power

from src.models.enums import Ordering
from src.models.errors import PrecisionExhaustedError
from src.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_START_BITS = 64
DEFAULT_MAX_BITS = 4096

Number = Union[int, Fraction]
# (coefficient, base, exponent) standing for coefficient * base**exponent
PowerTerm = Tuple[Fraction, Fraction, Fraction]


def _sign(value: Fraction) -> int:
    return (value > 0) - (value < 0)


def _ceil(value: Fraction) -> int:
    return -((-value.numerator) // value.denominator)


def _floor(value: Fraction) -> int:
    return value.numerator // value.denominator


# ---------------------------------------------------------------------------
# Single power comparisons
# ---------------------------------------------------------------------------


def compare_with_power(
    c: Number, base: Number, exponent: Number, shift: Number = 0
) -> Ordering:
    """
    Order of ``c`` versus ``base**exponent + shift`` for a rational base > 0.

    Args:
        c: Left-hand rational
        base: Positive rational base
        exponent: Rational exponent
        shift: Rational added to the power

    Returns:
        Ordering of c relative to base**exponent + shift
    """
    base = Fraction(base)
    exponent = Fraction(exponent)
    if base <= 0:
        raise ValueError(f"base must be positive, got {base}")

    gap = Fraction(c) - Fraction(shift)
    if gap <= 0:
        # base**exponent is strictly positive
        return Ordering.LT

    lhs = gap ** exponent.denominator
    rhs = base ** exponent.numerator
    return Ordering.from_sign(_sign(lhs - rhs))


def cmp_power(c: Number, q: int, m: int, w: int, shift: Number = 0) -> Ordering:
    """
    Exact order of ``c`` versus ``q**(m/w) + shift``.

    Args:
        c: Rational to compare
        q: Positive integer base
        m: Integer exponent numerator
        w: Positive exponent denominator
        shift: Rational offset added to the power

    Returns:
        Ordering.LT, Ordering.EQ or Ordering.GT

    Example:
        >>> cmp_power(2, 4, 1, 2)
        <Ordering.EQ: 'eq'>
        >>> cmp_power(Fraction(5, 2), 2, 1, 2, shift=1)
        <Ordering.GT: 'gt'>
    """
    if q < 1:
        raise ValueError(f"q must be >= 1, got {q}")
    if w < 1:
        raise ValueError(f"w must be >= 1, got {w}")
    return compare_with_power(c, Fraction(q), Fraction(m, w), shift)


def power_below(coefficient: Number, base: Number, exponent: Number, bound: Number) -> bool:
    """True iff ``coefficient * base**exponent < bound`` (coefficient >= 0, bound > 0)."""
    coefficient = Fraction(coefficient)
    bound = Fraction(bound)
    if coefficient == 0:
        return bound > 0
    # c * b**e < B  <=>  c / B < b**(-e)
    return compare_with_power(coefficient / bound, base, -Fraction(exponent)) == Ordering.LT


def power_at_most(coefficient: Number, base: Number, exponent: Number, bound: Number) -> bool:
    """True iff ``coefficient * base**exponent <= bound`` (coefficient >= 0, bound >= 0)."""
    coefficient = Fraction(coefficient)
    bound = Fraction(bound)
    if coefficient == 0:
        return bound >= 0
    if bound <= 0:
        return False
    return compare_with_power(coefficient / bound, base, -Fraction(exponent)) != Ordering.GT


# ---------------------------------------------------------------------------
# Integer roots and rational brackets
# ---------------------------------------------------------------------------


def _root_floor(value: Fraction, n: int) -> int:
    """floor(value ** (1/n)) for value >= 0."""
    root, _ = integer_nthroot(_floor(value), n)
    return int(root)


def _root_ceil(value: Fraction, n: int) -> int:
    """ceil(value ** (1/n)) for value >= 0."""
    root, exact = integer_nthroot(_ceil(value), n)
    return int(root) if exact else int(root) + 1


def power_floor(base: Number, exponent: Number) -> int:
    """Exact ``floor(base**exponent)`` for a positive rational base."""
    exponent = Fraction(exponent)
    return _root_floor(Fraction(base) ** exponent.numerator, exponent.denominator)


def power_ceil(base: Number, exponent: Number) -> int:
    """Exact ``ceil(base**exponent)`` for a positive rational base."""
    exponent = Fraction(exponent)
    return _root_ceil(Fraction(base) ** exponent.numerator, exponent.denominator)


def _log2_estimate(value: Fraction) -> int:
    return value.numerator.bit_length() - value.denominator.bit_length()


def power_bracket(base: Number, exponent: Number, bits: int) -> Tuple[Fraction, Fraction]:
    """
    Rational bracket ``lo <= base**exponent <= hi`` with relative width about 2**-bits.

    Args:
        base: Positive rational base
        exponent: Rational exponent
        bits: Requested relative precision

    Returns:
        Tuple (lo, hi); lo == hi when the power is rational at that scale
    """
    exponent = Fraction(exponent)
    den = exponent.denominator
    value = Fraction(base) ** exponent.numerator
    if value == 0:
        return Fraction(0), Fraction(0)

    scale_bits = bits - _log2_estimate(value) // den
    scale = Fraction(2) ** scale_bits
    scaled = value * scale**den
    root, exact = integer_nthroot(_floor(scaled), den)
    lo = Fraction(int(root)) / scale
    if exact and scaled.denominator == 1:
        return lo, lo
    return lo, Fraction(int(root) + 1) / scale


@lru_cache(maxsize=4096)
def _integer_power_decomposition(n: int) -> Tuple[int, int]:
    """Write n = b**e with e maximal; returns (1, 0) for n == 1."""
    if n == 1:
        return 1, 0
    result = perfect_power(n)
    if result is False:
        return n, 1
    return int(result[0]), int(result[1])


@lru_cache(maxsize=4096)
def primitive_root(base: Fraction) -> Tuple[Fraction, int]:
    """
    Write ``base = root**k`` with ``root`` not a perfect power in Q.

    Returns:
        Tuple (root, k); (1, 1) for base == 1
    """
    base = Fraction(base)
    if base <= 0:
        raise ValueError(f"base must be positive, got {base}")
    num_base, num_exp = _integer_power_decomposition(base.numerator)
    den_base, den_exp = _integer_power_decomposition(base.denominator)
    if num_exp == 0 and den_exp == 0:
        return Fraction(1), 1
    k = gcd(num_exp, den_exp)
    root = Fraction(num_base ** (num_exp // k), den_base ** (den_exp // k))
    return root, k


def rational_power(base: Number, exponent: Number) -> Optional[Fraction]:
    """``base**exponent`` as a Fraction when it is rational, else None."""
    root, k = primitive_root(Fraction(base))
    if root == 1:
        return Fraction(1)
    reduced = Fraction(exponent) * k
    if reduced.denominator != 1:
        return None
    return root ** reduced.numerator


def sqrt_at_most(value: Number, bits: int = 48) -> Fraction:
    """Rational sigma with sigma**2 <= value, exact when value is a square."""
    value = Fraction(value)
    exact = rational_power(value, Fraction(1, 2))
    if exact is not None:
        return exact
    lo, _ = power_bracket(value, Fraction(1, 2), bits)
    return lo


def sqrt_at_least(value: Number, bits: int = 48) -> Fraction:
    """Rational sigma with sigma**2 >= value, exact when value is a square."""
    value = Fraction(value)
    exact = rational_power(value, Fraction(1, 2))
    if exact is not None:
        return exact
    _, hi = power_bracket(value, Fraction(1, 2), bits)
    return hi


def power_upper_bound(coefficient: Number, base: Number, exponent: Number, bits: int = 32) -> Fraction:
    """Rational upper bound for ``coefficient * base**exponent`` (coefficient >= 0)."""
    coefficient = Fraction(coefficient)
    if coefficient == 0:
        return Fraction(0)
    exact = rational_power(base, exponent)
    if exact is not None:
        return coefficient * exact
    return coefficient * power_bracket(base, exponent, bits)[1]


def power_to_mpf(coefficient: Number, base: Number, exponent: Number, dps: int = 50) -> mpmath.mpf:
    """High-precision decimal value of ``coefficient * base**exponent``."""
    coefficient = Fraction(coefficient)
    base = Fraction(base)
    exponent = Fraction(exponent)
    with mpmath.workdps(dps + 10):
        value = (
            mpmath.mpf(coefficient.numerator)
            / coefficient.denominator
            * mpmath.power(
                mpmath.mpf(base.numerator) / base.denominator,
                mpmath.mpf(exponent.numerator) / exponent.denominator,
            )
        )
        return +value


def compare_monomials(
    c1: Number, base1: Number, e1: Number, c2: Number, base2: Number, e2: Number
) -> Ordering:
    """
    Exact order of ``c1 * base1**e1`` versus ``c2 * base2**e2`` (c1, c2 >= 0).

    Both sides are raised to the common denominator of the exponents.
    """
    c1, c2 = Fraction(c1), Fraction(c2)
    e1, e2 = Fraction(e1), Fraction(e2)
    if c1 == 0 or c2 == 0:
        return Ordering.from_sign(_sign(c1 - c2))
    power = lcm(e1.denominator, e2.denominator)
    lhs = c1**power * Fraction(base1) ** int(e1 * power)
    rhs = c2**power * Fraction(base2) ** int(e2 * power)
    return Ordering.from_sign(_sign(lhs - rhs))


# ---------------------------------------------------------------------------
# Single-base power sums
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PowerSum:
    """
    Exact value ``sum_i coefficient_i * base**exponent_i``.

    ``terms`` holds merged ``(exponent, coefficient)`` pairs sorted by
    exponent, with no zero coefficients.

    Example:
        >>> tau = PowerSum.monomial(2, Fraction(-1, 2), Fraction(1, 10))
        >>> (tau - Fraction(1, 15)).sign()
        1
    """

    base: Fraction
    terms: Tuple[Tuple[Fraction, Fraction], ...] = ()

    @classmethod
    def of(cls, base: Number, pairs: Iterable[Tuple[Number, Number]]) -> "PowerSum":
        """Build from (exponent, coefficient) pairs, merging equal exponents."""
        base = Fraction(base)
        if base <= 0:
            raise ValueError(f"base must be positive, got {base}")
        merged: Dict[Fraction, Fraction] = {}
        for exponent, coefficient in pairs:
            exponent = Fraction(exponent) if base != 1 else Fraction(0)
            merged[exponent] = merged.get(exponent, Fraction(0)) + Fraction(coefficient)
        terms = tuple(sorted((e, c) for e, c in merged.items() if c != 0))
        return cls(base=base, terms=terms)

    @classmethod
    def constant(cls, base: Number, value: Number) -> "PowerSum":
        return cls.of(base, [(0, value)])

    @classmethod
    def monomial(cls, base: Number, exponent: Number, coefficient: Number = 1) -> "PowerSum":
        return cls.of(base, [(exponent, coefficient)])

    def _coerce(self, other: Union["PowerSum", Number]) -> "PowerSum":
        if isinstance(other, PowerSum):
            if other.base != self.base:
                raise ValueError(f"cannot combine bases {self.base} and {other.base}")
            return other
        return PowerSum.constant(self.base, other)

    def __add__(self, other: Union["PowerSum", Number]) -> "PowerSum":
        other = self._coerce(other)
        return PowerSum.of(self.base, list(self.terms) + list(other.terms))

    __radd__ = __add__

    def __neg__(self) -> "PowerSum":
        return PowerSum(self.base, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: Union["PowerSum", Number]) -> "PowerSum":
        return self + (-self._coerce(other))

    def __rsub__(self, other: Number) -> "PowerSum":
        return self._coerce(other) - self

    def __mul__(self, scalar: Number) -> "PowerSum":
        scalar = Fraction(scalar)
        return PowerSum.of(self.base, [(e, c * scalar) for e, c in self.terms])

    __rmul__ = __mul__

    def __truediv__(self, scalar: Number) -> "PowerSum":
        return self * (1 / Fraction(scalar))

    def is_zero(self) -> bool:
        return self.sign() == 0

    def sign(
        self, start_bits: int = DEFAULT_START_BITS, max_bits: int = DEFAULT_MAX_BITS
    ) -> int:
        """
        Exact sign of the sum.

        Raises:
            PrecisionExhaustedError: If a nonzero value is not separated from 0
                within ``max_bits`` (does not happen for sane inputs)
        """
        if not self.terms:
            return 0

        root, k = primitive_root(self.base)
        if root == 1:
            return _sign(sum((c for _, c in self.terms), Fraction(0)))

        width = 1
        for exponent, _ in self.terms:
            width = lcm(width, (exponent * k).denominator)

        # polynomial in t = root**(1/width), degree < width
        poly: Dict[int, Fraction] = {}
        for exponent, coefficient in self.terms:
            n = int(exponent * k * width)
            quotient, remainder = divmod(n, width)
            poly[remainder] = poly.get(remainder, Fraction(0)) + coefficient * root**quotient
        poly = {j: c for j, c in poly.items() if c != 0}
        if not poly:
            return 0
        if set(poly) == {0}:
            return _sign(poly[0])

        bits = start_bits
        while bits <= max_bits:
            t_lo, t_hi = power_bracket(root, Fraction(1, width), bits)
            low = high = Fraction(0)
            for j, coefficient in poly.items():
                a, b = t_lo**j, t_hi**j
                if coefficient > 0:
                    low += coefficient * a
                    high += coefficient * b
                else:
                    low += coefficient * b
                    high += coefficient * a
            if low > 0:
                return 1
            if high < 0:
                return -1
            logger.debug(f"PowerSum sign unresolved at {bits} bits, doubling")
            bits *= 2
        raise PrecisionExhaustedError(max_bits, what="power-sum sign")

    def compare(self, other: Union["PowerSum", Number]) -> Ordering:
        """Exact ordering of self versus other."""
        return Ordering.from_sign((self - other).sign())

    def bracket(self, bits: int = DEFAULT_START_BITS) -> Tuple[Fraction, Fraction]:
        """Rational bracket of the value."""
        low = high = Fraction(0)
        for exponent, coefficient in self.terms:
            lo, hi = power_bracket(self.base, exponent, bits)
            if coefficient > 0:
                low += coefficient * lo
                high += coefficient * hi
            else:
                low += coefficient * hi
                high += coefficient * lo
        return low, high

    def to_mpf(self, dps: int = 50) -> mpmath.mpf:
        """High-precision decimal value."""
        with mpmath.workdps(dps + 10):
            total = mpmath.mpf(0)
            for exponent, coefficient in self.terms:
                total += power_to_mpf(coefficient, self.base, exponent, dps + 10)
            return +total


# ---------------------------------------------------------------------------
# Sums over several bases
# ---------------------------------------------------------------------------


def _normalize_terms(terms: Iterable[Tuple[Number, Number, Number]]) -> List[PowerTerm]:
    return [(Fraction(c), Fraction(b), Fraction(e)) for c, b, e in terms if c != 0]


def _radical_sum_vanishes(rational_part: Fraction, terms: Sequence[PowerTerm]) -> bool:
    total = SymRational(rational_part.numerator, rational_part.denominator)
    for coefficient, base, exponent in terms:
        total += (
            SymRational(coefficient.numerator, coefficient.denominator)
            * SymRational(base.numerator, base.denominator)
            ** SymRational(exponent.numerator, exponent.denominator)
        )
    return total == 0 or total.equals(0) is True


def power_terms_sign(
    terms: Sequence[Tuple[Number, Number, Number]],
    start_bits: int = DEFAULT_START_BITS,
    max_bits: int = DEFAULT_MAX_BITS,
) -> int:
    """
    Sign of ``sum coefficient * base**exponent`` over arbitrary positive bases.

    Exact when all powers are rational or all irrational powers share one
    primitive root; otherwise rational interval evaluation with precision
    doubling. An interval still straddling 0 at ``max_bits`` is settled by
    sympy's radical normal form (e.g. 12^(1/2) - 2 * 3^(1/2) is exactly 0).

    Args:
        terms: (coefficient, base, exponent) triples
        start_bits: Initial bracket precision
        max_bits: Precision ceiling

    Returns:
        -1, 0 or 1

    Raises:
        PrecisionExhaustedError: If a nonzero sum is not separated from 0
            within ``max_bits``
    """
    exact_total = Fraction(0)
    pending: List[PowerTerm] = []
    for coefficient, base, exponent in _normalize_terms(terms):
        value = rational_power(base, exponent)
        if value is None:
            pending.append((coefficient, base, exponent))
        else:
            exact_total += coefficient * value

    if not pending:
        return _sign(exact_total)

    roots = {primitive_root(base)[0] for _, base, _ in pending}
    if len(roots) == 1:
        root = roots.pop()
        total = PowerSum.constant(root, exact_total)
        for coefficient, base, exponent in pending:
            k = primitive_root(base)[1]
            total = total + PowerSum.monomial(root, exponent * k, coefficient)
        return total.sign(start_bits, max_bits)

    bits = start_bits
    while bits <= max_bits:
        low = high = exact_total
        for coefficient, base, exponent in pending:
            lo, hi = power_bracket(base, exponent, bits)
            if coefficient > 0:
                low += coefficient * lo
                high += coefficient * hi
            else:
                low += coefficient * hi
                high += coefficient * lo
        if low > 0:
            return 1
        if high < 0:
            return -1
        bits *= 2

    if _radical_sum_vanishes(exact_total, pending):
        logger.debug(f"mixed-base power sum is exactly 0 ({len(pending)} irrational terms)")
        return 0
    raise PrecisionExhaustedError(max_bits, what="mixed-base power sum")


def compare_power_terms(
    lhs: Sequence[Tuple[Number, Number, Number]],
    rhs: Sequence[Tuple[Number, Number, Number]],
    start_bits: int = DEFAULT_START_BITS,
    max_bits: int = DEFAULT_MAX_BITS,
) -> Ordering:
    """
    Order of two sums of rational powers.

    Example:
        >>> compare_power_terms([(1, 2, Fraction(1, 2))], [(1, 3, Fraction(1, 4))])
        <Ordering.GT: 'gt'>
    """
    terms = list(lhs) + [(-Fraction(c), b, e) for c, b, e in rhs]
    return Ordering.from_sign(power_terms_sign(terms, start_bits, max_bits))
