"""
Lattice orbits under the weighted diagonal flow.

The lattice under test is g_t u_{x,y,z}^{-1} Z^(d+1), generated by the
columns of g_t u^{-1}. Shortest vectors are found by LLL reduction followed by
Fincke-Pohst enumeration in mpmath, and certified by recomputation at
doubled precision.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import List, Optional, Sequence, Tuple, Union

import mpmath

from src.models.diophantine import Weight
from src.models.enums import BoundednessStatus
from src.models.errors import DimensionMismatchError, PrecisionExhaustedError, SingularBasisError
from src.models.lattice import BoundednessVerdict, SystolePoint, SystoleTrace, UnipotentParams
from src.utils.logger import get_logger

logger = get_logger(__name__)

DEFAULT_PRECISION_BITS = 192
DEFAULT_MAX_PRECISION_BITS = 1536
DEFAULT_LLL_DELTA = Fraction(99, 100)

Real = Union[int, float, str, Fraction, mpmath.mpf]
Matrix = List[List[Fraction]]


def _to_mpf(value: Real) -> mpmath.mpf:
    if isinstance(value, Fraction):
        return mpmath.mpf(value.numerator) / value.denominator
    return mpmath.mpf(value)


# ---------------------------------------------------------------------------
# Exact matrices
# ---------------------------------------------------------------------------


def u_matrix(params: UnipotentParams) -> Matrix:
    """u_{x,y,z} = [[I, z, x], [0, 1, y], [0, 0, 1]] as exact rows."""
    m = params.d - 1
    n = m + 2
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(m):
        rows[i][m] = params.z[i]
        rows[i][m + 1] = params.x[i]
    rows[m][m + 1] = params.y
    return rows


def u_inverse(params: UnipotentParams) -> Matrix:
    """
    Exact inverse [[I, -z, z y - x], [0, 1, -y], [0, 0, 1]].

    Example:
        >>> p = UnipotentParams(x=[Fraction(1, 2)], y=Fraction(1, 2), z=[0])
        >>> u_inverse(p)[0]
        [Fraction(1, 1), Fraction(0, 1), Fraction(-1, 2)]
    """
    m = params.d - 1
    n = m + 2
    rows = [[Fraction(int(i == j)) for j in range(n)] for i in range(n)]
    for i in range(m):
        rows[i][m] = -params.z[i]
        rows[i][m + 1] = params.z[i] * params.y - params.x[i]
    rows[m][m + 1] = -params.y
    return rows


def mat_mul(a: Matrix, b: Matrix) -> Matrix:
    """Exact product of rational matrices."""
    return [
        [sum((a[i][k] * b[k][j] for k in range(len(b))), Fraction(0)) for j in range(len(b[0]))]
        for i in range(len(a))
    ]


def mat_vec(a: Matrix, v: Sequence[Fraction]) -> List[Fraction]:
    return [sum((row[k] * Fraction(v[k]) for k in range(len(v))), Fraction(0)) for row in a]


def flow_diagonal(w: Weight, t: Real) -> List[mpmath.mpf]:
    """Diagonal entries (e^(lambda t), ..., e^(mu t), e^(-t)) of g_t at working precision."""
    t = _to_mpf(t)
    lam, mu = _to_mpf(w.lam), _to_mpf(w.mu)
    return [mpmath.exp(lam * t)] * (w.d - 1) + [mpmath.exp(mu * t), mpmath.exp(-t)]


def rational_collapse_vector(params: UnipotentParams) -> List[int]:
    """
    Integer vector (q x, q y, q) when x and y share the denominator q.

    u^{-1} maps it to (0, ..., 0, q), so its flowed length is q e^(-t).
    """
    q = lcm(*(value.denominator for value in list(params.x) + [params.y]))
    return [int(q * xi) for xi in params.x] + [int(q * params.y), q]


# ---------------------------------------------------------------------------
# Reduction and enumeration
# ---------------------------------------------------------------------------


def _dot(u: Sequence[mpmath.mpf], v: Sequence[mpmath.mpf]) -> mpmath.mpf:
    return mpmath.fsum(a * b for a, b in zip(u, v))


def _gram_schmidt(
    vectors: List[List[mpmath.mpf]],
) -> Tuple[List[List[mpmath.mpf]], List[List[mpmath.mpf]], List[mpmath.mpf]]:
    n = len(vectors)
    ortho: List[List[mpmath.mpf]] = []
    mu = [[mpmath.mpf(0)] * n for _ in range(n)]
    norms: List[mpmath.mpf] = []
    for i, vec in enumerate(vectors):
        current = list(vec)
        for j in range(i):
            mu[i][j] = _dot(vec, ortho[j]) / norms[j] if norms[j] else mpmath.mpf(0)
            current = [c - mu[i][j] * o for c, o in zip(current, ortho[j])]
        ortho.append(current)
        norms.append(_dot(current, current))
    return ortho, mu, norms


def lll_reduce(
    vectors: List[List[mpmath.mpf]],
    coefficients: List[List[int]],
    delta: Real = DEFAULT_LLL_DELTA,
) -> Tuple[List[List[mpmath.mpf]], List[List[int]]]:
    """
    LLL-reduce lattice vectors, carrying their integer coefficient vectors.

    Args:
        vectors: Lattice vectors (one per row)
        coefficients: Integer coordinates of each vector in the original basis
        delta: Lovasz constant in (1/4, 1)

    Returns:
        Reduced (vectors, coefficients)
    """
    vectors = [list(v) for v in vectors]
    coefficients = [list(c) for c in coefficients]
    delta = _to_mpf(delta)
    n = len(vectors)
    _, mu, norms = _gram_schmidt(vectors)
    k = 1
    while k < n:
        for j in reversed(range(k)):
            if abs(mu[k][j]) > mpmath.mpf(1) / 2:
                r = int(mpmath.nint(mu[k][j]))
                vectors[k] = [a - r * b for a, b in zip(vectors[k], vectors[j])]
                coefficients[k] = [a - r * b for a, b in zip(coefficients[k], coefficients[j])]
                _, mu, norms = _gram_schmidt(vectors)
        if norms[k] >= (delta - mu[k][k - 1] ** 2) * norms[k - 1]:
            k += 1
        else:
            vectors[k], vectors[k - 1] = vectors[k - 1], vectors[k]
            coefficients[k], coefficients[k - 1] = coefficients[k - 1], coefficients[k]
            _, mu, norms = _gram_schmidt(vectors)
            k = max(k - 1, 1)
    return vectors, coefficients


@dataclass(frozen=True)
class ShortestVector:
    """Shortest nonzero lattice vector with its integer coordinates."""

    length: mpmath.mpf
    vector: Tuple[mpmath.mpf, ...]
    coefficients: Tuple[int, ...]
    precision_bits: int


def _enumerate_shortest(vectors: List[List[mpmath.mpf]]) -> Tuple[mpmath.mpf, List[int]]:
    """Fincke-Pohst enumeration below the first reduced vector; returns (norm^2, reduced coords)."""
    n = len(vectors)
    _, mu, norms = _gram_schmidt(vectors)
    best_sq = _dot(vectors[0], vectors[0])
    best = [1] + [0] * (n - 1)
    bound = best_sq * (1 + mpmath.mpf(2) ** (-mpmath.mp.prec // 2))
    coords = [0] * n

    def search(k: int, partial: mpmath.mpf) -> None:
        nonlocal best_sq, best, bound
        center = -mpmath.fsum(coords[j] * mu[j][k] for j in range(k + 1, n))
        reach = mpmath.sqrt(max(bound - partial, 0) / norms[k])
        for value in range(int(mpmath.ceil(center - reach)), int(mpmath.floor(center + reach)) + 1):
            coords[k] = value
            level = partial + (value - center) ** 2 * norms[k]
            if level > bound:
                continue
            if k == 0:
                if any(coords):
                    vec = [mpmath.fsum(c * v[i] for c, v in zip(coords, vectors)) for i in range(n)]
                    norm_sq = _dot(vec, vec)
                    if norm_sq < best_sq:
                        best_sq, best = norm_sq, list(coords)
                        bound = norm_sq * (1 + mpmath.mpf(2) ** (-mpmath.mp.prec // 2))
            else:
                search(k - 1, level)
        coords[k] = 0

    search(n - 1, mpmath.mpf(0))
    return best_sq, best


def _systole_at(basis: Sequence[Sequence[Real]], bits: int, delta: Real) -> ShortestVector:
    with mpmath.workprec(bits):
        n = len(basis)
        if any(len(row) != n for row in basis):
            raise DimensionMismatchError(n, len(basis[0]), "basis row")
        matrix = mpmath.matrix([[_to_mpf(v) for v in row] for row in basis])
        scale = mpmath.fprod(
            mpmath.sqrt(mpmath.fsum(matrix[i, j] ** 2 for i in range(n))) for j in range(n)
        )
        det = mpmath.det(matrix)
        if scale == 0 or abs(det) <= scale * mpmath.mpf(2) ** (-bits // 2):
            raise SingularBasisError(f"basis determinant {mpmath.nstr(det, 5)} is numerically zero")

        columns = [[matrix[i, j] for i in range(n)] for j in range(n)]
        identity = [[int(i == j) for i in range(n)] for j in range(n)]
        reduced, coeffs = lll_reduce(columns, identity, delta)
        norm_sq, combo = _enumerate_shortest(reduced)

        vector = tuple(mpmath.fsum(c * v[i] for c, v in zip(combo, reduced)) for i in range(n))
        integer = tuple(sum(c * cv[i] for c, cv in zip(combo, coeffs)) for i in range(n))
        return ShortestVector(
            length=+mpmath.sqrt(norm_sq), vector=vector, coefficients=integer, precision_bits=bits
        )


def systole(
    basis: Sequence[Sequence[Real]],
    precision: int = DEFAULT_PRECISION_BITS,
    max_precision: int = DEFAULT_MAX_PRECISION_BITS,
    delta: Real = DEFAULT_LLL_DELTA,
) -> ShortestVector:
    """
    Shortest nonzero vector of the lattice spanned by the columns of ``basis``.

    The length is recomputed at doubled precision until two consecutive
    results agree within relative error 2**(-precision/2).

    Args:
        basis: Square matrix (rows), columns are the generators
        precision: Starting precision in bits
        max_precision: Precision ceiling
        delta: LLL parameter

    Returns:
        ShortestVector at the precision that certified it

    Raises:
        SingularBasisError: If the basis is numerically singular
        PrecisionExhaustedError: If agreement is not reached below the ceiling

    Example:
        >>> float(systole([[2, 0, 0], [0, 1, 0], [0, 0, Fraction(1, 2)]]).length)
        0.5
    """
    bits = precision
    current = _systole_at(basis, bits, delta)
    while bits * 2 <= max_precision:
        refined = _systole_at(basis, bits * 2, delta)
        with mpmath.workprec(bits * 2):
            tolerance = refined.length * mpmath.mpf(2) ** (-bits // 2)
            if abs(refined.length - current.length) <= tolerance:
                return refined
        logger.debug(f"systole disagreement at {bits} bits, doubling")
        bits *= 2
        current = refined
    raise PrecisionExhaustedError(max_precision, what="systole")


def flowed_basis(params: UnipotentParams, w: Weight, t: Real) -> List[List[mpmath.mpf]]:
    """Rows of g_t u^{-1} at the working precision."""
    if params.d != w.d:
        raise DimensionMismatchError(w.d, params.d, "unipotent parameters")
    inverse = u_inverse(params)
    diagonal = flow_diagonal(w, t)
    return [[diagonal[i] * _to_mpf(v) for v in row] for i, row in enumerate(inverse)]


def orbit_trace(
    params: UnipotentParams,
    w: Weight,
    times: Sequence[Real],
    precision: int = DEFAULT_PRECISION_BITS,
    max_precision: int = DEFAULT_MAX_PRECISION_BITS,
) -> SystoleTrace:
    """
    Systole of g_t u^{-1} Z^(d+1) along a time grid.

    Raises:
        ValueError: If times are negative or not strictly increasing
    """
    times = list(times)
    if any(_to_mpf(t) < 0 for t in times):
        raise ValueError("times must be nonnegative")
    if any(_to_mpf(b) <= _to_mpf(a) for a, b in zip(times, times[1:])):
        raise ValueError("times must be strictly increasing")

    points = []
    used = precision
    for t in times:
        with mpmath.workprec(max_precision):
            basis = flowed_basis(params, w, t)
        result = systole(basis, precision, max_precision)
        used = max(used, result.precision_bits)
        with mpmath.workprec(result.precision_bits):
            points.append(
                SystolePoint(
                    t=float(_to_mpf(t)),
                    length=float(result.length),
                    length_decimal=mpmath.nstr(result.length, 30),
                    vector=[float(v) for v in result.vector],
                    coefficients=list(result.coefficients),
                )
            )
    logger.debug(f"orbit trace: {len(points)} samples, up to {used} bits")
    return SystoleTrace(points=points, precision_bits=used)


# gamma_n^n for the Hermite constant gamma_n
HERMITE_POWERS = {2: Fraction(4, 3), 3: Fraction(2), 4: Fraction(4), 5: Fraction(8)}
HERMITE_TOLERANCE = mpmath.mpf("1e-6")


def hermite_bound(dim: int, det: Real = 1) -> mpmath.mpf:
    """
    Largest possible systole of a rank ``dim`` lattice of covolume ``|det|``.

    Example:
        >>> mpmath.nstr(hermite_bound(3), 8)
        '1.122462'
    """
    if dim not in HERMITE_POWERS:
        raise ValueError(f"no Hermite constant for dimension {dim}")
    det = abs(_to_mpf(det))
    if det == 0:
        raise SingularBasisError("lattice has zero covolume")
    return mpmath.root(_to_mpf(HERMITE_POWERS[dim]), 2 * dim) * mpmath.root(det, dim)


def within_hermite_bound(
    length: Real, dim: int, det: Real = 1, tolerance: Real = HERMITE_TOLERANCE
) -> bool:
    """Whether ``length`` is at most the Hermite bound plus ``tolerance`` |det|^(1/dim)."""
    scale = mpmath.root(abs(_to_mpf(det)), dim)
    return _to_mpf(length) <= hermite_bound(dim, det) + _to_mpf(tolerance) * scale


def time_grid(horizon: Real, samples: int) -> List[mpmath.mpf]:
    """``samples`` equally spaced times from 0 to ``horizon`` inclusive."""
    if samples < 1:
        raise ValueError("samples must be >= 1")
    horizon = _to_mpf(horizon)
    if samples == 1:
        return [mpmath.mpf(0)]
    return [horizon * i / (samples - 1) for i in range(samples)]


def boundedness_verdict(trace: SystoleTrace, floor: float) -> BoundednessVerdict:
    """
    ESCAPED at the first time the systole drops below ``floor``, else BOUNDED_SO_FAR.

    Example:
        >>> boundedness_verdict(SystoleTrace(points=[], precision_bits=64), 0.5).status
        <BoundednessStatus.BOUNDED_SO_FAR: 'bounded_so_far'>
    """
    if floor <= 0:
        raise ValueError("floor must be positive")
    lowest = trace.min_point()
    min_length = lowest.length if lowest else None
    for point in trace.points:
        if point.length < floor:
            return BoundednessVerdict(
                status=BoundednessStatus.ESCAPED, time=point.t, floor=floor, min_length=min_length
            )
    return BoundednessVerdict(
        status=BoundednessStatus.BOUNDED_SO_FAR, floor=floor, min_length=min_length
    )


def orbit_verdict(
    params: UnipotentParams,
    w: Weight,
    times: Sequence[Real],
    floor: float,
    precision: int = DEFAULT_PRECISION_BITS,
    max_precision: int = DEFAULT_MAX_PRECISION_BITS,
) -> Tuple[SystoleTrace, BoundednessVerdict]:
    """
    Trace plus verdict, recomputing samples within a factor 2 of the floor at doubled precision.
    """
    trace = orbit_trace(params, w, times, precision, max_precision)
    near = [p for p in trace.points if floor / 2 <= p.length <= floor * 2]
    if near and precision * 2 <= max_precision:
        logger.debug(f"{len(near)} samples near the floor, recomputing at {precision * 2} bits")
        refined = orbit_trace(params, w, [p.t for p in near], precision * 2, max_precision)
        by_time = {p.t: p for p in refined.points}
        trace = SystoleTrace(
            points=[by_time.get(p.t, p) for p in trace.points],
            precision_bits=max(trace.precision_bits, refined.precision_bits),
        )
    return trace, boundedness_verdict(trace, floor)
