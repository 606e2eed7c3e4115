"""
Randomized verification suites for the exact kernels, the strategy and the referee.

Each suite draws seeded random instances, checks one property exactly and
returns a SuiteReport with its pass/fail counts.
"""

import random
from fractions import Fraction
from math import ceil
from typing import Callable, Dict, List, Tuple

import mpmath
from tqdm import tqdm

from src.agents.alice_agent import RandomAlice
from src.agents.bob_agent import RandomBob
from src.models.diophantine import RationalPoint, Weight
from src.models.enums import GameVariant, Ordering, StrategyMode
from src.models.errors import InternalInvariantError
from src.models.geometry import Ball
from src.models.lattice import UnipotentParams
from src.models.report import SuiteReport
from src.models.state import GameConfig
from src.tools.attachments import (
    attach_line,
    attached_hyperplane,
    dual_search,
    height,
    height_bounds_hold,
    line_bounds_hold,
    line_in_lattice,
    main_estimate_holds,
    scaled_functional,
)
from src.tools.diophantine import enumerate_dangerous_points, reduce_point
from src.tools.exact import compare_with_power
from src.tools.lattice import flowed_basis, rational_collapse_vector, systole, within_hermite_bound
from src.tools.referee import revalidate_trace
from src.tools.subdivisions import (
    derive_params,
    levels_disjoint,
    prime_chain_avoids,
    prime_check,
    r_gamma_bound_holds,
    r_lower_bound,
    root_kappa,
    window_ratio_bound_holds,
)
from src.utils.logger import get_logger
from src.workflow import GameRunner, run_dichotomy_experiment

logger = get_logger(__name__)

_WEIGHTS: Dict[int, List[Tuple[Fraction, Fraction]]] = {
    2: [
        (Fraction(1, 2), Fraction(1, 2)),
        (Fraction(3, 5), Fraction(2, 5)),
        (Fraction(2, 3), Fraction(1, 3)),
    ],
    3: [(Fraction(1, 3), Fraction(1, 3)), (Fraction(2, 5), Fraction(1, 5))],
}


# ---------------------------------------------------------------------------
# Random instances
# ---------------------------------------------------------------------------


def random_weight(rng: random.Random) -> Weight:
    d = rng.choice([2, 3])
    lam, mu = rng.choice(_WEIGHTS[d])
    return Weight(d=d, lam=lam, mu=mu)


def random_ball(rng: random.Random, d: int) -> Ball:
    """Center with coordinates in [-1, 1] on a 1/60 grid, sigma in {1/2, ..., 1/10}."""
    center = tuple(Fraction(rng.randint(-60, 60), 60) for _ in range(2 * d - 1))
    return Ball.from_center(center, Fraction(1, rng.randint(2, 10)))


def random_point(rng: random.Random, d: int, max_q: int) -> RationalPoint:
    q = rng.randint(1, max_q)
    return reduce_point([rng.randint(-2 * q, 2 * q) for _ in range(d - 1)], rng.randint(-2 * q, 2 * q), q)


def _xi_oracle(ball: Ball, P: RationalPoint, w: Weight) -> Fraction:
    """Minimal xi over a box of (a, b) wide enough to hold every admissible vector."""
    q = P.q
    reach = q + 2 + ceil(sum(abs(z) for z in ball.z)) * q
    best = None
    vectors = [[]]
    for _ in range(w.d - 1):
        vectors = [v + [a] for v in vectors for a in range(-q, q + 1)]
    for a in vectors:
        a_norm = max(abs(x) for x in a)
        if compare_with_power(a_norm, q, w.lam) == Ordering.GT:
            continue
        za = sum((zi * ai for zi, ai in zip(ball.z, a)), Fraction(0))
        for b in range(-reach, reach + 1):
            if a_norm == 0 and b == 0:
                continue
            if (sum(ai * pi for ai, pi in zip(a, P.p)) + b * P.s) % q:
                continue
            shifted = abs(b + za)
            if compare_with_power(shifted, q, w.mu, ball.sqrt_radius) == Ordering.GT:
                continue
            xi = max(Fraction(a_norm), shifted)
            if best is None or xi < best:
                best = xi
    return best


# ---------------------------------------------------------------------------
# Suites
# ---------------------------------------------------------------------------


def _trials(n: int, suite: str, progress: bool):
    return tqdm(range(n), desc=suite, disable=not progress, leave=False)


def suite_dual_existence(trials: int, seed: int, progress: bool = False) -> SuiteReport:
    """dual_search finds an admissible vector for random (B, P, w) with q <= 60."""
    report = SuiteReport(suite="dual-existence", seed=seed)
    rng = random.Random(seed)
    for _ in _trials(trials, report.suite, progress):
        w = random_weight(rng)
        ball, P = random_ball(rng, w.d), random_point(rng, w.d, 60)
        try:
            dual_search(ball, P, w)
            report.record(True)
        except InternalInvariantError as e:
            report.record(False, str(e))
    return report


def suite_height_bounds(trials: int, seed: int, progress: bool = False) -> SuiteReport:
    """q(P) <= H_B(P) <= q(P)^(1+lambda)."""
    report = SuiteReport(suite="height-bounds", seed=seed)
    rng = random.Random(seed)
    for _ in _trials(trials, report.suite, progress):
        w = random_weight(rng)
        ball, P = random_ball(rng, w.d), random_point(rng, w.d, 60)
        H = height(ball, P, w)
        report.record(height_bounds_hold(P, H, w), f"H={H} for {P} in {ball.describe()}")
    return report


def suite_xi_minimality(trials: int, seed: int, progress: bool = False) -> SuiteReport:
    """xi from dual_search equals an exhaustive scan for q <= 25."""
    report = SuiteReport(suite="xi-minimality", seed=seed)
    rng = random.Random(seed)
    for _ in _trials(trials, report.suite, progress):
        lam, mu = rng.choice(_WEIGHTS[2])
        w = Weight(d=2, lam=lam, mu=mu)
        ball, P = random_ball(rng, w.d), random_point(rng, w.d, 25)
        xi = dual_search(ball, P, w).xi
        expected = _xi_oracle(ball, P, w)
        report.record(xi == expected, f"xi={xi}, oracle={expected} for {P}")
    return report


def suite_line_attachment(trials: int, seed: int, progress: bool = False) -> SuiteReport:
    """attach_line output meets both bounds and lies in Z^d + Z P."""
    report = SuiteReport(suite="line-attachment", seed=seed)
    rng = random.Random(seed)
    for _ in _trials(trials, report.suite, progress):
        w = random_weight(rng)
        ball, P = random_ball(rng, w.d), random_point(rng, w.d, 40)
        dual = dual_search(ball, P, w)
        line = attach_line(ball, P, w, dual)
        ok = line_bounds_hold(ball, P, w, line, dual.xi) and line_in_lattice(line, P)
        report.record(ok, f"line {line} for {P}")
    return report


def suite_integrality(trials: int, seed: int, progress: bool = False) -> SuiteReport:
    """C(B, P) is an integer, F(P) = 0 and q' F(P') is an integer."""
    report = SuiteReport(suite="integrality", seed=seed)
    rng = random.Random(seed)
    for _ in _trials(trials, report.suite, progress):
        w = random_weight(rng)
        ball, P = random_ball(rng, w.d), random_point(rng, w.d, 40)
        other = random_point(rng, w.d, 40)
        try:
            hyperplane = attached_hyperplane(ball, P, w)
            ok = scaled_functional(hyperplane, P) == 0
            scaled_functional(hyperplane, other)
            description = f"F(P) != 0 for {P}"
        except InternalInvariantError as e:
            ok, description = False, str(e)
        report.record(ok, description)
    return report


def suite_main_estimate(trials: int, seed: int, progress: bool = False) -> SuiteReport:
    """Intermediate bound on |F_{B2,P2}(P1)| for pairs of points threatening a common ball."""
    report = SuiteReport(suite="main-estimate", seed=seed)
    rng = random.Random(seed)
    epsilon = Fraction(1, 10)
    for _ in _trials(trials, report.suite, progress):
        w = random_weight(rng)
        parent = random_ball(rng, w.d)
        points = list(enumerate_dangerous_points(parent, epsilon, w, 1, 6))
        if not points:
            continue
        P1, P2 = rng.choice(points), rng.choice(points)
        second = Ball.from_center(parent.center, parent.sqrt_radius / 2)
        ok = main_estimate_holds(parent, second, P1, P2, root_kappa(parent), epsilon, w)
        report.record(ok, f"P1={P1}, P2={P2} in {parent.describe()}")
    return report


def suite_params(trials: int, seed: int, progress: bool = False) -> SuiteReport:
    """Paper-mode constants for d=2, beta=1/3, gamma=1, rho0=1/4."""
    report = SuiteReport(suite="params", seed=seed)
    root = Ball.from_center((0, 0, 0), Fraction(1, 2))
    params = derive_params(root, Fraction(1, 3), Fraction(1), 2)
    R = params.R
    checks = {
        "kappa = 5/4": params.kappa == Fraction(5, 4),
        "R = 1562500": R == 1_562_500,
        "epsilon formula": params.epsilon == Fraction(1, 40000) * Fraction(R) ** -80,
        "R is least": R - 1 < r_lower_bound(params.beta, 2, params.kappa)
        or not r_gamma_bound_holds(R - 1, params.beta, params.gamma),
        "2 H_1 < 1": 2 * params.height(1) < 1,
        "levels disjoint": levels_disjoint(params),
    }
    for name, ok in checks.items():
        report.record(ok, name)
    return report


def suite_window_ratio(trials: int, seed: int, progress: bool = False) -> SuiteReport:
    """Symbolic ratio bound H/q^(1+lambda) <= 2 R^(-8d^2-2kd+1) for k = 2..5."""
    report = SuiteReport(suite="window-ratio", seed=seed)
    root = Ball.from_center((0, 0, 0), Fraction(1, 2))
    params = derive_params(root, Fraction(1, 3), Fraction(1), 2)
    w = Weight.uniform(2)
    for k in range(2, 6):
        report.record(window_ratio_bound_holds(params, w, k), f"k={k}")
    return report


def relaxed_chain_params(center: Tuple[Fraction, ...]):
    """Relaxed constants d=2, beta=1/2, gamma=2, R=16, epsilon=1/100000 on a root of radius 1/4."""
    root = Ball.from_center(center, Fraction(1, 2))
    return derive_params(
        root, Fraction(1, 2), Fraction(2), 2, StrategyMode.RELAXED, R=16, epsilon=Fraction(1, 100000)
    )


def suite_prime_avoidance(trials: int, seed: int, progress: bool = False, depth: int = 3) -> SuiteReport:
    """Prime balls along concentric chains avoid every Delta_eps(P) with q^(1+lambda) <= 2 H_{n+1}."""
    report = SuiteReport(suite="prime-avoidance", seed=seed)
    rng = random.Random(seed)
    w = Weight.uniform(2)
    for _ in _trials(trials, report.suite, progress):
        center = tuple(Fraction(rng.randint(0, 97), 97) for _ in range(3))
        params = relaxed_chain_params(center)
        parent = True
        for n in range(depth + 1):
            ball = Ball.from_center(center, Fraction(1, 2) / 4**n)
            prime = prime_check(ball, n, params, w, parent)
            if prime:
                report.record(prime_chain_avoids(ball, n, params, w), f"level {n} at {center}")
            parent = prime
    return report


def suite_referee(trials: int, seed: int, progress: bool = False, max_turns: int = 30) -> SuiteReport:
    """Fuzzed HAG and HPG plays re-validate with no violations."""
    report = SuiteReport(suite="referee", seed=seed)
    rng = random.Random(seed)
    for g in _trials(trials, report.suite, progress):
        d = rng.choice([2, 3])
        root = Ball.from_center(tuple(Fraction(0) for _ in range(2 * d - 1)), Fraction(1, 2))
        if g % 2 == 0:
            config = GameConfig(variant=GameVariant.HAG, beta=Fraction(1, 4), max_turns=max_turns)
        else:
            config = GameConfig(
                variant=GameVariant.HPG, beta=Fraction(1, 2), gamma=Fraction(1), max_turns=max_turns
            )
        alice = RandomAlice(seed=seed + g, width_scale=Fraction(3, 2))
        runner = GameRunner(alice, RandomBob(seed=seed + g), config)
        trace = runner.play(root=root, run_id=f"fuzz_{seed}_{g}")
        violations = revalidate_trace(trace)
        report.record(not violations, "; ".join(violations[:3]))
    return report


def suite_dynamics(trials: int, seed: int, progress: bool = False) -> SuiteReport:
    """
    Rational collapse, unimodular invariance and the Hermite bound.

    For a rational point with common denominator q the systole at time t is
    at most q e^(-t); the systole of a 3x3 basis is unchanged by a unimodular
    change of basis and at most 2^(1/6) |det|^(1/3).
    """
    report = SuiteReport(suite="dynamics", seed=seed)
    rng = random.Random(seed)
    w = Weight.uniform(2)
    for _ in _trials(trials, report.suite, progress):
        q = rng.randint(1, 12)
        params = UnipotentParams(
            x=[Fraction(rng.randint(0, q), q)],
            y=Fraction(rng.randint(0, q), q),
            z=[Fraction(rng.randint(0, 20), 20)],
        )
        t = rng.randint(0, 8)
        collapse = rational_collapse_vector(params)
        with mpmath.workprec(192):
            length = systole(flowed_basis(params, w, t)).length
            bound = collapse[-1] * mpmath.exp(-t) * (1 + mpmath.mpf(10) ** -30)
        report.record(length <= bound, f"collapse at t={t} for q={collapse[-1]}")

        basis = [[rng.randint(-5, 5) for _ in range(3)] for _ in range(3)]
        det = Fraction(
            basis[0][0] * (basis[1][1] * basis[2][2] - basis[1][2] * basis[2][1])
            - basis[0][1] * (basis[1][0] * basis[2][2] - basis[1][2] * basis[2][0])
            + basis[0][2] * (basis[1][0] * basis[2][1] - basis[1][1] * basis[2][0])
        )
        if det == 0:
            continue
        shear = rng.randint(-3, 3)
        # Column operation c_1 += shear * c_0 keeps the lattice.
        changed = [[row[0], row[1] + shear * row[0], row[2]] for row in basis]
        with mpmath.workprec(192):
            a = systole(basis).length
            b = systole(changed).length
            ok = abs(a - b) <= a * mpmath.mpf(2) ** -64 and within_hermite_bound(a, 3, det)
        report.record(ok, f"basis {basis}")
    return report


def suite_dichotomy(trials: int, seed: int, progress: bool = False, max_q: int = 30) -> SuiteReport:
    """Completed PaperAlice plays on the relaxed fixture end with an Alice verdict."""
    report = SuiteReport(suite="dichotomy", seed=seed)
    params = relaxed_chain_params((Fraction(1, 2), Fraction(1, 2), Fraction(1, 2)))
    w = Weight.uniform(2)
    result = run_dichotomy_experiment(
        params, w, trials, seed=seed, max_turns=60, resolution=Fraction(1, 10**6), max_q=max_q
    )
    for _ in range(result.by_certificate + result.by_neighborhood):
        report.record(True)
    for _ in range(result.undecided):
        report.record(False, "undecided play")
    logger.info(
        f"dichotomy: {result.completed} completed, {result.forfeits} forfeits, "
        f"{result.degenerate} stalled, {result.aborted} aborted"
    )
    return report


SUITES: Dict[str, Callable[..., SuiteReport]] = {
    "dual-existence": suite_dual_existence,
    "height-bounds": suite_height_bounds,
    "xi-minimality": suite_xi_minimality,
    "line-attachment": suite_line_attachment,
    "integrality": suite_integrality,
    "main-estimate": suite_main_estimate,
    "params": suite_params,
    "window-ratio": suite_window_ratio,
    "prime-avoidance": suite_prime_avoidance,
    "referee": suite_referee,
    "dynamics": suite_dynamics,
    "dichotomy": suite_dichotomy,
}

# Short labels accepted in place of suite names
SUITE_ALIASES: Dict[str, str] = {
    "L:BPV": "dual-existence",
    "E:qq": "height-bounds",
    "E:max": "xi-minimality",
    "def-parallel": "line-attachment",
    "def-r": "params",
    "ine-qxi": "window-ratio",
    "ine qxi": "window-ratio",
}


def resolve_suite(name: str) -> str:
    """
    Suite name for a suite name or label.

    Raises:
        ValueError: On an unknown name

    Example:
        >>> resolve_suite("L:BPV")
        'dual-existence'
    """
    resolved = SUITE_ALIASES.get(name.strip(), name.strip())
    if resolved not in SUITES:
        raise ValueError(
            f"unknown suite {name!r}; choose from {', '.join(SUITES)} or {', '.join(SUITE_ALIASES)}"
        )
    return resolved


def run_suite(name: str, trials: int, seed: int = 0, progress: bool = False) -> SuiteReport:
    """
    Run one suite by name or label.

    Raises:
        ValueError: On an unknown suite name
    """
    name = resolve_suite(name)
    report = SUITES[name](trials, seed, progress=progress)
    logger.info(f"suite {name}: {report.trials} trials, {report.failures} failures")
    return report
