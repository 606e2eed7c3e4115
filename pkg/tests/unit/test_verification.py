"""
Unit tests for the randomized verification suites.
"""

import random

import pytest

from src.verification import (
    SUITE_ALIASES,
    SUITES,
    random_ball,
    random_point,
    random_weight,
    resolve_suite,
    run_suite,
)


class TestSuites:
    """Small runs of each verification suite."""

    @pytest.mark.parametrize(
        "name,trials",
        [
            ("dual-existence", 10),
            ("height-bounds", 10),
            ("xi-minimality", 5),
            ("line-attachment", 10),
            ("integrality", 10),
            ("main-estimate", 3),
            ("params", 1),
            ("window-ratio", 1),
            ("referee", 4),
            ("dynamics", 3),
        ],
    )
    def test_suite_passes(self, name, trials):
        report = run_suite(name, trials, seed=1)

        assert report.suite == name
        assert report.trials > 0
        assert report.passed, report.examples

    @pytest.mark.slow
    def test_prime_avoidance(self):
        report = run_suite("prime-avoidance", 2, seed=0)
        assert report.passed, report.examples

    @pytest.mark.slow
    def test_dichotomy_counts(self):
        """Every counted play is a completed one."""
        report = run_suite("dichotomy", 2, seed=0)
        assert report.trials <= 2

    def test_unknown_suite(self):
        with pytest.raises(ValueError):
            run_suite("nope", 1)

    def test_all_suites_registered(self):
        assert len(SUITES) == 12

    def test_labels_resolve(self):
        assert resolve_suite("L:BPV") == "dual-existence"
        assert resolve_suite("def-r") == "params"
        assert resolve_suite("height-bounds") == "height-bounds"
        assert all(target in SUITES for target in SUITE_ALIASES.values())
        with pytest.raises(ValueError):
            resolve_suite("L:nope")

    def test_run_by_label(self):
        report = run_suite("E:qq", 3, seed=2)
        assert report.suite == "height-bounds"
        assert report.trials == 3


class TestInstanceGenerators:
    """Tests for the random instance helpers."""

    def test_reproducible(self):
        first = random.Random(5)
        second = random.Random(5)
        assert random_weight(first) == random_weight(second)
        assert random_ball(first, 2) == random_ball(second, 2)

    def test_shapes(self):
        rng = random.Random(0)
        w = random_weight(rng)
        ball = random_ball(rng, w.d)
        P = random_point(rng, w.d, 30)

        assert ball.d == w.d
        assert P.d == w.d
        assert 1 <= P.q <= 30
