import math

import pytest

from rulefuse.quality import C2, PRECISION, c2, coverage, get_measure, precision
from rulefuse.rulemodel import Contingency


def cont(p, n, P=4, N=4):
    return Contingency(p, n, P, N)


class TestPrecision:
    def test_pure(self):
        assert precision(cont(2, 0)) == 1.0

    def test_three_to_one(self):
        assert precision(cont(3, 1)) == 0.75

    def test_empty_cover_is_zero(self):
        assert precision(cont(0, 0)) == 0.0


class TestCoverage:
    def test_half(self):
        assert coverage(cont(2, 0, P=4)) == 0.5

    def test_full(self):
        assert coverage(cont(4, 0, P=4)) == 1.0

    def test_none(self):
        assert coverage(cont(0, 0, P=4)) == 0.0

    def test_p_zero_total_rejected(self):
        with pytest.raises(ValueError):
            coverage(Contingency(0, 1, 0, 4))


class TestC2:
    def test_perfect_rule(self):
        assert c2(cont(4, 0, P=4, N=4)) == 1.0

    def test_direct_evaluation(self):
        assert c2(cont(2, 1, P=4, N=4)) == pytest.approx(0.5, abs=1e-12)

    def test_zero_positives_sentinel(self):
        assert c2(cont(0, 1, P=4, N=4)) == -math.inf


def all_contingencies(max_total=6):
    for P in range(1, max_total + 1):
        for N in range(1, max_total + 1):
            for p in range(P + 1):
                for n in range(N + 1):
                    yield Contingency(p, n, P, N)


def test_precision_and_coverage_bounded():
    for c in all_contingencies():
        assert 0.0 <= precision(c) <= 1.0
        assert 0.0 <= coverage(c) <= 1.0


def test_precision_coverage_nondecreasing_in_p():
    for P in range(1, 7):
        for N in range(1, 7):
            for n in range(N + 1):
                prev_prec = prev_cov = -1.0
                for p in range(P + 1):
                    c = Contingency(p, n, P, N)
                    assert precision(c) >= prev_prec
                    assert coverage(c) >= prev_cov
                    prev_prec, prev_cov = precision(c), coverage(c)


def test_c2_full_coverage_slice():
    # on the p = P slice, c2 peaks at exactly 1 and only for a pure rule
    for P in range(1, 7):
        for N in range(1, 7):
            for n in range(N + 1):
                value = c2(Contingency(P, n, P, N))
                assert value <= 1.0 + 1e-12
                if n == 0:
                    assert value == 1.0
                else:
                    assert value < 1.0


def test_measure_registry():
    assert get_measure("precision") is PRECISION
    assert get_measure("c2") is C2
    with pytest.raises(ValueError):
        get_measure("laplace")


def test_measures_are_deterministic():
    c = cont(3, 2)
    assert precision(c) == precision(c)
    assert c2(c) == c2(c)
