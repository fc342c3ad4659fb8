"""Kernel tests: log-domain arithmetic, certified series, 1-D searches.

Derived expectations are frozen from brute-force oracles defined at the
top of this file (dense grids and direct summation), independent of the
kernels under test.
"""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from growthcalc.numerics import (
    LOG_ZERO,
    Bracket,
    LogScalar,
    NoDecayCertificate,
    NotBracketable,
    TargetOutOfRange,
    bisect_monotone,
    bracket_minimum,
    geometric_grid,
    log_sum_exp_series,
    logaddexp,
    maximize_concave_1d,
    minimize_convex_1d,
)

RNG = np.random.default_rng(42)


# --------------------------------------------------------------------------
# oracles


def grid_min(f, lo, hi, points=2_000_001):
    """Dense-grid minimization, the reference for every 1-D search test."""
    xs = np.linspace(lo, hi, points)
    vals = np.array([f(x) for x in xs])
    i = int(np.argmin(vals))
    return xs[i], vals[i]


def direct_log_sum(log_terms):
    m = max(log_terms)
    return m + math.log(sum(math.exp(t - m) for t in log_terms))


# frozen from the oracles above (and closed forms where exact):
MIN_EXP_MINUS_2X = 2.0 - 2.0 * math.log(2.0)        # f(x)=e^x-2x at x=log 2
SUM_E_OVER_N = 1.8840955903719716                    # log sum (e/n)^n, n>=0
SUP_PRODUCT_SPLIT = 0.5                              # sup x(1-x/2) on (0,2)


# --------------------------------------------------------------------------
# LogScalar


class TestLogScalar:
    def test_roundtrip_and_zero(self):
        x = LogScalar.from_value(7.5)
        assert math.isclose(x.value, 7.5, rel_tol=1e-15)
        assert LogScalar.zero().is_zero
        assert LogScalar.zero().value == 0.0
        assert LogScalar.from_value(0.0).is_zero

    def test_ordering_matches_magnitudes(self):
        vals = [0.0, 1e-12, 0.5, 1.0, 3.0, 1e40]
        scalars = [LogScalar.from_value(v) for v in vals]
        assert scalars == sorted(scalars)
        assert LogScalar.zero() < LogScalar.from_value(1e-300)

    def test_arithmetic(self):
        a = LogScalar.from_value(3.0)
        b = LogScalar.from_value(4.0)
        assert math.isclose((a + b).value, 7.0, rel_tol=1e-14)
        assert math.isclose((a * b).value, 12.0, rel_tol=1e-14)
        assert math.isclose((b / a).value, 4.0 / 3.0, rel_tol=1e-14)
        assert math.isclose((a ** 2.0).value, 9.0, rel_tol=1e-14)

    def test_zero_conventions(self):
        zero = LogScalar.zero()
        one = LogScalar.one()
        assert (zero + one).log == 0.0
        assert (zero * one).is_zero
        assert (zero ** 0.0).log == 0.0  # 0**0 == 1
        with pytest.raises(ZeroDivisionError):
            one / zero

    def test_huge_magnitudes_stay_finite_on_log_scale(self):
        # n**(2n) at n=300 is far beyond IEEE range
        n = 300.0
        x = LogScalar(2 * n * math.log(n))
        y = x * x
        assert math.isfinite(y.log)
        assert y.value == math.inf

    @given(st.floats(min_value=-50, max_value=50), st.floats(min_value=-50, max_value=50))
    @settings(max_examples=200, deadline=None)
    def test_add_commutative_and_dominates_max(self, la, lb):
        a, b = LogScalar(la), LogScalar(lb)
        s1, s2 = a + b, b + a
        assert math.isclose(s1.log, s2.log, rel_tol=0, abs_tol=1e-12)
        assert s1.log >= max(la, lb) - 1e-12


class TestLogAddExp:
    def test_against_numpy(self):
        for a, b in RNG.normal(0, 100, size=(200, 2)):
            assert math.isclose(logaddexp(a, b), np.logaddexp(a, b), rel_tol=1e-13)

    def test_identity_element(self):
        assert logaddexp(LOG_ZERO, 2.5) == 2.5
        assert logaddexp(2.5, LOG_ZERO) == 2.5
        assert logaddexp(LOG_ZERO, LOG_ZERO) == LOG_ZERO


# --------------------------------------------------------------------------
# series summation


class TestLogSumExpSeries:
    def test_exponential_series_sums_to_e(self):
        # terms 1/n!; ratio a_{n+1}/a_n = 1/(n+1), decreasing
        def terms():
            lt = 0.0
            for n in range(10_000):
                yield lt
                lt -= math.log(n + 1)

        got = log_sum_exp_series(terms(), rel_tol=1e-12, tail_certificate=lambda n: 1.0 / (n + 1))
        assert math.isclose(got.value.log, 1.0, rel_tol=0, abs_tol=1e-12)
        assert got.terms_used < 30

    def test_single_nonzero_term(self):
        terms = [math.log(5.0), LOG_ZERO, LOG_ZERO]
        got = log_sum_exp_series(iter(terms), rel_tol=1e-10, tail_certificate=lambda n: 0.5)
        assert math.isclose(got.value.log, math.log(5.0), abs_tol=1e-15)
        assert got.terms_used == 2  # stops right after the -inf term

    def test_e_over_n_series_matches_direct_sum(self):
        log_terms = [0.0] + [n * (1.0 - math.log(n)) for n in range(1, 200)]
        oracle = direct_log_sum(log_terms)
        assert math.isclose(oracle, SUM_E_OVER_N, abs_tol=1e-12)

        def cert(n):
            if n < 1:
                return None
            # ratio (e/(n+1))^(n+1) / (e/n)^n <= e/(n+1), decreasing in n
            q = math.e / (n + 1)
            return q if q < 1.0 else None

        got = log_sum_exp_series(iter(log_terms), rel_tol=1e-12, tail_certificate=cert)
        assert math.isclose(got.value.log, oracle, abs_tol=1e-10)
        assert 1.0 <= got.value.log <= 1.0 + math.sqrt(2.0)  # bracketing band

    def test_reordering_finite_prefix_invariance(self):
        logs = list(RNG.normal(0, 3, size=64))
        base = log_sum_exp_series(iter(logs)).value.log
        for _ in range(5):
            RNG.shuffle(logs)
            again = log_sum_exp_series(iter(logs)).value.log
            assert math.isclose(again, base, rel_tol=0, abs_tol=1e-11)

    def test_growing_terms_raise(self):
        with pytest.raises(NoDecayCertificate):
            log_sum_exp_series(
                (0.1 * n for n in range(10_000)),
                tail_certificate=lambda n: None,
            )

    def test_exhausted_stream_without_certificate_ok(self):
        got = log_sum_exp_series([math.log(2.0), math.log(3.0)])
        assert math.isclose(got.value.value, 5.0, rel_tol=1e-14)

    def test_exhausted_stream_with_failing_certificate_raises(self):
        with pytest.raises(NoDecayCertificate):
            log_sum_exp_series([0.0, 1.0, 2.0], tail_certificate=lambda n: 2.0)


# --------------------------------------------------------------------------
# minimization / maximization


class TestMinimizeConvex1d:
    def test_exp_minus_linear(self):
        oracle_x, oracle_f = grid_min(lambda x: math.exp(x) - 2 * x, -5, 5)
        res = minimize_convex_1d(lambda x: math.exp(x) - 2 * x, seed=0.0)
        assert res.boundary is None
        assert math.isclose(res.fx, MIN_EXP_MINUS_2X, abs_tol=1e-12)
        assert math.isclose(res.fx, oracle_f, abs_tol=1e-9)
        assert math.isclose(res.x, math.log(2.0), abs_tol=1e-7)

    def test_weighted_split_product(self):
        # sup over 0 < x < 2 of x * (1 - x/2), via minimizing the negative log
        def neg_log(x):
            return -(math.log(x) + math.log(1.0 - 0.5 * x))

        res = minimize_convex_1d(neg_log, seed=0.5, lo=1e-12, hi=2 - 1e-12)
        assert math.isclose(math.exp(-res.fx), SUP_PRODUCT_SPLIT, rel_tol=1e-10)
        assert math.isclose(res.x, 1.0, abs_tol=1e-6)

    def test_monotone_increasing_gives_lo_boundary_limit(self):
        # f(x) = e^x decreases without an interior min as x -> -inf;
        # the limit 0 is returned flagged as a boundary value
        res = minimize_convex_1d(lambda x: math.exp(x), seed=0.0)
        assert res.boundary == "lo"
        assert abs(res.fx) < 1e-12

    def test_domain_clamp_is_attained(self):
        res = minimize_convex_1d(lambda x: x * x + 1.0, seed=5.0, lo=2.0)
        assert res.boundary == "lo"
        assert res.x == 2.0
        assert math.isclose(res.fx, 5.0, rel_tol=1e-15)

    def test_escaping_descent_raises(self):
        with pytest.raises(NotBracketable):
            minimize_convex_1d(lambda x: -x, seed=0.0)

    def test_min_below_random_probes(self):
        # minimizer contract: returned min is <= f at 1000 random points
        def f(x):
            return math.cosh(x - 0.7) + 0.1 * x * x

        res = minimize_convex_1d(f, seed=3.0)
        probes = RNG.uniform(-20, 20, size=1000)
        fmin = res.fx
        for p in probes:
            assert fmin <= f(p) + 1e-9 * (1 + abs(f(p)))

    def test_bracket_certifies_interior_point(self):
        got = bracket_minimum(lambda x: (x - 9.3) ** 2, seed=0.0)
        assert isinstance(got, Bracket)
        assert got.lo < got.inner < got.hi
        assert got.f_inner <= min(got.f_lo, got.f_hi)
        assert got.lo <= 9.3 <= got.hi


class TestMaximizeConcave1d:
    @pytest.mark.parametrize("a", [0.5, 1.0, 4.0, 100.0])
    def test_power_ratio_sup_closed_form(self, a):
        # sup_{t>0} a^t / t^(2t) = exp(2 sqrt(a) / e), checked on log scale
        def f(t):
            if t == 0.0:
                return 0.0
            return t * math.log(a) - 2.0 * t * math.log(t)

        res = maximize_concave_1d(f, seed=1.0, lo=0.0)
        expected = 2.0 * math.sqrt(a) / math.e
        assert abs(res.fx - expected) <= 1e-8 * max(1.0, abs(expected))
        assert math.isclose(res.x, math.sqrt(a) / math.e, rel_tol=1e-5)

    def test_boundary_sup_at_zero(self):
        res = maximize_concave_1d(lambda t: -t, seed=5.0, lo=0.0)
        assert res.boundary == "lo"
        assert res.x == 0.0
        assert res.fx == 0.0


class TestBisectMonotone:
    def test_sqrt_solve(self):
        # solve sqrt(r) = 3 for the slope function of exp(2 sqrt(r))
        x = bisect_monotone(math.sqrt, target=3.0, lo=1.0, hi=100.0, tol=1e-10)
        assert math.isclose(x, 9.0, rel_tol=1e-9)

    def test_expands_interval(self):
        x = bisect_monotone(lambda r: r, target=50.0, lo=0.0, hi=1.0, tol=1e-10)
        assert math.isclose(x, 50.0, rel_tol=1e-9)

    def test_target_out_of_range(self):
        with pytest.raises(TargetOutOfRange):
            bisect_monotone(math.tanh, target=5.0, lo=-1.0, hi=1.0)


class TestGeometricGrid:
    def test_endpoints_and_monotone(self):
        g = geometric_grid(1e-3, 1e3, 64)
        assert math.isclose(g[0], 1e-3) and math.isclose(g[-1], 1e3)
        assert all(a < b for a, b in zip(g, g[1:]))
