"""Tests for the transform calculus: ell, tau, theta, series, duals."""

import json
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import growthcalc as gc
from growthcalc.growthfn import (
    bump_example,
    exponential,
    from_phi,
    gaussian,
    iterated_exp,
    ks_family,
    make_growth_function,
    power_exp,
)
from growthcalc.numerics import (
    LOG_ZERO,
    NoDecayCertificate,
    NotBracketable,
    PreconditionViolated,
)


def power_exp_log_ell(a, t):
    """Closed form for the transform of exp(a r^(1/a)): a t (1 - log t)."""
    if t == 0.0:
        return 0.0
    return a * t * (1.0 - math.log(t))


def dense_log_ell(u, t, x_lo=-40.0, x_hi=40.0, n=400001):
    """Independent oracle: minimize log u(e^x) - t x on a dense grid."""
    xs = np.linspace(x_lo, x_hi, n)
    vals = np.array([u.phi_at(float(x)) - t * float(x) for x in xs])
    return float(np.min(vals[np.isfinite(vals)]))


def kink_function():
    # u(r) = max(r, r^2): slope 1 below r = 1, slope 2 above
    return from_phi(lambda x: max(x, 2.0 * x), name="kink", increasing=True)


class TestTransformClosedForms:
    def test_pinned_value_steepest_family(self):
        p = gc.ell(ks_family(1.0), 3.0)
        assert math.isclose(p.log_ell.log, 6.0 - 6.0 * math.log(3.0), rel_tol=1e-10)
        assert math.isclose(p.log_ell.value, 0.553400265422133, rel_tol=1e-10)
        assert math.isclose(p.rho, 9.0, rel_tol=1e-6)

    @pytest.mark.parametrize("beta", [0.0, 0.25, 0.5, 1.0])
    def test_beta_family(self, beta):
        u = ks_family(beta)
        a = 1.0 + beta
        for t in [0.0, 0.5, 1.0, 2.0, 3.7, 10.0, 25.0]:
            want = power_exp_log_ell(a, t)
            got = gc.ell(u, t).log_ell.log
            assert abs(got - want) <= 1e-7 * max(1.0, abs(want))

    def test_exponential_values(self):
        u = exponential()
        for t in range(1, 7):
            assert math.isclose(
                gc.ell(u, float(t)).log_ell.value, (math.e / t) ** t, rel_tol=1e-9
            )

    def test_gaussian_values(self):
        u = gaussian()
        for t in [1.0, 2.0, 4.5, 8.0]:
            want = 0.5 * t - 0.5 * t * math.log(0.5 * t)
            assert math.isclose(gc.ell(u, t).log_ell.log, want, rel_tol=1e-9)

    def test_matches_dense_grid(self):
        cases = [(exponential(), 2.3), (ks_family(0.5), 7.7), (gaussian(), 3.1)]
        for u, t in cases:
            want = dense_log_ell(u, t)
            got = gc.ell(u, t).log_ell.log
            assert abs(got - want) <= 1e-6 * max(1.0, abs(want))
            assert got <= want + 1e-12  # the oracle is an upper envelope

    def test_minimizer_attains_infimum(self):
        for u, t in [(exponential(), 4.2), (ks_family(0.5), 2.0), (gaussian(), 6.0)]:
            p = gc.ell(u, t)
            attained = u.log_at(p.rho) - t * math.log(p.rho)
            assert abs(attained - p.log_ell.log) <= 1e-8 * max(1.0, abs(attained))

    def test_minimizer_monotone_in_order(self):
        rhos = [gc.ell(exponential(), float(n)).rho for n in range(31)]
        assert all(b >= a - 1e-9 for a, b in zip(rhos, rhos[1:]))

    def test_order_zero_is_value_at_zero(self):
        p = gc.ell(exponential(), 0.0)
        assert p.log_ell.value == pytest.approx(1.0, abs=1e-12)
        assert p.rho == 0.0
        assert p.boundary == "lo"

    @given(
        c=st.floats(0.2, 5.0),
        log_a=st.floats(-2.3, 2.3),
        t=st.floats(0.0, 40.0),
    )
    @settings(max_examples=30, deadline=None)
    def test_scaling_law(self, c, log_a, t):
        # the transform of c*u(a r) is c * a^t * ell_u(t)
        a = math.exp(log_a)
        v = exponential().scaled(c, a)
        want = math.log(c) + t * log_a + power_exp_log_ell(1.0, t)
        got = gc.ell(v, t).log_ell.log
        assert abs(got - want) <= 1e-7 * max(1.0, abs(want))

    def test_monotone_in_function(self):
        # u <= v pointwise forces ell_u <= ell_v
        u = exponential()
        v = from_phi(
            lambda x: math.exp(x) + math.exp(2.0 * x),
            name="exp-times-gaussian",
            log_u0=0.0,
            increasing=True,
            log_exp_convex=True,
        )
        for t in [0.0, 1.0, 2.5, 6.0, 12.0]:
            assert gc.ell(u, t).log_ell.log <= gc.ell(v, t).log_ell.log + 1e-9


class TestTransformEdges:
    def test_negative_order_rejected(self):
        with pytest.raises(ValueError):
            gc.ell(exponential(), -0.5)

    def test_flagged_outside_class_refused(self):
        with pytest.raises(PreconditionViolated):
            gc.ell(make_growth_function("polynomial", {"p": 5.0}), 2.0)

    def test_slow_growth_escapes(self):
        # log u(r) ~ 5 log r: the infimum for t > 5 runs off to r = inf
        slow = from_phi(
            lambda x: 5.0 * math.log1p(math.exp(min(x, 700.0))),
            name="slow",
            log_u0=0.0,
            increasing=True,
            log_exp_convex=True,
        )
        want = 5.0 * math.log(5.0 / 3.0) + 2.0 * math.log(1.5)
        assert math.isclose(gc.ell(slow, 2.0).log_ell.log, want, rel_tol=1e-9)
        with pytest.raises(NotBracketable):
            gc.ell(slow, 6.0)

    def test_scan_path_kink(self):
        # no convexity hint: the grid scan must find the corner minimum
        u = kink_function()
        p = gc.ell(u, 1.5)
        assert abs(p.log_ell.log) <= 1e-9
        assert math.isclose(p.rho, 1.0, rel_tol=1e-6)
        with pytest.raises(NotBracketable):
            gc.ell(u, 0.5)  # u(0) = 0, so small orders drain to zero

    def test_scan_path_matches_hinted_path(self):
        hinted = bump_example()
        unhinted = from_phi(hinted.phi_at, name="bump-unhinted")
        for t in [1.0, 2.5, 3.5]:
            a = gc.ell(hinted, t).log_ell.log
            b = gc.ell(unhinted, t).log_ell.log
            c = dense_log_ell(hinted, t)
            assert abs(a - b) <= 1e-8 * max(1.0, abs(a))
            assert abs(a - c) <= 1e-6 * max(1.0, abs(a))


class TestTauBounds:
    def test_smooth_points_collapse(self):
        tb = gc.tau_bounds(exponential(), 5.0)
        assert tb.tau_minus == pytest.approx(5.0, abs=1e-6)
        assert tb.tau_plus == pytest.approx(5.0, abs=1e-6)
        tb = gc.tau_bounds(gaussian(), 2.0)
        assert tb.tau_minus == pytest.approx(8.0, abs=1e-6)
        assert tb.tau_plus == pytest.approx(8.0, abs=1e-6)

    def test_corner_splits(self):
        tb = gc.tau_bounds(kink_function(), 1.0)
        assert tb.tau_minus == pytest.approx(1.0, abs=1e-5)
        assert tb.tau_plus == pytest.approx(2.0, abs=1e-5)

    def test_interval_contains_attaining_orders(self):
        # if the infimum at order t is attained at rho, then t lies in
        # the slope interval at rho
        u = ks_family(0.5)
        for t in [1.0, 2.5, 7.0]:
            rho = gc.ell(u, t).rho
            tb = gc.tau_bounds(u, rho)
            assert tb.tau_minus - 1e-5 <= t <= tb.tau_plus + 1e-5

    def test_corner_interval_prices_the_transform(self):
        # between the one-sided slopes the infimum sits at the corner
        u = kink_function()
        for t in [1.1, 1.5, 1.9]:
            p = gc.ell(u, t)
            assert abs(p.log_ell.log) <= 1e-9
            assert math.isclose(p.rho, 1.0, rel_tol=1e-5)

    def test_flagged_nonconvex_refused(self):
        u = from_phi(lambda x: x * x - 2.0 * x, name="sq", log_exp_convex=False)
        with pytest.raises(PreconditionViolated):
            gc.tau_bounds(u, 1.0)


class TestLegendreProfile:
    def test_matches_pointwise(self):
        u = ks_family(0.5)
        grid = [0.0, 0.5, 1.0, 2.0, 3.5, 7.0, 12.0]
        prof = gc.LegendreProfile.from_function(u, grid)
        for t, lv, rho in zip(prof.t_grid, prof.log_ell, prof.rho):
            p = gc.ell(u, t)
            assert abs(lv - p.log_ell.log) <= 1e-9 * max(1.0, abs(lv))
            assert abs(rho - p.rho) <= 1e-6 * max(1.0, rho)
        assert prof.boundary_flags[0] == "lo"

    @pytest.mark.parametrize(
        "u",
        [exponential(), ks_family(0.25), ks_family(0.5), ks_family(1.0), gaussian(), iterated_exp(2)],
        ids=lambda u: u.name,
    )
    def test_log_concave_and_decaying(self, u):
        prof = gc.LegendreProfile.from_function(u, [float(n) for n in range(41)])
        assert prof.log_concavity_violation() <= 1e-8
        assert prof.root_decay_decreasing()

    def test_rejects_bad_grid(self):
        with pytest.raises(ValueError):
            gc.LegendreProfile.from_function(exponential(), [2.0, 1.0])
        with pytest.raises(ValueError):
            gc.LegendreProfile.from_function(exponential(), [-1.0, 1.0])


class TestInverseTransform:
    def test_closed_form_maximum(self):
        # sup_t a^t / t^(2t) = exp(2 sqrt(a) / e)
        f = gc.LogConcaveProfile(
            log_f=lambda t: -2.0 * t * math.log(t) if t > 0 else 0.0,
            t0=1.0,
            name="t^-2t",
        )
        for a in [1.0, math.e ** 2, 10.0]:
            want = 2.0 * math.sqrt(a) / math.e
            got = gc.inverse_legendre(f, a).log
            assert abs(got - want) <= 1e-9 * max(1.0, want)
        ts = np.linspace(1e-9, 50.0, 2000001)
        oracle = float(np.max(ts * math.log(7.3) - 2.0 * ts * np.log(ts)))
        assert abs(gc.inverse_legendre(f, 7.3).log - oracle) <= 1e-9

    def test_zero_and_small_argument_clamp_to_head(self):
        f = gc.LogConcaveProfile(log_f=lambda t: math.log(5.0) - 3.0 * t, t0=0.0)
        assert gc.inverse_legendre(f, 0.0).value == pytest.approx(5.0)
        assert gc.inverse_legendre(f, 1e-12).value == pytest.approx(5.0, rel=1e-9)

    def test_escape_when_decay_too_slow(self):
        # f^(1/t) -> e^-2 > 0: the supremum blows up once log r > 2
        f = gc.LogConcaveProfile(log_f=lambda t: -2.0 * t, t0=0.0)
        with pytest.raises(NotBracketable):
            gc.inverse_legendre(f, math.exp(3.0))

    @pytest.mark.parametrize(
        "u,r_lo,r_hi",
        [
            (exponential(), 1e-3, 1e3),
            (ks_family(0.25), 1e-3, 1e3),
            (ks_family(0.5), 1e-3, 1e3),
            (gaussian(), 1e-3, 1e3),
            (iterated_exp(2), 0.1, 5.0),
        ],
        ids=lambda v: v.name if hasattr(v, "name") else str(v),
    )
    def test_round_trip_recovers_function(self, u, r_lo, r_hi):
        f = gc.ell_profile(u)
        for r in list(np.geomspace(r_lo, r_hi, 13)) + [0.0]:
            got = gc.inverse_legendre(f, float(r)).log
            want = u.log_at(float(r))
            assert abs(got - want) <= 1e-6 * max(1.0, abs(want))

    def test_round_trip_recovers_profile(self):
        f = gc.ell_profile(ks_family(0.5))
        th = gc.theta_function(f)
        for t in [0.5, 1.0, 2.0, 5.0, 9.5]:
            want = f.log_f(t)
            got = gc.ell(th, t).log_ell.log
            assert abs(got - want) <= 1e-6 * max(1.0, abs(want))

    def test_round_trip_synthetic_profile(self):
        f = gc.LogConcaveProfile(
            log_f=lambda t: -2.0 * t * math.log(t) if t > 0 else 0.0,
            t0=1.0,
            name="t^-2t",
        )
        th = gc.theta_function(f)
        got = gc.ell(th, 3.0).log_ell.log
        assert math.isclose(got, -6.0 * math.log(3.0), rel_tol=1e-9)


class TestAdmissibility:
    def test_transform_profiles_admissible(self):
        for u in [exponential(), ks_family(0.5), gaussian()]:
            rep = gc.admissibility_report(gc.ell_profile(u))
            assert rep["decays"] and rep["decreasing_beyond_t0"] and rep["log_concave"]

    def test_detected_descent_start(self):
        assert gc.ell_profile(exponential()).t0 == 1.0
        assert gc.ell_profile(ks_family(0.5)).t0 == 1.0
        assert gc.ell_profile(gaussian()).t0 == 2.0

    def test_constant_root_rejected(self):
        f = gc.LogConcaveProfile(log_f=lambda t: -2.0 * t, t0=0.0, name="flat-root")
        rep = gc.admissibility_report(f)
        assert not rep["decays"]
        assert rep["log_concave"]
        with pytest.raises(PreconditionViolated):
            gc.theta_function(f)

    def test_wiggly_profile_rejected(self):
        f = gc.LogConcaveProfile(
            log_f=lambda t: -2.0 * t * math.log(t) + 0.5 * math.sin(3.0 * t)
            if t > 0
            else 0.0,
            t0=2.0,
            name="wiggle",
        )
        rep = gc.admissibility_report(f)
        assert not rep["log_concave"]
        with pytest.raises(PreconditionViolated):
            gc.theta_function(f)
        # check=False defers to the caller's judgement
        gc.theta_function(f, check=False)


class TestSeries:
    def test_value_at_zero_is_head_coefficient(self):
        assert gc.l_function(exponential(), LOG_ZERO).value == pytest.approx(1.0)
        assert gc.l_sharp(exponential(), LOG_ZERO).value == pytest.approx(1.0)

    @pytest.mark.parametrize("r", [0.5, 1.0, 3.0])
    def test_matches_direct_sum(self, r):
        u = exponential()
        ns = np.arange(1, 400)
        terms = np.concatenate(([0.0], ns * (1.0 - np.log(ns)) + ns * math.log(r)))
        oracle = float(np.log(np.sum(np.exp(terms - np.max(terms)))) + np.max(terms))
        got = gc.l_function(u, math.log(r)).log
        assert abs(got - oracle) <= 1e-8 * max(1.0, abs(oracle))

    def test_sharp_matches_direct_sum(self):
        r = 0.8
        ns = np.arange(1, 200)
        lg = np.array([math.lgamma(n + 1.0) for n in ns])
        terms = np.concatenate(([0.0], ns * (np.log(ns) - 1.0) - 2.0 * lg + ns * math.log(r)))
        oracle = float(np.log(np.sum(np.exp(terms - np.max(terms)))) + np.max(terms))
        got = gc.l_sharp(exponential(), math.log(r)).log
        assert abs(got - oracle) <= 1e-8

    def test_beta_sandwich_at_unit_argument(self):
        # sum r^n / n!^(1+beta) brackets the L-series within explicit
        # constants; checked at beta = 1/2, r = 1
        beta = 0.5
        u = ks_family(beta)
        ns = np.arange(1, 200)
        lg = np.array([math.lgamma(n + 1.0) for n in ns])
        g_at = lambda lr: float(
            np.log1p(np.sum(np.exp(-(1.0 + beta) * lg + ns * lr)))
        )
        lower = g_at(0.0)
        upper = (1.0 + beta) + g_at(0.5 * (1.0 + beta) * math.log(2.0))
        got = gc.l_function(u, 0.0).log
        assert lower - 1e-9 <= got <= upper + 1e-9

    def test_wrapper_consistency(self):
        u = exponential()
        w = gc.l_growth_function(u)
        assert abs(w.log_at(2.0) - gc.l_function(u, math.log(2.0)).log) <= 1e-12
        assert w.log_u0 == gc.ell(u, 0.0).log_ell.log
        ws = gc.l_sharp_growth_function(u)
        assert abs(ws.log_at(0.8) - gc.l_sharp(u, math.log(0.8)).log) <= 1e-12

    def test_sharp_coefficient_band_steepest_family(self):
        # for the beta = 1 family the sharp coefficients sit between
        # 2^-n e^-2 and 1, exactly in logs
        u = ks_family(1.0)
        for n in range(201):
            closed = 2.0 * n * (math.log(n) - 1.0) - 2.0 * math.lgamma(n + 1.0) if n else 0.0
            assert closed <= 1e-12
            assert closed >= -(2.0 + n * math.log(2.0)) - 1e-12
            via_ell = -gc.ell(u, float(n)).log_ell.log - 2.0 * math.lgamma(n + 1.0)
            assert abs(via_ell - closed) <= 1e-7 * max(1.0, abs(closed))

    def test_sharp_series_radius_boundary(self):
        # those coefficients decay like 1/n: radius 1, certified failure
        # at and beyond it
        u = ks_family(1.0)
        with pytest.raises(NoDecayCertificate):
            gc.l_sharp(u, 0.0)
        with pytest.raises(NoDecayCertificate):
            gc.l_sharp(u, math.log(2.0))

    def test_sharp_series_inside_radius(self):
        u = ks_family(1.0)
        ns = np.arange(1, 400)
        lg = np.array([math.lgamma(n + 1.0) for n in ns])
        log_coeff = 2.0 * ns * (np.log(ns) - 1.0) - 2.0 * lg
        for r in [0.1, 0.25, 0.45]:
            oracle = float(np.log1p(np.sum(np.exp(log_coeff + ns * math.log(r)))))
            got = gc.l_sharp(u, math.log(r)).log
            assert abs(got - oracle) <= 1e-8


class TestDual:
    def test_exponential_self_dual(self):
        u = exponential()
        assert gc.dual(u, 0.0).value == pytest.approx(1.0)
        for r in np.geomspace(0.01, 100.0, 9):
            assert abs(gc.dual(u, float(r)).log - r) <= 1e-9 * max(1.0, r)

    @pytest.mark.parametrize("beta", [0.25, 0.5])
    def test_beta_flip(self, beta):
        # the dual of exp((1+b) r^(1/(1+b))) is exp((1-b) r^(1/(1-b)))
        u = ks_family(beta)
        for r in np.geomspace(0.1, 30.0, 9):
            want = (1.0 - beta) * float(r) ** (1.0 / (1.0 - beta))
            got = gc.dual(u, float(r)).log
            assert abs(got - want) <= 1e-8 * max(1.0, want)

    def test_steepest_family_cutoff(self):
        # for beta = 1 the dual is 1 up to r = 1 and infinite beyond
        u = ks_family(1.0)
        assert gc.dual(u, 0.5).value == pytest.approx(1.0, abs=1e-9)
        assert gc.dual(u, 1.0).value == pytest.approx(1.0, abs=1e-9)
        with pytest.raises(NotBracketable):
            gc.dual(u, 2.0)

    def test_iterated_exponential_against_grid(self):
        u = iterated_exp(2)
        sq = math.sqrt(1e6)
        ws = np.linspace(-3.0, 3.28, 300001)
        vals = []
        for w in ws:
            p = u.phi_at(2.0 * float(w))
            vals.append(-math.inf if not math.isfinite(p) else 2.0 * sq * math.exp(float(w)) - p)
        oracle = max(vals)
        got = gc.dual(u, 1e6).log
        assert abs(got - oracle) <= 1e-6 * oracle

    def test_iterated_exponential_reference_shape(self):
        # the dual tracks 2 sqrt(r log sqrt(r)) from below, closing in
        # slowly as r grows
        u = iterated_exp(2)
        ratios = []
        for r in [1e2, 1e3, 1e4, 1e5, 1e6]:
            ref = 2.0 * math.sqrt(r * math.log(math.sqrt(r)))
            ratios.append(gc.dual(u, r).log / ref)
        assert all(b > a for a, b in zip(ratios, ratios[1:]))
        assert 0.8 < ratios[-1] < 1.0

    def test_head_value_is_reciprocal_transform(self):
        for u in [exponential(), ks_family(0.5), gaussian()]:
            want = -gc.ell(u, 0.0).log_ell.log
            assert abs(gc.dual(u, 0.0).log - want) <= 1e-12


class TestDualFunction:
    def test_escape_becomes_infinity(self):
        us = gc.dual_function(ks_family(1.0))
        assert us.phi_at(1.0) == math.inf
        assert abs(us.log_at(0.5)) <= 1e-9
        assert us.increasing and us.log_x2_convex and us.in_c_plus_log

    def test_transform_of_cutoff_dual_is_one(self):
        us = gc.dual_function(ks_family(1.0))
        for n in range(31):
            assert abs(gc.ell(us, float(n)).log_ell.log) <= 1e-7

    def test_involution_on_steepest_family(self):
        u = ks_family(1.0)
        uss = gc.dual_function(gc.dual_function(u))
        for r in np.geomspace(1.0, 1e4, 15):
            want = u.log_at(float(r))
            assert abs(uss.log_at(float(r)) - want) <= 1e-6 * max(1.0, abs(want))

    @pytest.mark.parametrize(
        "u,r_lo,r_hi",
        [(exponential(), 0.1, 50.0), (ks_family(0.5), 0.1, 20.0)],
        ids=["exp", "ks05"],
    )
    def test_involution_smooth(self, u, r_lo, r_hi):
        uss = gc.dual_function(gc.dual_function(u))
        for r in np.geomspace(r_lo, r_hi, 11):
            want = u.log_at(float(r))
            assert abs(uss.log_at(float(r)) - want) <= 1e-6 * max(1.0, abs(want))

    def test_dual_transform_identity(self):
        # ell of the dual against e^(2t) / (ell_u(t) t^(2t))
        for u in [exponential(), ks_family(0.5)]:
            us = gc.dual_function(u)
            for t in range(1, 21):
                want = 2.0 * t - gc.ell(u, float(t)).log_ell.log - 2.0 * t * math.log(t)
                got = gc.ell(us, float(t)).log_ell.log
                assert abs(got - want) <= 1e-7 * max(1.0, abs(want))

    def test_dual_is_x2_convex_by_probe(self):
        us = gc.dual_function(exponential())
        assert gc.classify_convexity(us, "log-xk-convex", k=2).passes

    def test_sharp_series_matches_dual_series(self):
        # for beta = 1 the dual transform values are 1, so the dual's
        # L-series is plainly geometric
        us = gc.dual_function(ks_family(1.0))
        for r in [0.1, 0.25, 0.45]:
            got = gc.l_function(us, math.log(r)).value
            assert math.isclose(got, 1.0 / (1.0 - r), rel_tol=1e-6)
            sharp = gc.l_sharp(ks_family(1.0), math.log(r)).value
            upper = math.e ** 2 * gc.l_sharp(ks_family(1.0), math.log(2.0 * r)).value
            assert sharp - 1e-9 <= got <= upper + 1e-9


class TestFunctionEquivalence:
    def test_recovers_exact_dilation(self):
        u = exponential()
        v = u.scaled(2.0, 3.0)
        res = gc.function_equivalent(u, v, (0.0, 10.0))
        assert res.ok
        assert res.a1 == pytest.approx(3.0, rel=1e-3)
        assert res.c1 == pytest.approx(2.0, rel=1e-3)
        assert res.c2 == pytest.approx(2.0, rel=1e-3)
        assert res.max_residual <= 1e-6

    def test_rejects_different_growth_order(self):
        res = gc.function_equivalent(exponential(), gaussian(), (0.0, 40.0))
        assert not res.ok
        assert res.spread > 100.0
        assert res.r > 1.0
        assert res.searched_a[0] < 1.0 < res.searched_a[1]

    def test_function_and_its_series_are_equivalent(self):
        u = ks_family(0.5)
        res = gc.function_equivalent(u, gc.l_growth_function(u), (0.0, 30.0))
        assert res.ok
        assert res.max_residual <= 2.0

    def test_series_upper_bound_with_explicit_constant(self):
        # L_u(r) <= (e*a/log a) u(a r) checked directly at a = e
        u = ks_family(0.5)
        for r in np.geomspace(1e-3, 50.0, 40):
            lhs = gc.l_function(u, math.log(float(r))).log
            assert lhs - 2.0 - u.log_at(math.e * float(r)) <= 1e-9

    def test_sequence_bridge(self):
        # equivalent weight sequences produce equivalent series functions
        u = ks_family(0.5)
        v = u.scaled(1.0, 2.0)
        wa = gc.seq_equivalent(gc.from_legendre(u, 40), gc.from_legendre(v, 40))
        assert wa.ok
        assert wa.c1 == pytest.approx(0.5, rel=1e-2)
        assert wa.c2 == pytest.approx(0.5, rel=1e-2)
        res = gc.function_equivalent(
            gc.l_sharp_growth_function(u), gc.l_sharp_growth_function(v), (0.0, 5.0)
        )
        assert res.ok

    def test_weight_condition_matches_profile_concavity(self):
        seq = gc.from_legendre(ks_family(0.5), 60)
        assert gc.check_condition(seq, "B2t").holds
        prof = gc.LegendreProfile.from_function(
            ks_family(0.5), [float(n) for n in range(61)]
        )
        assert prof.log_concavity_violation() <= 1e-8


class TestVerifySuites:
    @pytest.mark.parametrize("tag", gc.suite_tags())
    def test_default_suites_pass(self, tag):
        rep = gc.verify_suite(tag)
        assert rep.passed, rep.to_json()

    def test_unknown_tag(self):
        with pytest.raises(ValueError):
            gc.verify_suite("nope")

    def test_reports_are_deterministic(self):
        for tag in ["a4", "ks-sandwich", "thm42"]:
            one = gc.verify_suite(tag).to_json()
            two = gc.verify_suite(tag).to_json()
            assert one == two
            parsed = json.loads(one)
            assert parsed["suite"] == tag
            assert parsed["verdict"] == "pass"

    def test_parameter_overrides(self):
        rep = gc.verify_suite("thm42", {"family": "ks", "beta": 0.5})
        assert rep.passed
        rep = gc.verify_suite("lem35", {"family": "power-exp", "a": 3.0, "k": 2})
        assert rep.passed
        case = rep.witness["cases"][0]
        assert case["agree"] and not case["xk_convex"]

    def test_sandwich_tight_at_beta_zero(self):
        rep = gc.verify_suite("ks-sandwich", {"beta": 0.0})
        assert rep.passed

    def test_violations_are_findings_not_errors(self):
        rep = gc.verify_suite("stirling", {"tol": -1.0})
        assert rep.verdict == "fail"
        assert rep.max_violation > -1.0
