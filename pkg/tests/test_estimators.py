"""Tests for the mean/SD estimators and the dispatch."""

import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from fivenum import estimators as est
from fivenum.errors import DomainError, ScenarioError, ValidationError
from fivenum.estimators import (EstimateResult, EstimatorWarning, Family,
                                FiveNumberSummary, MethodId, Scenario,
                                Target, estimate, eta, xi)
from fivenum.order_stats import mc_oracle


def s3(a, q1, m, q3, b, n=5):
    return FiveNumberSummary(n=n, minimum=a, q1=q1, median=m, q3=q3,
                             maximum=b)


def s1(a, m, b, n=5):
    return FiveNumberSummary(n=n, minimum=a, median=m, maximum=b)


def s2(q1, m, q3, n=5):
    return FiveNumberSummary(n=n, q1=q1, median=m, q3=q3)


summaries = st.builds(
    lambda vals, q: s3(*sorted(vals), n=4 * q + 1),
    st.tuples(*[st.floats(-1e6, 1e6) for _ in range(5)]),
    st.integers(1, 200),
)


class TestSummaryValidation:
    def test_scenarios(self):
        assert s3(0, 1, 2, 3, 4).scenario is Scenario.S3
        assert s1(0, 2, 4).scenario is Scenario.S1
        assert s2(1, 2, 3).scenario is Scenario.S2

    def test_ordering_violation(self):
        with pytest.raises(ValidationError) as exc:
            s3(0, 3, 2, 3, 4)
        assert exc.value.code == "ORDER_VIOLATION"
        assert "q1" in str(exc.value)

    def test_ties_allowed(self):
        s3(1, 1, 1, 1, 1)
        s3(0, 0, 2, 4, 4)

    def test_partial_pattern_rejected(self):
        with pytest.raises(ScenarioError):
            FiveNumberSummary(n=9, median=2.0, minimum=0.0, q1=1.0)

    def test_non_finite_rejected(self):
        with pytest.raises(ValidationError) as exc:
            s3(0, 1, math.nan, 3, 4)
        assert exc.value.code == "NON_FINITE_VALUE"

    def test_bad_n(self):
        with pytest.raises(ValidationError):
            FiveNumberSummary(n=0, median=1.0, q1=0.0, q3=2.0)
        with pytest.raises(ValidationError):
            FiveNumberSummary(n=2.5, median=1.0, q1=0.0, q3=2.0)


class TestDenominators:
    def test_xi_direct_substitution(self):
        from fivenum.normal import quantile

        assert xi(5) == 2 * quantile(4.625 / 5.25)

    def test_xi_increasing(self):
        vals = [xi(n) for n in (2, 5, 10, 100, 1000, 10**6)]
        assert all(b > a for a, b in zip(vals, vals[1:]))
        assert all(v > 0 for v in vals)

    def test_xi_table_anchor(self):
        assert abs((2 + 0.14 * 5 ** 0.6) * xi(5) / 2 - 2.793) < 1e-3

    def test_xi_sqrt_log_growth(self):
        # ratio to sqrt(ln n) climbs toward 2*sqrt(2) (log-slow)
        ratios = [xi(n) / math.sqrt(math.log(n))
                  for n in (10**2, 10**4, 10**6)]
        assert all(b > a for a, b in zip(ratios, ratios[1:]))
        assert all(2.0 < r < 2 * math.sqrt(2) for r in ratios)

    def test_eta_limit(self):
        from fivenum.normal import quantile

        assert abs(eta(10**6) - 2 * quantile(0.75)) < 1e-3
        assert abs(eta(10**6) - 2 * 0.6745) < 1e-3

    def test_eta_positive(self):
        # at n=1 the plotting position is exactly 0.5, so eta(1) = 0;
        # positivity starts at n=2
        assert eta(1) == 0.0
        assert all(eta(n) > 0 for n in (2, 5, 50))

    def test_eta_table_anchor(self):
        assert abs((2 + 2 / (0.07 * 85 ** 0.6)) * eta(85) / 2 - 2.644) < 1e-3

    def test_domain(self):
        with pytest.raises(DomainError):
            xi(1)
        with pytest.raises(DomainError):
            eta(0)


class TestWanSd:
    def test_degenerate_spread(self):
        assert est.sd_wan_s1(s1(2, 2, 2)) == 0.0
        assert est.sd_wan_s2(s2(3, 3, 3)) == 0.0

    def test_linearity_in_range(self):
        base = est.sd_wan_s1(s1(0, 1, 2))
        assert est.sd_wan_s1(s1(0, 2, 4)) == pytest.approx(2 * base, rel=1e-15)

    def test_s3_is_average(self):
        s = s3(0, 1, 2, 3, 4)
        avg = 0.5 * (est.sd_wan_s1(s) + est.sd_wan_s2(s))
        assert est.sd_wan_s3(s) == pytest.approx(avg, rel=1e-15)

    def test_s3_direct_value(self):
        s = s3(0, 1, 2, 3, 4)
        assert est.sd_wan_s3(s) == pytest.approx(
            (4 / xi(5) + 2 / eta(5)) / 2, rel=1e-15)

    def test_all_equal_gives_zero(self):
        assert est.sd_wan_s3(s3(1, 1, 1, 1, 1)) == 0.0

    def test_scenario_errors(self):
        with pytest.raises(ScenarioError):
            est.sd_wan_s1(s2(1, 2, 3))
        with pytest.raises(ScenarioError):
            est.sd_wan_s2(s1(0, 2, 4))

    def test_s1_mc_mean_matches_order_stat_expectation(self):
        # Dual route: E[(max-min)/xi] = 2 E[Z_(n:n)] / xi(n); at n=5 the
        # value is 0.98576 (the estimator carries a -1.4% bias at n=5).
        mc = mc_oracle(5, reps=400_000, seed=21)
        expected = (mc.mean(5) - mc.mean(1)) / xi(5)
        sim_mean = expected  # oracle IS the simulation here
        from fivenum.order_stats import summary_moments
        m = summary_moments(5)
        analytic = (m.mean(5) - m.mean(1)) / xi(5)
        se = (mc.mean_se[5] + mc.mean_se[1]) / xi(5)
        assert abs(sim_mean - analytic) < 4 * se
        assert abs(analytic - 0.98576) < 1e-4
        assert 0.97 < analytic < 1.0

    def test_s2_mc_mean_near_one_large_n(self):
        from fivenum.order_stats import summary_moments

        m = summary_moments(401)
        analytic = (m.mean(301) - m.mean(101)) / eta(401)
        assert abs(analytic - 1.0) < 0.005


class TestWeightedSd:
    @pytest.mark.parametrize("w,func", [(1.0, est.sd_wan_s1),
                                        (0.0, est.sd_wan_s2),
                                        (0.5, est.sd_wan_s3)])
    def test_reductions_bitwise(self, w, func):
        s = s3(0.13, 1.4, 2.22, 3.875, 4.001, n=13)
        assert est.weighted_sd(s, w) == func(s)

    def test_weight_domain(self):
        with pytest.raises(DomainError):
            est.weighted_sd(s3(0, 1, 2, 3, 4), 1.2)
        with pytest.raises(DomainError):
            est.weighted_sd(s3(0, 1, 2, 3, 4), -0.1)


class TestOptimalSd:
    def test_shortcut_spot_value(self):
        # (4 / 2.793) + (2 / 6.403) = 1.744 at the published precision
        val = est.sd_optimal_s3(s3(0, 1, 2, 3, 4), mode="shortcut")
        assert abs(val - (4 / 2.793 + 2 / 6.403)) < 1e-3
        assert abs(val - 1.744335) < 1e-6

    @given(summaries)
    @settings(max_examples=200, deadline=None)
    def test_shortcut_equals_approx(self, s):
        a = est.sd_optimal_s3(s, mode="shortcut")
        b = est.sd_optimal_s3(s, mode="approx")
        assert abs(a - b) <= 1e-12 * max(1.0, abs(a))

    def test_exact_mode(self):
        s = s3(0, 1, 2, 3, 4)
        v = est.sd_optimal_s3(s, mode="exact")
        from fivenum.weights import exact_optimal_weight

        assert v == est.weighted_sd(s, exact_optimal_weight(5))

    def test_near_equal_weights_at_85(self):
        rng = np.random.default_rng(5)
        for _ in range(20):
            vals = np.sort(rng.standard_normal(85))
            s = s3(vals[0], vals[21], vals[42], vals[63], vals[84], n=85)
            a = est.sd_optimal_s3(s, mode="approx")
            b = est.sd_wan_s3(s)
            if a > 0:
                assert abs(a / b - 1.0) < 0.01

    def test_unknown_mode(self):
        with pytest.raises(DomainError):
            est.sd_optimal_s3(s3(0, 1, 2, 3, 4), mode="nope")


class TestHozo:
    def test_step_drop_at_70(self):
        lo = est.sd_hozo_s1(s1(0, 6, 12, n=70))
        hi = est.sd_hozo_s1(s1(0, 6, 12, n=71))
        assert lo / hi == pytest.approx(1.5, rel=1e-12)

    def test_symmetric_small_sample(self):
        # a - 2m + b = 0 kills the correction term
        v = est.sd_hozo_s1(s1(0, 5, 10, n=10))
        assert v == pytest.approx(10 / math.sqrt(12), rel=1e-12)

    def test_degenerate(self):
        assert est.sd_hozo_s1(s1(3, 3, 3, n=8)) == 0.0

    @pytest.mark.parametrize("n,divisor", [(15, None), (16, 4), (70, 4),
                                           (71, 6), (500, 6)])
    def test_regimes(self, n, divisor):
        v = est.sd_hozo_s1(s1(0, 1, 2, n=n))
        if divisor is not None:
            assert v == pytest.approx(2 / divisor, rel=1e-12)


class TestBland:
    def test_all_equal(self):
        assert est.sd_bland_s3(s3(2, 2, 2, 2, 2)) == 0.0

    def test_independent_of_n(self):
        a = est.sd_bland_s3(s3(0, 1, 2, 3, 4, n=5))
        b = est.sd_bland_s3(s3(0, 1, 2, 3, 4, n=4001))
        assert a == b

    def test_hand_evaluated_radicand(self):
        # {0,1,2,3,4}: 44/16 + 20/8 - 256/64 = 1.25
        v = est.sd_bland_s3(s3(0, 1, 2, 3, 4))
        assert v == pytest.approx(math.sqrt(1.25), rel=1e-14)

    def test_location_invariance(self):
        a = est.sd_bland_s3(s3(0, 1, 2, 3, 4))
        b = est.sd_bland_s3(s3(100, 101, 102, 103, 104))
        assert abs(a - b) < 1e-9

    def test_mean_bland(self):
        s = s3(0, 1, 2, 3, 4)
        v = est.mean_bland_s3(s)
        assert v == pytest.approx((0 + 2 + 4 + 6 + 4) / 8, rel=1e-15)
        alt = 0.25 * (0 + 4) / 2 + 0.5 * (1 + 3) / 2 + 2 / 4
        assert v == pytest.approx(alt, rel=1e-15)
        assert est.mean_bland_s3(s3(7, 7, 7, 7, 7)) == 7.0


class TestLuoMeans:
    def test_symmetric_inputs_give_median(self):
        assert est.mean_luo_s1(s1(0, 2, 4)) == pytest.approx(2.0, rel=1e-15)
        assert est.mean_luo_s2(s2(1, 2, 3)) == pytest.approx(2.0, rel=1e-15)
        assert est.mean_luo_s3(s3(0, 1, 2, 3, 4)) == pytest.approx(
            2.0, rel=1e-15)

    def test_s1_weight_vanishes(self):
        assert est.luo_weight_s1(10**9) < 1e-6
        s = s1(0, 3, 4, n=10**9)
        assert est.mean_luo_s1(s) == pytest.approx(3.0, abs=1e-5)

    def test_s3_limit_weights(self):
        w1, w2 = est.luo_weights_s3(10**9)
        assert w1 < 1e-6
        assert abs(w2 - 0.7) < 1e-4

    def test_s2_weight_exceeds_one_tiny_n(self):
        # published formula gives w2 = 1.09 at n=1; applied as-is, flagged
        assert est.luo_weight_s2(1) == pytest.approx(1.09, rel=1e-12)
        s = FiveNumberSummary(n=1, q1=1.0, median=2.0, q3=3.0)
        with pytest.warns(EstimatorWarning):
            v = est.mean_luo_s2(s)
        assert v == pytest.approx(1.09 * 2.0 + (1 - 1.09) * 2.0, rel=1e-12)

    def test_location_equivariance_s3(self):
        s = s3(0, 1, 2, 3, 4, n=21)
        shifted = s3(5, 6, 7, 8, 9, n=21)
        assert est.mean_luo_s3(shifted) == pytest.approx(
            est.mean_luo_s3(s) + 5, rel=1e-12)


class TestEquivariance:
    @given(summaries,
           st.floats(0.01, 100.0),
           st.floats(-1000.0, 1000.0))
    @settings(max_examples=150, deadline=None)
    def test_scale_location(self, s, c, d):
        t = FiveNumberSummary(
            n=s.n,
            minimum=c * s.minimum + d, q1=c * s.q1 + d,
            median=c * s.median + d, q3=c * s.q3 + d,
            maximum=c * s.maximum + d)
        scale = max(1.0, abs(c * s.maximum + d), abs(c * s.minimum + d))
        for mean_fn in (est.mean_luo_s1, est.mean_luo_s2, est.mean_luo_s3,
                        est.mean_bland_s3):
            assert abs(mean_fn(t) - (c * mean_fn(s) + d)) <= 1e-9 * scale
        for sd_fn in (est.sd_wan_s1, est.sd_wan_s2, est.sd_wan_s3,
                      est.sd_hozo_s1, est.sd_bland_s3,
                      lambda x: est.sd_optimal_s3(x, "shortcut")):
            assert abs(sd_fn(t) - c * sd_fn(s)) <= 1e-9 * scale


class TestMethodId:
    def test_valid_combinations(self):
        MethodId(Family.WAN, Target.SD, Scenario.S1)
        MethodId(Family.LUO, Target.MEAN, Scenario.S3)
        MethodId(Family.SHI_OPTIMAL, Target.SD, Scenario.S3)

    @pytest.mark.parametrize("combo", [
        (Family.HOZO, Target.SD, Scenario.S2),
        (Family.HOZO, Target.MEAN, Scenario.S1),
        (Family.SHI_OPTIMAL, Target.SD, Scenario.S1),
        (Family.WAN, Target.MEAN, Scenario.S3),
        (Family.BLAND, Target.MEAN, Scenario.S1),
    ])
    def test_invalid_combinations(self, combo):
        with pytest.raises(DomainError):
            MethodId(*combo)


class TestEstimateDispatch:
    def test_s3_optimal_pair(self):
        r = estimate(s3(0, 1, 2, 3, 4))
        assert isinstance(r, EstimateResult)
        assert r.sd_method.family is Family.SHI_OPTIMAL
        assert r.mean_method.family is Family.LUO
        assert abs(r.sd - 1.744335) < 1e-6
        weights = dict(r.weights_used)
        assert abs(weights["w_opt"] + weights["1-w_opt"] - 1.0) < 1e-15

    def test_s1_pair(self):
        r = estimate(s1(0, 2, 4, n=9))
        assert r.sd_method.label == "wan/sd/S1"
        assert r.mean_method.label == "luo/mean/S1"
        assert r.sd == est.sd_wan_s1(s1(0, 2, 4, n=9))

    def test_s2_pair(self):
        r = estimate(s2(1, 2, 3, n=8))
        assert r.sd_method.label == "wan/sd/S2"
        assert r.sd == est.sd_wan_s2(s2(1, 2, 3, n=8))

    def test_never_selects_bland(self):
        for s in (s3(0, 1, 2, 3, 4), s1(0, 2, 4), s2(1, 2, 3)):
            r = estimate(s)
            assert r.mean_method.family is not Family.BLAND
            assert r.sd_method.family is not Family.BLAND

    def test_small_n_rejected(self):
        with pytest.raises(ValidationError) as exc:
            estimate(FiveNumberSummary(n=4, minimum=0.0, median=1.0,
                                       maximum=2.0))
        assert exc.value.code == "N_TOO_SMALL"
        # S2 allows n = 4
        estimate(FiveNumberSummary(n=4, q1=0.0, median=1.0, q3=2.0))

    def test_sd_nonnegative_and_warning_free_normal_case(self):
        r = estimate(s3(0, 1, 2, 3, 4, n=85))
        assert r.sd >= 0
        assert r.warnings == []
