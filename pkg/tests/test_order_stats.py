"""Tests for order-statistic moment quadrature and the MC oracle."""

import json
import math

import numpy as np
import pytest
from scipy import integrate

from fivenum import normal, order_stats
from fivenum.errors import DomainError
from fivenum.order_stats import (OrderIndex, cov_of, joint_order_pdf,
                                 mc_oracle, mean_of, single_order_pdf,
                                 summary_moments, summary_ranks)


class TestRanks:
    def test_summary_ranks(self):
        assert summary_ranks(5) == (1, 2, 3, 4, 5)
        assert summary_ranks(85) == (1, 22, 43, 64, 85)

    @pytest.mark.parametrize("n", [4, 6, 7, 8, 3, 1])
    def test_rejects_non_4q1(self, n):
        with pytest.raises(DomainError):
            summary_ranks(n)

    def test_order_index_validation(self):
        with pytest.raises(DomainError):
            OrderIndex(n=5, i=0)
        with pytest.raises(DomainError):
            OrderIndex(n=5, i=6)


class TestSingleOrderPdf:
    def test_single_draw_is_normal_density(self):
        idx = OrderIndex(n=1, i=1)
        for x in (-2.0, 0.0, 1.3):
            assert abs(single_order_pdf(idx, x) - normal.pdf(x)) < 1e-15

    def test_median_of_three_closed_form(self):
        # 6 * Phi(0) * (1-Phi(0)) * pdf(0) = 6 * 0.25 * pdf(0)
        val = single_order_pdf(OrderIndex(n=3, i=2), 0.0)
        assert abs(val - 6 * 0.25 * normal.pdf(0.0)) < 1e-14

    def test_nonnegative(self):
        x = np.linspace(-9, 9, 301)
        assert np.all(single_order_pdf(OrderIndex(n=12, i=4), x) >= 0)
        # n = 12 is fine here: densities exist for every 1 <= i <= n

    def test_normalizes_extreme_rank_large_n(self):
        f = lambda x: single_order_pdf(OrderIndex(n=401, i=401), x)
        val, err = integrate.quad(f, -9, 9, points=[2.5, 3.0, 3.5],
                                  limit=200)
        assert abs(val - 1.0) < 1e-8

    def test_normalizes_central_rank(self):
        f = lambda x: single_order_pdf(OrderIndex(n=85, i=22), x)
        val, _ = integrate.quad(f, -9, 9, points=[-0.7], limit=200)
        assert abs(val - 1.0) < 1e-9


class TestJointOrderPdf:
    def test_zero_on_wrong_ordering(self):
        assert joint_order_pdf(5, 2, 4, 1.0, 0.5) == 0.0
        assert joint_order_pdf(5, 2, 4, 1.0, 1.0) == 0.0

    def test_two_draw_closed_form(self):
        val = joint_order_pdf(2, 1, 2, -0.3, 1.1)
        assert abs(val - 2 * normal.pdf(-0.3) * normal.pdf(1.1)) < 1e-15

    def test_rejects_bad_rank_pair(self):
        with pytest.raises(DomainError):
            joint_order_pdf(5, 3, 3, 0.0, 1.0)
        with pytest.raises(DomainError):
            joint_order_pdf(5, 4, 2, 0.0, 1.0)

    def test_marginalizes_to_single(self):
        # integrate out y > x for (n=7, i=2, j=5) and recover rank 2
        n, i, j = 7, 2, 5
        for x in (-1.2, -0.3, 0.4):
            val, _ = integrate.quad(lambda y: joint_order_pdf(n, i, j, x, y),
                                    x, 9, limit=200)
            assert abs(val / single_order_pdf(OrderIndex(n, i), x) - 1) < 1e-8

    def test_normalizes_2d(self):
        n, i, j = 85, 22, 64
        val, err = integrate.dblquad(
            lambda y, x: joint_order_pdf(n, i, j, x, y),
            -3.5, 2.0, lambda x: x, lambda x: 2.5,
            epsabs=1e-9, epsrel=1e-9)
        assert abs(val - 1.0) < 1e-7


class TestMeanOf:
    def test_median_rank_is_zero(self):
        assert abs(mean_of(OrderIndex(9, 5))) < 1e-12

    def test_antisymmetry(self):
        lo = mean_of(OrderIndex(13, 1))
        hi = mean_of(OrderIndex(13, 13))
        assert abs(lo + hi) < 1e-9

    def test_max_of_five(self):
        # classic tabulated value E[Z_(5:5)] = 1.1629644736...
        assert abs(mean_of(OrderIndex(5, 5)) - 1.16296447) < 1e-6

    def test_blom_approximation_tracks_mean(self):
        # The 0.375/0.25 plotting position is excellent at the quartile
        # and median ranks but deviates up to ~0.017 at the extreme
        # ranks (worst at n=5, where E[Z_(5:5)] = 1.16296 vs 1.17976).
        for n in (5, 85, 401, 801):
            r1, r2, r3, r4, r5 = summary_ranks(n)
            for i in (r2, r3, r4):
                blom = normal.quantile((i - 0.375) / (n + 0.25))
                assert abs(mean_of(OrderIndex(n, i)) - blom) < 0.005
            for i in (r1, r5):
                blom = normal.quantile((i - 0.375) / (n + 0.25))
                assert abs(mean_of(OrderIndex(n, i)) - blom) < 0.02


class TestCovOf:
    def test_variance_of_five_max(self):
        # classic tabulated value Var[Z_(5:5)] = 0.4475340...
        assert abs(cov_of(5, 5, 5) - 0.44753407) < 1e-6

    def test_reflection_symmetry(self):
        a = cov_of(9, 1, 3)
        b = cov_of(9, 7, 9)
        assert abs(a - b) < 1e-7

    def test_positive_association(self):
        for (i, j) in ((1, 2), (1, 5), (2, 4)):
            assert cov_of(5, i, j) > 0

    def test_rejects_bad_ranks(self):
        with pytest.raises(DomainError):
            cov_of(5, 0, 3)
        with pytest.raises(DomainError):
            cov_of(5, 4, 2)


class TestSummaryMoments:
    def test_rejects_non_4q1(self):
        with pytest.raises(DomainError):
            summary_moments(6)

    def test_small_n_block(self):
        m = summary_moments(5)
        assert m.method == "quadrature"
        assert m.ranks == (1, 2, 3, 4, 5)
        # antisymmetric means, zero median
        assert abs(m.mean(3)) < 1e-12
        assert abs(m.mean(1) + m.mean(5)) < 1e-12
        # all variances nonnegative, reflection-symmetric covariances
        for i in m.ranks:
            assert m.variance(i) >= 0
        assert abs(m.covariance(1, 2) - m.covariance(4, 5)) < 1e-8
        assert abs(m.covariance(1, 4) - m.covariance(2, 5)) < 1e-8
        # the range is more variable than the quartile spread at n=5
        assert m.var_range > m.var_quartile_spread

    def test_consistency_with_cov_of(self):
        m = summary_moments(9)
        assert abs(m.covariance(1, 3) - cov_of(9, 1, 3)) < 1e-7
        assert abs(m.variance(3) - cov_of(9, 3, 3)) < 1e-7

    def test_mc_oracle_agreement_small(self):
        m = summary_moments(5)
        mc = mc_oracle(5, reps=400_000, seed=11)
        for i in m.ranks:
            tol = max(4 * mc.mean_se[i], 1e-4)
            assert abs(m.mean(i) - mc.mean(i)) < tol
        for (i, j), se in mc.cov_se.items():
            tol = max(4 * se, 1e-4)
            assert abs(m.covariance(i, j) - mc.covariance(i, j)) < tol

    def test_gumbel_regime_range_variance(self):
        # Var(range) ~ pi^2 / (6 ln n): log-slow, so only a loose band
        for n in (85, 401):
            m = summary_moments(n)
            ratio = m.var_range * 6 * math.log(n) / math.pi ** 2
            assert abs(ratio - 1.0) < 0.35

    def test_cov_cross_decay_bounded(self):
        vals = []
        for n in (41, 85, 201, 401):
            m = summary_moments(n)
            vals.append(math.sqrt(n * math.log(n))
                        * m.cov_range_quartile_spread)
        assert all(0 < v < 1.0 for v in vals)

    def test_quartile_spread_constant_decomposition(self):
        # the limiting spread constant decomposes exactly over the
        # published variance and covariance constants
        assert 2 * (1.8568 - 0.6189) == 2.4758


class TestCache:
    def test_roundtrip_identical(self):
        a = summary_moments(13)
        b = summary_moments(13)  # served from disk
        assert a.means == b.means
        assert a.cov == b.cov

    def test_corrupt_cache_recomputed(self, isolated_moment_cache):
        a = summary_moments(17)
        path = order_stats._cache_path(17, 1e-8)
        assert path.is_file()
        path.write_text("{not json")
        b = summary_moments(17)
        assert a.cov == b.cov

    def test_cache_records_metadata(self, isolated_moment_cache):
        summary_moments(21)
        payload = json.loads(order_stats._cache_path(21, 1e-8).read_text())
        assert payload["version"] == 1
        assert payload["n"] == 21
        assert payload["method"] == "quadrature"

    def test_clear_cache(self, isolated_moment_cache):
        summary_moments(13)
        assert order_stats.clear_cache() > 0


class TestMcOracle:
    def test_deterministic(self):
        a = mc_oracle(5, reps=50_000, seed=3)
        b = mc_oracle(5, reps=50_000, seed=3)
        assert a.means == b.means
        assert a.cov == b.cov

    def test_seed_changes_result(self):
        a = mc_oracle(5, reps=50_000, seed=3)
        b = mc_oracle(5, reps=50_000, seed=4)
        assert a.means != b.means

    def test_median_mean_near_zero(self):
        mc = mc_oracle(9, reps=200_000, seed=5)
        assert abs(mc.mean(5)) < 4 * mc.mean_se[5]

    def test_reports_standard_errors(self):
        mc = mc_oracle(5, reps=50_000, seed=3)
        assert mc.method == "monte_carlo"
        assert mc.precision > 0
        assert all(se > 0 for se in mc.mean_se.values())
