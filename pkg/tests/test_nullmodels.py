import math

import numpy as np
import pytest
from scipy import stats

from edgeoverlap import DomainError
from edgeoverlap.nullmodels import (Approach, NullSpec, Variant,
                                    directed_moments,
                                    expected_min_truncated_poisson, moments,
                                    second_order_mean, unweighted_moments,
                                    weighted_moments,
                                    zero_truncated_poisson_variance)
from edgeoverlap.nullmodels import _poisson_tail

A1, A2 = Approach.TAYLOR, Approach.FIXED_DENOMINATOR


def spec(variant, approach, n, p):
    return NullSpec(variant=variant, approach=approach, n=n, p=p)


GRID = [(n, p) for n in (200, 500, 1000, 2000, 5000)
        for p in (0.011, 0.02, 0.05, 0.1, 0.2, 0.3, 0.5, 0.7, 0.85, 0.95)]


class TestUnweighted:
    def test_mean_half_p(self):
        m = unweighted_moments(spec(Variant.UNWEIGHTED, A1, 1000, 0.5))
        assert m.mean == pytest.approx(1 / 3, abs=1e-15)

    def test_mean_vanishes_with_p(self):
        m = unweighted_moments(spec(Variant.UNWEIGHTED, A1, 10**9, 1e-8))
        assert 0 < m.mean < 1e-7

    def test_approach1_variance_value(self):
        # term1 = 10/188^2, term2 = 20800/188^4
        m = unweighted_moments(spec(Variant.UNWEIGHTED, A1, 1000, 0.1))
        expected = 10 / 188**2 + 20800 / 188**4
        assert m.variance == pytest.approx(expected, rel=1e-14)
        assert m.variance == pytest.approx(2.996e-4, rel=1e-3)

    def test_approach2_variance_is_first_term(self):
        m = unweighted_moments(spec(Variant.UNWEIGHTED, A2, 1000, 0.1))
        assert m.variance == pytest.approx(10 / 188**2, rel=1e-14)

    def test_denominator_domain_error(self):
        # n=3, p=0.35: average degree 1.05 but 2np - 2 - np^2 < 0
        with pytest.raises(DomainError, match="2\\*n\\*p - 2 - n\\*p\\^2"):
            unweighted_moments(spec(Variant.UNWEIGHTED, A1, 3, 0.35))

    def test_mean_monotone_in_p(self):
        means = [unweighted_moments(spec(Variant.UNWEIGHTED, A1, 1000, p)).mean
                 for p in np.linspace(0.01, 0.99, 40)]
        assert all(b > a for a, b in zip(means, means[1:]))
        assert means[-1] < 1.0
        # the limit formula p/(2-p) reaches 1 at p=1
        assert 1.0 / (2 - 1.0) == 1.0


class TestWeighted:
    def test_mean_is_p(self):
        assert weighted_moments(spec(Variant.WEIGHTED, A1, 1000, 0.3)).mean == 0.3
        assert weighted_moments(spec(Variant.WEIGHTED, A2, 1000, 0.3)).mean == 0.3

    def test_approach1_variance(self):
        m = weighted_moments(spec(Variant.WEIGHTED, A1, 1000, 0.3))
        assert m.variance == pytest.approx(1.3e-3, rel=1e-14)

    def test_approach2_variance(self):
        m = weighted_moments(spec(Variant.WEIGHTED, A2, 1000, 0.3))
        assert m.variance == pytest.approx(1000 * 0.09 * 2.3 / (2 * 299**2), rel=1e-14)
        assert m.variance == pytest.approx(1.158e-3, rel=1e-3)

    def test_np_at_most_one_rejected(self):
        with pytest.raises(DomainError, match="average degree"):
            spec(Variant.WEIGHTED, A1, 1000, 0.001)


class TestDirected:
    def test_mean_positive_on_grid(self):
        # the (0, 1) mean guarantee covers the undirected variants only;
        # the directed formula degrades as np nears n, where the hard
        # n-1 truncation removes real Poisson mass
        for n, p in GRID[:20]:
            m = directed_moments(spec(Variant.DIRECTED, A2, n, p))
            assert m.mean > 0
            assert m.variance > 0
            if n * p <= n / 2:
                assert m.mean < 1

    def test_variance_ordering(self):
        for n, p in GRID:
            v1 = directed_moments(spec(Variant.DIRECTED, A1, n, p)).variance
            v2 = directed_moments(spec(Variant.DIRECTED, A2, n, p)).variance
            assert v1 >= v2

    def test_mean_lower_bound_from_capped_min(self):
        # E[min] <= n*p forces mean >= np^2/(np - 0.5)
        for n, p in GRID:
            m = directed_moments(spec(Variant.DIRECTED, A2, n, p))
            assert m.mean >= n * p * p / (n * p - 0.5) - 1e-12

    def test_stable_at_large_average_degree(self):
        for n, p in ((10_000, 0.2), (10_000, 0.1), (4000, 0.5), (2000, 0.95)):
            m1 = directed_moments(spec(Variant.DIRECTED, A1, n, p))
            m2 = directed_moments(spec(Variant.DIRECTED, A2, n, p))
            for value in (m1.mean, m1.variance, m2.mean, m2.variance):
                assert math.isfinite(value)
                assert value > 0


class TestExpectedMin:
    def test_vanishes_with_rate(self):
        assert expected_min_truncated_poisson(100, 1e-5) < 1e-5

    def test_bounded_by_rate(self):
        for n, p in GRID:
            assert expected_min_truncated_poisson(n, p) <= n * p

    def test_matches_scipy_tail_construction(self):
        # independent route: survival functions from scipy.stats.poisson
        for n, p in ((50, 0.1), (300, 0.05), (1000, 0.2), (500, 0.9)):
            mu = n * p
            k = np.arange(1, n)
            tails = stats.poisson.sf(k - 1, mu) - stats.poisson.sf(n - 1, mu)
            expected = float(np.sum(tails**2))
            got = expected_min_truncated_poisson(n, p)
            assert got == pytest.approx(expected, rel=1e-10, abs=1e-300)

    def test_log_space_branch_matches_scipy(self):
        n, p = 3000, 0.4  # rate 1200 forces the log-space path
        mu = n * p
        k = np.arange(1, n)
        tails = stats.poisson.sf(k - 1, mu) - stats.poisson.sf(n - 1, mu)
        expected = float(np.sum(tails**2))
        got = expected_min_truncated_poisson(n, p)
        assert got == pytest.approx(expected, rel=1e-9)

    def test_truncation_cap_consistency(self):
        n, p = 2000, 0.05  # 10*np = 1000 < n-1
        full = expected_min_truncated_poisson(n, p)
        capped = expected_min_truncated_poisson(n, p, cap=int(10 * n * p))
        assert capped == pytest.approx(full, rel=1e-12)

    def test_monte_carlo_light(self):
        rng = np.random.default_rng(21)
        n, p = 400, 0.06
        x = np.minimum(rng.poisson(n * p, 200_000), n - 1)
        y = np.minimum(rng.poisson(n * p, 200_000), n - 1)
        mn = np.minimum(x, y)
        se = mn.std() / math.sqrt(len(mn))
        assert abs(expected_min_truncated_poisson(n, p) - mn.mean()) <= 3 * se

    def test_tail_array_is_survival(self):
        t = _poisson_tail(3.0, 40)
        assert t[0] == pytest.approx(1.0, abs=1e-12)
        assert (np.diff(t) <= 1e-15).all()


class TestZeroTruncatedVariance:
    def test_matches_direct_formula_at_moderate_rate(self):
        for rate in (0.5, 2.0, 5.0, 20.0):
            e = math.exp(rate)
            direct = rate * e / (e - 1) * (1 - rate / (e - 1))
            assert zero_truncated_poisson_variance(rate) == pytest.approx(direct, rel=1e-12)

    def test_no_overflow_at_huge_rate(self):
        v = zero_truncated_poisson_variance(2500.0)
        assert v == pytest.approx(2500.0, rel=1e-9)


class TestCrossApproach:
    def test_means_are_identical_on_grid(self):
        for variant in Variant:
            for n, p in GRID:
                m1 = moments(spec(variant, A1, n, p)).mean
                m2 = moments(spec(variant, A2, n, p)).mean
                assert m1 == m2

    def test_variance_ordering_unweighted(self):
        for n, p in GRID:
            try:
                v1 = unweighted_moments(spec(Variant.UNWEIGHTED, A1, n, p)).variance
                v2 = unweighted_moments(spec(Variant.UNWEIGHTED, A2, n, p)).variance
            except DomainError:
                continue
            assert v1 >= v2

    def test_variant_mismatch_rejected(self):
        with pytest.raises(DomainError, match="variant"):
            unweighted_moments(spec(Variant.WEIGHTED, A1, 1000, 0.1))


class TestSecondOrderMean:
    def test_unweighted_value(self):
        got = second_order_mean(spec(Variant.UNWEIGHTED, A1, 1000, 0.1))
        assert got == pytest.approx(0.1 / 1.9 + 2080 / 188**3, rel=1e-14)
        assert got == pytest.approx(0.052945, abs=5e-7)

    def test_weighted_value(self):
        got = second_order_mean(spec(Variant.WEIGHTED, A1, 1000, 0.3))
        assert got == pytest.approx(0.3 + 1e6 * 0.027 / 299**3, rel=1e-14)
        assert got == pytest.approx(0.301010, abs=5e-7)

    def test_correction_shrinks_like_one_over_n(self):
        for variant in Variant:
            p = 0.2
            small = second_order_mean(spec(variant, A1, 1000, p))
            large = second_order_mean(spec(variant, A1, 8000, p))
            base = moments(spec(variant, A1, 1000, p)).mean
            base_large = moments(spec(variant, A1, 8000, p)).mean
            assert abs(large - base_large) < abs(small - base) / 4

    def test_directed_correction_positive(self):
        s = spec(Variant.DIRECTED, A1, 1000, 0.05)
        assert second_order_mean(s) > directed_moments(s).mean


class TestCovarianceHook:
    def test_unweighted_covariance_term(self):
        base = unweighted_moments(spec(Variant.UNWEIGHTED, A1, 1000, 0.1))
        shifted = unweighted_moments(spec(Variant.UNWEIGHTED, A1, 1000, 0.1),
                                     covariance=0.5)
        assert shifted.variance == pytest.approx(
            base.variance - 2 * 10 * 0.5 / 188**3, rel=1e-12)

    def test_positive_covariance_reduces_all_variances(self):
        for variant in Variant:
            base = moments(spec(variant, A1, 1000, 0.2))
            shifted = moments(spec(variant, A1, 1000, 0.2), covariance=1.0)
            assert shifted.variance < base.variance

    def test_approach2_ignores_covariance(self):
        base = moments(spec(Variant.UNWEIGHTED, A2, 1000, 0.2))
        shifted = moments(spec(Variant.UNWEIGHTED, A2, 1000, 0.2), covariance=9.0)
        assert base.variance == shifted.variance


class TestSpecValidation:
    @pytest.mark.parametrize("n,p", [(2, 0.9), (1000, 0.0), (1000, 1.0),
                                     (1000, -0.1), (1000, 0.0005)])
    def test_invalid_specs(self, n, p):
        with pytest.raises(DomainError):
            spec(Variant.UNWEIGHTED, A1, n, p)
