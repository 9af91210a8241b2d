"""Tests for the extremal distributions, samplers and the envelope solver."""
import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from linf_bounds._numerics import DomainError
from linf_bounds.bounded import BoundedInstance
from linf_bounds.distributions import (
    BernoulliWorst,
    DependentBernoulli,
    HeavyTailG,
    ProductH,
    RngStream,
    TwoPoint,
    envelope_F,
    envelope_residual,
    heavy_tail_abs_moment,
    heavy_tail_cdf,
    heavy_tail_survival,
    quantile_heavy_tail_g,
    sample_bernoulli_worst,
    sample_heavy_tail_g,
    sample_product_h,
    solve_envelope_K,
    threshold_T,
)

# scipy.integrate.quad of 1.5 x^0.5 P(|G| > x) over [0, inf), q = 3
G_MOMENT_1_5_Q3 = 1.886521019661184
# brentq on the K equation for (sigma, B, q, p) = (1, 2, 3, 10)
K_FROZEN = 1.1465694810004239
# brentq on x^-3 log(x)^-2 = 1/80
T_HEAVY_Q3_N10 = 3.634976614280448


def dkw_epsilon(n, alpha=0.01):
    return math.sqrt(math.log(2 / alpha) / (2 * n))


class TestRngStream:
    def test_reproducible(self):
        a = RngStream(42, 3).generator().random(5)
        b = RngStream(42, 3).generator().random(5)
        np.testing.assert_array_equal(a, b)

    def test_streams_differ(self):
        a = RngStream(42, 0).generator().random(5)
        b = RngStream(42, 1).generator().random(5)
        assert not np.array_equal(a, b)

    def test_blocks_differ(self):
        s = RngStream(7)
        assert not np.array_equal(s.generator(block=0).random(3), s.generator(block=1).random(3))

    def test_negative_seed_rejected(self):
        with pytest.raises(DomainError):
            RngStream(-1)


class TestTwoPoint:
    def test_mean_zero_variance_tau2(self):
        d = TwoPoint(0.3, 2.0)
        m = d.upper_mass
        mean = d.K * m - d.low_value * (1 - m)
        var = d.K ** 2 * m + d.low_value ** 2 * (1 - m)
        np.testing.assert_allclose(mean, 0.0, atol=1e-16)
        np.testing.assert_allclose(var, d.variance(), rtol=1e-14)

    def test_invalid(self):
        with pytest.raises(DomainError):
            TwoPoint(2.0, 1.0)


class TestBernoulliWorst:
    def test_sample_moments(self):
        sigma, B = 0.4, 1.0
        x = sample_bernoulli_worst(BoundedInstance(1, 4, sigma, B), RngStream(1), 250_000).ravel()
        se_mean = sigma / math.sqrt(x.size)
        assert abs(x.mean()) <= 4 * se_mean
        se_var = math.sqrt(np.var(x ** 2) / x.size)
        assert abs(np.mean(x ** 2) - sigma ** 2) <= 4 * se_var

    def test_values(self):
        x = BernoulliWorst(0.5, 2.0, 3).sample(RngStream(0), 1000)
        assert set(np.unique(x)) <= {-0.125, 2.0}
        assert x.shape == (1000, 3)

    def test_symmetric_when_sigma_equals_B(self):
        x = BernoulliWorst(1.0, 1.0).sample(RngStream(2), 100_000).ravel()
        assert set(np.unique(x)) == {-1.0, 1.0}
        assert abs(np.mean(x > 0) - 0.5) <= 4 * 0.5 / math.sqrt(x.size)


class TestHeavyTail:
    def test_cdf_at_minus_one(self):
        assert heavy_tail_cdf(-1.0, 3.0) == 0.5

    def test_tail_formula(self):
        x = np.array([3.0, 10.0, 1e3])
        np.testing.assert_allclose(heavy_tail_survival(x, 4.0), x ** -4.0 / np.log(x) ** 2, rtol=1e-14)

    def test_quantile_median(self):
        assert quantile_heavy_tail_g(0.5, 3.0) == 1.0

    @given(st.floats(0.5 + 1e-9, 1 - 1e-12), st.floats(2.0, 20.0))
    def test_quantile_round_trip(self, u, q):
        x = quantile_heavy_tail_g(u, q)
        np.testing.assert_allclose(heavy_tail_cdf(x, q), u, atol=1e-10, rtol=0)

    @given(st.floats(1e-12, 0.49), st.floats(2.0, 20.0))
    def test_quantile_symmetry(self, u, q):
        # 1 - u is rounded, which moves the quantile by about eps / (q u)
        np.testing.assert_allclose(quantile_heavy_tail_g(u, q), -quantile_heavy_tail_g(1 - u, q),
                                   rtol=1e-12 + 1e-15 / u)

    def test_q_below_two_rejected(self):
        with pytest.raises(DomainError):
            sample_heavy_tail_g(1.5, RngStream(0), 10)

    def test_moment_frozen(self):
        np.testing.assert_allclose(heavy_tail_abs_moment(1.5, 3.0), G_MOMENT_1_5_Q3, rtol=1e-10)

    @pytest.mark.parametrize("q", [2.0, 3.0, 5.0, 10.0])
    def test_qth_moment(self, q):
        np.testing.assert_allclose(heavy_tail_abs_moment(q, q), 1 + 2 * q, rtol=1e-12)

    @pytest.mark.parametrize("q", [2.0, 3.0, 5.0, 10.0])
    def test_dkw(self, q):
        draws = np.sort(sample_heavy_tail_g(q, RngStream(11, int(q)), 100_000))
        F = heavy_tail_cdf(draws, q)
        k = np.arange(1, draws.size + 1) / draws.size
        d = max(np.max(np.abs(k - F)), np.max(np.abs(k - 1 / draws.size - F)))
        assert d <= dkw_epsilon(draws.size)

    @pytest.mark.parametrize("q", [3.0, 6.0])
    def test_half_moment_mc(self, q):
        g = np.abs(sample_heavy_tail_g(q, RngStream(5), 400_000))
        s = q / 2
        vals = g ** s
        se = vals.std() / math.sqrt(vals.size)
        assert abs(vals.mean() - heavy_tail_abs_moment(s, q)) <= 4 * se

    def test_truncated_moment(self):
        c = 8.0
        g = np.abs(sample_heavy_tail_g(3.0, RngStream(9), 400_000))
        vals = np.where(g <= c, g ** 3, 0.0)
        se = vals.std() / math.sqrt(vals.size)
        assert abs(vals.mean() - heavy_tail_abs_moment(3.0, 3.0, c)) <= 4 * se


class TestProductH:
    @pytest.mark.parametrize("p", [1, 2, 5, 12])
    def test_max_w_moment_enumeration(self, p):
        spec = ProductH(3.0, 0.7, 1.5, p)
        lo, hi, m = spec.tau ** 2 / spec.K, spec.K, spec.tau ** 2 / (spec.K ** 2 + spec.tau ** 2)
        total = 0.0
        for combo in itertools.product((0, 1), repeat=p):
            k = sum(combo)
            total += m ** k * (1 - m) ** (p - k) * (hi if k else lo) ** 3.5
        np.testing.assert_allclose(spec.max_w_moment(3.5), total, rtol=1e-13)

    def test_degenerate_w(self):
        spec = ProductH(3.0, 1.0, 1.0, 1)
        x = sample_product_h(spec, RngStream(3), 10)
        g = sample_heavy_tail_g(3.0, RngStream(3), 10)
        np.testing.assert_allclose(np.abs(x[:, 0]), np.abs(g))

    def test_mean_zero(self):
        x = ProductH(5.0, 0.5, 1.0, 3).sample(RngStream(4), 200_000)
        se = x.std(axis=0) / math.sqrt(x.shape[0])
        assert np.all(np.abs(x.mean(axis=0)) <= 4 * se)

    def test_variance(self):
        spec = ProductH(3.0, 0.5, 1.0, 1)
        np.testing.assert_allclose(spec.variance(), heavy_tail_abs_moment(2.0, 3.0) * 0.25)

    def test_norm_matches_vector(self):
        spec = ProductH(4.0, 0.5, 2.0, 3, truncation=6.0)
        a = np.abs(spec.sample(RngStream(8), 100_000)).max(axis=1)
        b = spec.sample_norm(RngStream(8).child(1), 100_000)
        # two-sample comparison of means
        se = math.sqrt(a.var() / a.size + b.var() / b.size)
        assert abs(a.mean() - b.mean()) <= 4 * se

    def test_envelope_survival_at_zero(self):
        spec = ProductH(3.0, 0.5, 1.0, 2)
        assert spec.envelope_survival(0.0) == 1.0


class TestDependent:
    def test_marginals(self):
        for coupling in ("comonotone", "antithetic"):
            x = DependentBernoulli(0.5, 1.0, 4, coupling).sample(RngStream(1), 100_000)
            np.testing.assert_allclose(x.mean(axis=0), 0.0, atol=4 * 0.5 / math.sqrt(x.shape[0]))

    def test_counterpart(self):
        spec = DependentBernoulli(0.5, 1.0, 4, "comonotone")
        assert spec.independent_counterpart() == BernoulliWorst(0.5, 1.0, 4)


class TestEnvelopeSolver:
    def test_frozen(self):
        np.testing.assert_allclose(solve_envelope_K(1.0, 2.0, 3.0, 10), K_FROZEN, rtol=1e-12)

    def test_unit_root(self):
        """F(1) = 1, so B = (1+2q)^(1/q) sigma/sqrt5 gives K = sigma/sqrt5.

        B >= sigma only allows this at q = 2, where B = sigma.
        """
        q, sigma = 2.0, 0.7
        B = (1 + 2 * q) ** (1 / q) * sigma / math.sqrt(5)
        np.testing.assert_allclose(solve_envelope_K(sigma, B, q, 3), sigma / math.sqrt(5), rtol=1e-12)

    def test_F_at_one(self):
        np.testing.assert_allclose(envelope_F(1.0, 3.0, 7), 1.0, rtol=1e-14)

    def test_no_root(self):
        with pytest.raises(DomainError):
            solve_envelope_K(1.0, 1e12, 2.0, 1)

    @settings(max_examples=60, deadline=None)
    @given(st.floats(0.05, 1.0), st.floats(1.0, 50.0), st.floats(2.2, 20.0), st.integers(1, 1000))
    def test_residual_and_floor(self, sigma, ratio, q, p):
        B = sigma * ratio
        K = solve_envelope_K(sigma, B, q, p)
        assert abs(envelope_residual(K, sigma, B, q, p)) <= 1e-10 * B ** q
        assert K >= B / (1 + 2 * q) ** (1 / q) * (1 - 1e-12)

    def test_F_constant_at_q2_p1(self):
        """q = 2, p = 1 is degenerate: F == 1 and the equation has no unique root."""
        for y in (1.0, 3.0, 1e3):
            np.testing.assert_allclose(envelope_F(y, 2.0, 1), 1.0, rtol=1e-14)

    @given(st.floats(2.2, 20.0), st.integers(1, 1000))
    def test_F_increasing(self, q, p):
        ys = np.geomspace(1.0, 50.0, 50)
        F = [envelope_F(y, q, p) for y in ys]
        assert np.all(np.diff(F) > 0)


class TestThresholdT:
    def test_two_point(self):
        assert threshold_T(TwoPoint(0.1, 1.0), 10) == TwoPoint(0.1, 1.0).low_value
        assert threshold_T(TwoPoint(1.0, 1.0), 10) == 1.0

    def test_bernoulli_limit(self):
        assert threshold_T(BernoulliWorst(0.5, 1.0, 3), 10 ** 6) == 1.0

    def test_heavy_tail_frozen(self):
        np.testing.assert_allclose(threshold_T(HeavyTailG(3.0), 10), T_HEAVY_Q3_N10, rtol=1e-13)

    def test_product_h_survival(self):
        spec = ProductH(3.0, 0.5, 1.0, 2)
        t = threshold_T(spec, 10)
        np.testing.assert_allclose(spec.envelope_survival(t), 1 / 80, rtol=1e-9)
