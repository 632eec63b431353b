"""Normal/gamma quantile kernels and the prediction intervals built on them."""

import math

import numpy as np
import pytest
from scipy import integrate, optimize, special, stats

from pvmi import (
    PredictionInterval,
    gamma_interval,
    gamma_quantile,
    gamma_shape_scale,
    inverse_normal_cdf,
    normal_cdf,
    normal_interval,
    regularized_gamma_p,
)

PROBS = [1e-4, 1e-3, 0.01, 0.025, 0.1, 0.31, 0.5, 0.69, 0.9, 0.975, 0.99, 1 - 1e-3, 1 - 1e-4]


# ---------------------------------------------------------- normal quantile


def test_inverse_normal_cdf_against_quadrature_oracle():
    # oracle: root of (integral of the density) - p, no erf involved
    def cdf_by_quadrature(x):
        val, _ = integrate.quad(
            lambda t: math.exp(-0.5 * t * t) / math.sqrt(2 * math.pi), -np.inf, x
        )
        return val

    for p in PROBS:
        want = optimize.brentq(lambda x: cdf_by_quadrature(x) - p, -10.0, 10.0, xtol=1e-12)
        assert abs(inverse_normal_cdf(p) - want) <= 1e-6, f"p={p}"


def test_inverse_normal_cdf_symmetry_is_exact():
    # the upper half is evaluated by reflecting the lower half, so quantiles
    # of q and of the computed complement 1 - q are exact negatives
    for q in [0.9999, 0.99, 0.8, 0.51]:
        assert inverse_normal_cdf(q) == -inverse_normal_cdf(1.0 - q)
    for p in [0.0625, 0.25]:  # dyadic: 1 - p is exact in both directions
        assert inverse_normal_cdf(1.0 - p) == -inverse_normal_cdf(p)
    assert inverse_normal_cdf(0.5) == 0.0


def test_inverse_normal_cdf_pinned_975_quantile():
    assert inverse_normal_cdf(0.975) == pytest.approx(1.959963984540054, abs=1e-9)


def test_inverse_normal_cdf_round_trips_through_cdf():
    for p in PROBS:
        assert normal_cdf(inverse_normal_cdf(p)) == pytest.approx(p, abs=1e-12)


def test_inverse_normal_cdf_rejects_boundary_probabilities():
    for p in (0.0, 1.0, -0.1, 1.1):
        with pytest.raises(ValueError, match="strictly inside"):
            inverse_normal_cdf(p)


def test_normal_cdf_values():
    assert normal_cdf(0.0) == 0.5
    assert normal_cdf(1.96) == pytest.approx(0.9750021048517795, abs=1e-15)
    xs = np.linspace(-6, 6, 200)
    vals = [normal_cdf(float(x)) for x in xs]
    assert all(a < b for a, b in zip(vals, vals[1:]))


# ------------------------------------------------------------ gamma kernel


def test_regularized_gamma_p_matches_scipy():
    for a in (0.3, 1.0, 2.5, 57.0, 400.0):
        for x in (0.0, 1e-6, 0.5 * a, a, a + 1.0, 3.0 * a, 10.0 * a):
            assert regularized_gamma_p(a, x) == pytest.approx(
                float(special.gammainc(a, x)), rel=1e-12, abs=1e-12
            )


def test_regularized_gamma_p_rejects_bad_arguments():
    with pytest.raises(ValueError, match="shape"):
        regularized_gamma_p(0.0, 1.0)
    with pytest.raises(ValueError, match="non-negative"):
        regularized_gamma_p(1.0, -0.5)


def test_gamma_quantile_round_trips_through_cdf():
    for shape in (0.5, 1.0, 3.7, 57.0):
        for scale in (1.0, 0.2, 11.0):
            for p in (1e-4, 0.025, 0.5, 0.975, 1 - 1e-4):
                x = gamma_quantile(p, shape, scale)
                assert regularized_gamma_p(shape, x / scale) == pytest.approx(
                    p, abs=1e-7
                )


def test_gamma_quantile_exponential_median_is_log_two():
    assert gamma_quantile(0.5, 1.0, 1.0) == pytest.approx(math.log(2.0), abs=1e-7)


def test_gamma_quantile_matches_scipy_ppf():
    for shape in (0.8, 2.0, 16.0):
        for p in (0.01, 0.25, 0.5, 0.9, 0.999):
            assert gamma_quantile(p, shape, 2.5) == pytest.approx(
                float(stats.gamma.ppf(p, shape, scale=2.5)), rel=1e-6, abs=1e-8
            )


def test_gamma_quantile_scale_is_multiplicative():
    base = gamma_quantile(0.9, 4.0, 1.0)
    assert gamma_quantile(0.9, 4.0, 7.0) == pytest.approx(7.0 * base, rel=1e-6)


def test_gamma_quantile_monotone_in_p():
    qs = [gamma_quantile(p, 3.0, 1.5) for p in np.linspace(0.01, 0.99, 25)]
    assert all(a < b for a, b in zip(qs, qs[1:]))


def test_gamma_quantile_rejects_bad_arguments():
    with pytest.raises(ValueError, match="strictly inside"):
        gamma_quantile(0.0, 1.0, 1.0)
    with pytest.raises(ValueError, match="positive"):
        gamma_quantile(0.5, -1.0, 1.0)
    with pytest.raises(ValueError, match="positive"):
        gamma_quantile(0.5, 1.0, 0.0)


def test_gamma_shape_scale_moment_matching():
    shape, scale = gamma_shape_scale(2.0, 0.5)
    assert (shape, scale) == (8.0, 0.25)
    with pytest.raises(ValueError, match="positive"):
        gamma_shape_scale(0.0, 1.0)
    with pytest.raises(ValueError, match="positive"):
        gamma_shape_scale(1.0, 0.0)


# ------------------------------------------------------------- intervals


def test_normal_interval_hand_example():
    band = normal_interval(mean=1.0, variance=4.0, alpha=0.05)
    z = 1.959963984540054
    assert band.lower == pytest.approx(1.0 - 2.0 * z, abs=1e-9)
    assert band.upper == pytest.approx(1.0 + 2.0 * z, abs=1e-9)


def test_normal_interval_zero_variance_is_a_point():
    band = normal_interval(mean=0.7, variance=0.0, alpha=0.05)
    assert (band.lower, band.upper) == (0.7, 0.7)
    assert band.width() == 0.0


def test_normal_interval_clipping_truncates_at_zero():
    raw = normal_interval(mean=0.1, variance=1.0, alpha=0.05)
    clipped = normal_interval(mean=0.1, variance=1.0, alpha=0.05, clip_at_zero=True)
    assert raw.lower < 0.0
    assert clipped.lower == 0.0
    assert clipped.upper == raw.upper


def test_normal_interval_argument_validation():
    with pytest.raises(ValueError, match="alpha"):
        normal_interval(0.0, 1.0, alpha=0.0)
    with pytest.raises(ValueError, match="alpha"):
        normal_interval(0.0, 1.0, alpha=1.0)
    with pytest.raises(ValueError, match="variance"):
        normal_interval(0.0, -1e-9, alpha=0.05)


def test_gamma_interval_matches_its_quantiles():
    band = gamma_interval(mean=2.0, variance=0.5, alpha=0.1)
    shape, scale = gamma_shape_scale(2.0, 0.5)
    assert band.lower == gamma_quantile(0.05, shape, scale)
    assert band.upper == gamma_quantile(0.95, shape, scale)
    assert 0.0 < band.lower < 2.0 < band.upper


def test_gamma_interval_degenerate_cases():
    assert gamma_interval(0.0, 1.0, alpha=0.05) == PredictionInterval(0.0, 0.0)
    assert gamma_interval(-3.0, 1.0, alpha=0.05) == PredictionInterval(0.0, 0.0)
    assert gamma_interval(1.5, 0.0, alpha=0.05) == PredictionInterval(1.5, 1.5)
    with pytest.raises(ValueError, match="variance"):
        gamma_interval(1.0, -0.5, alpha=0.05)


def test_gamma_interval_monte_carlo_coverage(rng):
    mean, var, alpha = 2.0, 0.5, 0.05
    shape, scale = gamma_shape_scale(mean, var)
    band = gamma_interval(mean, var, alpha)
    draws = rng.gamma(shape, scale, size=200_000)
    inside = np.mean((draws >= band.lower) & (draws <= band.upper))
    assert inside == pytest.approx(1 - alpha, abs=0.005)
    assert np.mean(draws < band.lower) == pytest.approx(alpha / 2, abs=0.004)
    assert np.mean(draws > band.upper) == pytest.approx(alpha / 2, abs=0.004)


def test_interval_contains_is_closed_on_both_ends():
    band = PredictionInterval(1.0, 2.0)
    assert band.contains(1.0) and band.contains(2.0) and band.contains(1.5)
    assert not band.contains(0.999999) and not band.contains(2.000001)
    assert band.width() == 1.0


def test_interval_rejects_inverted_or_nan_bounds():
    with pytest.raises(ValueError, match="exceeds"):
        PredictionInterval(2.0, 1.0)
    with pytest.raises(ValueError, match="NaN"):
        PredictionInterval(float("nan"), 1.0)
