import numpy as np
import pytest

from pvmi import (
    DEFAULT_K_GRID,
    InsufficientDataError,
    complete_series,
    fit_sampler,
    mean_power,
    neighbors,
    sample_power,
    select_k,
)
from pvmi.imputation import _neighbor_matrix
from tests.conftest import make_series


def _series_with_gap(irr, power, gap):
    p = np.asarray(power, dtype=float).copy()
    p[list(gap)] = np.nan
    return make_series(p, irr)


def test_fit_uses_observed_pairs_only():
    irr = np.array([0.1, 0.2, 0.3, 0.4, 0.5])
    s = _series_with_gap(irr, [1, 2, 3, 4, 5], gap=[1, 3])
    sampler = fit_sampler(s, k=2)
    assert sampler.n_pairs == 3
    # the stored pairs are exactly the observed ones, sorted by irradiance
    assert sampler.irradiance.tolist() == [0.1, 0.3, 0.5]
    assert sampler.power.tolist() == [1.0, 3.0, 5.0]


def test_fit_requires_two_pairs():
    s = _series_with_gap(np.ones(3) * 0.5, [1, 2, 3], gap=[0, 2])
    with pytest.raises(InsufficientDataError):
        fit_sampler(s)


def test_k_clamped_to_pair_count():
    s = make_series([1.0, 2.0, 3.0], [0.1, 0.2, 0.3])
    assert fit_sampler(s, k=10).k == 3
    with pytest.raises(ValueError):
        fit_sampler(s, k=0)


def test_neighbors_by_irradiance_distance():
    s = make_series([10.0, 20.0, 30.0, 40.0, 50.0], [0.0, 1.0, 2.0, 3.0, 10.0])
    sampler = fit_sampler(s, k=2)
    idx = neighbors(sampler, 2.1)
    assert sampler.irradiance[idx].tolist() == [2.0, 3.0]
    idx = neighbors(sampler, 9.0)
    assert sorted(sampler.power[idx].tolist()) == [40.0, 50.0]


def test_neighbor_ties_prefer_smaller_index():
    # irradiances 1 and 3 are both at distance 1 from the query 2
    s = make_series([100.0, 200.0], [1.0, 3.0])
    sampler = fit_sampler(s, k=1)
    idx = neighbors(sampler, 2.0)
    assert sampler.power[idx].tolist() == [100.0]


def test_neighbors_sorted_ascending():
    rng = np.random.default_rng(3)
    s = make_series(rng.uniform(0, 5, 40), rng.uniform(0, 1, 40))
    sampler = fit_sampler(s, k=7)
    idx = neighbors(sampler, 0.5)
    assert np.all(np.diff(idx) > 0)


def test_sample_power_uniform_over_neighbors(rng):
    s = make_series([1.0, 2.0, 3.0, 50.0], [0.10, 0.11, 0.12, 0.9])
    sampler = fit_sampler(s, k=3)
    draws = np.array([sample_power(sampler, 0.11, rng) for _ in range(3000)])
    assert set(np.unique(draws)) == {1.0, 2.0, 3.0}
    freqs = [np.mean(draws == v) for v in (1.0, 2.0, 3.0)]
    assert all(abs(f - 1 / 3) < 0.03 for f in freqs)


def test_mean_power_is_neighbor_average():
    s = make_series([1.0, 2.0, 3.0, 50.0], [0.10, 0.11, 0.12, 0.9])
    sampler = fit_sampler(s, k=3)
    assert mean_power(sampler, 0.11) == pytest.approx(2.0)


def _loo_mse_oracle(irr, power, grid):
    """Brute-force leave-one-out MSE of the k-neighbour mean, per k."""
    irr = np.asarray(irr, dtype=float)
    power = np.asarray(power, dtype=float)
    n = irr.size
    order_all = {}
    for i in range(n):
        d = np.abs(irr - irr[i])
        d[i] = np.inf
        order_all[i] = np.argsort(d, kind="stable")
    out = {}
    for k in grid:
        if not 1 <= k <= n - 1:
            continue
        errs = [
            (power[order_all[i][:k]].mean() - power[i]) ** 2 for i in range(n)
        ]
        out[k] = float(np.mean(errs))
    return out


def test_select_k_matches_brute_force_oracle(rng):
    for trial in range(5):
        n = int(rng.integers(10, 80))
        irr = rng.uniform(0, 1, n)
        power = 5 * irr + rng.normal(0, 0.4, n)
        grid = [g for g in DEFAULT_K_GRID if g <= n - 1]
        oracle = _loo_mse_oracle(irr, power, grid)
        best = min(oracle, key=lambda k: (oracle[k], grid.index(k)))
        assert select_k(irr, power, grid) == best


def test_select_k_noiseless_picks_small():
    rng = np.random.default_rng(0)
    irr = rng.uniform(0, 1, 400)
    k = select_k(irr, irr.copy(), DEFAULT_K_GRID)
    assert k <= max(1, int(0.05 * 400))


def test_select_k_pure_noise_picks_large():
    rng = np.random.default_rng(1)
    irr = rng.uniform(0, 1, 400)
    power = np.abs(rng.normal(2.0, 1.0, 400))  # independent of irradiance
    assert select_k(irr, power, DEFAULT_K_GRID) >= 34


def test_fit_sampler_auto_k_on_tiny_data():
    s = make_series([1.0, 2.0], [0.1, 0.2])
    assert fit_sampler(s).k == 1  # too small to cross-validate


def test_complete_single_mode_uses_neighbor_mean():
    irr = np.array([0.1, 0.2, 0.3, 0.4])
    s = _series_with_gap(irr, [1.0, 2.0, 3.0, 4.0], gap=[2])
    sampler = fit_sampler(s, k=3)
    done = complete_series(s, sampler, "single")
    assert done.n_missing() == 0
    # neighbours of irradiance 0.3 among observed pairs {0.1, 0.2, 0.4}
    assert done.power[2] == pytest.approx((1.0 + 2.0 + 4.0) / 3)
    assert np.array_equal(done.power[[0, 1, 3]], s.power[[0, 1, 3]])


def test_complete_single_is_deterministic():
    rng = np.random.default_rng(5)
    p = rng.uniform(0, 5, 300)
    p[40:80] = np.nan
    s = make_series(p, rng.uniform(0, 1, 300))
    sampler = fit_sampler(s, k=9)
    a = complete_series(s, sampler, "single")
    b = complete_series(s, sampler, "single")
    assert np.array_equal(a.power, b.power)


def test_complete_stochastic_draws_neighbor_values():
    rng = np.random.default_rng(6)
    p = rng.uniform(0, 5, 200)
    missing = slice(50, 90)
    p[missing] = np.nan
    s = make_series(p, rng.uniform(0, 1, 200))
    sampler = fit_sampler(s, k=5)
    done = complete_series(s, sampler, "stochastic", rng=np.random.default_rng(1))
    assert done.n_missing() == 0
    observed_values = set(s.power[~s.mask].tolist())
    assert all(v in observed_values for v in done.power[missing])
    # same seed reproduces, different seed varies
    again = complete_series(s, sampler, "stochastic", rng=np.random.default_rng(1))
    other = complete_series(s, sampler, "stochastic", rng=np.random.default_rng(2))
    assert np.array_equal(done.power, again.power)
    assert not np.array_equal(done.power, other.power)


def test_complete_stochastic_requires_rng():
    s = _series_with_gap([0.1, 0.2, 0.3], [1, 2, 3], gap=[1])
    sampler = fit_sampler(s, k=1)
    with pytest.raises(ValueError, match="rng"):
        complete_series(s, sampler, "stochastic")
    with pytest.raises(ValueError, match="mode"):
        complete_series(s, sampler, "typo")


def test_complete_no_missing_is_identity():
    s = make_series([1.0, 2.0, 3.0], [0.1, 0.2, 0.3])
    sampler = fit_sampler(s, k=2)
    done = complete_series(s, sampler, "single")
    assert np.array_equal(done.power, s.power)


def test_chunked_neighbor_matrix_matches_single_queries(rng):
    s = make_series(rng.uniform(0, 5, 600), rng.uniform(0, 1, 600))
    sampler = fit_sampler(s, k=11)
    queries = rng.uniform(0, 1, 517)  # crosses the internal chunk boundary
    mat = _neighbor_matrix(sampler, queries)
    for j in (0, 255, 256, 300, 516):
        assert np.array_equal(mat[j], neighbors(sampler, queries[j]))
