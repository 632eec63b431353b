"""Nearest-neighbour estimate of the power distribution given irradiance.

Missing power values are reconstructed from the irradiance channel, which is
always observed. Around a query irradiance the k observed pairs with the
closest irradiance are collected; the empirical distribution that puts mass
1/k on each neighbour's power is the estimate of the conditional law of
power given irradiance. Drawing from it gives a stochastic imputation,
averaging it gives the usual single (point) imputation.

The neighbourhood size k can be fixed or chosen automatically by
leave-one-out mean squared error of the neighbourhood mean over a small
geometric grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import InsufficientDataError
from .series import HourlySeries

DEFAULT_K_GRID = (1, 2, 3, 5, 8, 13, 21, 34, 55, 89)
_CHUNK = 256


@dataclass(frozen=True)
class ConditionalSampler:
    """Observed (irradiance, power) pairs sorted by irradiance, plus k.

    ``irradiance`` and ``power`` are aligned arrays in ascending irradiance
    order; neighbour indices returned by :func:`neighbors` refer to positions
    in these arrays.
    """

    irradiance: np.ndarray
    power: np.ndarray
    k: int

    def __post_init__(self) -> None:
        irr = np.asarray(self.irradiance, dtype=np.float64).copy()
        pw = np.asarray(self.power, dtype=np.float64).copy()
        if irr.shape != pw.shape or irr.ndim != 1:
            raise ValueError("irradiance and power must be aligned 1-D arrays")
        if np.any(np.diff(irr) < 0):
            raise ValueError("pairs must be sorted by irradiance")
        if not 1 <= self.k <= irr.size:
            raise ValueError(f"k must lie in [1, {irr.size}], got {self.k}")
        irr.setflags(write=False)
        pw.setflags(write=False)
        object.__setattr__(self, "irradiance", irr)
        object.__setattr__(self, "power", pw)

    @property
    def n_pairs(self) -> int:
        return int(self.irradiance.size)


def fit_sampler(train: HourlySeries, k: int | None = None) -> ConditionalSampler:
    """Build a sampler from the observed hours of ``train``.

    Parameters
    ----------
    train : HourlySeries
        Series whose mask==0 hours supply the (irradiance, power) pairs.
    k : int or None
        Neighbourhood size. None selects k by leave-one-out MSE over
        ``DEFAULT_K_GRID`` (restricted to valid sizes); an explicit k larger
        than n-1 is clamped.
    """
    obs = ~train.mask
    irr = train.irradiance[obs]
    pw = train.power[obs]
    n = irr.size
    if n < 2:
        raise InsufficientDataError(f"need at least 2 observed pairs, got {n}")
    order = np.argsort(irr, kind="stable")
    irr, pw = irr[order], pw[order]
    if k is None:
        if n < 3:
            k = 1
        else:
            grid = [g for g in DEFAULT_K_GRID if g <= n - 1]
            k = select_k(irr, pw, grid)
    else:
        k = int(min(k, n))
        if k < 1:
            raise ValueError("k must be a positive count")
    return ConditionalSampler(irr, pw, k)


def neighbors(sampler: ConditionalSampler, irradiance: float) -> np.ndarray:
    """Indices of the k pairs with smallest ``|irradiance_i - irradiance|``.

    Distance ties are broken in favour of the smaller index. The result is
    returned in ascending index order.
    """
    return _neighbor_matrix(sampler, np.array([float(irradiance)]))[0]


def sample_power(sampler: ConditionalSampler, irradiance: float, rng: np.random.Generator) -> float:
    """One draw from the estimated conditional distribution: each of the k
    neighbours' powers has probability 1/k."""
    idx = neighbors(sampler, irradiance)
    return float(sampler.power[idx[rng.integers(0, idx.size)]])


def mean_power(sampler: ConditionalSampler, irradiance: float) -> float:
    """Mean of the estimated conditional distribution (point imputation)."""
    return float(sampler.power[neighbors(sampler, irradiance)].mean())


def select_k(irradiance: np.ndarray, power: np.ndarray, grid) -> int:
    """Pick k from ``grid`` by leave-one-out MSE of the neighbourhood mean.

    Each pair is predicted by the mean power of its k nearest irradiance
    neighbours among the remaining pairs; the grid value with the smallest
    mean squared error wins, earlier grid entries winning ties.
    """
    irr = np.asarray(irradiance, dtype=float)
    pw = np.asarray(power, dtype=float)
    n = irr.size
    grid = [int(g) for g in grid]
    if n < 3:
        raise ValueError("need at least 3 pairs for leave-one-out selection")
    if not grid:
        raise ValueError("candidate grid must not be empty")
    if any(g < 1 or g > n - 1 for g in grid):
        raise ValueError(f"grid values must lie in [1, {n - 1}]")

    kmax = max(grid)
    sse = {g: 0.0 for g in grid}
    for lo in range(0, n, _CHUNK):
        hi = min(lo + _CHUNK, n)
        d = np.abs(irr[None, :] - irr[lo:hi, None])
        d[np.arange(hi - lo), np.arange(lo, hi)] = np.inf  # hold each pair out
        order = np.argsort(d, axis=1, kind="stable")[:, :kmax]
        csum = np.cumsum(pw[order], axis=1)
        for g in grid:
            pred = csum[:, g - 1] / g
            sse[g] += float(np.sum((pred - pw[lo:hi]) ** 2))

    best = grid[0]
    for g in grid[1:]:
        if sse[g] < sse[best]:
            best = g
    return best


def complete_series(
    series: HourlySeries,
    sampler: ConditionalSampler,
    mode: str,
    rng: np.random.Generator | None = None,
) -> HourlySeries:
    """Fill every missing hour of ``series`` using the sampler.

    ``mode="single"`` writes the neighbourhood mean, ``mode="stochastic"``
    writes an independent draw per missing hour (``rng`` required). The
    result has no missing values; observed hours are untouched.
    """
    if mode not in ("single", "stochastic"):
        raise ValueError(f"mode must be 'single' or 'stochastic', got {mode!r}")
    missing = np.flatnonzero(series.mask)
    power = series.power.copy()
    if missing.size:
        nm = _neighbor_matrix(sampler, series.irradiance[missing])
        if mode == "single":
            power[missing] = sampler.power[nm].mean(axis=1)
        else:
            if rng is None:
                raise ValueError("stochastic completion requires an rng")
            cols = rng.integers(0, sampler.k, size=missing.size)
            power[missing] = sampler.power[nm[np.arange(missing.size), cols]]
    return HourlySeries(
        start=series.start,
        power=power,
        irradiance=series.irradiance,
        mask=np.zeros(len(series), dtype=bool),
    )


def _neighbor_matrix(sampler: ConditionalSampler, queries: np.ndarray) -> np.ndarray:
    """(m, k) neighbour indices for a batch of irradiance queries.

    Row order matches ``queries``; each row is in ascending index order and
    respects the smallest-index tie rule (stable sort on distance).
    """
    irr = sampler.irradiance
    k = sampler.k
    out = np.empty((queries.size, k), dtype=np.int64)
    for lo in range(0, queries.size, _CHUNK):
        hi = min(lo + _CHUNK, queries.size)
        d = np.abs(irr[None, :] - queries[lo:hi, None])
        out[lo:hi] = np.sort(np.argsort(d, axis=1, kind="stable")[:, :k], axis=1)
    return out
