"""Sliding-window supervised layout for one-hour-ahead forecasting.

The input for hour ``t`` interleaves the last 24 hours of power and
irradiance, most recent first:

    x_t = (P_t, I_t, P_{t-1}, I_{t-1}, ..., P_{t-23}, I_{t-23})   in R^48

and the target is the next hour's power ``y_t = P_{t+1}``. With 0-based
hour indices the valid positions are ``t = 23 .. T-2``, giving ``N = T - 24``
rows. The layout requires a fully observed series, so any missing hours must
be imputed first.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import IncompleteDataError, InsufficientDataError
from .series import HourlySeries

WINDOW_HOURS = 24
N_FEATURES = 2 * WINDOW_HOURS


@dataclass(frozen=True)
class SupervisedDataset:
    """Aligned (inputs, targets, time_index) arrays.

    ``inputs`` has shape (N, 48); row ``i`` belongs to hour
    ``time_index[i]`` and predicts the power at ``time_index[i] + 1``.
    """

    inputs: np.ndarray
    targets: np.ndarray
    time_index: np.ndarray

    def __post_init__(self) -> None:
        if self.inputs.ndim != 2 or self.inputs.shape[1] != N_FEATURES:
            raise ValueError(f"inputs must have shape (N, {N_FEATURES})")
        n = self.inputs.shape[0]
        if self.targets.shape != (n,) or self.time_index.shape != (n,):
            raise ValueError("targets and time_index must align with inputs")
        for arr in (self.inputs, self.targets, self.time_index):
            arr.setflags(write=False)

    def __len__(self) -> int:
        return int(self.inputs.shape[0])


def build_training(series: HourlySeries) -> SupervisedDataset:
    """All sliding-window rows of a fully observed series.

    Raises
    ------
    IncompleteDataError
        If the series still contains missing power values.
    InsufficientDataError
        If fewer than 25 hours are available (no complete window + target).
    """
    if series.mask.any():
        raise IncompleteDataError(
            f"{series.n_missing()} missing hours: impute before building windows"
        )
    t_total = len(series)
    n = t_total - WINDOW_HOURS
    if n < 1:
        raise InsufficientDataError(
            f"need at least {WINDOW_HOURS + 1} hours, got {t_total}"
        )
    x = np.empty((n, N_FEATURES))
    for lag in range(WINDOW_HOURS):
        start = WINDOW_HOURS - 1 - lag
        x[:, 2 * lag] = series.power[start : start + n]
        x[:, 2 * lag + 1] = series.irradiance[start : start + n]
    y = series.power[WINDOW_HOURS:].copy()
    idx = np.arange(WINDOW_HOURS - 1, t_total - 1)
    return SupervisedDataset(inputs=x, targets=y, time_index=idx)


def build_test_input(series: HourlySeries, t: int) -> np.ndarray:
    """The 48-entry input vector for hour ``t`` (0-based) of a fully
    observed series. Valid for ``23 <= t <= T-2``."""
    if series.mask.any():
        raise IncompleteDataError("impute before building inputs")
    t = int(t)
    if not WINDOW_HOURS - 1 <= t <= len(series) - 2:
        raise ValueError(
            f"t must lie in [{WINDOW_HOURS - 1}, {len(series) - 2}], got {t}"
        )
    x = np.empty(N_FEATURES)
    for lag in range(WINDOW_HOURS):
        x[2 * lag] = series.power[t - lag]
        x[2 * lag + 1] = series.irradiance[t - lag]
    return x
