"""Interval and point-forecast quality on the observed test hours.

Both metrics align a prediction list with the test series the same way the
pipeline emits it: entry ``i`` targets the power at test hour ``24 + i``
(0-based). Hours whose target power is missing carry no usable truth, so
they are skipped; only mask==0 target hours are scored.

Coverage is the share of scored hours whose true power falls inside the
closed interval. NRMSE is the root mean squared error of the pooled means
over the scored hours, divided by the largest observed true power.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import DegenerateNormalizationError, EmptyEvaluationError
from .features import WINDOW_HOURS
from .intervals import PredictionInterval
from .series import HourlySeries


@dataclass(frozen=True)
class EvalReport:
    """Headline numbers for one evaluated configuration."""

    coverage: float
    nrmse: float
    n_evaluated: int
    alpha: float


def coverage(intervals: Sequence[PredictionInterval], truths: HourlySeries) -> float:
    """Fraction of observed test hours whose truth lies inside its interval."""
    target_idx, truth = _aligned_truths(len(intervals), truths)
    hit = sum(
        1
        for pos, i in enumerate(target_idx - WINDOW_HOURS)
        if intervals[i].lower <= truth[pos] <= intervals[i].upper
    )
    return hit / truth.size


def nrmse(means: Sequence[float], truths: HourlySeries) -> float:
    """RMSE of the predictions over observed test hours, normalized by the
    largest observed true power."""
    target_idx, truth = _aligned_truths(len(means), truths)
    means = np.asarray(means, dtype=float)
    pred = means[target_idx - WINDOW_HOURS]
    y_max = float(truth.max())
    if y_max <= 0.0:
        raise DegenerateNormalizationError(
            "all observed test powers are zero; NRMSE is undefined"
        )
    rmse = float(np.sqrt(np.mean((pred - truth) ** 2)))
    return rmse / y_max


def evaluate(
    intervals: Sequence[PredictionInterval],
    means: Sequence[float],
    truths: HourlySeries,
    alpha: float,
) -> EvalReport:
    """Convenience bundle of both metrics plus the evaluated count."""
    target_idx, _ = _aligned_truths(len(intervals), truths)
    return EvalReport(
        coverage=coverage(intervals, truths),
        nrmse=nrmse(means, truths),
        n_evaluated=int(target_idx.size),
        alpha=alpha,
    )


def _aligned_truths(n_predictions: int, truths: HourlySeries) -> tuple[np.ndarray, np.ndarray]:
    """Indices (into the series) and values of the scoreable target hours."""
    expected = len(truths) - WINDOW_HOURS
    if n_predictions != expected:
        raise ValueError(
            f"prediction list has {n_predictions} entries but the test series "
            f"supports {expected}"
        )
    target_idx = np.arange(WINDOW_HOURS, len(truths))
    observed = ~truths.mask[target_idx]
    target_idx = target_idx[observed]
    if target_idx.size == 0:
        raise EmptyEvaluationError("no observed target hours to evaluate on")
    return target_idx, truths.power[target_idx]
