"""Combining per-round forecasts into one predictive mean and variance.

Each imputation round yields a point forecast and a residual variance for a
test hour. The rounds are combined with the classic multiple-imputation
pooling rule: the pooled mean is the average of the round means, the
within variance is the average of the round variances, the between variance
is the sample variance of the round means, and the total predictive
variance is

    total = within + (1 + 1/B) * between

which reduces to the single-round variance when B == 1 (between is zero by
convention there). All aggregations use exactly rounded summation, so the
result is invariant under any permutation of the rounds, bit for bit.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence


@dataclass(frozen=True)
class RoundPrediction:
    """Forecast of one imputation round: point value plus residual variance."""

    mean: float
    variance: float

    def __post_init__(self) -> None:
        if not math.isfinite(self.mean) or not math.isfinite(self.variance):
            raise ValueError("round mean and variance must be finite")
        if self.variance < 0.0:
            raise ValueError(f"round variance must be >= 0, got {self.variance}")


@dataclass(frozen=True)
class PooledPrediction:
    """Pooled forecast across B rounds with its variance decomposition."""

    mean: float
    within_var: float
    between_var: float
    total_var: float
    n_rounds: int


def rubin_pool(rounds: Sequence[RoundPrediction]) -> PooledPrediction:
    """Pool B >= 1 round predictions for a single test hour."""
    b = len(rounds)
    if b == 0:
        raise ValueError("cannot pool an empty list of rounds")
    mean = math.fsum(r.mean for r in rounds) / b
    within = math.fsum(r.variance for r in rounds) / b
    if b == 1:
        between = 0.0
    else:
        between = math.fsum((r.mean - mean) ** 2 for r in rounds) / (b - 1)
    total = within + (1.0 + 1.0 / b) * between
    return PooledPrediction(
        mean=mean,
        within_var=within,
        between_var=between,
        total_var=total,
        n_rounds=b,
    )
