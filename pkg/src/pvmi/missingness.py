"""Reproducible injection of block-shaped gaps into the power column.

Sensor and logger outages in PV telemetry knock out contiguous stretches of
hours, so gaps are injected as blocks rather than independent hours. Two
modes are supported: an explicit list of ``(start, length)`` blocks, and a
target missing fraction that is met by placing fixed-length blocks at
uniformly random admissible positions (the final block is trimmed so the
fraction is hit as closely as the grid allows).

Injection always returns the removed values keyed by hour index, so a
simulation can later be scored against the exact ground truth.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .series import HourlySeries

MODE_EXPLICIT = "explicit-blocks"
MODE_FRACTION = "target-fraction"


@dataclass(frozen=True)
class MissingSpec:
    """Configuration for gap injection.

    mode
        ``"explicit-blocks"`` uses ``blocks``; ``"target-fraction"`` places
        random blocks of ``block_len_hours`` until ``target_fraction`` of all
        hours is missing.
    blocks
        List of ``(start_index, length)`` pairs, explicit mode only.
    target_fraction
        Desired missing fraction in ``[0, 1)``.
    block_len_hours
        Block length for target-fraction mode; defaults to one week.
    seed
        Seed for the block-placement RNG (target-fraction mode).
    """

    mode: str
    blocks: tuple[tuple[int, int], ...] = ()
    target_fraction: float = 0.0
    block_len_hours: int = 168
    seed: int = 0

    def __post_init__(self) -> None:
        if self.mode not in (MODE_EXPLICIT, MODE_FRACTION):
            raise ValueError(f"unknown mode {self.mode!r}")
        object.__setattr__(
            self, "blocks", tuple((int(s), int(l)) for s, l in self.blocks)
        )
        if self.mode == MODE_FRACTION:
            if not 0.0 <= self.target_fraction < 1.0:
                raise ValueError("target_fraction must lie in [0, 1)")
            if self.block_len_hours <= 0:
                raise ValueError("block_len_hours must be positive")


@dataclass(frozen=True)
class GroundTruth:
    """The values removed by an injection, keyed by hour index."""

    values: dict[int, float] = field(default_factory=dict)

    def indices(self) -> np.ndarray:
        return np.array(sorted(self.values), dtype=int)

    def restore(self, series: HourlySeries) -> HourlySeries:
        """Undo the injection: put every stored value back and clear its mask."""
        power = series.power.copy()
        mask = series.mask.copy()
        for idx, value in self.values.items():
            if not mask[idx]:
                raise ValueError(f"hour {idx} is not missing in the given series")
            power[idx] = value
            mask[idx] = False
        return HourlySeries(series.start, power, series.irradiance, mask)


def inject_missing(series: HourlySeries, spec: MissingSpec) -> tuple[HourlySeries, GroundTruth]:
    """Remove power values per ``spec`` and return (masked series, removed values).

    Explicit blocks must lie in bounds, not overlap each other, and cover
    only currently observed hours. In target-fraction mode the requested
    fraction must be reachable with non-overlapping blocks of the configured
    length placed on the observed hours, otherwise ValueError is raised.
    """
    t = len(series)
    mask = series.mask.copy()
    if spec.mode == MODE_EXPLICIT:
        chosen: list[int] = []
        taken = mask.copy()
        for start, length in spec.blocks:
            if length <= 0:
                raise ValueError(f"block length must be positive, got {length}")
            if start < 0 or start + length > t:
                raise ValueError(f"block ({start}, {length}) exceeds series bounds [0, {t})")
            if taken[start : start + length].any():
                raise ValueError(
                    f"block ({start}, {length}) overlaps another block or an "
                    "already-missing hour"
                )
            taken[start : start + length] = True
            chosen.extend(range(start, start + length))
    else:
        chosen = _place_random_blocks(mask, spec)

    power = series.power.copy()
    truth = {int(i): float(power[i]) for i in chosen}
    for i in chosen:
        power[i] = np.nan
        mask[i] = True
    return HourlySeries(series.start, power, series.irradiance, mask), GroundTruth(truth)


def missing_fraction(series: HourlySeries) -> float:
    """Share of hours whose power is missing."""
    return float(series.mask.mean())


def _place_random_blocks(mask: np.ndarray, spec: MissingSpec) -> list[int]:
    t = len(mask)
    needed = int(round(spec.target_fraction * t)) - int(mask.sum())
    if needed <= 0:
        return []
    rng = np.random.default_rng(spec.seed)
    taken = mask.copy()
    chosen: list[int] = []
    while needed > 0:
        length = min(spec.block_len_hours, needed)
        # admissible starts: the whole block fits and covers observed hours only
        free = ~taken
        window = np.convolve(free.astype(int), np.ones(length, dtype=int), mode="valid")
        starts = np.flatnonzero(window == length)
        if starts.size == 0:
            raise ValueError(
                "cannot reach the target fraction: no room left for a block "
                f"of {length} observed hours"
            )
        start = int(starts[rng.integers(starts.size)])
        taken[start : start + length] = True
        chosen.extend(range(start, start + length))
        needed -= length
    return chosen
