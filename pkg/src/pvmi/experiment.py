"""Config-driven experiment grid over setups, models, rounds and intervals.

A JSON config describes one dataset (a CSV path or a synthetic-data spec),
how to split and degrade it, which model families to run, and which
interval families to score. The experiment enumerates every non-redundant
cell of

    setup x model x n_rounds x interval_family

(setup 1 ignores the number of rounds, so its cells collapse along that
axis), runs the forecast pipeline per cell, and writes three artifacts into
the output directory:

``summary.json``
    one record per cell with coverage, NRMSE, evaluated-hour count and mean
    interval width; byte-identical across reruns of the same config.
``manifest.json``
    resolved hyperparameters, sampler size, derived per-cell seeds and the
    echoed config, for provenance.
``cells/*.csv``
    per-hour detail (truth, mask, pooled moments, interval bounds, covered
    flag) for each cell, sufficient to re-aggregate the summary.

Cell failures are recorded as failure markers instead of aborting the grid;
after all cells ran, an :class:`ExperimentError` reports them.
"""

from __future__ import annotations

import json
import math
import os
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import models
from .errors import ExperimentError
from .features import WINDOW_HOURS
from .intervals import PredictionInterval, gamma_interval, normal_interval
from .metrics import coverage as coverage_metric
from .metrics import nrmse as nrmse_metric
from .missingness import GroundTruth, MissingSpec, inject_missing, missing_fraction
from .pipeline import run_pipeline
from .imputation import fit_sampler
from .series import HourlySeries, parse_csv, split_chronological
from .synth import SynthSpec, generate

SCHEMA_VERSION = 1
INTERVAL_FAMILIES = ("normal", "gamma")
_PKG_VERSION = "0.1.0"


@dataclass(frozen=True)
class ModelConfig:
    """One model family in the grid, either with explicit hyperparameters or
    tuned on the training data before any cell runs."""

    family: str
    hyperparameters: dict | None = None
    tune: bool = False
    grid: tuple | None = None
    folds: int = 3
    seed: int = 0

    def __post_init__(self) -> None:
        if self.family not in models.FAMILIES:
            raise ValueError(f"unknown model family {self.family!r}")
        if self.hyperparameters is None and not self.tune:
            # nothing specified: fall back to tuning with the default grid
            object.__setattr__(self, "tune", True)
        if self.grid is not None:
            object.__setattr__(self, "grid", tuple(dict(g) for g in self.grid))


@dataclass(frozen=True)
class ExperimentConfig:
    data_csv: str | None
    data_synth: SynthSpec | None
    test_len: int
    model_configs: tuple[ModelConfig, ...]
    setups: tuple[int, ...] = (1, 2, 3)
    n_rounds: tuple[int, ...] = (5, 10)
    interval_families: tuple[str, ...] = INTERVAL_FAMILIES
    train_missing: MissingSpec | None = None
    test_missing: MissingSpec | None = None
    alpha: float = 0.05
    sampler_k: int | None = None
    clip_normal_at_zero: bool = False
    master_seed: int = 0
    output_dir: str = "experiment-out"

    def __post_init__(self) -> None:
        if (self.data_csv is None) == (self.data_synth is None):
            raise ValueError("config must name exactly one data source (csv or synth)")
        if not self.model_configs:
            raise ValueError("config must list at least one model")
        if not self.setups or any(s not in (1, 2, 3) for s in self.setups):
            raise ValueError(f"setups must be a non-empty subset of (1, 2, 3)")
        if not self.n_rounds or any(b < 1 for b in self.n_rounds):
            raise ValueError("n_rounds must be positive")
        if not self.interval_families or any(
            f not in INTERVAL_FAMILIES for f in self.interval_families
        ):
            raise ValueError(f"interval_families must be drawn from {INTERVAL_FAMILIES}")
        if not 0.0 < self.alpha < 1.0:
            raise ValueError("alpha must lie in (0, 1)")


def config_from_json(doc: dict) -> ExperimentConfig:
    """Validate and convert a parsed JSON document into a config."""
    if doc.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(
            f"unsupported schema_version {doc.get('schema_version')!r}; "
            f"expected {SCHEMA_VERSION}"
        )
    data = doc.get("data", {})
    synth = SynthSpec(**data["synth"]) if "synth" in data else None
    mspecs = {}
    for part in ("train_missing", "test_missing"):
        entry = doc.get(part)
        mspecs[part] = MissingSpec(**entry) if entry else None
    model_configs = tuple(ModelConfig(**m) for m in doc["models"])
    return ExperimentConfig(
        data_csv=data.get("csv"),
        data_synth=synth,
        test_len=int(doc["test_len"]),
        model_configs=model_configs,
        setups=tuple(doc.get("setups", (1, 2, 3))),
        n_rounds=tuple(doc.get("n_rounds", (5, 10))),
        interval_families=tuple(doc.get("interval_families", INTERVAL_FAMILIES)),
        train_missing=mspecs["train_missing"],
        test_missing=mspecs["test_missing"],
        alpha=float(doc.get("alpha", 0.05)),
        sampler_k=doc.get("sampler_k"),
        clip_normal_at_zero=bool(doc.get("clip_normal_at_zero", False)),
        master_seed=int(doc.get("master_seed", 0)),
        output_dir=doc.get("output_dir", "experiment-out"),
    )


def load_config(path: str | Path) -> ExperimentConfig:
    return config_from_json(json.loads(Path(path).read_text()))


# ---------------------------------------------------------------------------
# cell enumeration

@dataclass(frozen=True)
class Cell:
    """One scored configuration; ``n_rounds`` is None for setup-1 cells."""

    setup: int
    model_index: int
    model_label: str
    n_rounds: int | None
    interval_family: str

    @property
    def pipeline_id(self) -> str:
        b = f"_b{self.n_rounds}" if self.n_rounds is not None else ""
        return f"s{self.setup}{b}_{self.model_label}"

    @property
    def cell_id(self) -> str:
        return f"{self.pipeline_id}_{self.interval_family}"


def model_labels(config: ExperimentConfig) -> list[str]:
    """Stable display labels; family name, disambiguated when repeated."""
    families = [m.family for m in config.model_configs]
    labels = []
    for i, fam in enumerate(families):
        if families.count(fam) == 1:
            labels.append(fam)
        else:
            labels.append(f"{fam}{families[:i].count(fam) + 1}")
    return labels


def enumerate_cells(config: ExperimentConfig) -> list[Cell]:
    """Every non-redundant cell, in deterministic execution order."""
    labels = model_labels(config)
    cells = []
    for i, label in enumerate(labels):
        for setup in sorted(set(config.setups)):
            b_axis = [None] if setup == 1 else sorted(set(config.n_rounds))
            for b in b_axis:
                for fam in config.interval_families:
                    cells.append(Cell(setup, i, label, b, fam))
    return cells


def _pipeline_seed(master_seed: int, model_index: int, setup: int, b: int) -> int:
    seq = np.random.SeedSequence([master_seed, model_index, setup, b])
    return int(seq.generate_state(1, np.uint64)[0])


# ---------------------------------------------------------------------------
# running

def run(config: ExperimentConfig, output_dir: str | Path | None = None) -> dict:
    """Run every cell and write summary, manifest and per-cell CSVs.

    Returns the summary document. Raises :class:`ExperimentError` after the
    grid finishes if any cell failed (its marker is in the summary).
    """
    out = Path(output_dir) if output_dir is not None else Path(config.output_dir)
    (out / "cells").mkdir(parents=True, exist_ok=True)

    full = _load_data(config)
    train, test = split_chronological(full, config.test_len)
    train_truth: GroundTruth | None = None
    test_truth: GroundTruth | None = None
    if config.train_missing is not None:
        train, train_truth = inject_missing(train, config.train_missing)
    if config.test_missing is not None:
        test, test_truth = inject_missing(test, config.test_missing)

    sampler = fit_sampler(train, k=config.sampler_k)
    resolved_specs, tuned_flags = _resolve_models(config, train, sampler.k)

    truth_restored = test_truth.restore(test) if test_truth is not None else test

    labels = model_labels(config)
    pipeline_cache: dict[str, list] = {}
    pipeline_seeds: dict[str, int] = {}
    summary_cells: list[dict] = []
    manifest_cells: list[dict] = []
    failures: list[str] = []

    for cell in enumerate_cells(config):
        b_run = 1 if cell.n_rounds is None else cell.n_rounds
        seed = _pipeline_seed(config.master_seed, cell.model_index, cell.setup, b_run)
        record = {
            "setup": cell.setup,
            "model": cell.model_label,
            "n_rounds": cell.n_rounds,
            "interval_family": cell.interval_family,
        }
        try:
            if cell.pipeline_id not in pipeline_cache:
                pipeline_cache[cell.pipeline_id] = run_pipeline(
                    train,
                    test,
                    resolved_specs[cell.model_index],
                    setup=cell.setup,
                    n_rounds=b_run,
                    seed=seed,
                    sampler_k=sampler.k,
                )
                pipeline_seeds[cell.pipeline_id] = seed
            pooled = pipeline_cache[cell.pipeline_id]
            intervals = _cell_intervals(pooled, cell.interval_family, config)
            means = [p.mean for p in pooled]
            cov = coverage_metric(intervals, test)
            err = nrmse_metric(means, test)
            n_eval = int(np.sum(~test.mask[WINDOW_HOURS:]))
            width = float(np.mean([iv.width() for iv in intervals]))
            csv_name = f"cells/cell_{cell.cell_id}.csv"
            _write_cell_csv(out / csv_name, pooled, intervals, test, truth_restored)
            record.update(
                status="ok",
                coverage=_round(cov),
                nrmse=_round(err),
                n_evaluated=n_eval,
                mean_width=_round(width),
            )
            manifest_cells.append(
                {"id": cell.cell_id, "file": csv_name, "seed": pipeline_seeds[cell.pipeline_id], **{
                    k: record[k] for k in ("setup", "model", "n_rounds", "interval_family")
                }}
            )
        except Exception as exc:  # cell isolation: record and continue
            record.update(status="failed", error=f"{type(exc).__name__}: {exc}")
            failures.append(cell.cell_id)
        summary_cells.append(record)

    summary = {
        "schema_version": SCHEMA_VERSION,
        "alpha": config.alpha,
        "cells": summary_cells,
    }
    manifest = {
        "schema_version": SCHEMA_VERSION,
        "package_version": _PKG_VERSION,
        "master_seed": config.master_seed,
        "sampler_k": sampler.k,
        "test_len": config.test_len,
        "train_missing_fraction": _round(missing_fraction(train)),
        "test_missing_fraction": _round(missing_fraction(test)),
        "models": [
            {
                "label": labels[i],
                "family": spec.family,
                "hyperparameters": spec.hyperparameters,
                "seed": spec.seed,
                "tuned": tuned_flags[i],
            }
            for i, spec in enumerate(resolved_specs)
        ],
        "cells": manifest_cells,
        "config": _config_echo(config),
    }
    _write_json_atomic(out / "summary.json", summary)
    _write_json_atomic(out / "manifest.json", manifest)
    if failures:
        raise ExperimentError(
            f"{len(failures)} cell(s) failed: {', '.join(failures)}; "
            f"markers written to {out / 'summary.json'}"
        )
    return summary


def reaggregate(output_dir: str | Path) -> dict:
    """Rebuild the summary from the per-cell CSVs (cross-check path)."""
    out = Path(output_dir)
    manifest = json.loads((out / "manifest.json").read_text())
    original = json.loads((out / "summary.json").read_text())
    cells = []
    for entry in manifest["cells"]:
        rows = _read_cell_csv(out / entry["file"])
        obs = [r for r in rows if r["mask"] == 0]
        if not obs:
            continue
        covered = sum(r["covered"] for r in obs) / len(obs)
        y_max = max(r["truth"] for r in obs)
        rmse = math.sqrt(sum((r["pooled_mean"] - r["truth"]) ** 2 for r in obs) / len(obs))
        # widths average over every target hour, observed or not, like run()
        width = float(np.mean([r["upper"] - r["lower"] for r in rows]))
        cells.append(
            {
                "setup": entry["setup"],
                "model": entry["model"],
                "n_rounds": entry["n_rounds"],
                "interval_family": entry["interval_family"],
                "status": "ok",
                "coverage": _round(covered),
                "nrmse": _round(rmse / y_max),
                "n_evaluated": len(obs),
                "mean_width": _round(width),
            }
        )
    return {
        "schema_version": SCHEMA_VERSION,
        "alpha": original["alpha"],
        "cells": cells,
    }


# ---------------------------------------------------------------------------
# helpers

def _load_data(config: ExperimentConfig) -> HourlySeries:
    if config.data_csv is not None:
        return parse_csv(Path(config.data_csv))
    return generate(config.data_synth)


def _resolve_models(config: ExperimentConfig, train: HourlySeries, sampler_k: int):
    """Turn every ModelConfig into a concrete RegressorSpec, tuning on the
    deterministically completed training data where requested."""
    from .features import build_training
    from .imputation import complete_series

    specs: list[models.RegressorSpec] = []
    tuned: list[bool] = []
    train_ds = None
    for mc in config.model_configs:
        if not mc.tune:
            specs.append(models.RegressorSpec(mc.family, mc.hyperparameters, mc.seed))
            tuned.append(False)
            continue
        if train_ds is None:
            sampler = fit_sampler(train, k=sampler_k)
            train_ds = build_training(complete_series(train, sampler, "single"))
        if mc.grid is not None:
            grid = list(mc.grid)
        elif mc.family == "knn":
            max_k = len(train_ds) // (mc.folds + 1)
            grid = models.default_knn_grid(max(1, max_k))
        elif mc.family == "lasso":
            grid = models.default_lasso_grid(train_ds)
        else:
            grid = [dict(mc.hyperparameters or {})]
        spec = models.tune_chronological(mc.family, train_ds, grid, folds=mc.folds,
                                         seed=mc.seed)
        specs.append(spec)
        tuned.append(True)
    return specs, tuned


def _cell_intervals(pooled, interval_family: str, config: ExperimentConfig
                    ) -> list[PredictionInterval]:
    if interval_family == "normal":
        return [
            normal_interval(p.mean, p.total_var, config.alpha,
                            clip_at_zero=config.clip_normal_at_zero)
            for p in pooled
        ]
    return [gamma_interval(p.mean, max(p.total_var, 0.0), config.alpha) for p in pooled]


_CSV_HEADER = ("t,truth,mask,pooled_mean,within_var,between_var,total_var,"
               "lower,upper,covered")


def _write_cell_csv(path: Path, pooled, intervals, test: HourlySeries,
                    truth_restored: HourlySeries) -> None:
    lines = [_CSV_HEADER]
    for i, (p, iv) in enumerate(zip(pooled, intervals)):
        t = WINDOW_HOURS + i  # target hour, 0-based index into the test series
        known = not truth_restored.mask[t]
        truth = repr(float(truth_restored.power[t])) if known else ""
        covered = ""
        if known:
            covered = str(int(iv.lower <= truth_restored.power[t] <= iv.upper))
        lines.append(
            f"{t},{truth},{int(test.mask[t])},{p.mean!r},{p.within_var!r},"
            f"{p.between_var!r},{p.total_var!r},{iv.lower!r},{iv.upper!r},{covered}"
        )
    _write_text_atomic(path, "\n".join(lines) + "\n")


def _read_cell_csv(path: Path) -> list[dict]:
    lines = path.read_text().strip().splitlines()
    if lines[0] != _CSV_HEADER:
        raise ValueError(f"{path}: unexpected cell CSV header")
    rows = []
    for line in lines[1:]:
        cells = line.split(",")
        rows.append(
            {
                "t": int(cells[0]),
                "truth": float(cells[1]) if cells[1] else None,
                "mask": int(cells[2]),
                "pooled_mean": float(cells[3]),
                "within_var": float(cells[4]),
                "between_var": float(cells[5]),
                "total_var": float(cells[6]),
                "lower": float(cells[7]),
                "upper": float(cells[8]),
                "covered": int(cells[9]) if cells[9] else None,
            }
        )
    return rows


def _config_echo(config: ExperimentConfig) -> dict:
    doc: dict = {
        "test_len": config.test_len,
        "setups": list(config.setups),
        "n_rounds": list(config.n_rounds),
        "interval_families": list(config.interval_families),
        "alpha": config.alpha,
        "sampler_k": config.sampler_k,
        "clip_normal_at_zero": config.clip_normal_at_zero,
        "master_seed": config.master_seed,
    }
    if config.data_csv is not None:
        doc["data"] = {"csv": config.data_csv}
    else:
        s = config.data_synth
        doc["data"] = {
            "synth": {
                "days": s.days,
                "peak_irradiance": s.peak_irradiance,
                "efficiency": s.efficiency,
                "noise_scale": s.noise_scale,
                "seed": s.seed,
            }
        }
    for part, spec in (("train_missing", config.train_missing),
                       ("test_missing", config.test_missing)):
        if spec is None:
            doc[part] = None
        else:
            doc[part] = {
                "mode": spec.mode,
                "blocks": [list(b) for b in spec.blocks],
                "target_fraction": spec.target_fraction,
                "block_len_hours": spec.block_len_hours,
                "seed": spec.seed,
            }
    doc["models"] = [
        {
            "family": mc.family,
            "hyperparameters": mc.hyperparameters,
            "tune": mc.tune,
            "folds": mc.folds,
            "seed": mc.seed,
        }
        for mc in config.model_configs
    ]
    return doc


def _round(x: float) -> float:
    """Stabilize reported metrics against sub-ulp platform jitter."""
    return float(f"{x:.12g}")


def _write_json_atomic(path: Path, doc: dict) -> None:
    _write_text_atomic(path, json.dumps(doc, indent=2, sort_keys=True) + "\n")


def _write_text_atomic(path: Path, text: str) -> None:
    tmp = path.with_suffix(path.suffix + ".tmp")
    tmp.write_text(text)
    os.replace(tmp, path)
