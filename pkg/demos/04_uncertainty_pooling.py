"""Propagating missing-data uncertainty into the forecast intervals.

With gaps in both halves of the record there are three escalation levels:

  setup 1  fill everything once with the deterministic sampler -> one model,
           one forecast, variance = training residual variance only
  setup 2  keep the single model, but redraw the *test* gaps B times; the
           spread of the B forecasts widens the interval
  setup 3  redraw the *training* gaps too, refitting per round, so model
           uncertainty from the gaps also enters the pool

This script runs all three on the same degraded data and shows how coverage
climbs toward the nominal level as more uncertainty is propagated.

Run:  python3 demos/04_uncertainty_pooling.py
"""

import numpy as np

from pvmi import (
    MissingSpec,
    RegressorSpec,
    SynthSpec,
    coverage,
    generate,
    inject_missing,
    normal_interval,
    nrmse,
    run_pipeline,
    split_chronological,
)

ALPHA = 0.05


def main():
    seed = 101
    full = generate(SynthSpec(days=70, seed=seed))
    train, test = split_chronological(full, test_len=1200)
    train, _ = inject_missing(train, MissingSpec(
        mode="target-fraction", target_fraction=0.30, block_len_hours=48,
        seed=seed + 1))
    test, _ = inject_missing(test, MissingSpec(
        mode="target-fraction", target_fraction=0.30, block_len_hours=24,
        seed=seed + 2))
    print(f"train {len(train)} h / test {len(test)} h, ~30% missing in blocks")

    spec = RegressorSpec("lasso", {"lam": 1e-4})
    print(f"model: {spec.family} {spec.hyperparameters}, "
          f"normal intervals at alpha={ALPHA}\n")

    print(f"{'setup':22s} {'coverage':>8s} {'NRMSE':>7s} {'mean width':>11s}")
    pooled_by_setup = {}
    for setup, label in [(1, "1: ignore gaps"), (2, "2: redraw test"),
                         (3, "3: redraw train+test")]:
        pooled = run_pipeline(train, test, spec, setup, n_rounds=5, seed=seed)
        pooled_by_setup[setup] = pooled
        bands = [normal_interval(p.mean, p.total_var, ALPHA) for p in pooled]
        cov = coverage(bands, test)
        err = nrmse([p.mean for p in pooled], test)
        width = float(np.mean([b.width() for b in bands]))
        print(f"{label:22s} {cov:8.3f} {err:7.4f} {width:11.3f}")

    print("\nvariance split for the first daytime hours (setup 3):")
    print(f"{'hour':>5s} {'mean':>7s} {'within':>8s} {'between':>8s} {'total':>8s}")
    shown = 0
    for i, p in enumerate(pooled_by_setup[3]):
        if p.mean < 0.5:
            continue
        print(f"{24 + i:5d} {p.mean:7.3f} {p.within_var:8.4f} "
              f"{p.between_var:8.4f} {p.total_var:8.4f}")
        shown += 1
        if shown == 6:
            break
    print("\nthe between column is the part a single-fill pipeline throws away;")
    print("point accuracy (NRMSE) stays flat because only the variance changes")


if __name__ == "__main__":
    main()
