"""Compare the compiled ascent kernels against the numpy fallback.

Runs the same seeded norm and summing estimates under both backends,
checks the values agree to machine precision, and prints the wall-time
ratio.  Usage: python3 scripts/benchmark_backends.py [--sizes 4,6,8]
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from multinorm import (
    FiniteMeasureSpace,
    LinearMap,
    OptimizerBudget,
    VectorTuple,
    available_backends,
    multi_norm,
    parse_spec,
    set_backend,
    summing_norm_estimate,
    weak_summing_norm,
)


def _instances(m: int, n: int, seed: int):
    g = np.random.default_rng(seed)
    space = FiniteMeasureSpace(
        tuple(f"t{i}" for i in range(m)), g.uniform(0.5, 2.0, m)
    )
    t = VectorTuple.from_array(space, 2, g.standard_normal((n, m)))
    dom = FiniteMeasureSpace.unit(m)
    T = LinearMap(dom, 1, space, 2, g.standard_normal((m, m)))
    return t, T


def _workload(t, T, budget):
    vals = [
        weak_summing_norm(2, t, budget=budget).value,
        multi_norm(parse_spec("pq:1,2"), t, budget).value,
        multi_norm(parse_spec("std:2"), t, budget).value,
        summing_norm_estimate(2, 1, T, tuple_cap=3, budget=budget).value,
    ]
    return np.asarray(vals)


def main() -> int:
    ap = argparse.ArgumentParser()
    ap.add_argument("--sizes", default="4,6,8")
    ap.add_argument("--entries", type=int, default=4)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = available_backends()
    if "compiled" not in backends:
        print("compiled backend not built; nothing to compare")
        return 0

    budget = OptimizerBudget(restarts=32, max_iter=300, seed=args.seed)
    print(f"backends: {backends}")
    print(f"{'m':>3} {'python(s)':>10} {'compiled(s)':>11} {'speedup':>8}  agree")
    worst = 0.0
    for m in (int(s) for s in args.sizes.split(",")):
        t, T = _instances(m, args.entries, args.seed)
        times = {}
        values = {}
        for name in ("python", "compiled"):
            set_backend(name)
            best = float("inf")
            for _ in range(args.repeat):
                t0 = time.perf_counter()
                values[name] = _workload(t, T, budget)
                best = min(best, time.perf_counter() - t0)
            times[name] = best
        gap = float(np.abs(values["python"] - values["compiled"]).max())
        worst = max(worst, gap)
        ok = "yes" if gap < 1e-9 else f"NO ({gap:.2e})"
        print(
            f"{m:>3} {times['python']:>10.4f} {times['compiled']:>11.4f}"
            f" {times['python'] / times['compiled']:>7.2f}x  {ok}"
        )
    set_backend("compiled")
    print(f"worst backend disagreement: {worst:.3e}")
    return 0 if worst < 1e-9 else 1


if __name__ == "__main__":
    raise SystemExit(main())
