#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs each hot kernel on a representative workload with both backends and
prints a timing table.  Results must be bit-identical; the script asserts
that while timing.

Usage: python benchmarks/bench_backends.py [--repeat N]
"""

from __future__ import annotations

import argparse
import time

from batchgreedy import MatroidSpec, available_backends
from batchgreedy._backend import get_kernels
from batchgreedy.instances import (
    random_coverage_instance,
    random_scheduling_instance,
    random_sensing_instance,
)


def workloads():
    sched = random_scheduling_instance(24, seed=1, subtasks=2)
    sens20 = random_sensing_instance(20, seed=2)
    sens30 = random_sensing_instance(30, seed=3)
    cov = random_coverage_instance(22, seed=4)
    sched12 = random_scheduling_instance(12, seed=5, subtasks=2)
    uniform24 = MatroidSpec.uniform(24, 9)
    uniform22 = MatroidSpec.uniform(22, 8)

    def greedy_stage(k):
        obj = k.pack_objective(sched)
        mat = k.pack_matroid(uniform24)
        base = 0b111
        return k.greedy_stage(obj, mat, 24, base, k.eval_mask(obj, base), 3)

    def curvature(k):
        return k.curvature_scan(k.pack_objective(sens20), 20, 6, 1e-12)

    def sensing_closed_form(k):
        return k.sensing_curvature_scan(sens30.e, 8)

    def brute_force(k):
        return k.best_subset_of_card(k.pack_objective(cov), k.pack_matroid(uniform22), 22, 8)

    def polymatroid(k):
        return k.polymatroid_scan(k.pack_objective(sched12), 12, 1e-9)

    return [
        ("greedy stage, scheduling N=24 k=3", greedy_stage),
        ("exhaustive curvature, sensing N=20 k=6", curvature),
        ("closed-form curvature scan, sensing N=30 k=8", sensing_closed_form),
        ("brute force C(22,8), coverage", brute_force),
        ("polymatroid scan, scheduling N=12", polymatroid),
    ]


def run(repeat: int) -> None:
    names = available_backends()
    if "cython" not in names:
        print("compiled backend not built; run pip install -e . first")
    backends = [(name, get_kernels(name)) for name in names]
    width = max(len(label) for label, _ in workloads())
    header = f"{'workload':<{width}}  " + "".join(f"{name:>12}" for name, _ in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    print("-" * len(header))
    for label, fn in workloads():
        times = []
        results = []
        for _, kernels in backends:
            best = float("inf")
            result = None
            for _ in range(repeat):
                start = time.perf_counter()
                result = fn(kernels)
                best = min(best, time.perf_counter() - start)
            times.append(best)
            results.append(result)
        assert all(r == results[0] for r in results), f"backend mismatch on {label}"
        row = f"{label:<{width}}  " + "".join(f"{t * 1e3:>10.1f}ms" for t in times)
        if len(times) == 2:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=3, help="best-of-N timing")
    run(parser.parse_args().repeat)
