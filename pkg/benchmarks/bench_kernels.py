#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Usage: python benchmarks/bench_kernels.py [--samples N] [--repeat R]

Times the three per-sample kernels on identical inputs through both
backends and reports the speedup. The compiled extension must be built
(pip install -e .) for the comparison to include it.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from sqfr import _pykernels

try:
    from sqfr import _ckernels
except ImportError:
    _ckernels = None


def best_of(repeat: int, fn, *args) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--samples", type=int, default=1_000_000)
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(7)
    scores = np.sort(rng.uniform(0, 100, args.samples))
    thresholds = np.arange(1.0, 101.0)
    kde_samples = np.sort(rng.uniform(0, 100, min(args.samples, 20_000)))
    grid = np.linspace(-5, 105, 512)

    cases = [
        ("count_below", (scores, thresholds)),
        ("low_weight_sums", (scores, 0.0, 100.0)),
        ("kde_gaussian", (kde_samples, grid, 2.0)),
    ]

    print(f"samples={args.samples:,} repeat={args.repeat} (best of)")
    print(f"{'kernel':<16} {'pure numpy':>12} {'compiled':>12} {'speedup':>9}")
    for name, case_args in cases:
        py = best_of(args.repeat, getattr(_pykernels, name), *case_args)
        if _ckernels is None:
            print(f"{name:<16} {py * 1e3:>10.2f}ms {'n/a':>12} {'n/a':>9}")
            continue
        cy = best_of(args.repeat, getattr(_ckernels, name), *case_args)
        print(f"{name:<16} {py * 1e3:>10.2f}ms {cy * 1e3:>10.2f}ms {py / cy:>8.1f}x")
    if _ckernels is None:
        print("compiled extension not available; build it with: pip install -e .")


if __name__ == "__main__":
    main()
