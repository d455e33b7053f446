#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python fallback.

Runs the three hot kernels on both backends, checks the results are
bit-identical, and prints a timing table.

    python benchmarks/bench_backends.py [--trials N]
"""

import argparse
import time

from dualconf import _pykernels as pk

try:
    from dualconf import _fastkernels as fk
except ImportError:
    fk = None


def timeit(fn, *args, repeats=3):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, result


def row(name, py_time, c_time):
    if c_time is None:
        print(f"  {name:<28} {py_time * 1e3:>10.1f} ms {'-':>12} {'-':>9}")
    else:
        print(f"  {name:<28} {py_time * 1e3:>10.1f} ms {c_time * 1e3:>9.1f} ms "
              f"{py_time / c_time:>8.1f}x")


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--trials", type=int, default=200_000)
    args = parser.parse_args()
    n = args.trials

    print(f"kernel benchmark, {n} trials per case")
    if fk is None:
        print("compiled backend not available; showing pure Python only")
    print(f"  {'kernel':<28} {'python':>13} {'compiled':>12} {'speedup':>9}")

    cases = [
        ("laplace coverage hits",
         lambda m: m.count_location_hits(0, 3.0, 2.0, -4.6, 4.6, 42, 0, n)),
        ("normal coverage hits",
         lambda m: m.count_location_hits(1, 3.0, 2.0, -3.3, 3.3, 42, 0, n)),
        ("cauchy coverage hits",
         lambda m: m.count_location_hits(2, 3.0, 2.0, -12.6, 12.6, 42, 0, n)),
        ("poisson count histogram",
         lambda m: m.poisson_count_histogram(4.5, 300, 42, 0, n)),
        ("laplace samples",
         lambda m: m.location_samples(0, 0.0, 1.0, 42, 0, n)),
    ]
    for name, call in cases:
        py_time, py_result = timeit(call, pk)
        if fk is None:
            row(name, py_time, None)
            continue
        c_time, c_result = timeit(call, fk)
        if hasattr(py_result, "__len__"):
            assert list(py_result) == list(c_result), f"{name}: backends disagree"
        else:
            assert py_result == c_result, f"{name}: backends disagree"
        row(name, py_time, c_time)

    if fk is not None:
        print("  (all results bit-identical across backends)")


if __name__ == "__main__":
    main()
