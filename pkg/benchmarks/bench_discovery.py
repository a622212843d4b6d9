#!/usr/bin/env python3
"""Time the subset scanners against each other on growing workflows.

Region discovery enumerates every node subset as a bitmask, so its cost
doubles with each extra state.  The package ships two interchangeable
kernels for that walk, a Cython one and a pure-Python fallback, and this
script measures both on the same inputs:

    python3 benchmarks/bench_discovery.py
    python3 benchmarks/bench_discovery.py --sizes 10,14,18 --repeats 5

Models are seeded random workflows shaped like the test corpus: a spine
of sequential transitions plus a handful of forward and back edges.  Both
kernels must return identical region lists; the run aborts loudly if they
ever disagree.
"""

from __future__ import annotations

import argparse
import random
import sys
import time

try:
    from ofc import _fastscan
except ImportError:
    _fastscan = None
from ofc import _scan_py


def build_masks(n: int, seed: int) -> tuple[list[int], list[int]]:
    """Successor and predecessor bitmasks for a random n-state workflow."""
    rng = random.Random(seed)
    succ = [0] * n
    pred = [0] * n
    def add(a: int, b: int) -> None:
        if a != b:
            succ[a] |= 1 << b
            pred[b] |= 1 << a
    for i in range(n - 1):
        add(i, i + 1)
    for _ in range(max(2, n // 2)):
        add(rng.randrange(n), rng.randrange(n))
    return succ, pred


def time_kernel(kernel, n: int, succ: list[int], pred: list[int], repeats: int):
    best = float("inf")
    result = None
    for _ in range(repeats):
        t0 = time.perf_counter()
        result = kernel.scan_masks(n, succ, pred, 0)
        best = min(best, time.perf_counter() - t0)
    return best, result


def main(argv: list[str] | None = None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", default="10,13,16,18,20",
                    help="comma-separated state counts to benchmark")
    ap.add_argument("--repeats", type=int, default=3,
                    help="timing repeats per size, best one is reported")
    ap.add_argument("--seed", type=int, default=7)
    args = ap.parse_args(argv)
    sizes = [int(s) for s in args.sizes.split(",") if s.strip()]

    if _fastscan is None:
        print("compiled kernel not importable; timing the fallback only",
              file=sys.stderr)

    header = f"{'states':>6} {'subsets':>12} {'python':>12} {'compiled':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for n in sizes:
        succ, pred = build_masks(n, args.seed)
        py_s, py_out = time_kernel(_scan_py, n, succ, pred, args.repeats)
        if _fastscan is not None:
            cy_s, cy_out = time_kernel(_fastscan, n, succ, pred, args.repeats)
            if list(cy_out) != list(py_out):
                print(f"kernel mismatch at n={n}: "
                      f"{len(cy_out)} vs {len(py_out)} regions", file=sys.stderr)
                return 1
            ratio = f"{py_s / cy_s:7.1f}x" if cy_s > 0 else "    inf"
            cy_col = f"{cy_s * 1000:9.1f} ms"
        else:
            cy_col, ratio = f"{'n/a':>12}", f"{'n/a':>8}"
        print(f"{n:>6} {2 ** n:>12,} {py_s * 1000:9.1f} ms {cy_col} {ratio}"
              f"  ({len(py_out)} regions)")
    return 0


if __name__ == "__main__":
    sys.exit(main())
