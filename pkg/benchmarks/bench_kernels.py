#!/usr/bin/env python3
"""Benchmark the compiled kernels against the numpy fallback.

Times the three hot kernels on representative workloads:

  * rref        -- row reduction of dense random matrices over GF(p)
  * min_weight  -- full codeword enumeration for the minimum distance
  * idem_scan   -- idempotent scanning in a group algebra

Usage: python benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import time

import numpy as np

from agcodes._kernels import _pykernels

try:
    from agcodes._kernels import _ckernels
except ImportError:
    _ckernels = None

from agcodes.algebra import Ambient
from agcodes.fields import FieldTower
from agcodes.groups import cyclic, symmetric
from agcodes import linalg


def timeit(fn, repeat):
    best = None
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        elapsed = time.perf_counter() - start
        best = elapsed if best is None else min(best, elapsed)
    return best


def bench_rref(impl, repeat):
    rng = np.random.default_rng(1)
    mats = [(rng.integers(0, p, (220, 220)), p) for p in (2, 3)]

    def run():
        for mat, p in mats:
            impl.rref(mat, p)

    return timeit(run, repeat)


def bench_min_weight(impl, repeat):
    rng = np.random.default_rng(2)
    rows, _ = linalg.rref(rng.integers(0, 2, (18, 60)), 2)  # 2^18 codewords

    def run():
        impl.min_block_weight(rows, 2, 3)

    return timeit(run, repeat)


def bench_scan(impl, repeat):
    tower = FieldTower(2, 2)
    amb = Ambient(tower, cyclic(6))  # 4096 candidates, n = 6
    tower3 = FieldTower(3, 1)
    amb3 = Ambient(tower3, symmetric(3))  # 729 candidates, n = 6
    jobs = []
    for a in (amb, amb3):
        tw = a.tower
        jobs.append((a.group.table, np.arange(a.n, dtype=np.int64),
                     np.arange(tw.order, dtype=np.int64),
                     tw._exp, tw._log, tw._digits_table, tw._powp, tw.p))

    def run():
        for args in jobs:
            impl.scan_idempotents(*args)

    return timeit(run, repeat)


BENCHES = [
    ("rref 220x220 over GF(2),GF(3)", bench_rref),
    ("min weight, 2^18 codewords", bench_min_weight),
    ("idempotent scan, 4096+729 candidates", bench_scan),
]


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    impls = [("python", _pykernels)]
    if _ckernels is not None:
        impls.append(("compiled", _ckernels))
    else:
        print("note: compiled backend not built, timing the fallback only")

    width = max(len(name) for name, _ in BENCHES)
    header = f"{'benchmark':<{width}}  " + "  ".join(f"{n:>10}" for n, _ in impls)
    if len(impls) == 2:
        header += f"  {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, bench in BENCHES:
        times = [bench(impl, args.repeat) for _, impl in impls]
        row = f"{name:<{width}}  " + "  ".join(f"{t * 1e3:>8.1f}ms" for t in times)
        if len(times) == 2 and times[1] > 0:
            row += f"  {times[0] / times[1]:>7.1f}x"
        print(row)


if __name__ == "__main__":
    main()
