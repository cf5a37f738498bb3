#!/usr/bin/env python3
"""Benchmark the truncated torus-series engines against each other.

Times the full series computation (weight-factor product + constant-term
extraction) once per engine:

  numba   int64 boxes, @njit inner loop (skipped when numba is unavailable)
  numpy   int64 boxes, slice-assignment inner loop
  object  arbitrary-precision Python integers in object arrays

Usage:
    python benchmarks/bench_molien.py [--group 2x3] [--degree 16] [--repeats 3]
"""

from __future__ import annotations

import argparse
import time

from qqinv import _kernels, molien


def time_engine(ws, degree: int, engine: str, repeats: int) -> tuple[float, list[int]]:
    best = float("inf")
    series = None
    for _ in range(repeats):
        start = time.perf_counter()
        series = molien.molien_series(ws, degree, engine=engine,
                                      degree_cap=max(degree, 20))
        best = min(best, time.perf_counter() - start)
    return best, series


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--group", choices=("2x2", "2x3"), default="2x3")
    parser.add_argument("--degree", type=int, default=16)
    parser.add_argument("--repeats", type=int, default=3)
    args = parser.parse_args()

    label = {"2x2": "su2xsu2", "2x3": "su2xsu3"}[args.group]
    ws = molien.adjoint_weight_system(label)
    print(f"group {args.group}  degree {args.degree}  "
          f"{len(ws.weights)} weight factors  repeats {args.repeats}")

    engines = ["numpy", "object"]
    if _kernels.HAVE_NUMBA:
        # warm up jit compilation outside the timed region
        molien.molien_series(ws, min(args.degree, 4), engine="numba")
        engines.insert(0, "numba")
    else:
        print("numba unavailable or disabled (QQINV_NO_NUMBA); skipping")

    results = {}
    reference = None
    for engine in engines:
        best, series = time_engine(ws, args.degree, engine, args.repeats)
        results[engine] = best
        if reference is None:
            reference = series
        elif series != reference:
            raise SystemExit(f"engine {engine} disagrees with {engines[0]}")
        print(f"{engine:>7}: {best * 1e3:9.2f} ms")

    if "numba" in results:
        print(f"numba vs numpy speedup: {results['numpy'] / results['numba']:.2f}x")
    print(f"series c_{args.degree} = {reference[-1]}")


if __name__ == "__main__":
    main()
