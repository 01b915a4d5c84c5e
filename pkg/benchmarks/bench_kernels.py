"""Time the numba and numpy kernel backends on catalog groups.

    python3 benchmarks/bench_kernels.py --groups S4 A5 S5 --repeat 3
"""
from __future__ import annotations

import argparse
import statistics
import time

import numpy as np

from fitset import _kernels
from fitset.catalog import CATALOG
from fitset.lattice import all_subgroups


def best_of(fn, repeat: int) -> float:
    times = []
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t)
    return min(times)


def bench_group(name: str, repeat: int) -> dict[str, dict[str, float]]:
    G = CATALOG[name].build()
    rng = np.random.default_rng(0)
    seeds = [rng.integers(0, G.order, size=2) for _ in range(200)]
    rows = {}
    for backend in ("numba", "numpy"):
        with _kernels.using_backend(backend):
            # warm-up so numba compile time is not counted
            _kernels.generate(G.mul, seeds[0])
            _kernels.element_orders(G.mul)
            rows[backend] = {
                "generate x200": best_of(lambda: [_kernels.generate(G.mul, s) for s in seeds], repeat),
                "element_orders": best_of(lambda: _kernels.element_orders(G.mul), repeat),
                "lattice": best_of(lambda: all_subgroups(G), repeat),
            }
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--groups", nargs="+", default=["S4", "SL(2,3)", "S3xS3", "A5", "S5"])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    if _kernels.numba is None:
        print("numba not importable; only the numpy backend is available")
        return 1
    print(f"{'group':10} {'task':16} {'numba s':>10} {'numpy s':>10} {'speedup':>8}")
    ratios = []
    for name in args.groups:
        rows = bench_group(name, args.repeat)
        for task in rows["numba"]:
            a, b = rows["numba"][task], rows["numpy"][task]
            ratios.append(b / a if a else float("nan"))
            print(f"{name:10} {task:16} {a:10.4f} {b:10.4f} {ratios[-1]:8.2f}")
    print(f"median numpy/numba ratio: {statistics.median(ratios):.2f}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
