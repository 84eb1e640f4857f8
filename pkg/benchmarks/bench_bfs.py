"""Time the color BFS on the 2x2 square with each kernel backend.

    python benchmarks/bench_bfs.py [--repeat N] [--workers W]
"""

import argparse
import time

import numpy as np

from rubikshape import kernels
from rubikshape.square import ColorBfs, standard_square


def bench(backend, workers, repeat):
    shape, start = standard_square()
    times = []
    bfs = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        bfs = ColorBfs(shape, start, workers=workers, backend=backend)
        times.append(time.perf_counter() - t0)
    return min(times), bfs


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--workers", type=int, default=1)
    args = ap.parse_args()

    results = {}
    for name in sorted(kernels.BACKENDS):
        best, bfs = bench(name, args.workers, args.repeat)
        results[name] = (best, bfs)
        print(f"{name:>9}: {best * 1000:8.1f} ms  reachable={bfs.reachable} "
              f"eccentricity={bfs.eccentricity}")
    if len(results) == 2:
        (tc, bc), (tp, bp) = results["compiled"], results["python"]
        same = np.array_equal(bc.dist, bp.dist) and np.array_equal(bc.parent, bp.parent)
        print(f"speedup: {tp / tc:.1f}x, identical tables: {same}")
    else:
        print("compiled kernels not built; only the fallback was timed")


if __name__ == "__main__":
    main()
