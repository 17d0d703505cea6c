"""Time the compiled kernels against the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""

import argparse
import random
import time

from apfree import _pykernels
from apfree.construct import behrend_set, greedy_ap_free, theta
from apfree.core import NaturalSet
from apfree.search import max_ap_free

try:
    from apfree import _kernels
except ImportError:
    _kernels = None


def workloads(quick):
    n_ap = 36 if quick else 48
    bounds = [max_ap_free(3, m).value if m else 0 for m in range(n_ap)] + [n_ap]
    behrend = behrend_set(10**5).elements
    rng = random.Random(7)
    A = greedy_ap_free(3, 200)
    band = theta(NaturalSet(tuple(a for a in A if rng.random() < 0.5)), 200).row_major()
    return [
        ("find_ap behrend(1e5), k=3", lambda k: k.find_ap(behrend, 3)),
        ("find_grid theta(greedy, 200), s=2", lambda k: k.find_grid(band, 2)),
        ("greedy_ap_free k=3, N=2e4", lambda k: k.greedy_ap_free(3, 20000)),
        (f"ap_dfs k=3, N={n_ap}", lambda k: k.ap_dfs(3, n_ap, bounds, (), 0, -1)),
        ("grid_dfs s=2, N=5", lambda k: k.grid_dfs(2, 5, -1)),
        ("row_bound_certify a=1..2000", lambda k: [k.row_bound_certify(a) for a in range(1, 2001)]),
    ]


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--quick", action="store_true")
    args = parser.parse_args()

    print(f"{'kernel':40s} {'python [s]':>12s} {'cython [s]':>12s} {'speedup':>9s}")
    for name, run in workloads(args.quick):
        py = best_of(lambda: run(_pykernels), args.repeat)
        if _kernels is None:
            print(f"{name:40s} {py:12.4f} {'n/a':>12s} {'':>9s}")
            continue
        assert run(_kernels) == run(_pykernels), name
        cy = best_of(lambda: run(_kernels), args.repeat)
        print(f"{name:40s} {py:12.4f} {cy:12.4f} {py / cy:8.1f}x")


if __name__ == "__main__":
    main()
