"""Compiled vs pure-Python kernels: permanent of Z(T) and tiling count.

    python3 benchmarks/bench_kernels.py [--repeat N]
"""

import argparse
import timeit

from trireg import _kernels_py
from trireg.core import build_region
from trireg.matching import biadjacency, _adjacency_lists

try:
    from trireg import _kernels
except ImportError:
    _kernels = None

HEXAGONS = [(2, 2, 2), (3, 3, 2), (3, 3, 3), (4, 3, 3)]


def hexagon(a, b, c):
    from trireg.core import Monomial

    return build_region(a + b + c, [Monomial(b + c, 0, 0), Monomial(0, a + c, 0), Monomial(0, 0, a + b)])


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()
    backends = [("python", _kernels_py)] + ([("cython", _kernels)] if _kernels else [])
    print(f"{'region':<28}{'kernel':<12}" + "".join(f"{name:>12}" for name, _ in backends) + f"{'speedup':>10}")
    for abc in HEXAGONS:
        region = hexagon(*abc)
        matrix = biadjacency(region)
        adjacency = _adjacency_lists(region)
        n = len(matrix)
        jobs = {"permanent": lambda k: k.permanent([list(r) for r in matrix])}
        jobs["count"] = lambda k: k.count_matchings(adjacency, n)
        for kernel, job in jobs.items():
            if kernel == "permanent" and n > 24:
                continue
            results, times = set(), []
            for _, mod in backends:
                results.add(job(mod))
                times.append(min(timeit.repeat(lambda: job(mod), number=1, repeat=args.repeat)))
            assert len(results) == 1, f"backends disagree on {abc} {kernel}"
            speed = f"{times[0] / times[-1]:>9.1f}x" if len(times) > 1 else f"{'-':>10}"
            label = f"hexagon{abc} n={n}"
            print(f"{label:<28}{kernel:<12}" + "".join(f"{t:>11.4f}s" for t in times) + speed)


if __name__ == "__main__":
    main()
