"""Compare the compiled chart kernels with the pure-Python fallback.

    python benchmarks/bench_kernels.py [--repeat N]
"""
import argparse
import time

from hilbert_sturm import _kernels_py
from hilbert_sturm.bounds import hecke_bound
from hilbert_sturm.cuspres import resolve_all_cusps

try:
    from hilbert_sturm import _kernels
except ImportError:
    _kernels = None

CASES = [  # (D, cusp, weight, s)
    (29, 0, 100, 1),
    (40, 0, 100, 1),
    (44, 0, 100, 1),
    (40, 1, 50, 1),
]


def best_of(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled kernels not built; only the fallback is available")
    print(f"{'case':<24}{'points':>9}{'python s':>11}{'cython s':>11}{'speedup':>9}")
    for D, i0, w, s in CASES:
        cyc = resolve_all_cusps(D)[i0].cycle
        T = hecke_bound(D, None, i0, w, s).T
        n = len(_kernels_py.chart_points(cyc, T))
        tp = best_of(lambda: _kernels_py.chart_points(cyc, T), args.repeat)
        if _kernels is not None:
            assert _kernels.chart_points(cyc, T) == _kernels_py.chart_points(cyc, T)
            tc = best_of(lambda: _kernels.chart_points(cyc, T), args.repeat)
            print(f"D={D} cusp={i0} 2k={w:<8}{n:>9}{tp:>11.4f}{tc:>11.4f}{tp / tc:>8.1f}x")
        else:
            print(f"D={D} cusp={i0} 2k={w:<8}{n:>9}{tp:>11.4f}{'-':>11}{'-':>9}")


if __name__ == "__main__":
    main()
