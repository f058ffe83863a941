"""Compare the numba and numpy kernel backends.

Times the dominant call patterns: scalar Weierstrass evaluations (the Newton
inner loop), Eisenstein values, eta evaluations, and one full Newton period
solve per type.  Run:

    python benchmarks/bench_backends.py [--repeat 20000]
"""

import argparse
import time

from periodforge import FramedPeriods, dedekind_eta, use_backend, wp, wzeta
from periodforge.elliptic import _frame_data
from periodforge.families import ALL_TYPES
from periodforge.inversion import moduli_from_frame
from periodforge.periods import periods_newton


def bench(repeat: int):
    w = FramedPeriods(1.1 + 0.1j, 0.3 + 1.2j)
    zs = 0.31 + 0.17j
    rows = {}

    t0 = time.perf_counter()
    for _ in range(repeat):
        wp(zs, w)
    rows["wp scalar"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(repeat):
        wzeta(zs, w)
    rows["wzeta scalar"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(repeat // 10):
        dedekind_eta(0.21 + 0.83j)
    rows["eta scalar (x0.1)"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for _ in range(repeat // 10):
        moduli_from_frame(ALL_TYPES[1], w)
    rows["invert b2 (x0.1)"] = time.perf_counter() - t0

    t0 = time.perf_counter()
    for t in ALL_TYPES:
        periods_newton(t, (1.3 + 0.4j, 0.7 - 0.2j))
    rows["newton all types"] = time.perf_counter() - t0
    return rows


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=20000)
    args = ap.parse_args()
    results = {}
    for backend in ("numba", "numpy"):
        name = use_backend(backend)
        _frame_data.cache_clear()
        bench(200)  # warm the JIT / caches outside the timed section
        results[name] = bench(args.repeat)
    print(f"{'kernel':24s} {'numba [s]':>12s} {'numpy [s]':>12s} {'speedup':>9s}")
    for key in results["numba"]:
        tn, tp = results["numba"][key], results["numpy"][key]
        print(f"{key:24s} {tn:12.4f} {tp:12.4f} {tp / tn:8.1f}x")
    use_backend("auto")


if __name__ == "__main__":
    main()
