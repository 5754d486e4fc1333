"""Compare the compiled kernels with the numpy fallback.

    python3 benchmarks/bench_kernels.py [--repeat 5]
"""
import argparse
import time

import numpy as np

from sffbound import _kernels_py

try:
    from sffbound import _kernels
except ImportError:
    _kernels = None


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def cases(rng):
    for n_levels, n_times in ((64, 2000), (512, 2000), (4096, 1000)):
        e = np.sort(rng.normal(size=n_levels))
        w = np.exp(-e) / np.exp(-e).sum()
        om = np.linspace(0, 50, n_times)
        yield f"thermal_sums n={n_levels} t={n_times}", "thermal_sums", (e, w, om)
    for n_max in (30, 100):
        z = 2 * np.linspace(0, 10, 500) * (1 + 0.5j)
        yield f"laguerre_table n={n_max} z=500", "laguerre_table", (n_max, 2, z)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if _kernels is None:
        print("compiled extension not built; only the numpy fallback is available")
    print(f"{'case':36s} {'numpy [ms]':>11s} {'compiled [ms]':>14s} {'speedup':>8s} {'max |diff|':>11s}")
    for label, name, a in cases(np.random.default_rng(args.seed)):
        py = getattr(_kernels_py, name)
        t_py = best_of(lambda: py(*a), args.repeat)
        if _kernels is None:
            print(f"{label:36s} {1e3 * t_py:11.2f} {'-':>14s}")
            continue
        cy = getattr(_kernels, name)
        t_cy = best_of(lambda: cy(*a), args.repeat)
        ref, got = np.asarray(py(*a)), np.asarray(cy(*a))
        diff = np.max(np.abs(ref - got)) / max(1.0, np.max(np.abs(ref)))
        print(f"{label:36s} {1e3 * t_py:11.2f} {1e3 * t_cy:14.2f} {t_py / t_cy:8.2f} {diff:11.1e}")


if __name__ == "__main__":
    main()
