"""Time the compiled and pure-Python elimination kernels on the same inputs.

    python3 benchmarks/bench_kernel.py [--repeat 3]
"""

import argparse
import time

import numpy as np

from surfqp import adjacency_quiver, add_puncture, once_punctured_genus, sphere_base
from surfqp.path_algebra import ScalarAssignment
from surfqp.path_algebra._backend import get_kernel

CASES = [
    ("torus", lambda: once_punctured_genus(1), 14),
    ("sphere-4", lambda: sphere_base(4), 10),
    ("sphere-5", lambda: sphere_base(5), 10),
    ("sphere-6", lambda: sphere_base(6), 10),
    ("torus+1", lambda: add_puncture(once_punctured_genus(1)), 14),
]


def run_kernel(kmod, q, N):
    c = ScalarAssignment.default(q)
    return kmod.binomial_classes(q.f, q.g, q.n, q.g_orbit_of, q.n_vertices, N, len(c.values))


def best_of(fn, repeat):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()
    py = get_kernel("python")
    try:
        cy = get_kernel("compiled")
    except ImportError:
        print("compiled kernel not built; run `pip install -e . --no-build-isolation`")
        return
    print(f"{'case':<10} {'N':>3} {'paths':>9} {'python s':>10} {'compiled s':>11} {'speedup':>8}  same")
    for name, make, N in CASES:
        q = adjacency_quiver(make())
        t_py, r_py = best_of(lambda: run_kernel(py, q, N), args.repeat)
        t_cy, r_cy = best_of(lambda: run_kernel(cy, q, N), args.repeat)
        same = np.array_equal(r_py[2][r_py[0]], r_cy[2][r_cy[0]])
        print(f"{name:<10} {N:>3} {len(r_py[0]):>9} {t_py:>10.3f} {t_cy:>11.4f} {t_py / t_cy:>7.0f}x  {same}")


if __name__ == "__main__":
    main()
