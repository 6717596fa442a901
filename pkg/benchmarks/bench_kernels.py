"""Time the numba kernels against their numpy counterparts on realistic inputs.

    python benchmarks/bench_kernels.py [--repeat 5]

Both backends are imported in one process: the numba versions are the
compiled kernels from ``adamsring._accel`` (unless numba is disabled) and the
numpy versions come straight from ``adamsring._kernels``.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from adamsring import _accel, _kernels
from adamsring.chartab import character_table, dixon_prime
from adamsring.groups import direct_product, symmetric, cyclic


def _best(fn, args, repeat):
    fn(*args)  # compile / warm caches
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        times.append(time.perf_counter() - t0)
    return min(times)


def workloads():
    G = direct_product(symmetric(5), cyclic(2))
    cd = G.conjugacy
    r = len(cd)
    reps = np.array(cd.representatives, dtype=np.int64)
    class_of = np.asarray(cd.class_of, dtype=np.int64)
    T = character_table(G)
    X = np.ascontiguousarray(T.multiplicities)
    w = np.array(cd.sizes, dtype=np.int64)
    p = dixon_prime(G.order, G.exponent)
    rng = np.random.default_rng(0)
    M = rng.integers(0, p, size=(60, 60), dtype=np.int64)
    R = rng.integers(0, p, size=(80, 120), dtype=np.int64)
    return {
        f"associativity_failure (|G|={G.order})": ("associativity_failure", (G.mul,)),
        f"class_constants ({r} classes)": ("class_constants", (G.mul, G.inv, class_of, reps, r)),
        "rref_mod_p (80x120)": ("rref_mod_p", (R, p)),
        "charpoly_mod_p (60x60)": ("charpoly_mod_p", (M, p)),
        f"pair_sums ({r} chars, e={T.exponent})": ("pair_sums", (X, X, w)),
        f"products ({r} chars, e={T.exponent})": ("products", (X, X)),
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()
    fast = _accel._impl
    print(f"active backend: {_accel.BACKEND}")
    print(f"{'kernel':42s} {'numba [ms]':>11s} {'numpy [ms]':>11s} {'ratio':>7s}")
    for label, (name, inputs) in workloads().items():
        a = _best(fast[name], inputs, args.repeat)
        b = _best(_kernels.NUMPY_KERNELS[name], inputs, args.repeat)
        print(f"{label:42s} {a * 1e3:11.3f} {b * 1e3:11.3f} {b / a:7.1f}x")


if __name__ == "__main__":
    main()
