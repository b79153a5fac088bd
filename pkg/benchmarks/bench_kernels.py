"""Timing comparison of the compiled and pure-numpy quaternion kernels.

Runs the raw kernel sweep (apply_word and apply_word_jac over a grid of
strand counts and word lengths) and one end-to-end fixed-point count
with each backend.  The end-to-end numbers bound the practical benefit:
the solver spends part of its time in numpy linear algebra that the
backend choice does not touch.

Usage: python benchmarks/bench_kernels.py [--repeat N] [--seed S]
"""

import argparse
import math
import random
import time

import numpy as np

from gasslin import _su2core_py as py_kernel
from gasslin import kernels
from gasslin.braids import ColoredBraidWord, random_cc_braid
from gasslin.cassonlin import casson_lin

try:
    from gasslin import _su2core as cy_kernel
except ImportError:
    cy_kernel = None


def random_word(rng, n, length):
    return tuple(
        rng.randint(1, n - 1) * (1 if rng.random() < 0.5 else -1)
        for _ in range(length)
    )


def time_call(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def kernel_sweep(repeat, seed):
    rng = random.Random(seed)
    nprng = np.random.default_rng(seed)
    print("raw kernels (best of %d, times in microseconds)" % repeat)
    header = "%-28s %10s %10s %8s" % ("case", "numpy", "cython", "ratio")
    print(header)
    print("-" * len(header))
    for n, length in ((2, 6), (3, 12), (5, 12), (5, 40), (8, 60)):
        word = random_word(rng, n, length)
        X = nprng.normal(size=(n, 4))
        X /= np.linalg.norm(X, axis=1)[:, None]
        dX = nprng.normal(size=(n, 2 * n, 4))
        inner = 200
        for tag, args in (
            ("apply_word", (word, X)),
            ("apply_word_jac", (word, X, dX)),
        ):
            def run(mod, args=args, tag=tag):
                f = getattr(mod, tag)
                for _ in range(inner):
                    f(*args)

            t_py = time_call(lambda: run(py_kernel), repeat) / inner
            if cy_kernel is None:
                print("%-28s %10.1f %10s %8s" % (
                    "%s n=%d len=%d" % (tag, n, length), t_py * 1e6, "-", "-"))
                continue
            t_cy = time_call(lambda: run(cy_kernel), repeat) / inner
            print("%-28s %10.1f %10.1f %7.1fx" % (
                "%s n=%d len=%d" % (tag, n, length),
                t_py * 1e6, t_cy * 1e6, t_py / t_cy))


def end_to_end(seed):
    cases = [
        ("trefoil pi/2", ColoredBraidWord(2, (1, 1), (1, 1, 1)), [math.pi / 2]),
        ("clasp m=1", ColoredBraidWord(3, (1, 1, 2), (1, 1, 1, 2, 2)), [1.0, 0.8]),
    ]
    backends = [("numpy", py_kernel)]
    if cy_kernel is not None:
        backends.append(("cython", cy_kernel))
    print("\nend-to-end fixed-point count (one run each)")
    saved = (kernels.apply_word, kernels.apply_word_jac, kernels.BACKEND)
    try:
        for name, braid, alphas in cases:
            row = ["%-16s" % name]
            for label, mod in backends:
                kernels.apply_word = mod.apply_word
                kernels.apply_word_jac = mod.apply_word_jac
                kernels.BACKEND = label
                t0 = time.perf_counter()
                res = casson_lin(braid, alphas, seed=seed, restarts=60)
                dt = time.perf_counter() - t0
                row.append("%s %6.2fs (h=%d)" % (label, dt, res.h))
            print("  ".join(row))
    finally:
        kernels.apply_word, kernels.apply_word_jac, kernels.BACKEND = saved


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args()
    if cy_kernel is None:
        print("compiled kernel not importable; showing numpy only")
    kernel_sweep(args.repeat, args.seed)
    end_to_end(args.seed)


if __name__ == "__main__":
    main()
