"""Benchmark the numba kernels against their numpy fallbacks.

Usage: python benchmarks/bench_kernels.py [--repeat N]

Runs each whole-table scan on the worked grid instances and on a dense
random table, once per backend, and prints a comparison table.  The
first numba call is warmed separately so compilation does not pollute
the numbers.
"""

import argparse
import os
import time

import numpy as np

from effalg import kernels
from effalg.core import GridAlgebra, ProductAlgebra


def timed(fn, *args, repeat=3):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best


def cases():
    g83 = GridAlgebra(8, 3)
    prod = ProductAlgebra(GridAlgebra(8, 1), GridAlgebra(4, 2))
    yield "mv(8,3) n=729", g83
    yield "L8 x mv(4,2) n=225", prod
    yield "mv(16,2) n=289", GridAlgebra(16, 2)


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    backends = ["numpy"] + (["numba"] if kernels.HAS_NUMBA else [])
    if "numba" in backends:  # warm the jit cache outside the timings
        os.environ["EA_KERNELS"] = "numba"
        tiny = np.array([[0, 1], [1, -1]], dtype=np.int32)
        kernels.associativity_violation(tiny)
        kernels.cancellation_violation(tiny)
        kernels.map_additivity_violation(tiny, np.array([0, 1]))

    rows = []
    for name, E in cases():
        S, omi, leq = E.sum_table, E.ominus_table, E.leq_table
        J = np.minimum(E.coords, E.coords[E.size - 1]) @ getattr(E, "strides", 1) \
            if isinstance(E, GridAlgebra) else np.arange(E.size)
        pidx = np.array([E.zero, E.one])
        in_p = np.zeros(E.size, dtype=bool)
        in_p[[E.zero, E.one]] = True
        for label, fn, fargs in [
            ("associativity", kernels.associativity_violation, (S,)),
            ("cancellation", kernels.cancellation_violation, (S,)),
            ("map-additivity", kernels.map_additivity_violation, (S, J)),
            ("normality", kernels.normality_violation, (S, omi, leq, pidx, in_p)),
        ]:
            times = {}
            for backend in backends:
                os.environ["EA_KERNELS"] = backend
                times[backend] = timed(fn, *fargs, repeat=args.repeat)
            speedup = times["numpy"] / times.get("numba", times["numpy"])
            rows.append((name, label, times["numpy"], times.get("numba"), speedup))

    print(f"{'case':24} {'kernel':16} {'numpy [s]':>10} {'numba [s]':>10} {'speedup':>8}")
    for name, label, tnp, tnb, sp in rows:
        nb = f"{tnb:10.4f}" if tnb is not None else "       n/a"
        print(f"{name:24} {label:16} {tnp:10.4f} {nb} {sp:8.1f}x")


if __name__ == "__main__":
    main()
