"""Compare the compiled and pure-Python elimination kernels.

Workloads are coboundary matrices from real cohomology computations plus
random sparse matrices.  Both backends must agree on every rank; the script
exits nonzero if they do not.

    python benchmarks/bench_kernels.py [--repeat 3] [--size 400]
"""

from __future__ import annotations

import argparse
import random
import sys
import time

from ainfty import catalog, linalg
from ainfty.cohomology import HOCHSCHILD, _coordinates, delta_columns
from ainfty.graded import QQ, FieldSpec


def coboundary_workloads(field):
    A = catalog.matrix_algebra(1, field)
    M = A.as_bimodule()
    out = []
    for n, k in [(4, -2), (4, 0), (5, -3), (5, 0)]:
        cols = delta_columns(A, M, n, k, HOCHSCHILD)
        out.append((f"M2 delta ({n},{k})", list(cols), len(_coordinates(A, M, n + 1, k))))
    return out


def random_workload(rng, size, density, field):
    rows = []
    for _ in range(size):
        row = {j: rng.randint(-9, 9) for j in rng.sample(range(size), max(1, int(density * size)))}
        rows.append({j: field.reduce(v) for j, v in row.items() if field.reduce(v)})
    return [(f"random {size}x{size} density {density}", rows, size)]


def timed(rows, ncols, field, repeat):
    best = float("inf")
    r = None
    for _ in range(repeat):
        t = time.perf_counter()
        r = linalg.rank(rows, field, ncols)
        best = min(best, time.perf_counter() - t)
    return r, best


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--size", type=int, default=300)
    args = parser.parse_args(argv)
    if not linalg.compiled_available():
        print("compiled kernels are not built; only the Python backend is available")
        return 1
    rng = random.Random(0)
    ok = True
    print(f"{'workload':<36} {'field':<5} {'rank':>6} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for field in (FieldSpec.prime(32003), QQ):
        loads = coboundary_workloads(field) + random_workload(rng, args.size, 0.02, field)
        for name, rows, ncols in loads:
            linalg.use_backend("python")
            r_py, t_py = timed(rows, ncols, field, args.repeat)
            linalg.use_backend("cython")
            r_cy, t_cy = timed(rows, ncols, field, args.repeat)
            ok &= r_py == r_cy
            print(f"{name:<36} {str(field):<5} {r_cy:>6} {t_py:>10.4f} {t_cy:>10.4f} {t_py / t_cy:>7.1f}x")
    if not ok:
        print("rank mismatch between backends")
    return 0 if ok else 1


if __name__ == "__main__":
    sys.exit(main())
