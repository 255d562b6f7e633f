"""Compare the compiled kernels with their numpy twins.

    python benchmarks/bench_kernels.py [--size N]

Both variants are always importable; ``CORNER_BILLIARDS_NO_JIT`` only picks
which one the package dispatches to.
"""

import argparse
import time
from pathlib import Path

import numpy as np

from corner_billiards import kernels, load_table, reduce_table

FIXTURES = Path(__file__).resolve().parent.parent / "tests" / "fixtures"


def best_of(fn, repeat=5):
    fn()  # warm-up, includes compilation
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--size", type=int, default=100_000)
    parser.add_argument("--rays", type=int, default=20_000)
    args = parser.parse_args()
    rng = np.random.default_rng(0)

    m = args.size
    v, w = rng.uniform(-10, 10, (2, m, 3))
    n = rng.normal(size=(m, 3))
    n /= np.linalg.norm(n, axis=1, keepdims=True)
    r = rng.uniform(0.05, 5.0, m)
    inertia = 0.5 * r * r

    table = load_table(FIXTURES / "sinai.json")
    kinds, geom = table.packed
    pts = rng.uniform(0.0, 2.0, (m, 2))

    rt = reduce_table(table, 0.1)
    rkinds, rgeom = rt.packed
    starts = pts[rt.contains(pts, tol=0.0)][: args.rays]
    angles = rng.uniform(0.0, 2 * np.pi, len(starts))
    dirs = np.column_stack([np.cos(angles), np.sin(angles)])

    def rays(impl):
        for p, d in zip(starts, dirs):
            impl(p[0], p[1], d[0], d[1], rkinds, rgeom, -1e-9, 1e-12)

    cases = [
        (f"reflect_batch rough, {m} states",
         lambda: kernels._reflect_batch_numba(v, w, n, r, inertia, True),
         lambda: kernels._reflect_batch_numpy(v, w, n, r, inertia, True)),
        (f"boundary_distances, {m} points",
         lambda: kernels._distances_numba(pts, kinds, geom),
         lambda: kernels._distances_numpy(pts, kinds, geom)),
        (f"first_hit, {len(starts)} rays",
         lambda: rays(kernels._first_hit_numba),
         lambda: rays(kernels._first_hit_numpy)),
    ]
    print(f"{'kernel':40s} {'numba [s]':>10s} {'numpy [s]':>10s} {'speed-up':>9s}")
    for name, jit, ref in cases:
        tj, tn = best_of(jit), best_of(ref)
        print(f"{name:40s} {tj:10.4f} {tn:10.4f} {tn / tj:8.1f}x")


if __name__ == "__main__":
    main()
