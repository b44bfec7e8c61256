"""Compare the numba and pure-numpy kernel paths.

    python benchmarks/bench_kernels.py
    python benchmarks/bench_kernels.py --sizes 50 100 300 --repeat 5

Both paths are called explicitly, so the DSRATING_DISABLE_NUMBA flag only
matters if it hides numba entirely (then just the numpy column is printed).
"""
import argparse
import time

import numpy as np

from dsrating import kernels
from dsrating.dataio import builtin
from dsrating.matrix import svd
from dsrating.variants import VariantConfig, Variant, run


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def bench_svd(sizes, repeat, rng):
    print(f"{'svd shape':>14} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8} {'max |dsv|':>10}")
    for n in sizes:
        shape = (n, max(2, n * 3 // 4))
        a = rng.normal(size=shape)
        t_np = best_of(lambda: svd(a, use_numba=False), repeat)
        line = f"{str(shape):>14} {1e3 * t_np:10.2f}"
        if kernels.HAS_NUMBA:
            svd(a, use_numba=True)  # compile
            t_nb = best_of(lambda: svd(a, use_numba=True), repeat)
            diff = np.abs(svd(a, use_numba=False).singular_values
                          - svd(a, use_numba=True).singular_values).max()
            line += f" {1e3 * t_nb:10.2f} {t_np / t_nb:8.1f} {diff:10.1e}"
        print(line)


def bench_midrank(sizes, repeat, rng):
    print(f"{'midrank shape':>14} {'numpy ms':>10} {'numba ms':>10} {'speedup':>8}")
    for n in sizes:
        x = rng.integers(1, 8, size=(n * 20, 12)).astype(float)
        t_np = best_of(lambda: kernels.midrank_rows(x, use_numba=False), repeat)
        line = f"{str(x.shape):>14} {1e3 * t_np:10.2f}"
        if kernels.HAS_NUMBA:
            kernels.midrank_rows(x, use_numba=True)
            t_nb = best_of(lambda: kernels.midrank_rows(x, use_numba=True), repeat)
            assert np.array_equal(kernels.midrank_rows(x, use_numba=False),
                                  kernels.midrank_rows(x, use_numba=True))
            line += f" {1e3 * t_nb:10.2f} {t_np / t_nb:8.1f}"
        print(line)


def bench_pipeline(repeat):
    r = builtin("crimes_no_homicide")
    print(f"{'pipeline':>14} {'numpy ms':>10} {'numba ms':>10}")
    for v in Variant:
        t_np = best_of(lambda: run(r, VariantConfig(v, use_numba=False)), repeat)
        line = f"{v.value:>14} {1e3 * t_np:10.2f}"
        if kernels.HAS_NUMBA:
            run(r, VariantConfig(v, use_numba=True))
            line += f" {1e3 * best_of(lambda: run(r, VariantConfig(v, use_numba=True)), repeat):10.2f}"
        print(line)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[20, 50, 100, 200])
    parser.add_argument("--repeat", type=int, default=3)
    parser.add_argument("--seed", type=int, default=0)
    args = parser.parse_args()
    rng = np.random.default_rng(args.seed)
    print(f"numba available: {kernels.HAS_NUMBA}")
    bench_svd(args.sizes, args.repeat, rng)
    bench_midrank(args.sizes, args.repeat, rng)
    bench_pipeline(args.repeat)


if __name__ == "__main__":
    main()
