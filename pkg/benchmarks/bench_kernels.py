#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-Python (numpy) fallback.

Times the rank transform, the fused bootstrap resampling kernel, and an
end-to-end bootstrap interval, on data sampled from the logistic model.
The two backends return bit-identical arrays (asserted here), so the
only difference is speed.

    python benchmarks/bench_kernels.py [--n 20000] [--k 4] [--replicates 200]
"""
import argparse
import time

import numpy as np

import maxdep as md
from maxdep import kernels


def best_of(fn, repeat=5):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n", type=int, default=20000)
    ap.add_argument("--k", type=int, default=4)
    ap.add_argument("--replicates", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    print(f"available backends: {', '.join(kernels.available_backends())}")
    if "compiled" not in kernels.available_backends():
        print("compiled kernels are not built; run "
              "'pip install -e . --no-build-isolation' with Cython installed")
        return

    spec = md.SimulationSpec(md.LogisticModel(0.5, args.k), args.n, 42)
    table = md.sample_logistic(spec)
    values = np.asarray(table.values)
    idx = np.random.default_rng(0).integers(0, args.n, size=args.n)

    cases = {
        "column_ranks (midrank)": lambda: kernels.column_ranks(values, True),
        "column_ranks (ecdf)": lambda: kernels.column_ranks(values, False),
        "resample_ranges": lambda: kernels.resample_ranges(values, idx, True),
        f"bootstrap x{args.replicates}": lambda: md.bootstrap_variogram(
            table, range(1, args.k + 1), args.replicates, seed=7
        ),
    }

    print(f"n={args.n}, k={args.k}; best of {args.repeat}\n")
    print(f"{'kernel':<28}{'python':>12}{'compiled':>12}{'speedup':>10}")
    for name, fn in cases.items():
        with kernels.use_backend("python"):
            t_py = best_of(fn, args.repeat)
            r_py = fn()
        with kernels.use_backend("compiled"):
            t_c = best_of(fn, args.repeat)
            r_c = fn()
        if isinstance(r_py, np.ndarray):
            assert np.array_equal(r_py, r_c), f"{name}: backends disagree"
        else:
            assert r_py == r_c, f"{name}: backends disagree"
        print(f"{name:<28}{t_py * 1e3:>10.2f}ms{t_c * 1e3:>10.2f}ms{t_py / t_c:>9.2f}x")
    print("\nall outputs bit-identical across backends")


if __name__ == "__main__":
    main()
