"""Benchmark the compiled kernels against the numpy fallback.

Usage: python benchmarks/bench_kernels.py [--n 65536] [--repeat 20]
"""

import argparse
import time

import numpy as np

import pcowave._kernels as kernels
from pcowave import build_basis
from pcowave.pyramid import data_window


def timeit(fn, repeat):
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--n", type=int, default=65536)
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args()

    backends = kernels.backends()
    if "cython" not in backends:
        print("compiled backend not built; run pip install -e . first")

    basis = build_basis(10, 12)
    rng = np.random.default_rng(0)
    x = rng.normal(0.0, 1.0, args.n)
    level = 12
    k_lo, k_hi = data_window(basis, level, float(x.min()), float(x.max()))
    grid = np.linspace(-4.0, 4.0, 2 ** 14)

    cases = {}
    for name, mod in backends.items():
        coeffs = mod.fit_coeffs(basis.phi_table, basis.grid_origin,
                                1.0 / basis.step, False, basis.support_radius,
                                x, level, k_lo, k_hi)
        out_lo, out_hi = data_window(basis, level - 1, float(x.min()),
                                     float(x.max()))
        cases[name] = {
            "fit_coeffs": lambda m=mod: m.fit_coeffs(
                basis.phi_table, basis.grid_origin, 1.0 / basis.step, False,
                basis.support_radius, x, level, k_lo, k_hi),
            "analysis_step": lambda m=mod, c=coeffs: m.analysis_step(
                c, k_lo, basis.lowpass, -basis.shift, out_lo, out_hi),
            "eval_expansion": lambda m=mod, c=coeffs: m.eval_expansion(
                c, k_lo, level, basis.phi_table, basis.grid_origin,
                1.0 / basis.step, False, basis.support_radius, grid),
        }

    names = list(next(iter(cases.values())))
    print(f"n={args.n}, level={level}, grid={len(grid)} nodes, "
          f"best of {args.repeat}")
    header = f"{'kernel':<16}" + "".join(f"{b:>12}" for b in cases)
    if len(cases) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for kernel in names:
        times = {b: timeit(cases[b][kernel], args.repeat) for b in cases}
        row = f"{kernel:<16}" + "".join(f"{times[b] * 1e3:>10.2f}ms"
                                        for b in cases)
        if len(times) == 2:
            py, cy = times.get("python"), times.get("cython")
            row += f"{py / cy:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
