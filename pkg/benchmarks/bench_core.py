#!/usr/bin/env python3
"""Benchmark the compiled kernel core against the numpy fallback.

Times the three hot kernels (profile evaluation, dense Hankel matrix
assembly, angular phase-sum integrals) at sizes representative of the
acceptance pipeline and prints the speedups.  Run after building the
extension:

    python setup.py build_ext --inplace
    python benchmarks/bench_core.py
"""

import time

import numpy as np

from pwhankel import _kernels_py

try:
    from pwhankel import _fastcore
except ImportError:
    _fastcore = None


def timed(fn, *args, repeat=3):
    best = float("inf")
    out = None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn(*args)
        best = min(best, time.perf_counter() - t0)
    return best, out


def bench_psi(backend, t):
    return backend.psi_eval(t, 0.5, 1.0)


def bench_matrix(backend, args):
    return backend.hankel_matrix(*args)


def bench_phase(backend, s, n, rho):
    return backend.phase_sector_lp(s, n, rho, 1, 16, 8.0)


def main():
    rng = np.random.default_rng(7)
    cases = []

    t = rng.uniform(0.0, 1.2, size=5_000_000)
    cases.append(("psi_eval (5e6 pts)", bench_psi, (t,)))

    n_nodes = 2500
    r = 0.0625
    angles = rng.uniform(-0.5, 0.5, size=n_nodes)
    radii = rng.uniform(1.0 - 2 * r, 1.0, size=n_nodes)
    x = np.ascontiguousarray(radii * np.cos(angles))
    y = np.ascontiguousarray(radii * np.sin(angles))
    sqw = np.full(n_nodes, 1e-3)
    centers = np.array([[2.0 - r, 0.0]])
    args = (x, y, sqw, x, y, sqw, centers, r, 0.5, 1.0)
    cases.append((f"hankel_matrix ({n_nodes}^2)", bench_matrix, (args,)))

    s = np.linspace(0.01, 120.0, 6000)
    cases.append(("phase_sector_lp (6000 shells, n=16)", bench_phase, (s, 16, 2.0 - 1.0 / 64)))

    print(f"{'kernel':<38} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for name, fn, extra in cases:
        t_py, out_py = timed(fn, _kernels_py, *extra)
        if _fastcore is None:
            print(f"{name:<38} {t_py:>9.3f}s {'n/a':>10} {'n/a':>8}")
            continue
        t_c, out_c = timed(fn, _fastcore, *extra)
        ok = np.allclose(np.asarray(out_py), np.asarray(out_c), rtol=1e-12, atol=1e-14)
        flag = "" if ok else "  RESULTS DIFFER"
        print(f"{name:<38} {t_py:>9.3f}s {t_c:>9.3f}s {t_py / t_c:>7.2f}x{flag}")
    if _fastcore is None:
        print("\ncompiled extension not built; showing fallback timings only")


if __name__ == "__main__":
    main()
