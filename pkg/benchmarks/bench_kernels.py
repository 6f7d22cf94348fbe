#!/usr/bin/env python3
"""Benchmark the compiled kernels against the pure-numpy fallback.

Times the two hot kernels (one-sided Jacobi, water-filling bisection) and
one end-to-end Monte Carlo sweep point per backend. Run after building the
extension:

    python benchmarks/bench_kernels.py [--trials 20000]
"""

import argparse
import time

import numpy as np

from otfading import MimoModel, OfdmModel, SweepConfig, run_sweep
from otfading import _kernels_py

try:
    from otfading import _kernels_cy
except ImportError:
    _kernels_cy = None


def timeit(fn, repeats=3):
    best = float("inf")
    for _ in range(repeats):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def bench_jacobi(kernels, mats):
    def run():
        for a in mats:
            b = a.copy()
            v = np.eye(a.shape[1], dtype=np.complex128)
            kernels.jacobi_sweeps(b, v, 1e-14, 100)

    return timeit(run)


def bench_waterfill(kernels, s2, w2):
    return timeit(lambda: kernels.waterfill(s2, w2, 25.0))


def bench_sweep(backend, model, trials, monkey):
    import otfading._backend as back

    saved = (back.jacobi_sweeps, back.pair_powers, back.waterfill)
    back.jacobi_sweeps = backend.jacobi_sweeps
    back.pair_powers = backend.pair_powers
    back.waterfill = backend.waterfill
    try:
        cfg = SweepConfig(
            model=model, snr_db_points=(30.0,), trials=trials, seed=0
        )
        return timeit(lambda: run_sweep(cfg), repeats=1)
    finally:
        back.jacobi_sweeps, back.pair_powers, back.waterfill = saved


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--trials", type=int, default=20000)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    mats = [
        ((rng.standard_normal((4, 4)) + 1j * rng.standard_normal((4, 4)))
         * np.sqrt(0.5)).astype(np.complex128)
        for _ in range(2000)
    ]
    gains = np.sort(rng.uniform(0.05, 3.0, size=(20000, 4)), axis=1)[:, ::-1]
    s2 = np.ascontiguousarray(gains[:, :2] ** 2)
    w2 = np.ascontiguousarray(gains[:, :1:-1] ** 2)

    backends = [("python", _kernels_py)]
    if _kernels_cy is not None:
        backends.append(("compiled", _kernels_cy))
    else:
        print("compiled backend not built; timing the fallback only")

    rows = []
    for name, mod in backends:
        rows.append(
            (
                name,
                bench_jacobi(mod, mats),
                bench_waterfill(mod, s2, w2),
                bench_sweep(mod, OfdmModel(2), args.trials, None),
                bench_sweep(mod, MimoModel(4, 2), args.trials, None),
            )
        )

    header = (
        f"{'backend':<10} {'jacobi 4x4 x2000':>18} {'waterfill 20k rows':>20} "
        f"{'ofdm2 sweep pt':>16} {'mimo4x2 sweep pt':>18}"
    )
    print(header)
    for name, tj, tw, ts, tm in rows:
        print(f"{name:<10} {tj:>16.3f}s {tw:>18.3f}s {ts:>14.3f}s {tm:>16.3f}s")
    if len(rows) == 2:
        (_, aj, aw, as_, am), (_, bj, bw, bs, bm) = rows
        print(
            f"{'speedup':<10} {aj / bj:>17.1f}x {aw / bw:>19.1f}x "
            f"{as_ / bs:>15.1f}x {am / bm:>17.1f}x"
        )


if __name__ == "__main__":
    main()
