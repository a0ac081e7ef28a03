#!/usr/bin/env python3
"""Benchmark the numba kernels against the pure-numpy fallbacks.

Runs each hot kernel on identical inputs under both backends and prints a
throughput table.  Usage::

    python benchmarks/bench_backends.py [--trials 1000000] [--repeat 3]

The numba figures exclude JIT compilation (one warmup call per kernel).
"""

from __future__ import annotations

import argparse
import math
import time

import numpy as np

from cycle4 import _batch_numpy
from cycle4.audit import TOLS
from cycle4.angles import build_frame, max_psi_tight
from cycle4.region import SpectralPoint

try:
    from cycle4 import _batch_numba
except ImportError:
    _batch_numba = None


def _time(fn, repeat):
    best = math.inf
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--trials", type=int, default=1_000_000)
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args()

    rng = np.random.Generator(np.random.Philox(key=np.array([7, 0], dtype=np.uint64)))
    params = rng.random((args.trials, 4)) * (1 - 1e-6)
    id_samples = rng.random((args.trials, 10))
    cx_samples = rng.random((args.trials, 3))
    frame = build_frame(SpectralPoint(0.05, 0.4))
    closed = max_psi_tight(frame)

    cases = {
        "necessity_block": lambda mod, n: mod.necessity_block(
            params[:n], 1e-10, TOLS.necessity_a, TOLS.necessity_edge, TOLS.necessity_g, TOLS.solver_residual, 0.0
        ),
        "identities_block": lambda mod, n: mod.identities_block(id_samples[:n], False),
        "convexity_block": lambda mod, n: mod.convexity_block(
            cx_samples[:n], TOLS.convexity_fd_step, TOLS.convexity_fd_step, TOLS.convexity_top_inset, False
        ),
        "karamata_scan": lambda mod, n: mod.karamata_scan(
            frame.x, frame.y, frame.m, frame.M, frame.U, 40, closed, 0.0
        ),
    }

    print(f"{'kernel':<18} {'numpy':>12} {'numba':>12} {'speedup':>9}")
    for name, call in cases.items():
        n = args.trials
        t_np = _time(lambda: call(_batch_numpy, n), args.repeat)
        if _batch_numba is not None:
            call(_batch_numba, min(n, 128))  # warmup compiles the kernel
            t_nb = _time(lambda: call(_batch_numba, n), args.repeat)
            print(f"{name:<18} {t_np:>11.4f}s {t_nb:>11.4f}s {t_np / t_nb:>8.1f}x")
        else:
            print(f"{name:<18} {t_np:>11.4f}s {'n/a':>12} {'':>9}")
    per = "per call" if _batch_numba else ""
    print(f"\ntrials={args.trials}; karamata_scan is one 40^3 grid scan {per}")


if __name__ == "__main__":
    main()
