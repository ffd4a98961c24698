#!/usr/bin/env python3
"""Benchmark the JIT kernel backend against the pure-numpy fallback.

Runs the same seeded trial batch through the full engine twice, swapping the
kernel module in between (the engine resolves kernels.eval_* at call time,
so rebinding montecarlo.kernels is enough — benchmark-only trick).  Results
must match bit for bit; only the wall time may differ.

Usage:
    python3 benchmarks/bench_kernels.py [--trials N] [--seed S] [--hetnet]
"""

import argparse
import time

import mmwave_lattice as mwl
from mmwave_lattice import kernels, kernels_numpy
from mmwave_lattice import montecarlo


def scenario(hetnet: bool):
    if hetnet:
        hs = mwl.MultiHeightConfig(30.0, (0.4, 0.1, 0.2, 0.3))
        return mwl.HetNetScenario(hs, ((4e-5, 150.0), (2e-4, 90.0), (4e-4, 50.0))), \
            mwl.EstimatorKind("exact_hetnet")
    return mwl.SingleTierScenario(mwl.LatticeConfig(30.0, 0.3), 6e-5, 150.0), \
        mwl.EstimatorKind("exact_single")


def timed(kind, sc, trials, seed):
    t0 = time.perf_counter()
    est = mwl.estimate(kind, sc, trials, seed)
    return est, time.perf_counter() - t0


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--trials", type=int, default=20000)
    ap.add_argument("--seed", type=int, default=42)
    ap.add_argument("--hetnet", action="store_true",
                    help="benchmark the multi-tier kernel instead")
    args = ap.parse_args()

    sc, kind = scenario(args.hetnet)

    if kernels.get_backend() != "numba":
        print("numba backend not active (MMWAVE_NO_NUMBA set or numba missing); "
              "nothing to compare")
        return

    # warm up the JIT before timing
    mwl.estimate(kind, sc, 256, args.seed)

    est_jit, t_jit = timed(kind, sc, args.trials, args.seed)

    montecarlo.kernels = kernels_numpy
    try:
        # interpreter path needs no warmup, but keep the calls symmetric
        mwl.estimate(kind, sc, 256, args.seed)
        est_np, t_np = timed(kind, sc, args.trials, args.seed)
    finally:
        montecarlo.kernels = kernels

    assert est_jit == est_np, "backends disagree — this is a bug, not a slowdown"

    label = "hetnet" if args.hetnet else "single"
    print(f"workload: {label}, {args.trials} trials, seed {args.seed}, "
          f"p_hat={est_jit.p_hat:.6f}")
    print(f"numba : {t_jit:8.3f} s   {args.trials / t_jit:10.0f} trials/s")
    print(f"numpy : {t_np:8.3f} s   {args.trials / t_np:10.0f} trials/s")
    print(f"speedup: {t_np / t_jit:.1f}x")


if __name__ == "__main__":
    main()
