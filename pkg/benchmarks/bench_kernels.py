#!/usr/bin/env python
"""Time the compiled and numpy kernels side by side.

    python benchmarks/bench_kernels.py --rank 20 --repeat 5
"""
from __future__ import annotations

import argparse
import time

import numpy as np

from qdnsim import kernels
from qdnsim.localops import random_semiunitary


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def cases(rank: int, rng: np.random.Generator):
    dim = 1 << rank
    amps = rng.standard_normal(dim) + 1j * rng.standard_normal(dim)
    amps /= np.linalg.norm(amps)
    batch = amps[None, :]
    u1 = random_semiunitary(1, rng)
    u2 = random_semiunitary(2, rng)
    u4 = random_semiunitary(4, rng)
    mid = rank // 2
    return {
        "projector": lambda impl: impl.mask_bit(batch, mid, True),
        "create": lambda impl: impl.raise_bit(batch, mid),
        "local op, 1 detector": lambda impl: impl.apply_local(amps, np.array([mid]), u1),
        "local op, 2 detectors": lambda impl: impl.apply_local(amps, np.array([0, rank - 1]), u2),
        "local op, 4 detectors": lambda impl: impl.apply_local(amps, np.array([0, 3, mid, rank - 1]), u4),
        "distribution, 4 detectors": lambda impl: impl.subset_probabilities(
            amps, np.array([1, 4, mid, rank - 1])),
        "partial question": lambda impl: impl.masked_norm2(amps, 0b1011, 0b0010),
    }


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--rank", type=int, default=20)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--seed", type=int, default=0)
    args = p.parse_args()

    backends = [("numpy", kernels.pure)]
    if kernels.compiled is not None:
        backends.append(("cython", kernels.compiled))
    else:
        print("compiled kernels not built; timing numpy only")

    rng = np.random.default_rng(args.seed)
    table = cases(args.rank, rng)
    names = [n for n, _ in backends]
    print(f"rank {args.rank}, best of {args.repeat} (ms)")
    print(f"{'kernel':<28}" + "".join(f"{n:>10}" for n in names) + ("   speedup" if len(names) > 1 else ""))
    for label, fn in table.items():
        times = [best_of(lambda: fn(impl), args.repeat) for _, impl in backends]
        row = f"{label:<28}" + "".join(f"{t * 1e3:>10.2f}" for t in times)
        if len(times) > 1:
            row += f"{times[0] / times[1]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
