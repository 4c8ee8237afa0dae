#!/usr/bin/env python3
"""Compare the numba and numpy kernel backends on the hot paths.

Usage: python benchmarks/bench_kernels.py [--pairs 200] [--wordpieces 24]
       [--dim 64] [--repeats 5] [--epsilon 0.05]
"""

import argparse
import time

import numpy as np

from crossproj import kernels


def time_call(fn, repeats):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - start)
    return best


def run_backend(name, batches, eps, repeats):
    kernels.set_backend(name)
    # warm up (JIT compilation for numba)
    kernels.pairwise_cosine(batches[0][0], batches[0][1])
    kernels.softmax_rows(np.ones((4, 4)), 1.0)
    kernels.sinkhorn_log(np.ones((4, 4)), np.full(4, 0.25), np.full(4, 0.25), 0.1, 10, 1e-9)

    def sims():
        for src, tgt in batches:
            kernels.pairwise_cosine(src, tgt)
            kernels.pairwise_dot(src, tgt)

    def softmaxes():
        for src, tgt in batches:
            s = kernels.pairwise_dot(src, tgt)
            kernels.softmax_rows(s, 1.0)
            kernels.softmax_rows(s.T, 1.0)

    def transports():
        for src, tgt in batches:
            s = kernels.pairwise_dot(src, tgt)
            q, p = s.shape
            kernels.sinkhorn_log(-s, np.full(p, 1 / p), np.full(q, 1 / q), eps, 1000, 1e-9)

    rows = {}
    for label, fn in (("similarity", sims), ("softmax", softmaxes), ("sinkhorn", transports)):
        rows[label] = time_call(fn, repeats)
    kernels.set_backend(None)
    return rows


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--pairs", type=int, default=200)
    parser.add_argument("--wordpieces", type=int, default=24)
    parser.add_argument("--dim", type=int, default=64)
    parser.add_argument("--repeats", type=int, default=5)
    parser.add_argument("--epsilon", type=float, default=0.05)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    batches = [(rng.normal(size=(args.wordpieces, args.dim)),
                rng.normal(size=(args.wordpieces, args.dim)))
               for _ in range(args.pairs)]

    backends = ["numpy"] + (["numba"] if kernels.HAVE_NUMBA else [])
    results = {name: run_backend(name, batches, args.epsilon, args.repeats)
               for name in backends}

    print(f"{args.pairs} sentence pairs, {args.wordpieces} word-pieces, dim {args.dim}, "
          f"best of {args.repeats}")
    header = f"{'kernel':<12}" + "".join(f"{name:>12}" for name in backends)
    if len(backends) == 2:
        header += f"{'speedup':>10}"
    print(header)
    for label in ("similarity", "softmax", "sinkhorn"):
        row = f"{label:<12}" + "".join(f"{results[n][label] * 1e3:>10.1f}ms" for n in backends)
        if len(backends) == 2:
            row += f"{results['numpy'][label] / results['numba'][label]:>9.1f}x"
        print(row)


if __name__ == "__main__":
    main()
