"""Benchmark the numba kernels against the pure-numpy fallback.

Times the two hot paths on the workloads that dominate real runs: the
per-word stats call (distinct count + last-symbol coverage) over random
words, and a full exhaustive binary search at a given length.

Usage:
    python benchmarks/bench_kernels.py [--n-random 2000] [--len 32] [--sigma 4]
                                       [--search-n 12]

Run with ABSQ_NO_NUMBA=1 to confirm the fallback selection path; this script
itself times both backends directly regardless of the flag.
"""

import argparse
import time

import numpy as np

from absq import _kernels
from absq.words import iter_canonical_arrays


def time_stats(fn, corpus, sigma):
    t0 = time.perf_counter()
    acc = 0
    for sym in corpus:
        k, covered = fn(sym, sigma)
        acc += k + covered
    return time.perf_counter() - t0, acc


def time_search(fn, n, sigma):
    t0 = time.perf_counter()
    best = 0
    for buf in iter_canonical_arrays(n, sigma):
        k, _ = fn(buf, sigma)
        if k > best:
            best = k
    return time.perf_counter() - t0, best


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n-random", type=int, default=2000)
    parser.add_argument("--len", dest="length", type=int, default=32)
    parser.add_argument("--sigma", type=int, default=4)
    parser.add_argument("--search-n", type=int, default=12)
    parser.add_argument("--seed", type=int, default=7)
    args = parser.parse_args()

    if not _kernels._HAVE_NUMBA:
        print("numba backend unavailable (ABSQ_NO_NUMBA set or numba missing); "
              "timing the fallback only")

    rng = np.random.default_rng(args.seed)
    corpus = [rng.integers(0, args.sigma, size=args.length).astype(np.int64)
              for _ in range(args.n_random)]

    rows = []
    if _kernels._HAVE_NUMBA:
        _kernels.warmup()  # exclude JIT compilation from the timings
        nb_t, nb_acc = time_stats(_kernels.stats_numba, corpus, args.sigma)
        rows.append(("stats/random", "numba", nb_t, args.n_random))
    np_t, np_acc = time_stats(_kernels.stats_numpy, corpus, args.sigma)
    rows.append(("stats/random", "numpy", np_t, args.n_random))
    if _kernels._HAVE_NUMBA and nb_acc != np_acc:
        raise SystemExit(f"backend mismatch on random corpus: {nb_acc} vs {np_acc}")

    if _kernels._HAVE_NUMBA:
        nb_t, nb_best = time_search(_kernels.stats_numba, args.search_n, 2)
        rows.append((f"search/binary n={args.search_n}", "numba", nb_t, 2 ** (args.search_n - 1)))
    np_t, np_best = time_search(_kernels.stats_numpy, args.search_n, 2)
    rows.append((f"search/binary n={args.search_n}", "numpy", np_t, 2 ** (args.search_n - 1)))
    if _kernels._HAVE_NUMBA and nb_best != np_best:
        raise SystemExit(f"backend mismatch on search: {nb_best} vs {np_best}")

    print(f"{'workload':<24} {'backend':<8} {'total s':>10} {'per word us':>12}")
    print("-" * 58)
    base: dict[str, float] = {}
    for workload, backend, total, count in rows:
        print(f"{workload:<24} {backend:<8} {total:>10.3f} {1e6 * total / count:>12.2f}")
        if backend == "numba":
            base[workload] = total
        elif workload in base and total > 0:
            print(f"{'':<24} {'speedup':<8} {total / base[workload]:>10.1f}x")


if __name__ == "__main__":
    main()
