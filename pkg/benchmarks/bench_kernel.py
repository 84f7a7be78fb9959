"""Compare the compiled canonicalization kernel with the pure-Python one.

Run from the repository root:

    python3 benchmarks/bench_kernel.py

The workload mirrors real usage: minimizing atom tuples over symmetric
groups of growing degree, plus a stream of single position permutations.
"""

import itertools
import random
import time

from nommon import _kernel_py

try:
    from nommon import _speedups
except ImportError:
    _speedups = None


def _workload(degree, count, seed):
    rng = random.Random(seed)
    perms = tuple(itertools.permutations(range(degree)))
    tuples = [
        tuple(rng.randrange(50) for _ in range(degree)) for _ in range(count)
    ]
    return tuples, perms


def _time(fn, tuples, perms, repeats=5):
    best = float("inf")
    for _ in range(repeats):
        start = time.perf_counter()
        for t in tuples:
            fn(t, perms)
        best = min(best, time.perf_counter() - start)
    return best


def main():
    print(f"{'degree':>6} {'tuples':>7} {'python':>10} {'compiled':>10} {'speedup':>8}")
    for degree, count in ((3, 20000), (4, 10000), (5, 4000), (6, 1000)):
        tuples, perms = _workload(degree, count, seed=degree)
        py = _time(_kernel_py.min_coset, tuples, perms)
        if _speedups is None:
            print(f"{degree:>6} {count:>7} {py:>10.4f} {'n/a':>10} {'n/a':>8}")
            continue
        cy = _time(_speedups.min_coset, tuples, perms)
        for t in tuples[:100]:
            assert _speedups.min_coset(t, perms) == _kernel_py.min_coset(t, perms)
        print(f"{degree:>6} {count:>7} {py:>10.4f} {cy:>10.4f} {py / cy:>7.1f}x")

    # single-permutation application, the inner loop of orbit closures
    tuples, perms = _workload(6, 50000, seed=0)
    p = perms[123]
    py = _time(_kernel_py.apply_positions, tuples, p)
    if _speedups is not None:
        cy = _time(_speedups.apply_positions, tuples, p)
        print(f"apply_positions: python {py:.4f}s  compiled {cy:.4f}s  {py / cy:.1f}x")
    else:
        print(f"apply_positions: python {py:.4f}s  compiled n/a")


if __name__ == "__main__":
    main()
