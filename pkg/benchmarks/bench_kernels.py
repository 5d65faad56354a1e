"""Time the numba and numpy orbit kernels against each other.

    python3 benchmarks/bench_kernels.py [--sizes 1000 10000 ...] [--repeat 5]

Face tracing runs ``orbit_labels`` on the face permutation of a chart, so the
inputs here are random permutations with many short cycles, like the face
permutation of a large chart, plus the pairing ``alpha`` for components.
"""

from __future__ import annotations

import argparse
import time

import numpy as np

from braidchart import _accel


def random_map(n_edges: int, rng: np.random.Generator, arity: int = 4):
    """Darts of a random rotation system with vertices of the given arity."""
    n = 2 * n_edges
    alpha = np.arange(n, dtype=np.int64) ^ 1
    order = rng.permutation(n)
    sigma = np.empty(n, dtype=np.int64)
    for start in range(0, n, arity):
        block = order[start:start + arity]
        sigma[block] = np.roll(block, -1)
    return alpha, sigma


def best_of(fn, repeat: int) -> float:
    best = float("inf")
    for _ in range(repeat):
        t0 = time.perf_counter()
        fn()
        best = min(best, time.perf_counter() - t0)
    return best


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--sizes", type=int, nargs="+", default=[100, 1_000, 10_000, 100_000, 1_000_000])
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)
    if not _accel.HAVE_NUMBA:
        raise SystemExit("numba is not importable; nothing to compare")

    rng = np.random.default_rng(args.seed)
    # compile outside the timed region
    a, s = random_map(8, rng)
    _accel.orbit_labels_numba(s[a])
    _accel.component_labels_numba(a, s)

    print(f"{'edges':>10} {'kernel':>10} {'numba ms':>10} {'numpy ms':>10} {'speedup':>8}")
    for n in args.sizes:
        alpha, sigma = random_map(n, rng)
        phi = sigma[alpha]
        cases = [
            ("faces", lambda: _accel.orbit_labels_numba(phi), lambda: _accel.orbit_labels_numpy(phi)),
            (
                "components",
                lambda: _accel.component_labels_numba(alpha, sigma),
                lambda: _accel.component_labels_numpy(alpha, sigma),
            ),
        ]
        for name, fast, slow in cases:
            if not np.array_equal(fast(), slow()):
                raise SystemExit(f"kernels disagree on {name} at n={n}")
            t_fast = best_of(fast, args.repeat)
            t_slow = best_of(slow, args.repeat)
            print(f"{n:>10} {name:>10} {t_fast * 1e3:>10.3f} {t_slow * 1e3:>10.3f} {t_slow / t_fast:>7.1f}x")


if __name__ == "__main__":
    main()
