#!/usr/bin/env python3
"""Time the independence kernel on every backend.

The kernel decides, for all pairs of set partitions of n atoms, whether the
two partitions are independent. Run with SEPMODELS_NO_NUMBA=1 to see the
numpy fallback as the default backend.
"""

import argparse
import timeit
from fractions import Fraction

from sepmodels._kernels import BACKEND, HAVE_NUMBA, independence_matrix, set_partition_labels


def masses_for(n: int) -> list[Fraction]:
    weights = [k + 1 for k in range(n)]
    total = sum(weights)
    return [Fraction(w, total) for w in weights]


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="+", default=[4, 5, 6])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args(argv)

    backends = ["numpy", "python"] + (["numba"] if HAVE_NUMBA else [])
    print(f"default backend: {BACKEND}; best of {args.repeat} runs, seconds per call\n")
    print(f"{'atoms':>5} {'pairs':>8} " + " ".join(f"{b:>10}" for b in backends))
    for n in args.sizes:
        labels = set_partition_labels(n)
        masses = masses_for(n)
        if HAVE_NUMBA:
            independence_matrix(labels[:2], labels[:2], masses, "numba")  # compile outside the timing
        row = []
        for backend in backends:
            number = 1 if backend == "python" and n >= 6 else 3
            times = timeit.repeat(lambda: independence_matrix(labels, labels, masses, backend),
                                  number=number, repeat=args.repeat)
            row.append(min(times) / number)
        print(f"{n:>5} {len(labels) ** 2:>8} " + " ".join(f"{t:>10.4g}" for t in row))


if __name__ == "__main__":
    main()
