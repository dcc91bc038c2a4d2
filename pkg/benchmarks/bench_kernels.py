"""Compare the compiled and numpy enumeration kernels.

    python3 benchmarks/bench_kernels.py [--sizes 12 16 20] [--repeat 3]

Reports the best-of-``repeat`` wall time per backend and the speedup, and
checks that both backends return the same optimum and witness.
"""

from __future__ import annotations

import argparse
import timeit

import numpy as np

from logenc import kernels


def cases(n: int, rng: np.random.Generator) -> dict:
    a = np.triu((rng.random((n, n)) < 0.5).astype(float), 1)
    a = a + a.T
    w = rng.integers(1, 101, n)
    q = a - np.diag(w)
    x0 = rng.choice([-1, 1], n)
    return {
        "maxcut_enumerate": lambda b: kernels.maxcut_enumerate(a, backend=b),
        "qubo_enumerate": lambda b: kernels.qubo_enumerate(q, backend=b),
        "partition_enumerate": lambda b: kernels.partition_enumerate(w * 1000 + 1, backend=b),
        "local_search_maxcut": lambda b: kernels.local_search_maxcut(a, x0, backend=b),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--sizes", type=int, nargs="*", default=[12, 16, 20])
    parser.add_argument("--repeat", type=int, default=3)
    args = parser.parse_args()

    backends = kernels.available_backends()
    if "cython" not in backends:
        print("compiled kernels not built; only the numpy backend is available")
    rng = np.random.default_rng(0)
    header = f"{'kernel':<22}{'n':>4}" + "".join(f"{b + ' ms':>14}" for b in backends)
    print(header + (f"{'speedup':>10}" if len(backends) > 1 else ""))
    for n in args.sizes:
        for name, fn in cases(n, rng).items():
            results = [fn(b) for b in backends]
            if len(results) > 1:
                same = (np.array_equal(results[0], results[1]) if isinstance(results[0], np.ndarray)
                        else results[0][1] == results[1][1])
                if not same:
                    raise SystemExit(f"{name} n={n}: backends disagree")
            times = [min(timeit.repeat(lambda: fn(b), number=1, repeat=args.repeat)) for b in backends]
            row = f"{name:<22}{n:>4}" + "".join(f"{t * 1e3:>14.2f}" for t in times)
            if len(times) > 1:
                row += f"{times[0] / times[1]:>9.1f}x"
            print(row)


if __name__ == "__main__":
    main()
