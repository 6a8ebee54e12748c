"""Compare the compiled kernels against the pure-Python fallback.

    python3 benchmarks/bench_kernels.py [--repeat N]

Times the index-k enumeration kernel (the brute-force loop over (k!)^n
permutation tuples) and word reduction, checks both backends agree, and
prints one line per workload.
"""

import argparse
import random
import sys
import timeit

from stallings import _kernels_py

try:
    from stallings import _kernels
except ImportError:
    sys.exit("compiled kernels are not built; run `pip install -e . --no-build-isolation` first")


def workloads():
    rng = random.Random(0)
    words = [tuple(rng.choice((1, -1, 2, -2)) for _ in range(200)) for _ in range(2000)]
    yield "enumerate n=2 k=5", lambda m: m.enumerate_canonical_actions(2, 5)
    yield "enumerate n=2 k=6", lambda m: m.enumerate_canonical_actions(2, 6)
    yield "enumerate n=3 k=4", lambda m: m.enumerate_canonical_actions(3, 4)
    yield "free_reduce 2000x200", lambda m: [m.free_reduce(w) for w in words]


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    args = ap.parse_args(argv)
    print(f"{'workload':24} {'python s':>10} {'cython s':>10} {'speedup':>8}")
    for name, fn in workloads():
        if fn(_kernels_py) != fn(_kernels):
            sys.exit(f"{name}: backends disagree")
        py = min(timeit.repeat(lambda: fn(_kernels_py), number=1, repeat=args.repeat))
        cy = min(timeit.repeat(lambda: fn(_kernels), number=1, repeat=args.repeat))
        print(f"{name:24} {py:10.4f} {cy:10.4f} {py / cy:7.1f}x")


if __name__ == "__main__":
    main()
