"""Compare the compiled kernels against the pure-Python fallback.

Times every kernel on the multiplication tables of the symmetric inverse
monoids of 3 and 4 points (34 and 209 elements).  Run from the repository
root after installing the package:

    python benchmarks/bench_kernels.py [--points N ...] [--repeat K]
"""

import argparse
import time

from germkit import _kernels_py
from germkit import symmetric_inverse_monoid

try:
    from germkit import _kernels
except ImportError:
    _kernels = None


def best_of(repeat, fn, *args):
    best = float("inf")
    for _ in range(repeat):
        start = time.perf_counter()
        fn(*args)
        best = min(best, time.perf_counter() - start)
    return best


def bench_monoid(n, repeat):
    monoid = symmetric_inverse_monoid(n, element_cap=None)
    table = monoid.table
    inv = monoid.inv
    leq = monoid.leq
    orth = monoid.orth
    joins = monoid.joins
    cases = [
        ("associativity_witness", (table,)),
        ("inverse_scan", (table,)),
        ("leq_matrix", (table, inv)),
        ("meet_table", (leq,)),
        ("join_table", (leq,)),
        ("orthogonality_matrix", (table, inv, monoid.zero)),
        ("additivity_witness", (table, orth, joins)),
    ]
    print(f"\n{monoid.size} elements ({n} points)")
    header = f"{'kernel':<24}{'python':>12}"
    if _kernels is not None:
        header += f"{'cython':>12}{'speedup':>10}"
    print(header)
    for name, args in cases:
        py = best_of(repeat, getattr(_kernels_py, name), *args)
        line = f"{name:<24}{py * 1e3:>10.2f}ms"
        if _kernels is not None:
            cy = best_of(repeat, getattr(_kernels, name), *args)
            line += f"{cy * 1e3:>10.2f}ms{py / cy:>9.1f}x"
        print(line)


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, nargs="+", default=[3, 4])
    parser.add_argument("--repeat", type=int, default=5)
    args = parser.parse_args()
    if _kernels is None:
        print("compiled kernels unavailable; timing the fallback only")
    for n in args.points:
        bench_monoid(n, args.repeat)


if __name__ == "__main__":
    main()
