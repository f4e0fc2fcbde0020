"""Compare the compiled and pure-Python trace kernels.

Run:  python3 benchmarks/benchmark_kernel.py [types...]

For each group the diagonal trace polynomial of the Coxeter element and of
the longest element is computed with both kernels (results are asserted
equal) and wall times are reported.
"""

import sys
import time

from qhecke import hecke
from qhecke.kernel import HAVE_COMPILED
from qhecke.rootsys import CoxeterType, ElementTable, RootDatum


def bench(name):
    table = ElementTable(RootDatum(CoxeterType.parse(name)))
    cox = table.word_to_id(tuple(range(table.datum.ctype.rank)))
    cases = [("coxeter", cox), ("longest", table.longest_id)]
    print(f"{name}  |W| = {table.size}")
    for label, w in cases:
        times = {}
        results = {}
        for kern in ("python", "compiled") if HAVE_COMPILED else ("python",):
            t0 = time.perf_counter()
            results[kern] = hecke.nww(table, w, w, kernel=kern)
            times[kern] = time.perf_counter() - t0
        if HAVE_COMPILED:
            assert results["python"] == results["compiled"]
            speedup = times["python"] / max(times["compiled"], 1e-9)
            print(
                f"  {label:8s} python {times['python']:8.3f}s"
                f"  compiled {times['compiled']:8.3f}s  speedup {speedup:6.1f}x"
            )
        else:
            print(f"  {label:8s} python {times['python']:8.3f}s  (no compiled kernel)")


def main():
    names = sys.argv[1:] or ["B3", "A4", "B4", "F4"]
    if not HAVE_COMPILED:
        print("warning: compiled kernel unavailable, timing python only")
    for name in names:
        bench(name)


if __name__ == "__main__":
    main()
