"""Benchmark: compiled coloring kernel vs the pure-Python fallback.

The brute-force oracle scans |G|^E edge assignments, which is the hot
loop of the test suite (the largest corpus case is 4^12 = 16.7M
assignments).  This script times both backends on the same inputs and
prints the speedup; the pure backend is skipped on inputs it cannot
finish quickly.

Run:  python3 benchmarks/bench_kernel.py
"""

from __future__ import annotations

import time

from vknots import _colorkernel_py, kernel
from vknots.algebra import QuandleMap, make_dihedral
from vknots.diagram import builder
from vknots.solver import _compiled_constraints, _division_table

PURE_BUDGET = 10**6  # largest assignment space given to the pure backend

CASES = [
    ("trefoil", 3),
    ("trefoil", 4),
    ("figure_eight", 3),
    ("figure_eight", 4),
    ("kishino", 3),
    ("kishino", 4),
]


def run_case(impl, d, q):
    f = QuandleMap.identity(q.order)
    classical, virtual = _compiled_constraints(d)
    args = (
        q.order,
        d.edges,
        classical,
        virtual,
        q.table,
        _division_table(q),
        f.images,
        f.inverse().images,
    )
    t0 = time.perf_counter()
    out = impl.filter_colorings(*args)
    return time.perf_counter() - t0, len(out)


def main() -> None:
    compiled = kernel.BACKEND == "compiled"
    print(f"selected backend: {kernel.BACKEND}")
    if not compiled:
        print("compiled extension not built; timing the fallback against itself")
    header = f"{'case':>16} {'space':>12} {'colorings':>9} {'python':>10} {'fast':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, n in CASES:
        d = builder(name)
        q = make_dihedral(n)
        space = n**d.edges
        fast_t, count = run_case(kernel, d, q)
        if space <= PURE_BUDGET:
            py_t, py_count = run_case(_colorkernel_py, d, q)
            assert py_count == count, "backends disagree"
            ratio = f"{py_t / fast_t:8.1f}x" if fast_t > 0 else "-"
            py_s = f"{py_t:9.3f}s"
        else:
            py_s, ratio = "   (skip)", "       -"
        print(f"{name:>12}/R{n} {space:>12,} {count:>9} {py_s:>10} {fast_t:9.3f}s {ratio}")


if __name__ == "__main__":
    main()
