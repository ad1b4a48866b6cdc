"""Compare the compiled and pure-Python kernel backends.

Times each kernel on a fixed random graph and coloring, then a full solver
run with each backend swapped in.  Usage: python3 benchmarks/bench_kernels.py
"""
import argparse
import time

import numpy as np

from focusedsls import kernels
from focusedsls.aec import coloring as coloring_mod
from focusedsls.aec import graph as graph_mod
from focusedsls.aec.coloring import EdgeColoring, four_available
from focusedsls.aec.generators import random_planar_triangulation
from focusedsls.aec.params import palette_size
from focusedsls.aec.solver import aec_color
from focusedsls.walk import make_rng


def best_of(fn, repeat):
    times = []
    for _ in range(repeat):
        start = time.perf_counter()
        fn()
        times.append(time.perf_counter() - start)
    return min(times)


def random_coloring(g, q, rng):
    col = EdgeColoring(g, q)
    for e in rng.permutation(g.m):
        avail = four_available(g, col, int(e))
        col.set(int(e), avail[int(rng.integers(len(avail)))])
    return col


def kernel_cases(g, col, k):
    eu, ev, indptr, nbrs, nbr_edge = g.arrays
    mask = np.zeros(col.q + 1, dtype=np.uint8)
    buf = np.empty(g.m + 2, dtype=np.int32)

    def forbidden():
        for e in range(g.m):
            k.forbidden_mask(e, eu, ev, col.colors, col.vc, indptr, nbrs, nbr_edge, mask)

    def trace():
        for e in range(g.m):
            for b in range(1, col.q + 1, 3):
                k.trace_bicolored(e, b, eu, ev, col.colors, col.vc, buf)

    def count():
        for e in range(0, g.m, 10):
            k.count_paths(int(ev[e]), int(eu[e]), 5, indptr, nbrs, 10**8)

    def find():
        for e in range(g.m):
            k.find_edge(indptr, nbrs, nbr_edge, int(eu[e]), int(ev[e]))

    return {"forbidden_mask": forbidden, "trace_bicolored": trace,
            "count_paths": count, "find_edge": find}


def with_backend(module, fn):
    """Run fn with every kernel entry point pointing at ``module``."""
    saved = {name: getattr(kernels, name) for name in
             ("find_edge", "forbidden_mask", "trace_bicolored", "count_paths")}
    try:
        for name in saved:
            setattr(kernels, name, getattr(module, name))
        return fn()
    finally:
        for name, f in saved.items():
            setattr(kernels, name, f)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--n", type=int, default=400)
    ap.add_argument("--max-degree", type=int, default=20)
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--seed", type=int, default=1)
    args = ap.parse_args()

    backends = kernels.backends()
    rng = make_rng(args.seed)
    g = random_planar_triangulation(rng, args.n, args.max_degree)
    params = palette_size(g, "degenerate")
    col = random_coloring(g, params.q, rng)
    print(f"graph n={g.n} m={g.m} max_degree={g.max_degree} q={params.q}")
    print(f"backends: {', '.join(sorted(backends))} (active: {kernels.BACKEND})")
    if "cython" not in backends:
        print("compiled backend not built; only the Python timings are shown")

    rows = {}
    for name, module in sorted(backends.items()):
        for case, fn in kernel_cases(g, col, module).items():
            rows.setdefault(case, {})[name] = best_of(fn, args.repeat)

    def solve():
        # both modules look the kernels up through kernels.<name> at call time
        assert coloring_mod.kernels is kernels and graph_mod.kernels is kernels
        return aec_color(g, params, seed=args.seed)

    for name, module in sorted(backends.items()):
        rows.setdefault("aec_color", {})[name] = best_of(
            lambda: with_backend(module, solve), args.repeat)

    print(f"{'case':<18}{'python (s)':>12}{'cython (s)':>12}{'speedup':>10}")
    for case, t in rows.items():
        py, cy = t.get("python"), t.get("cython")
        speed = f"{py / cy:.1f}x" if py and cy else "-"
        cy_text = f"{cy:.4f}" if cy is not None else "-"
        print(f"{case:<18}{py:>12.4f}{cy_text:>12}{speed:>10}")


if __name__ == "__main__":
    main()
