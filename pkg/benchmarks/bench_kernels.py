#!/usr/bin/env python3
"""Benchmark the two enumeration kernels on the same box and verify
they return bit-identical output.

Usage:
    python3 benchmarks/bench_kernels.py
    python3 benchmarks/bench_kernels.py --triple 2 5 7 --radius 20 --repeats 5
"""

import argparse
import sys
import time

from plumbhf import brieskorn_graph, canonical_char_vector, intersection_form
from plumbhf.kernels import available_kernels


def box_inputs(g, radius):
    m = intersection_form(g)
    diag = [m[i, i] for i in range(m.n)]
    ids = g.sorted_ids()
    pos = {v: i for i, v in enumerate(ids)}
    edges = sorted(tuple(sorted((pos[a], pos[b]))) for a, b in (tuple(e) for e in g.edges))
    return diag, edges, canonical_char_vector(m)


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--triple", nargs=3, type=int, default=[3, 4, 5], metavar="A")
    ap.add_argument("--radius", type=int, default=16)
    ap.add_argument("--repeats", type=int, default=3)
    args = ap.parse_args(argv)

    g = brieskorn_graph(*args.triple)
    diag, edges, k = box_inputs(g, args.radius)
    points = (args.radius + 1) ** g.n
    print(f"box: ({args.radius}+1)^{g.n} = {points} points, "
          f"Sigma({args.triple[0]},{args.triple[1]},{args.triple[2]})")

    kernels = available_kernels()
    if "compiled" not in kernels:
        print("note: compiled kernel not built, timing the reference kernel only")

    results = {}
    for name, kern in kernels.items():
        best = float("inf")
        out = None
        for _ in range(args.repeats):
            t0 = time.perf_counter()
            out = kern(diag, edges, k, args.radius, 2**61, False)
            best = min(best, time.perf_counter() - t0)
        results[name] = (best, out)
        rate = points / best / 1e6
        print(f"{name:>9}: {best * 1000:8.2f} ms   ({rate:6.1f} M points/s)")

    outs = [out for _, out in results.values()]
    if len(outs) == 2:
        if outs[0] != outs[1]:
            print("MISMATCH: kernels disagree", file=sys.stderr)
            return 1
        a, b = (results[n][0] for n in ("compiled", "python"))
        print(f"outputs identical; compiled is {b / a:.1f}x the reference speed")
    return 0


if __name__ == "__main__":
    sys.exit(main())
