"""Reference lattice-enumeration kernel (numpy + pure Python).

Walks the box {0..radius}^n, computes the Riemann-Roch weight of every
point, and union-finds the connected components of the sublevel set at the
requested cutoff.  Output is a triple

    (min_level, events, components)

* min_level: minimum weight over the whole box;
* events: genuine merges, (rep_a, rep_b, level) in occurrence order, where a
  representative is the linear index of the component's first (deepest)
  point and the merged component keeps the smaller representative;
* components: final (rep, birth_level) pairs, sorted by rep.

Points are processed in (level, linear index) order; for each point the
neighbors are scanned axis by axis, minus direction first.  The compiled
kernel replicates this exactly; the two must agree bit for bit.

The ``exact`` flag switches to arbitrary-precision Python integers for
inputs whose weights would overflow int64; the enumeration is then a plain
Python loop, slow but correct.
"""

from __future__ import annotations

from itertools import product
from typing import Sequence

import numpy as np

__all__ = ["run", "KERNEL_NAME"]

KERNEL_NAME = "python"


def _strides(n: int, radius: int) -> list[int]:
    # C order: coordinate 0 slowest, coordinate n-1 contiguous
    s = [1] * n
    for j in range(n - 2, -1, -1):
        s[j] = s[j + 1] * (radius + 1)
    return s


def _levels_numpy(diag, edges, k, radius):
    n = len(diag)
    w = radius + 1
    xs = np.arange(w, dtype=np.int64)
    acc = np.zeros((w,) * n, dtype=np.int64)
    for v in range(n):
        term = diag[v] * xs * xs + k[v] * xs
        acc += term.reshape((1,) * v + (w,) + (1,) * (n - 1 - v))
    outer = 2 * np.multiply.outer(xs, xs)
    for u, v in edges:
        a, b = (u, v) if u < v else (v, u)
        acc += outer.reshape((1,) * a + (w,) + (1,) * (b - a - 1) + (w,) + (1,) * (n - 1 - b))
    return (-acc // 2).ravel()


def _levels_exact(diag, edges, k, radius):
    n = len(diag)
    levels = []
    for x in product(range(radius + 1), repeat=n):
        quad = sum(diag[v] * x[v] * x[v] for v in range(n))
        quad += 2 * sum(x[u] * x[v] for u, v in edges)
        lin = sum(k[v] * x[v] for v in range(n))
        levels.append(-(quad + lin) // 2)
    return levels


def run(
    diag: Sequence[int],
    edges: Sequence[tuple[int, int]],
    k: Sequence[int],
    radius: int,
    cutoff: int,
    exact: bool = False,
):
    n = len(diag)
    if len(k) != n:
        raise ValueError("diag and k length mismatch")
    if radius < 0:
        raise ValueError("radius must be >= 0")
    strides = _strides(n, radius)

    if exact:
        levels = _levels_exact(diag, edges, k, radius)
        min_level = min(levels)
        if cutoff < min_level:
            return min_level, [], []
        sub_idx = [i for i, l in enumerate(levels) if l <= cutoff]
        sub_lv = [levels[i] for i in sub_idx]
        order = sorted(range(len(sub_idx)), key=lambda s: sub_lv[s])  # stable: idx asc within level
        pos_in_sub: dict[int, int] = {}
        for rank, s in enumerate(order):
            pos_in_sub[sub_idx[s]] = rank
        proc_idx = [sub_idx[s] for s in order]
        proc_lv = [sub_lv[s] for s in order]
    else:
        levels = _levels_numpy(diag, edges, k, radius)
        min_level = int(levels.min())
        if cutoff < min_level:
            return min_level, [], []
        sub_idx = np.flatnonzero(levels <= cutoff)
        sub_lv = levels[sub_idx]
        order = np.argsort(sub_lv, kind="stable")
        proc_idx_arr = sub_idx[order]
        proc_lv_arr = sub_lv[order]
        pos_arr = np.full(levels.shape[0], -1, dtype=np.int64)
        pos_arr[proc_idx_arr] = np.arange(len(proc_idx_arr), dtype=np.int64)
        pos_in_sub = pos_arr
        proc_idx = proc_idx_arr.tolist()
        proc_lv = proc_lv_arr.tolist()

    count = len(proc_idx)
    parent = list(range(count))
    birth = [0] * count
    rep = [0] * count

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    events: list[tuple[int, int, int]] = []

    def union(sa: int, sb: int, level: int) -> None:
        ra, rb = find(sa), find(sb)
        if ra == rb:
            return
        la, lb = birth[ra], birth[rb]
        if la < level and lb < level:
            events.append((rep[ra], rep[rb], level))
            new_rep = min(rep[ra], rep[rb])
        elif la < level:
            new_rep = rep[ra]
        elif lb < level:
            new_rep = rep[rb]
        else:
            new_rep = min(rep[ra], rep[rb])
        parent[ra] = rb
        rep[rb] = new_rep
        birth[rb] = min(la, lb)

    if exact:
        def pos_of(idx: int) -> int:
            return pos_in_sub.get(idx, -1)
    else:
        def pos_of(idx: int) -> int:
            return int(pos_in_sub[idx])

    width = radius + 1
    for s in range(count):
        idx = proc_idx[s]
        level = proc_lv[s]
        birth[s] = level
        rep[s] = idx
        for j in range(n):
            coord = (idx // strides[j]) % width
            if coord > 0:
                qs = pos_of(idx - strides[j])
                if 0 <= qs < s:
                    union(s, qs, level)
            if coord < radius:
                qs = pos_of(idx + strides[j])
                if 0 <= qs < s:
                    union(s, qs, level)

    comps = []
    for s in range(count):
        if find(s) == s:
            comps.append((rep[s], birth[s]))
    comps.sort()
    min_level = int(min_level)
    events = [(int(a), int(b), int(c)) for a, b, c in events]
    comps = [(int(a), int(b)) for a, b in comps]
    return min_level, events, comps
