"""Brute-force graded-root oracle by lattice box enumeration.

Independent of the Laufer route: the Riemann-Roch weight is evaluated at
every point of the box {0..box_radius}^|V| and the merge tree of sublevel
connected components is built by union-find.  Same grading normalization as
:func:`plumbhf.roots.graded_root`, so the two can be compared as graded
trees.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import ceil
from typing import Callable, Optional, Union

from .kernels import get_kernel, python_kernel
from .lattice import (
    PlumbingGraph,
    canonical_char_vector,
    definiteness,
    grading_constant,
    intersection_form,
    solve_exact,
)
from .laufer import NotNegativeDefiniteError
from .roots import GradedRoot

__all__ = [
    "BoxTooLargeError",
    "LevelRangeError",
    "DEFAULT_POINT_CAP",
    "enumeration_cap",
    "suggested_box_radius",
    "oracle_graded_root",
]

DEFAULT_POINT_CAP = 10_000_000

# int64 safety margin for the compiled kernel and the vectorized fallback
_INT64_SAFE = 2**62


class BoxTooLargeError(ValueError):
    """The requested box exceeds the enumeration point cap."""


class LevelRangeError(ValueError):
    """The sublevel cutoff left the box disconnected; raise level_range."""


def enumeration_cap() -> int:
    """Point cap for oracle enumeration; env PLUMBHF_MAX_LATTICE_POINTS."""
    raw = os.environ.get("PLUMBHF_MAX_LATTICE_POINTS")
    if not raw:
        return DEFAULT_POINT_CAP
    try:
        cap = int(raw)
    except ValueError:
        raise ValueError(f"PLUMBHF_MAX_LATTICE_POINTS={raw!r} is not an integer") from None
    if cap <= 0:
        raise ValueError("PLUMBHF_MAX_LATTICE_POINTS must be positive")
    return cap


def suggested_box_radius(g: PlumbingGraph) -> int:
    """Box radius covering the effective region of the weight function.

    The minimum of the weight lies in the region bounded by the dual of the
    canonical characteristic vector; two extra steps of margin let the merge
    saddles appear inside the box.
    """
    m = intersection_form(g)
    k = canonical_char_vector(m)
    ksharp = solve_exact(m, k)
    top = max([Fraction(0)] + [-c for c in ksharp])
    return int(ceil(top)) + 2


def _weight_bound(diag, edges, k, radius: int) -> int:
    r = radius
    return sum(abs(w) for w in diag) * r * r + 2 * len(edges) * r * r + sum(abs(x) for x in k) * r


def _chi_at(diag, edges, k, radius: int, idx: int) -> int:
    """Exact weight of the box point with the given linear index (C order)."""
    n = len(diag)
    width = radius + 1
    coords = [0] * n
    rem = idx
    for j in range(n - 1, -1, -1):
        coords[j] = rem % width
        rem //= width
    quad = sum(diag[v] * coords[v] * coords[v] for v in range(n))
    quad += 2 * sum(coords[u] * coords[v] for u, v in edges)
    lin = sum(k[v] * coords[v] for v in range(n))
    return -(quad + lin) // 2


def oracle_graded_root(
    g: PlumbingGraph,
    box_radius: Optional[int] = None,
    level_range: Union[int, str] = "auto",
    kernel: Optional[Callable] = None,
) -> GradedRoot:
    """Graded root from exhaustive box enumeration.

    level_range bounds how far above the box minimum merges are tracked;
    "auto" grows it until the sublevel set is connected, which is when the
    merge tree is complete.  An explicit integer that leaves several
    components raises LevelRangeError.
    """
    m = intersection_form(g)
    if definiteness(m) != "negative_definite":
        raise NotNegativeDefiniteError("intersection form is not negative definite")
    if box_radius is None:
        box_radius = suggested_box_radius(g)
    box_radius = int(box_radius)
    if box_radius < 0:
        raise ValueError("box_radius must be >= 0")
    n = m.n
    points = (box_radius + 1) ** n
    cap = enumeration_cap()
    if points > cap:
        raise BoxTooLargeError(
            f"box {box_radius + 1}^{n} = {points} points exceeds the cap {cap}"
        )
    diag = [m[i, i] for i in range(n)]
    ids = g.sorted_ids()
    pos = {v: i for i, v in enumerate(ids)}
    edges = sorted(tuple(sorted((pos[a], pos[b]))) for a, b in (sorted(e) for e in g.edges))
    k = canonical_char_vector(m)
    exact = _weight_bound(diag, edges, k, box_radius) >= _INT64_SAFE
    if kernel is None:
        kernel = python_kernel if exact else get_kernel()
    elif exact and kernel is not python_kernel:
        kernel = python_kernel  # only the reference kernel handles big ints

    const = grading_constant(m, k)

    if level_range == "auto":
        min_level, _, _ = kernel(diag, edges, k, box_radius, -_INT64_SAFE, exact)
        span = 4
        while True:
            _, events, comps = kernel(diag, edges, k, box_radius, min_level + span, exact)
            if len(comps) == 1:
                break
            span *= 2
    else:
        span = int(level_range)
        if span < 0:
            raise ValueError("level_range must be >= 0 or 'auto'")
        min_level, _, _ = kernel(diag, edges, k, box_radius, -_INT64_SAFE, exact)
        _, events, comps = kernel(diag, edges, k, box_radius, min_level + span, exact)
        if len(comps) != 1:
            raise LevelRangeError(
                f"sublevel set at min+{span} has {len(comps)} components; raise level_range"
            )

    # Every event endpoint is a genuine valley representative; together with
    # the surviving component they are the leaves.  A representative is the
    # linear index of its component's deepest point, so its birth level can
    # be recomputed directly.
    leaf_set = {rep for rep, _ in comps}
    for a, b, _ in events:
        leaf_set.add(a)
        leaf_set.add(b)
    leaf_reps = sorted(leaf_set)
    pos_of = {rep: i for i, rep in enumerate(leaf_reps)}
    leaf_levels = [_chi_at(diag, edges, k, box_radius, rep) for rep in leaf_reps]
    remapped = [
        (min(pos_of[a], pos_of[b]), max(pos_of[a], pos_of[b]), c) for a, b, c in events
    ]
    return GradedRoot(const, leaf_levels, remapped, leaf_order_kind="lattice")
