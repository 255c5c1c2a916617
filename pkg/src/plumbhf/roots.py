"""Graded roots: merge trees of tau sublevel sets with Maslov gradings.

A graded root is the merge tree of the sublevel filtration of the tau
profile, drawn with one vertex per grading step: every parent-child edge
raises the grading by exactly 2.  Leaves sit at the local minima of tau;
merge vertices sit at the connecting peaks; above the last merge the tree
continues as an infinite stem, recorded here as a marker on the root vertex.

Gradings are normalized as 2 * level - (K^2 + |V|) / 4, the sign fixed so a
single (-1)-vertex gets d = 0 and the three bundled star fixtures get all
leaves at grading 0.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .lattice import (
    PlumbingGraph,
    canonical_char_vector,
    grading_constant,
    intersection_form,
    solve_exact,
)
from .laufer import TauSequence

__all__ = [
    "GradedRoot",
    "RootVertex",
    "BasisElement",
    "CanonicalBasis",
    "ConjugationSymmetryError",
    "graded_root",
    "d_invariant",
    "canonical_basis",
]


class ConjugationSymmetryError(ValueError):
    """The root failed the conjugation symmetry its basis labelling needs."""


@dataclass(frozen=True)
class RootVertex:
    id: int
    level: int
    grading: Fraction


def _fmt(q: Fraction) -> str:
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


# Merge-tree nodes, pre-subdivision: ("L", level) or ("N", level, children).


def _node_level(node) -> int:
    return node[1]


def _replay_events(
    leaf_levels: Sequence[int], events: Sequence[tuple[int, int, int]]
) -> tuple:
    """Replay merge events over leaf positions into a single ordered tree.

    Events are (a, b, level) with a < b leaf positions representing the two
    components; the merged component keeps representative a.  Children are
    kept in leaf order; a child merging at its own level is spliced so that
    simultaneous merges become one multi-child vertex.
    """
    node_of: dict[int, tuple] = {}
    alive = set(range(len(leaf_levels)))
    for a, b, c in events:
        if a > b:
            a, b = b, a
        if b not in alive or a not in alive:
            raise ValueError(f"merge event ({a},{b},{c}) references a dead component")
        na = node_of.pop(a, None) or ("L", leaf_levels[a], a)
        nb = node_of.pop(b, None) or ("L", leaf_levels[b], b)
        children = []
        for child in (na, nb):
            if child[0] == "N" and child[1] == c:
                children.extend(child[2])
            else:
                children.append(child)
        node_of[a] = ("N", c, tuple(children))
        alive.discard(b)
    if len(alive) != 1:
        raise ValueError(f"merge data leaves {len(alive)} components, expected 1")
    (rep,) = alive
    return node_of.get(rep, ("L", leaf_levels[rep], rep))


def _strip_reps(node) -> tuple:
    if node[0] == "L":
        return ("L", node[1])
    return ("N", node[1], tuple(_strip_reps(ch) for ch in node[2]))


def _mirror(node) -> tuple:
    if node[0] == "L":
        return node
    return ("N", node[1], tuple(_mirror(ch) for ch in reversed(node[2])))


def _canonicalize(node) -> tuple:
    if node[0] == "L":
        return node
    return ("N", node[1], tuple(sorted(_canonicalize(ch) for ch in node[2])))


class GradedRoot:
    """Subdivided merge tree with exact rational Maslov gradings.

    leaf_levels come in a fixed order (tau index order for the Laufer route,
    lattice index order for the enumeration oracle; ``leaf_order_kind`` says
    which).  Vertex ids 0..len(leaves)-1 are the leaves in that order;
    subdivision and merge vertices follow.
    """

    def __init__(
        self,
        const: Fraction,
        leaf_levels: Sequence[int],
        events: Sequence[tuple[int, int, int]],
        leaf_order_kind: str = "tau",
    ):
        self.const = Fraction(const)
        self.leaf_levels = tuple(int(x) for x in leaf_levels)
        if not self.leaf_levels:
            raise ValueError("a graded root needs at least one leaf")
        self.leaf_order_kind = leaf_order_kind
        self._ordered_tree = _replay_events(self.leaf_levels, events)
        self.vertices: dict[int, RootVertex] = {}
        self.parent: dict[int, Optional[int]] = {}
        self.leaves = list(range(len(self.leaf_levels)))
        self._materialize()

    # -- construction ------------------------------------------------------

    def _grading(self, level: int) -> Fraction:
        return 2 * level - self.const

    def _new_vertex(self, level: int) -> int:
        vid = self._next_id
        self._next_id += 1
        self.vertices[vid] = RootVertex(vid, level, self._grading(level))
        return vid

    def _materialize(self) -> None:
        self._next_id = len(self.leaf_levels)
        for pos, level in enumerate(self.leaf_levels):
            self.vertices[pos] = RootVertex(pos, level, self._grading(level))

        def build(node) -> tuple[int, int]:
            # returns (vertex id, level) of the node's own vertex
            if node[0] == "L":
                return node[2], node[1]
            tops = [build(ch) for ch in node[2]]
            vid = self._new_vertex(node[1])
            for top_id, top_level in tops:
                cur = top_id
                for lvl in range(top_level + 1, node[1]):
                    mid = self._new_vertex(lvl)
                    self.parent[cur] = mid
                    cur = mid
                self.parent[cur] = vid
            return vid, node[1]

        self.root_id, _ = build(self._ordered_tree)
        self.parent[self.root_id] = None
        self.infinite_stem = True

    # -- queries -----------------------------------------------------------

    def leaf_gradings(self) -> list[Fraction]:
        return [self.vertices[v].grading for v in self.leaves]

    @property
    def leaf_count(self) -> int:
        return len(self.leaves)

    def ordered_form(self):
        """Merge structure with children in leaf order (levels, not ids)."""
        return _strip_reps(self._ordered_tree)

    def canonical_form(self):
        """Order-free merge structure with gradings; equal forms = isomorphic
        graded trees (same leaf grading multiset, same merge levels)."""

        def conv(node):
            if node[0] == "L":
                return ("L", self._grading(node[1]))
            return ("N", self._grading(node[1]), tuple(sorted(conv(c) for c in node[2])))

        return conv(_canonicalize(self._ordered_tree))

    def isomorphic(self, other: "GradedRoot") -> bool:
        return self.canonical_form() == other.canonical_form()

    # -- serialization -----------------------------------------------------

    def to_dot(self) -> str:
        lines = ["graph graded_root {", "  rankdir=BT;", '  node [shape=circle];']
        for vid in sorted(self.vertices):
            v = self.vertices[vid]
            shape = ' shape=doublecircle' if vid == self.root_id else ""
            lines.append(f'  n{vid} [label="{_fmt(v.grading)}"{shape}];')
        lines.append('  stem [label="..." shape=plaintext];')
        for vid in sorted(self.vertices):
            p = self.parent.get(vid)
            if p is not None:
                lines.append(f"  n{vid} -- n{p};")
        lines.append(f"  n{self.root_id} -- stem [style=dashed];")
        lines.append("}")
        return "\n".join(lines) + "\n"

    def to_canonical_json(self) -> str:
        def conv(node):
            if node[0] == "L":
                return ["leaf", _fmt(node[1])]
            return ["node", _fmt(node[1]), [conv(c) for c in node[2]]]

        doc = {
            "format_version": 1,
            "d": _fmt(d_invariant(self)),
            "leaf_count": self.leaf_count,
            "leaf_gradings": sorted(_fmt(g) for g in sorted(self.leaf_gradings())),
            "merge_tree": conv(self.canonical_form()),
            "infinite_stem": True,
        }
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))


def d_invariant(r: GradedRoot) -> Fraction:
    """Grading of the origin of the infinite stem.

    The stem, followed downward through the merge structure, bottoms out at
    the deepest leaf; its grading is the correction term.
    """
    return min(r.leaf_gradings())


# -- the Laufer route ------------------------------------------------------


def _runs(values: Sequence[int]) -> list[tuple[int, int]]:
    """Run-length collapse: (level, start index) per maximal constant run."""
    out = []
    for i, v in enumerate(values):
        if not out or out[-1][0] != v:
            out.append((v, i))
    return out


def _merge_path(values: Sequence[int]) -> tuple[list[int], list[tuple[int, int, int]]]:
    """Valley levels (in position order) and merge events of a 1-d profile.

    Runs are activated bottom-up; a run with no active neighbor opens a new
    component (a valley), a run joining two components whose minima both lie
    strictly below it records a merge at its level.
    """
    runs = _runs(values)
    nr = len(runs)
    order = sorted(range(nr), key=lambda r: runs[r])
    parent = list(range(nr))
    birth = [0] * nr
    rep = [0] * nr  # representative valley (a run index)
    active = [False] * nr

    def find(r: int) -> int:
        while parent[r] != r:
            parent[r] = parent[parent[r]]
            r = parent[r]
        return r

    valley_runs: list[int] = []
    raw_events: list[tuple[int, int, int]] = []
    for r in order:
        level = runs[r][0]
        active[r] = True
        birth[r] = level
        rep[r] = r
        if not ((r > 0 and active[r - 1]) or (r + 1 < nr and active[r + 1])):
            valley_runs.append(r)
        for q in (r - 1, r + 1):
            if 0 <= q < nr and active[q]:
                ra, rb = find(r), find(q)
                if ra == rb:
                    continue
                la, lb = birth[ra], birth[rb]
                if la < level and lb < level:
                    raw_events.append((rep[ra], rep[rb], level))
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
    pos = {run: i for i, run in enumerate(sorted(valley_runs))}
    leaf_levels = [runs[run][0] for run in sorted(valley_runs)]
    events = [
        (min(pos[a], pos[b]), max(pos[a], pos[b]), c) for a, b, c in raw_events
    ]
    return leaf_levels, events


def graded_root(t: TauSequence, g: PlumbingGraph) -> GradedRoot:
    """Graded root of an almost-rational graph from its tau profile."""
    vals = t.reduced()  # raises UnstabilizedError when not certified
    m = intersection_form(g)
    const = grading_constant(m)
    leaf_levels, events = _merge_path(vals)
    return GradedRoot(const, leaf_levels, events, leaf_order_kind="tau")


# -- canonical basis and conjugation ---------------------------------------


@dataclass(frozen=True)
class BasisElement:
    """One leaf class; name is V<i> for the symmetric index i."""

    name: str
    index: int
    grading: Fraction


@dataclass(frozen=True)
class CanonicalBasis:
    """Leaf classes in leaf order with the conjugation involution.

    Ordered as [V_t, ..., V_1, V_0, V_-1, ..., V_-t] (V_0 absent when the
    leaf count is even).  j_action[p] is the position of the conjugate of
    the element at position p; for these roots it is order reversal.
    """

    elements: tuple[BasisElement, ...]
    j_action: tuple[int, ...]
    i_sym: Fraction

    def __len__(self) -> int:
        return len(self.elements)

    def position_of_index(self, index: int) -> int:
        for p, el in enumerate(self.elements):
            if el.index == index:
                return p
        raise KeyError(f"no basis element with index {index}")

    def contact_position(self) -> int:
        """Position of [V_1], the contact-class leaf; [V_0] when alone."""
        try:
            return self.position_of_index(1)
        except KeyError:
            return self.position_of_index(0)

    def is_j_fixed(self, position: int) -> bool:
        return self.j_action[position] == position

    def gradings(self) -> list[Fraction]:
        return [el.grading for el in self.elements]


def canonical_basis(r: GradedRoot, g: PlumbingGraph, v0: int) -> CanonicalBasis:
    """Label the leaves symmetrically and attach the conjugation action.

    Conjugation negates characteristic vectors; on the tau profile it is the
    reflection i -> i_sym - i about i_sym = (-M^{-1} k)_{v0}, and on leaves
    it reverses their order.  The labelling refuses roots whose leaf data is
    not reflection-symmetric.
    """
    gradings = r.leaf_gradings()
    if gradings != gradings[::-1]:
        raise ConjugationSymmetryError(
            f"leaf gradings {[_fmt(x) for x in gradings]} are not reversal-symmetric"
        )
    if r.leaf_order_kind == "tau":
        ordered = r.ordered_form()
        if _mirror(ordered) != ordered:
            raise ConjugationSymmetryError("merge structure is not reversal-symmetric")
    m = intersection_form(g)
    k = canonical_char_vector(m)
    ksharp = solve_exact(m, k)
    i_sym = -ksharp[g.index_of(v0)]
    count = len(gradings)
    t = count // 2
    if count % 2 == 1:
        indices = list(range(t, -t - 1, -1))
    else:
        indices = list(range(t, 0, -1)) + list(range(-1, -t - 1, -1))
    elements = tuple(
        BasisElement(name=f"V{idx}", index=idx, grading=grad)
        for idx, grad in zip(indices, gradings)
    )
    j_action = tuple(count - 1 - p for p in range(count))
    return CanonicalBasis(elements=elements, j_action=j_action, i_sym=i_sym)
