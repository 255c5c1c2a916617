"""Exact integer and rational linear algebra over plumbing lattices.

A plumbing graph is a weighted tree.  Its intersection form is the symmetric
integer matrix with the vertex weights on the diagonal and a 1 in position
(i, j) exactly when vertices i and j are joined by an edge.  Everything in
this module is exact: integers, ``fractions.Fraction``, no floats anywhere.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

__all__ = [
    "PlumbingGraph",
    "SymIntMatrix",
    "RationalMatrix",
    "GraphStructureError",
    "SingularMatrixError",
    "intersection_form",
    "definiteness",
    "inverse_exact",
    "determinant_exact",
    "solve_exact",
    "pairing",
    "is_characteristic",
    "canonical_char_vector",
    "char_shift",
    "k_squared",
    "grading_constant",
]


class GraphStructureError(ValueError):
    """Raised when a putative plumbing graph violates a structural invariant."""


class SingularMatrixError(ValueError):
    """Inversion or solving was attempted on a singular matrix.

    Carries the (zero) determinant in ``det`` so callers can report it.
    """

    def __init__(self, message: str = "matrix is singular"):
        super().__init__(message)
        self.det = 0


@dataclass(frozen=True)
class PlumbingGraph:
    """Weighted tree presenting a plumbed 3-manifold.

    vertices: sequence of (id, weight) pairs; ids are distinct integers.
    edges: unordered id pairs forming a tree on the vertex set.
    """

    vertices: tuple[tuple[int, int], ...]
    edges: tuple[frozenset[int], ...]

    def __init__(self, vertices: Iterable[tuple[int, int]], edges: Iterable[Sequence[int]]):
        object.__setattr__(self, "vertices", tuple((int(v), int(w)) for v, w in vertices))
        object.__setattr__(self, "edges", tuple(frozenset((int(a), int(b))) for a, b in edges))
        self._validate()

    def _validate(self) -> None:
        ids = [v for v, _ in self.vertices]
        if len(ids) == 0:
            raise GraphStructureError("empty graph: at least one vertex is required")
        if len(set(ids)) != len(ids):
            raise GraphStructureError("vertex ids are not distinct")
        idset = set(ids)
        seen = set()
        for e in self.edges:
            if len(e) != 2:
                raise GraphStructureError("self-loop edge: edges must join two distinct vertices")
            if not e <= idset:
                raise GraphStructureError(f"edge {sorted(e)} references an unknown vertex id")
            if e in seen:
                raise GraphStructureError(f"duplicate edge {sorted(e)}")
            seen.add(e)
        if len(self.edges) != len(ids) - 1:
            raise GraphStructureError(
                f"not a tree: |E| = {len(self.edges)} but |V| - 1 = {len(ids) - 1}"
            )
        # |E| = |V| - 1 plus connectivity makes it a tree
        adj = {v: [] for v in ids}
        for e in self.edges:
            a, b = sorted(e)
            adj[a].append(b)
            adj[b].append(a)
        stack = [ids[0]]
        reached = {ids[0]}
        while stack:
            v = stack.pop()
            for u in adj[v]:
                if u not in reached:
                    reached.add(u)
                    stack.append(u)
        if reached != idset:
            raise GraphStructureError("not a tree: the edge set is not connected")

    @property
    def n(self) -> int:
        return len(self.vertices)

    def sorted_ids(self) -> list[int]:
        """Vertex ids in ascending order; this is the matrix row order."""
        return sorted(v for v, _ in self.vertices)

    def index_of(self, vertex_id: int) -> int:
        """Row index of a vertex id in the intersection form."""
        try:
            return self.sorted_ids().index(int(vertex_id))
        except ValueError:
            raise GraphStructureError(f"unknown vertex id {vertex_id}") from None

    def weight_of(self, vertex_id: int) -> int:
        for v, w in self.vertices:
            if v == vertex_id:
                return w
        raise GraphStructureError(f"unknown vertex id {vertex_id}")

    def degree(self, vertex_id: int) -> int:
        return sum(1 for e in self.edges if vertex_id in e)

    def neighbors(self, vertex_id: int) -> list[int]:
        out = []
        for e in self.edges:
            if vertex_id in e:
                (other,) = e - {vertex_id}
                out.append(other)
        return sorted(out)


@dataclass(frozen=True)
class SymIntMatrix:
    """Symmetric integer matrix, stored dense as a tuple of row tuples."""

    entries: tuple[tuple[int, ...], ...]

    def __init__(self, entries: Iterable[Iterable[int]]):
        rows = tuple(tuple(int(x) for x in row) for row in entries)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix is not square")
        for i in range(n):
            for j in range(i + 1, n):
                if rows[i][j] != rows[j][i]:
                    raise ValueError(f"matrix is not symmetric at ({i},{j})")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    def row(self, i: int) -> tuple[int, ...]:
        return self.entries[i]

    def __getitem__(self, ij: tuple[int, int]) -> int:
        i, j = ij
        return self.entries[i][j]

    def as_lists(self) -> list[list[int]]:
        return [list(row) for row in self.entries]


@dataclass(frozen=True)
class RationalMatrix:
    """Exact rational matrix; entries are Fractions in lowest terms."""

    entries: tuple[tuple[Fraction, ...], ...]

    def __init__(self, entries: Iterable[Iterable[Fraction]]):
        rows = tuple(tuple(Fraction(x) for x in row) for row in entries)
        n = len(rows)
        for row in rows:
            if len(row) != n:
                raise ValueError("matrix is not square")
        object.__setattr__(self, "entries", rows)

    @property
    def n(self) -> int:
        return len(self.entries)

    def __getitem__(self, ij: tuple[int, int]) -> Fraction:
        i, j = ij
        return self.entries[i][j]

    def as_lists(self) -> list[list[Fraction]]:
        return [list(row) for row in self.entries]


def intersection_form(graph: PlumbingGraph) -> SymIntMatrix:
    """Intersection form of a plumbing graph.

    Rows and columns follow ascending vertex id.  Diagonal entries are the
    vertex weights; entry (i, j) is 1 exactly when {i, j} is an edge.
    """
    ids = graph.sorted_ids()
    pos = {v: i for i, v in enumerate(ids)}
    n = len(ids)
    m = [[0] * n for _ in range(n)]
    for v, w in graph.vertices:
        m[pos[v]][pos[v]] = w
    for e in graph.edges:
        a, b = sorted(e)
        m[pos[a]][pos[b]] = 1
        m[pos[b]][pos[a]] = 1
    return SymIntMatrix(m)


def definiteness(m: SymIntMatrix) -> str:
    """Exact definiteness verdict: "negative_definite" or "other".

    Symmetric rational LDL elimination; the form is negative definite iff
    every pivot is negative.  Declares "other" at the first pivot >= 0,
    including the singular case (pivot 0 with nonzero residual column is
    indefinite or degenerate, never negative definite).
    """
    n = m.n
    a = [[Fraction(m[i, j]) for j in range(n)] for i in range(n)]
    for i in range(n):
        piv = a[i][i]
        if piv >= 0:
            return "other"
        for r in range(i + 1, n):
            if a[r][i] == 0:
                continue
            f = a[r][i] / piv
            for c in range(i, n):
                a[r][c] -= f * a[i][c]
    return "negative_definite"


def determinant_exact(m: SymIntMatrix) -> int:
    """Integer determinant via Bareiss fraction-free elimination."""
    n = m.n
    a = [list(row) for row in m.entries]
    sign = 1
    prev = 1
    for i in range(n - 1):
        if a[i][i] == 0:
            for r in range(i + 1, n):
                if a[r][i] != 0:
                    a[i], a[r] = a[r], a[i]
                    sign = -sign
                    break
            else:
                return 0
        for r in range(i + 1, n):
            for c in range(i + 1, n):
                a[r][c] = (a[r][c] * a[i][i] - a[r][i] * a[i][c]) // prev
            a[r][i] = 0
        prev = a[i][i]
    return sign * a[n - 1][n - 1]


def _eliminate(a: list[list[Fraction]], rhs: list[list[Fraction]]) -> None:
    # Gauss-Jordan with partial (first nonzero) pivoting, in place.
    n = len(a)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            raise SingularMatrixError()
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            rhs[col], rhs[piv] = rhs[piv], rhs[col]
        p = a[col][col]
        a[col] = [x / p for x in a[col]]
        rhs[col] = [x / p for x in rhs[col]]
        for r in range(n):
            if r == col or a[r][col] == 0:
                continue
            f = a[r][col]
            a[r] = [x - f * y for x, y in zip(a[r], a[col])]
            rhs[r] = [x - f * y for x, y in zip(rhs[r], rhs[col])]


def inverse_exact(m: SymIntMatrix) -> RationalMatrix:
    """Exact inverse of a nonsingular symmetric integer matrix."""
    n = m.n
    a = [[Fraction(m[i, j]) for j in range(n)] for i in range(n)]
    rhs = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    _eliminate(a, rhs)
    return RationalMatrix(rhs)


def solve_exact(m: SymIntMatrix, b: Sequence[int | Fraction]) -> list[Fraction]:
    """Solve m x = b exactly."""
    n = m.n
    if len(b) != n:
        raise ValueError(f"dimension mismatch: matrix is {n}x{n}, vector has length {len(b)}")
    a = [[Fraction(m[i, j]) for j in range(n)] for i in range(n)]
    rhs = [[Fraction(x)] for x in b]
    _eliminate(a, rhs)
    return [row[0] for row in rhs]


def pairing(
    left: Sequence[int | Fraction],
    minv: RationalMatrix,
    right: Sequence[int | Fraction],
) -> Fraction:
    """left^T . minv . right, evaluated exactly."""
    n = minv.n
    if len(left) != n or len(right) != n:
        raise ValueError(
            f"dimension mismatch: matrix is {n}x{n}, vectors have lengths "
            f"{len(left)} and {len(right)}"
        )
    total = Fraction(0)
    for i in range(n):
        li = Fraction(left[i])
        if li == 0:
            continue
        row = minv.entries[i]
        acc = Fraction(0)
        for j in range(n):
            rj = right[j]
            if rj:
                acc += row[j] * rj
        total += li * acc
    return total


# -- characteristic vectors ------------------------------------------------
#
# A characteristic vector is stored in pairing coordinates: component v holds
# <K, E_v>.  The canonical one has <K, E_v> = -<E_v, E_v> - 2 at every vertex.


def is_characteristic(k: Sequence[int], m: SymIntMatrix) -> bool:
    """k_v = <K, E_v> must agree with <E_v, E_v> mod 2 at every vertex."""
    if len(k) != m.n:
        raise ValueError("dimension mismatch")
    return all((k[v] - m[v, v]) % 2 == 0 for v in range(m.n))


def canonical_char_vector(m: SymIntMatrix) -> list[int]:
    """The canonical characteristic vector, <K, E_v> = -<E_v, E_v> - 2."""
    return [-m[v, v] - 2 for v in range(m.n)]


def char_shift(k: Sequence[int], m: SymIntMatrix, v: int) -> list[int]:
    """The move k -> k + 2 E_v in pairing coordinates: add twice row v of m."""
    return [ki + 2 * m[v, j] for j, ki in enumerate(k)]


def k_squared(m: SymIntMatrix, k: Sequence[int]) -> Fraction:
    """K^2 = k^T m^{-1} k for k in pairing coordinates."""
    y = solve_exact(m, list(k))
    return sum((Fraction(ki) * yi for ki, yi in zip(k, y)), Fraction(0))


def grading_constant(m: SymIntMatrix, k: Optional[Sequence[int]] = None) -> Fraction:
    """(K^2 + n) / 4, the additive normalization for Maslov gradings."""
    if k is None:
        k = canonical_char_vector(m)
    return (k_squared(m, k) + m.n) / 4
