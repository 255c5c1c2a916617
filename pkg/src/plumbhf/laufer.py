"""Laufer computation sequences on negative-definite plumbing trees.

Three computations live here:

* ``fundamental_cycle`` runs the classical Laufer sequence to Artin's
  fundamental cycle Z and tests rationality, chi(Z) = 1.
* ``is_almost_rational`` probes each vertex with a deep weight decrease and
  reports the first vertex whose decrease makes the graph rational.
* ``tau_sequence`` runs the generalized Laufer sequence at a distinguished
  vertex v0 and accumulates the tau profile whose sublevel merge structure is
  the graded root.

All cycles are integer vectors over the vertex basis, matrix row order
(ascending vertex id).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional, Sequence

from .lattice import (
    PlumbingGraph,
    SymIntMatrix,
    canonical_char_vector,
    definiteness,
    intersection_form,
)
from .seifert import star_data

__all__ = [
    "NotNegativeDefiniteError",
    "NotAlmostRationalError",
    "UnstabilizedError",
    "IterationCapError",
    "TauSequence",
    "chi",
    "fundamental_cycle",
    "is_almost_rational",
    "tau_sequence",
    "default_cutoff",
    "stabilization_window",
]

# Generous hard cap on Laufer iterations; honest failure beats a silent hang.
ITERATION_CAP = 10_000_000


class NotNegativeDefiniteError(ValueError):
    """The operation requires a negative-definite intersection form."""


class NotAlmostRationalError(ValueError):
    """No vertex certifies almost-rationality within the search bound."""


class UnstabilizedError(ValueError):
    """The tau sequence could not be certified stable at the given cutoff."""


class IterationCapError(RuntimeError):
    """A Laufer run exceeded the hard iteration cap."""


def chi(m: SymIntMatrix, k: Sequence[int], x: Sequence[int]) -> int:
    """Riemann-Roch weight chi(x) = -((x,x) + (K,x))/2; always an integer."""
    n = m.n
    quad = 0
    for i in range(n):
        xi = x[i]
        if xi == 0:
            continue
        row = m.entries[i]
        s = 0
        for j in range(n):
            if x[j]:
                s += row[j] * x[j]
        quad += xi * s
    lin = sum(k[i] * x[i] for i in range(n))
    total = quad + lin
    assert total % 2 == 0, "chi must be integral on characteristic input"
    return -total // 2


def _require_negative_definite(m: SymIntMatrix) -> None:
    if definiteness(m) != "negative_definite":
        raise NotNegativeDefiniteError("intersection form is not negative definite")


def _laufer_closure(m: SymIntMatrix, x: list[int], mx: list[int], skip: int = -1) -> int:
    """Add basis cycles until <x, E_v> <= 0 for every v != skip; in place.

    mx must hold m @ x on entry and is kept current.  Returns the number of
    steps.  Vertices are scanned in ascending row order, smallest first.
    """
    n = m.n
    steps = 0
    while True:
        v = -1
        for i in range(n):
            if i != skip and mx[i] > 0:
                v = i
                break
        if v < 0:
            return steps
        x[v] += 1
        row = m.entries[v]
        for j in range(n):
            mx[j] += row[j]
        steps += 1
        if steps > ITERATION_CAP:
            raise IterationCapError("Laufer closure exceeded the iteration cap")


def fundamental_cycle(
    g: PlumbingGraph, m: Optional[SymIntMatrix] = None
) -> tuple[list[int], bool]:
    """Artin's fundamental cycle and Laufer's rationality verdict.

    Starts from the basis cycle at the smallest vertex id and repeatedly adds
    E_v for the smallest v with <x, E_v> > 0.  Returns (Z, rational) where
    rational means chi(Z) = 1.
    """
    if m is None:
        m = intersection_form(g)
    _require_negative_definite(m)
    n = m.n
    x = [0] * n
    x[0] = 1
    mx = list(m.entries[0])
    _laufer_closure(m, x, mx)
    k = canonical_char_vector(m)
    return x, chi(m, k, x) == 1


def _probe_weight(g: PlumbingGraph) -> int:
    return -(sum(abs(w) for _, w in g.vertices) + g.n + 1)


def _is_rational_with_weight(g: PlumbingGraph, vertex_id: int, weight: int) -> bool:
    vertices = [(v, weight if v == vertex_id else w) for v, w in g.vertices]
    probe = PlumbingGraph(vertices, [tuple(sorted(e)) for e in g.edges])
    m = intersection_form(probe)
    if definiteness(m) != "negative_definite":
        return False
    _, rational = fundamental_cycle(probe, m)
    return rational


def is_almost_rational(g: PlumbingGraph) -> Optional[int]:
    """First vertex (ascending id) whose deep weight decrease gives a
    rational graph, or None if the bounded search finds nothing.

    Rationality is monotone under weight decrease, so probing once at
    -(sum|weights| + |V| + 1) per vertex decides the bounded question.
    """
    _require_negative_definite(intersection_form(g))
    probe = _probe_weight(g)
    for v in g.sorted_ids():
        if _is_rational_with_weight(g, v, probe):
            return v
    return None


@dataclass(frozen=True)
class TauSequence:
    """The tau profile of an almost-rational graph at vertex v0.

    values[i] = tau(i) for 0 <= i <= N.  stabilized means every delta in the
    trailing certification window was >= 1; n0 is then the smallest index
    past all non-positive deltas, so tau is non-decreasing from n0 on.
    window_kind records how the window width was chosen: "periodic" from the
    arm multiplicities of a star graph, "heuristic" (N // 4) otherwise.
    """

    values: tuple[int, ...]
    stabilized: bool
    n0: Optional[int]
    window: int
    window_kind: str
    v0: int

    @property
    def cutoff(self) -> int:
        return len(self.values) - 1

    def deltas(self) -> list[int]:
        return [b - a for a, b in zip(self.values, self.values[1:])]

    def reduced(self) -> tuple[int, ...]:
        """tau restricted to [0, n0]; all merge data lives here."""
        if not self.stabilized:
            raise UnstabilizedError("tau sequence is not certified stable")
        return self.values[: self.n0 + 1]


def stabilization_window(g: PlumbingGraph, n_steps: int) -> tuple[int, str]:
    """Certification window width for a tau run of n_steps.

    Star graphs get the product of their arm multiplicities (the central
    vertex period bound); anything else falls back to the flagged heuristic
    n_steps // 4.
    """
    try:
        _, arms = star_data(g)
        period = 1
        for arm in arms:
            a, _ = arm.multiplicity
            period *= a
        if period <= 100_000:
            return max(period, 1), "periodic"
    except Exception:
        pass
    return max(n_steps // 4, 1), "heuristic"


def default_cutoff(g: PlumbingGraph) -> int:
    """A cutoff that certifies all the bundled star fixtures: 4*window + 8."""
    window, kind = stabilization_window(g, 0)
    if kind == "periodic":
        return 4 * window + 8
    return 512


def tau_sequence(
    g: PlumbingGraph,
    v0: int,
    n_steps: Optional[int] = None,
    collect_cycles: bool = False,
):
    """Generalized Laufer sequence at v0 and the resulting tau profile.

    x(0) = 0; x(i+1) is built from x(i) + E_{v0} by the closure that restores
    <x, E_v> <= 0 at every v != v0.  The profile obeys
    tau(i+1) - tau(i) = 1 - <x(i), E_{v0}>.

    With collect_cycles=True returns (TauSequence, cycles) where cycles[i] is
    x(i); otherwise returns the TauSequence alone.
    """
    m = intersection_form(g)
    _require_negative_definite(m)
    if is_almost_rational(g) is None:
        raise NotAlmostRationalError("graph is not almost-rational within the search bound")
    v0_idx = g.index_of(v0)
    if n_steps is None:
        n_steps = default_cutoff(g)
    n = m.n
    x = [0] * n
    mx = [0] * n
    values = [0]
    cycles = [list(x)] if collect_cycles else None
    for _ in range(n_steps):
        mult = mx[v0_idx]  # <x(i), E_{v0}>
        x[v0_idx] += 1
        row = m.entries[v0_idx]
        for j in range(n):
            mx[j] += row[j]
        _laufer_closure(m, x, mx, skip=v0_idx)
        values.append(values[-1] + 1 - mult)
        if collect_cycles:
            cycles.append(list(x))
    window, kind = stabilization_window(g, n_steps)
    deltas = [b - a for a, b in zip(values, values[1:])]
    stabilized = False
    n0: Optional[int] = None
    if n_steps >= window and all(d >= 1 for d in deltas[n_steps - window:]):
        stabilized = True
        bad = [i for i, d in enumerate(deltas) if d <= 0]
        n0 = (bad[-1] + 1) if bad else 0
    t = TauSequence(
        values=tuple(values),
        stabilized=stabilized,
        n0=n0,
        window=window,
        window_kind=kind,
        v0=v0,
    )
    if collect_cycles:
        return t, cycles
    return t
