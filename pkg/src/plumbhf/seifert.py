"""Brieskorn triples, Seifert invariants and star-shaped plumbing graphs.

``brieskorn_graph(a1, a2, a3)`` produces the standard negative-definite
star-shaped tree of the Brieskorn homology sphere Sigma(a1, a2, a3): a
central vertex of weight e0 with one arm per exceptional fiber, the arm
weights read off a negative continued fraction expansion of ai/bi.  The
normalization 0 < bi < ai is fixed so that the three reference triples
(2,3,13), (2,5,7), (3,4,5) all get central weight -1.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .lattice import GraphStructureError, PlumbingGraph

__all__ = [
    "SeifertData",
    "normalized_seifert",
    "neg_cont_frac",
    "eval_cont_frac",
    "brieskorn_graph",
    "euler_number",
    "star_data",
    "StarArm",
]


@dataclass(frozen=True)
class SeifertData:
    """Normalized Seifert invariants (e0; (a1,b1), ..., (an,bn))."""

    e0: int
    legs: tuple[tuple[int, int], ...]

    def __post_init__(self):
        big_a = 1
        for a, b in self.legs:
            if not (0 < b < a):
                raise ValueError(f"leg ({a},{b}) violates 0 < b < a")
            big_a *= a
        for i in range(len(self.legs)):
            for j in range(i + 1, len(self.legs)):
                if math.gcd(self.legs[i][0], self.legs[j][0]) != 1:
                    raise ValueError("leg multiplicities are not pairwise coprime")
        total = self.e0 * big_a + sum(b * (big_a // a) for a, b in self.legs)
        if total != -1:
            raise ValueError(
                f"not homology-sphere normalized: e0*A + sum(b*A/a) = {total}, expected -1"
            )


def _validate_triple(a1: int, a2: int, a3: int) -> tuple[int, int, int]:
    triple = (int(a1), int(a2), int(a3))
    for a in triple:
        if a <= 1:
            raise ValueError(f"multiplicity {a} must be an integer > 1")
    for i in range(3):
        for j in range(i + 1, 3):
            if math.gcd(triple[i], triple[j]) != 1:
                raise ValueError(
                    f"multiplicities {triple[i]} and {triple[j]} are not coprime"
                )
    return triple


def normalized_seifert(a1: int, a2: int, a3: int) -> SeifertData:
    """Normalized Seifert invariants of Sigma(a1, a2, a3).

    bi is the unique residue in (0, ai) with bi * (A/ai) = -1 mod ai, and
    e0 = (-1 - sum(bi * A/ai)) / A, which is an exact integer.
    """
    triple = _validate_triple(a1, a2, a3)
    big_a = triple[0] * triple[1] * triple[2]
    legs = []
    acc = 0
    for a in triple:
        c = big_a // a
        b = (-pow(c, -1, a)) % a
        legs.append((a, b))
        acc += b * c
    e0_num = -1 - acc
    assert e0_num % big_a == 0
    return SeifertData(e0=e0_num // big_a, legs=tuple(legs))


def neg_cont_frac(p: int, q: int) -> list[int]:
    """Negative continued fraction expansion of p/q, entries all >= 2.

    p/q = x1 - 1/(x2 - 1/(...)) with 0 < q < p and gcd(p, q) = 1.
    """
    p, q = int(p), int(q)
    if not (0 < q < p):
        raise ValueError(f"need 0 < q < p, got p={p}, q={q}")
    if math.gcd(p, q) != 1:
        raise ValueError(f"p and q must be coprime, got p={p}, q={q}")
    entries = []
    while q:
        x = -(-p // q)  # ceil(p/q)
        entries.append(x)
        p, q = q, x * q - p
    return entries


def eval_cont_frac(entries: Sequence[int]) -> Fraction:
    """Evaluate x1 - 1/(x2 - 1/(...)) exactly."""
    if not entries:
        raise ValueError("empty continued fraction")
    val = Fraction(entries[-1])
    for x in reversed(entries[:-1]):
        if val == 0:
            raise ValueError("continued fraction hits a zero tail")
        val = x - 1 / val
    return val


def brieskorn_graph(a1: int, a2: int, a3: int) -> PlumbingGraph:
    """The standard star-shaped plumbing tree of Sigma(a1, a2, a3).

    Vertex 0 is the central vertex (weight e0); arm vertices are numbered
    consecutively outward along each leg in input order.
    """
    sd = normalized_seifert(a1, a2, a3)
    vertices = [(0, sd.e0)]
    edges = []
    next_id = 1
    for a, b in sd.legs:
        prev = 0
        for x in neg_cont_frac(a, b):
            vertices.append((next_id, -x))
            edges.append((prev, next_id))
            prev = next_id
            next_id += 1
    return PlumbingGraph(vertices, edges)


@dataclass(frozen=True)
class StarArm:
    """One arm of a star graph: vertex ids and weights, center excluded."""

    ids: tuple[int, ...]
    weights: tuple[int, ...]

    @property
    def multiplicity(self) -> tuple[int, int]:
        """(a, b) with a/b the value of the arm's continued fraction."""
        frac = eval_cont_frac([-w for w in self.weights])
        if frac <= 0:
            raise GraphStructureError("arm continued fraction is not positive")
        return frac.numerator, frac.denominator


def star_data(g: PlumbingGraph, center: Optional[int] = None) -> tuple[int, list[StarArm]]:
    """Decompose a star-shaped tree into (center id, arms).

    With no explicit center, the unique vertex of degree >= 3 is used; for
    paths the first endpoint-or-single vertex of smallest id is used.  Raises
    GraphStructureError when the tree is not a star about the center.
    """
    ids = g.sorted_ids()
    if center is None:
        high = [v for v in ids if g.degree(v) >= 3]
        if len(high) > 1:
            raise GraphStructureError("not star-shaped: multiple vertices of degree >= 3")
        if high:
            center = high[0]
        else:
            # a path; prefer an endpoint so the arms are genuine chains
            ends = [v for v in ids if g.degree(v) <= 1]
            center = min(ends) if ends else ids[0]
    if center not in ids:
        raise GraphStructureError(f"unknown center id {center}")
    arms = []
    for first in g.neighbors(center):
        chain_ids = []
        prev, cur = center, first
        while True:
            if g.degree(cur) > 2:
                raise GraphStructureError(
                    f"not star-shaped about {center}: vertex {cur} has degree {g.degree(cur)}"
                )
            chain_ids.append(cur)
            nxt = [u for u in g.neighbors(cur) if u != prev]
            if not nxt:
                break
            prev, cur = cur, nxt[0]
        arms.append(
            StarArm(
                ids=tuple(chain_ids),
                weights=tuple(g.weight_of(v) for v in chain_ids),
            )
        )
    return center, arms


def euler_number(g: PlumbingGraph, center: Optional[int] = None) -> Fraction:
    """Orbifold Euler number e0 + sum(bi/ai) of a star-shaped graph.

    The (ai, bi) are recovered by evaluating each arm's continued fraction.
    Equals -1/(a1*a2*a3) exactly on Brieskorn graphs.
    """
    c, arms = star_data(g, center)
    e = Fraction(g.weight_of(c))
    for arm in arms:
        a, b = arm.multiplicity
        e += Fraction(b, a)
    return e
