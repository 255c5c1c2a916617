"""F2 obstruction pipeline over the canonical leaf basis.

Works throughout with the dual pairing <T_i, V_j> = delta_ij between tower
classes and leaf classes, so the pairing of a class against the full sum
Theta+ is just the parity of its support.  The pipeline:

1. enumerate the conjugation-invariant odd-support classes at a grading
   (the admissible images of the generator under the filling cobordism);
2. strike the candidates that would force the contact class pairing and
   contradict the slice-genus bound via the tau set;
3. read the verdict off the survivors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Optional, Sequence

from .roots import CanonicalBasis

__all__ = [
    "F2Class",
    "ObstructionContext",
    "InconsistencyError",
    "candidate_classes",
    "adjunction_filter",
    "symplectic_verdict",
    "reversed_orientation_class",
    "exotic_pair_check",
]


class InconsistencyError(RuntimeError):
    """The candidate model contradicted itself (no admissible class left)."""


@dataclass(frozen=True)
class F2Class:
    """A sum of canonical basis elements over F2.

    support holds basis positions (into ctx.basis.elements); grading is the
    common grading of the supported elements, None when they disagree (only
    Theta+ on a mixed-grading basis does that).
    """

    support: frozenset[int]
    grading: Optional[Fraction]

    def names(self, basis: CanonicalBasis) -> list[str]:
        return [basis.elements[p].name for p in sorted(self.support)]

    def __contains__(self, position: int) -> bool:
        return position in self.support

    def pair_with_theta_plus(self) -> int:
        """<Theta+, theta> over F2 = parity of the support."""
        return len(self.support) % 2


def _homogeneous_grading(basis: CanonicalBasis, support) -> Optional[Fraction]:
    grads = {basis.elements[p].grading for p in support}
    if len(grads) == 1:
        return next(iter(grads))
    return None


@dataclass(frozen=True)
class ObstructionContext:
    """Canonical basis plus the distinguished contact class position."""

    basis: CanonicalBasis
    contact_index: int
    theta_plus: F2Class

    @staticmethod
    def build(basis: CanonicalBasis) -> "ObstructionContext":
        contact = basis.contact_position()
        full = frozenset(range(len(basis)))
        theta = F2Class(support=full, grading=_homogeneous_grading(basis, full))
        return ObstructionContext(basis=basis, contact_index=contact, theta_plus=theta)

    def j_image(self, position: int) -> int:
        return self.basis.j_action[position]


def candidate_classes(ctx: ObstructionContext, grading: Fraction) -> list[F2Class]:
    """All conjugation-invariant odd-support classes at the given grading.

    Supports are unions of J-orbits of basis positions at that grading with
    an odd number of J-fixed positions, so every candidate pairs to 1 with
    Theta+.  Deterministic order: support size, then positions
    lexicographically.
    """
    basis = ctx.basis
    grading = Fraction(grading)
    at_grading = [p for p in range(len(basis)) if basis.elements[p].grading == grading]
    if not at_grading:
        raise ValueError(f"no basis element at grading {grading}")
    fixed = [p for p in at_grading if basis.j_action[p] == p]
    pairs = sorted(
        {tuple(sorted((p, basis.j_action[p]))) for p in at_grading if basis.j_action[p] != p}
    )
    out = []
    for fixed_count in range(1, len(fixed) + 1, 2):
        for fixed_choice in combinations(fixed, fixed_count):
            for pair_count in range(len(pairs) + 1):
                for pair_choice in combinations(pairs, pair_count):
                    support = set(fixed_choice)
                    for a, b in pair_choice:
                        support.update((a, b))
                    out.append(
                        F2Class(support=frozenset(support), grading=grading)
                    )
    out.sort(key=lambda c: (len(c.support), sorted(c.support)))
    return out


def adjunction_filter(
    candidates: Sequence[F2Class],
    tau_set: Sequence[Fraction],
    g4_bound: int,
    ctx: ObstructionContext,
) -> list[F2Class]:
    """Strike candidates contradicted by the slice-genus bound.

    A candidate containing both the contact position and its conjugate pairs
    to 1 with both contact classes, which forces max(tau_set) <= g4_bound;
    when the tau set violates that bound such candidates are removed.
    Monotone (output is a sublist) and idempotent.
    """
    if g4_bound < 0:
        raise ValueError("g4_bound must be >= 0")
    if not tau_set:
        raise ValueError("tau_set must contain at least one value")
    if max(tau_set) <= g4_bound:
        return list(candidates)
    c = ctx.contact_index
    jc = ctx.j_image(c)
    return [cand for cand in candidates if not (c in cand.support and jc in cand.support)]


def symplectic_verdict(remaining: Sequence[F2Class], ctx: ObstructionContext) -> str:
    """Read the verdict off the surviving candidates.

    obstructed: no survivor contains the contact position, so a filling's
    cobordism image could never pair with the contact class.
    not_obstructed: every survivor contains it; the argument has no leverage.
    undetermined: both kinds survive.
    """
    if not remaining:
        raise InconsistencyError(
            "no admissible class survived; the candidate model is inconsistent"
        )
    c = ctx.contact_index
    with_contact = sum(1 for cand in remaining if c in cand.support)
    if with_contact == 0:
        return "obstructed"
    if with_contact == len(remaining):
        return "not_obstructed"
    return "undetermined"


def reversed_orientation_class(ctx: ObstructionContext) -> F2Class:
    """Image of the generator under the orientation-reversed cobordism map:
    the full sum Theta+ over the whole basis."""
    return ctx.theta_plus


def exotic_pair_check(
    ctx: ObstructionContext, tau_set: Sequence[Fraction], g4_bound: int
) -> str:
    """H-slice contradiction test.

    If the knot were H-slice in both members of the pair, max(tau_set) would
    be bounded by g4_bound; a violation certifies distinct smooth structures.
    """
    if g4_bound < 0:
        raise ValueError("g4_bound must be >= 0")
    if not tau_set:
        raise ValueError("tau_set must contain at least one value")
    if max(tau_set) > g4_bound:
        return "distinct_smooth_structures"
    return "inconclusive"
