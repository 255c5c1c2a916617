"""Concordance tau invariants from Legendrian surgery data.

A surgery presentation consists of the framing form Lambda (or its exact
inverse, whichever the source provides), the per-component Thurston-
Bennequin and rotation numbers, the linking vector of a distinguished knot
with the surgery components, and that knot's tb.  The two tau values are

    2 tau_pm - 1 = knot_tb - L^T Lambda^{-1} L  +-  L^T Lambda^{-1} V

with V the rotation vector; both are returned exactly together with the
unordered pair {tau_+, tau_-}.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .lattice import (
    RationalMatrix,
    SingularMatrixError,
    SymIntMatrix,
    inverse_exact,
    pairing,
)

__all__ = [
    "SurgeryPresentation",
    "TauPair",
    "PresentationError",
    "tau_pair",
    "lagrangian_slice_genus",
]


class PresentationError(ValueError):
    """A surgery presentation violates one of its invariants."""


def _invert_rational(minv: RationalMatrix) -> SymIntMatrix:
    # exact inverse of the inverse; must come out integral and symmetric
    n = minv.n
    a = [list(row) for row in minv.entries]
    rhs = [[Fraction(1 if i == j else 0) for j in range(n)] for i in range(n)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            raise SingularMatrixError("the supplied inverse framing form is singular")
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
    ints = []
    for row in rhs:
        out = []
        for x in row:
            if x.denominator != 1:
                raise PresentationError(
                    "inverse of the supplied lambda_inverse is not integral"
                )
            out.append(x.numerator)
        ints.append(out)
    return SymIntMatrix(ints)


@dataclass(frozen=True)
class SurgeryPresentation:
    """Validated Legendrian surgery data.

    Exactly one of lambda_matrix / lambda_inverse is given at construction;
    the other is derived exactly.  Validation enforces the Legendrian
    surgery condition lambda_ii = tb_i - 1, nonsingularity, and matching
    component counts.
    """

    lambda_matrix: SymIntMatrix
    lambda_inverse: RationalMatrix
    tb_components: tuple[int, ...]
    rot: tuple[int, ...]
    linking: tuple[int, ...]
    knot_tb: int

    @staticmethod
    def build(
        tb: Sequence[int],
        rot: Sequence[int],
        linking: Sequence[int],
        knot_tb: int,
        lambda_matrix: Optional[Sequence[Sequence[int]]] = None,
        lambda_inverse: Optional[Sequence[Sequence[Fraction]]] = None,
    ) -> "SurgeryPresentation":
        if (lambda_matrix is None) == (lambda_inverse is None):
            raise PresentationError("give exactly one of lambda_matrix, lambda_inverse")
        tb = tuple(int(x) for x in tb)
        rot_t = tuple(int(x) for x in rot)
        linking_t = tuple(int(x) for x in linking)
        if lambda_matrix is not None:
            lam = SymIntMatrix(lambda_matrix)
            try:
                lam_inv = inverse_exact(lam)
            except SingularMatrixError as exc:
                raise PresentationError("framing form is singular (det = 0)") from exc
        else:
            try:
                lam_inv = RationalMatrix(
                    [[Fraction(x) for x in row] for row in lambda_inverse]
                )
            except ValueError as exc:
                raise PresentationError(str(exc)) from exc
            lam = _invert_rational(lam_inv)
        count = lam.n
        if not (len(tb) == len(rot_t) == len(linking_t) == count):
            raise PresentationError(
                f"component count mismatch: lambda is {count}x{count}, "
                f"tb/rot/linking have lengths {len(tb)}/{len(rot_t)}/{len(linking_t)}"
            )
        for i in range(count):
            if lam[i, i] != tb[i] - 1:
                raise PresentationError(
                    f"lambda[{i}][{i}] = {lam[i, i]} but tb - 1 = {tb[i] - 1}; "
                    "Legendrian surgery requires lambda_ii = tb_i - 1"
                )
        return SurgeryPresentation(
            lambda_matrix=lam,
            lambda_inverse=lam_inv,
            tb_components=tb,
            rot=rot_t,
            linking=linking_t,
            knot_tb=int(knot_tb),
        )

    @property
    def components(self) -> int:
        return len(self.tb_components)


@dataclass(frozen=True)
class TauPair:
    """Both sign choices of the surgery formula, exact."""

    tau_plus: Fraction
    tau_minus: Fraction
    ll_pairing: Fraction  # L^T Lambda^{-1} L
    lv_pairing: Fraction  # L^T Lambda^{-1} V

    @property
    def as_set(self) -> tuple[Fraction, Fraction]:
        """The unordered pair, represented sorted ascending."""
        return tuple(sorted((self.tau_plus, self.tau_minus)))

    @property
    def integral(self) -> bool:
        return self.tau_plus.denominator == 1 and self.tau_minus.denominator == 1


def tau_pair(p: SurgeryPresentation) -> TauPair:
    """Evaluate the surgery formula for both orientations of the knot."""
    ll = pairing(p.linking, p.lambda_inverse, p.linking)
    lv = pairing(p.linking, p.lambda_inverse, p.rot)
    base = p.knot_tb - ll
    tau_plus = Fraction(base + lv + 1, 2)
    tau_minus = Fraction(base - lv + 1, 2)
    return TauPair(tau_plus=tau_plus, tau_minus=tau_minus, ll_pairing=ll, lv_pairing=lv)


def lagrangian_slice_genus(knot_tb: int) -> int:
    """Genus (tb + 1)/2 of a Lagrangian filling; tb must be odd and >= -1."""
    knot_tb = int(knot_tb)
    if knot_tb < -1:
        raise ValueError(
            f"tb = {knot_tb} < -1: no Lagrangian filling exists with that tb"
        )
    if knot_tb % 2 == 0:
        raise ValueError(
            f"tb = {knot_tb} is even: (tb + 1)/2 is not an integer genus"
        )
    return (knot_tb + 1) // 2
