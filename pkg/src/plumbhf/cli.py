"""Command-line front end.

Commands
--------
brieskorn A1 A2 A3   build the standard star graph of a Brieskorn sphere
root GRAPH.json      tau profile, graded root, leaf gradings, d-invariant
d GRAPH.json         just the d-invariant
tau PRES.json        the surgery-formula tau pair of a presentation
obstruct GRAPH.json  candidate classes, adjunction filter, verdict

Exit codes: 0 success, 2 invalid input, 3 not negative definite, 4 not
almost-rational, 5 tau sequence unstabilized at the cutoff (raise -N).
All numeric output is exact; rationals print as p/q in lowest terms.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import math
import sys
import time
from fractions import Fraction
from typing import Optional, Sequence

from . import __version__
from .graphio import (
    DocumentError,
    dumps_document,
    graph_to_document,
    load_graph,
)
from .kernels import get_kernel, kernel_name
from .lattice import GraphStructureError, PlumbingGraph, definiteness, intersection_form
from .laufer import (
    NotAlmostRationalError,
    NotNegativeDefiniteError,
    default_cutoff,
    is_almost_rational,
    tau_sequence,
)
from .obstruction import (
    InconsistencyError,
    ObstructionContext,
    adjunction_filter,
    candidate_classes,
    exotic_pair_check,
    symplectic_verdict,
)
from .oracle import BoxTooLargeError, LevelRangeError, oracle_graded_root
from .roots import ConjugationSymmetryError, canonical_basis, d_invariant, graded_root
from .seifert import brieskorn_graph, normalized_seifert, star_data
from .tau import PresentationError, SurgeryPresentation, tau_pair

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NOT_NEG_DEF = 3
EXIT_NOT_AR = 4
EXIT_UNSTABILIZED = 5

MT2_CITATION = (
    "For Sigma(2,3,13) the non-existence of symplectic fillings follows from "
    "Seiberg-Witten theory; see [MT2, Theorem 1.8]. This pipeline reports "
    "undetermined because no tau set was supplied."
)


class CliError(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _fmt(q) -> str:
    q = Fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def _digest(parts: Sequence[bytes]) -> str:
    h = hashlib.sha256()
    for p in parts:
        h.update(len(p).to_bytes(8, "big"))
        h.update(p)
    return h.hexdigest()


def _read_bytes(path: str) -> bytes:
    try:
        with open(path, "rb") as fh:
            return fh.read()
    except OSError as exc:
        raise CliError(EXIT_INVALID, f"cannot read {path}: {exc}") from exc


def _report(command: list[str], digest: str, results: dict, citations: list[str], t0: float) -> dict:
    return {
        "command": command,
        "inputs_digest": digest,
        "results": results,
        "citations": citations,
        "timing_ms": int((time.perf_counter() - t0) * 1000),
    }


def _emit(report: dict, text_lines: list[str], as_json: bool, out=None) -> None:
    if out is None:
        out = sys.stdout
    if as_json:
        out.write(json.dumps(report, sort_keys=True, indent=2) + "\n")
    else:
        for line in text_lines:
            out.write(line + "\n")
        for c in report["citations"]:
            out.write(f"citation: {c}\n")


def describe_graph(g: PlumbingGraph) -> str:
    """Human name of the manifold when the graph is recognizable."""
    if g.n == 1 and g.vertices[0][1] == -1:
        return "S3"
    try:
        center, arms = star_data(g)
    except GraphStructureError:
        return f"plumbed 3-manifold ({g.n} vertices)"
    if len(arms) == 3:
        try:
            mults = sorted(arm.multiplicity[0] for arm in arms)
            normalized = normalized_seifert(*mults)
        except ValueError:
            return f"plumbed 3-manifold ({g.n} vertices)"
        expect = brieskorn_graph(*mults)
        got_c, got_arms = star_data(g, center)
        exp_c, exp_arms = star_data(expect, 0)
        if g.weight_of(got_c) == expect.weight_of(exp_c) and sorted(
            a.weights for a in got_arms
        ) == sorted(a.weights for a in exp_arms):
            return "Sigma({},{},{})".format(*mults)
    return f"plumbed 3-manifold ({g.n} vertices)"


def _pipeline_root(g: PlumbingGraph, n_steps: Optional[int]):
    """Shared root pipeline: definiteness, AR, tau, graded root."""
    m = intersection_form(g)
    if definiteness(m) != "negative_definite":
        raise CliError(EXIT_NOT_NEG_DEF, "intersection form is not negative definite")
    v0 = is_almost_rational(g)
    if v0 is None:
        raise CliError(EXIT_NOT_AR, "graph is not almost-rational within the search bound")
    if n_steps is None:
        n_steps = default_cutoff(g)
    t = tau_sequence(g, v0, n_steps)
    if not t.stabilized:
        raise CliError(
            EXIT_UNSTABILIZED,
            f"tau sequence not certified stable at cutoff {n_steps} "
            f"(window {t.window}, {t.window_kind}); raise -N",
        )
    r = graded_root(t, g)
    return v0, t, r


def _leaf_summary(r) -> str:
    grads = r.leaf_gradings()
    if len(set(grads)) == 1:
        return f"leaves: {len(grads)} @ grading {_fmt(grads[0])}; d = {_fmt(d_invariant(r))}"
    listed = ", ".join(_fmt(x) for x in grads)
    return f"leaves: {len(grads)} @ gradings {listed}; d = {_fmt(d_invariant(r))}"


# -- commands ---------------------------------------------------------------


def cmd_brieskorn(args) -> int:
    t0 = time.perf_counter()
    try:
        g = brieskorn_graph(args.a1, args.a2, args.a3)
    except ValueError as exc:
        raise CliError(EXIT_INVALID, str(exc)) from exc
    sd = normalized_seifert(args.a1, args.a2, args.a3)
    _, arms = star_data(g, 0)
    lines = [f"center weight: {sd.e0}"]
    for (a, b), arm in zip(sd.legs, arms):
        lines.append(f"arm (a={a}, b={b}): [{', '.join(str(w) for w in arm.weights)}]")
    doc = graph_to_document(g, center=0)
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(dumps_document(doc))
        lines.append(f"wrote {args.out}")
    digest = _digest([f"brieskorn {args.a1} {args.a2} {args.a3}".encode()])
    report = _report(
        ["brieskorn", str(args.a1), str(args.a2), str(args.a3)],
        digest,
        {
            "center_weight": sd.e0,
            "arms": [list(arm.weights) for arm in arms],
            "legs": [[a, b] for a, b in sd.legs],
            "graph": doc,
        },
        [],
        t0,
    )
    _emit(report, lines, args.json)
    return EXIT_OK


def _load_graph_cli(path: str) -> tuple[PlumbingGraph, Optional[int], bytes]:
    raw = _read_bytes(path)
    try:
        g, center = load_graph(path)
    except DocumentError as exc:
        raise CliError(EXIT_INVALID, str(exc)) from exc
    return g, center, raw


def cmd_root(args, d_only: bool = False) -> int:
    t0 = time.perf_counter()
    g, _, raw = _load_graph_cli(args.graph)
    v0, t, r = _pipeline_root(g, args.N)
    d = d_invariant(r)
    results = {
        "manifold": describe_graph(g),
        "leaf_count": r.leaf_count,
        "leaf_gradings": [_fmt(x) for x in r.leaf_gradings()],
        "d": _fmt(d),
        "n0": t.n0,
        "cutoff": t.cutoff,
        "window": t.window,
        "window_kind": t.window_kind,
        "v0": v0,
    }
    if d_only:
        lines = [f"d = {_fmt(d)}"]
    else:
        lines = [
            f"manifold: {results['manifold']}",
            _leaf_summary(r),
            f"stabilized: n0 = {t.n0} (cutoff {t.cutoff}, window {t.window} {t.window_kind})",
        ]
    code = EXIT_OK
    if not d_only and args.oracle:
        try:
            oroot = oracle_graded_root(g)
        except (BoxTooLargeError, LevelRangeError) as exc:
            raise CliError(EXIT_INVALID, str(exc)) from exc
        match = r.isomorphic(oroot)
        results["oracle"] = "MATCH" if match else "MISMATCH"
        results["kernel"] = kernel_name(get_kernel())
        lines.append(f"oracle: {results['oracle']} (kernel: {results['kernel']})")
        if not match:
            code = 1
    if not d_only and args.dot:
        with open(args.dot, "w", encoding="utf-8") as fh:
            fh.write(r.to_dot())
        lines.append(f"wrote {args.dot}")
    digest = _digest([b"root", raw, str(args.N).encode()])
    report = _report(["d" if d_only else "root", args.graph], digest, results, [], t0)
    _emit(report, lines, args.json)
    return code


def cmd_d(args) -> int:
    return cmd_root(args, d_only=True)


def _load_presentation(path: str) -> tuple[SurgeryPresentation, bytes]:
    raw = _read_bytes(path)
    try:
        doc = json.loads(raw)
    except json.JSONDecodeError as exc:
        raise CliError(EXIT_INVALID, f"{path} is not valid JSON: {exc}") from exc
    if not isinstance(doc, dict):
        raise CliError(EXIT_INVALID, "presentation must be a JSON object")
    try:
        p = SurgeryPresentation.build(
            tb=doc.get("tb", []),
            rot=doc.get("rot", []),
            linking=doc.get("linking", []),
            knot_tb=doc["knot_tb"],
            lambda_matrix=doc.get("lambda"),
            lambda_inverse=doc.get("lambda_inverse"),
        )
    except KeyError as exc:
        raise CliError(EXIT_INVALID, f"presentation missing key {exc}") from exc
    except (PresentationError, ValueError) as exc:
        raise CliError(EXIT_INVALID, str(exc)) from exc
    return p, raw


def cmd_tau(args) -> int:
    t0 = time.perf_counter()
    p, raw = _load_presentation(args.presentation)
    pair = tau_pair(p)
    lines = [
        f"L^T Lambda^-1 L = {_fmt(pair.ll_pairing)}",
        f"L^T Lambda^-1 V = {_fmt(pair.lv_pairing)}",
        f"tau_+ = {_fmt(pair.tau_plus)}",
        f"tau_- = {_fmt(pair.tau_minus)}",
        "tau set = {%s}" % ", ".join(_fmt(x) for x in pair.as_set),
    ]
    if not pair.integral:
        lines.append("note: non-integral tau values (non-unimodular framing form)")
    digest = _digest([b"tau", raw])
    report = _report(
        ["tau", args.presentation],
        digest,
        {
            "ll_pairing": _fmt(pair.ll_pairing),
            "lv_pairing": _fmt(pair.lv_pairing),
            "tau_plus": _fmt(pair.tau_plus),
            "tau_minus": _fmt(pair.tau_minus),
            "as_set": [_fmt(x) for x in pair.as_set],
            "integral": pair.integral,
        },
        [],
        t0,
    )
    _emit(report, lines, args.json)
    return EXIT_OK


def _parse_tau_set(raw: str) -> Optional[list[Fraction]]:
    if raw.strip().lower() == "unknown":
        return None
    try:
        vals = [Fraction(part.strip()) for part in raw.split(",") if part.strip()]
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(EXIT_INVALID, f"bad --tau-set {raw!r}: {exc}") from exc
    if not 1 <= len(vals) <= 2:
        raise CliError(EXIT_INVALID, "--tau-set takes one or two comma-separated values")
    return vals


def cmd_obstruct(args) -> int:
    t0 = time.perf_counter()
    g, _, raw = _load_graph_cli(args.graph)
    tau_set = _parse_tau_set(args.tau_set)
    if args.g4 < 0:
        raise CliError(EXIT_INVALID, "--g4 must be >= 0")
    try:
        grading = Fraction(args.grading)
    except (ValueError, ZeroDivisionError) as exc:
        raise CliError(EXIT_INVALID, f"bad --grading {args.grading!r}: {exc}") from exc
    v0, t, r = _pipeline_root(g, args.N)
    try:
        basis = canonical_basis(r, g, v0)
    except ConjugationSymmetryError as exc:
        raise CliError(EXIT_INVALID, str(exc)) from exc
    ctx = ObstructionContext.build(basis)
    try:
        cands = candidate_classes(ctx, grading)
    except ValueError as exc:
        raise CliError(EXIT_INVALID, str(exc)) from exc
    if tau_set is not None:
        filtered = adjunction_filter(cands, tau_set, args.g4, ctx)
    else:
        filtered = list(cands)
    try:
        verdict = symplectic_verdict(filtered, ctx)
    except InconsistencyError as exc:
        raise CliError(EXIT_INVALID, str(exc)) from exc

    manifold = describe_graph(g)
    citations = []
    if tau_set is None and manifold == "Sigma(2,3,13)" and verdict == "undetermined":
        citations.append(MT2_CITATION)

    def show(cs) -> str:
        return "; ".join("+".join(f"[{n}]" for n in c.names(basis)) for c in cs)

    lines = [
        f"manifold: {manifold}",
        "basis: "
        + ", ".join(f"[{el.name}]@{_fmt(el.grading)}" for el in basis.elements),
        f"candidates @ grading {_fmt(grading)}: {show(cands)}",
        "tau set: "
        + ("unknown (filter skipped)" if tau_set is None else "{%s}" % ", ".join(_fmt(x) for x in tau_set)),
        f"filtered: {show(filtered)}",
        f"verdict: {verdict}",
    ]
    results = {
        "manifold": manifold,
        "basis_size": len(basis),
        "candidates": [c.names(basis) for c in cands],
        "filtered": [c.names(basis) for c in filtered],
        "verdict": verdict,
        "tau_set": None if tau_set is None else [_fmt(x) for x in tau_set],
        "g4_bound": args.g4,
        "grading": _fmt(grading),
    }
    if tau_set is not None:
        exotic = exotic_pair_check(ctx, tau_set, args.g4)
        results["exotic_pair_check"] = exotic
        lines.append(f"exotic pair check: {exotic}")
    digest = _digest([b"obstruct", raw, args.tau_set.encode(), str(args.g4).encode()])
    report = _report(["obstruct", args.graph], digest, results, citations, t0)
    _emit(report, lines, args.json)
    return EXIT_OK


# -- argument parsing -------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="plumbhf",
        description=__doc__,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    ap.add_argument("--version", action="version", version=f"plumbhf {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    b = sub.add_parser("brieskorn", help="standard star graph of Sigma(a1,a2,a3)")
    b.add_argument("a1", type=int)
    b.add_argument("a2", type=int)
    b.add_argument("a3", type=int)
    b.add_argument("--out", help="write the graph JSON here")
    b.add_argument("--json", action="store_true", help="print the run report as JSON")
    b.set_defaults(func=cmd_brieskorn)

    r = sub.add_parser("root", help="graded root, leaf gradings and d-invariant")
    r.add_argument("graph", help="graph JSON file")
    r.add_argument("-N", type=int, default=None, help="tau cutoff (default: auto)")
    r.add_argument("--dot", help="write the root as DOT here")
    r.add_argument("--oracle", action="store_true", help="cross-check by box enumeration")
    r.add_argument("--d", dest="d_flag", action="store_true", help="print only d")
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=lambda a: cmd_root(a, d_only=a.d_flag))

    d = sub.add_parser("d", help="d-invariant only")
    d.add_argument("graph")
    d.add_argument("-N", type=int, default=None)
    d.add_argument("--json", action="store_true")
    d.set_defaults(func=cmd_d, oracle=False, dot=None)

    t = sub.add_parser("tau", help="tau pair of a surgery presentation")
    t.add_argument("presentation", help="presentation JSON file")
    t.add_argument("--json", action="store_true")
    t.set_defaults(func=cmd_tau)

    o = sub.add_parser("obstruct", help="candidate classes, filter, verdict")
    o.add_argument("graph", help="graph JSON file")
    o.add_argument("--tau-set", default="unknown", help='e.g. "0,1" or "unknown"')
    o.add_argument("--g4", type=int, default=0, help="slice genus bound (default 0)")
    o.add_argument("--grading", default="0", help="candidate grading (default 0)")
    o.add_argument("-N", type=int, default=None)
    o.add_argument("--json", action="store_true")
    o.set_defaults(func=cmd_obstruct)

    return ap


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except CliError as exc:
        sys.stderr.write(f"error: {exc}\n")
        return exc.code
    except (NotNegativeDefiniteError,) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NOT_NEG_DEF
    except (NotAlmostRationalError,) as exc:
        sys.stderr.write(f"error: {exc}\n")
        return EXIT_NOT_AR
    except BrokenPipeError:
        return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
