"""Versioned JSON interchange format for plumbing graphs.

Document shape (format_version 1):

    {
      "format_version": 1,
      "vertices": [{"id": 0, "weight": -1}, ...],
      "edges": [[0, 1], ...],
      "center": 0            # optional
    }

Serialization is canonical: vertices sorted by id, edges as [small, large]
pairs sorted lexicographically, keys sorted.  Round-tripping a document
through the graph type and back is the identity on canonical documents.
"""

from __future__ import annotations

import json
from typing import Optional

from .lattice import GraphStructureError, PlumbingGraph

__all__ = [
    "FORMAT_VERSION",
    "DocumentError",
    "graph_to_document",
    "document_to_graph",
    "dumps_document",
    "load_graph",
    "save_graph",
]

FORMAT_VERSION = 1


class DocumentError(ValueError):
    """Malformed graph document."""


def graph_to_document(g: PlumbingGraph, center: Optional[int] = None) -> dict:
    doc = {
        "format_version": FORMAT_VERSION,
        "vertices": [
            {"id": v, "weight": w} for v, w in sorted(g.vertices)
        ],
        "edges": sorted(sorted(e) for e in g.edges),
    }
    if center is not None:
        if center not in {v for v, _ in g.vertices}:
            raise DocumentError(f"center {center} is not a vertex id")
        doc["center"] = int(center)
    return doc


def document_to_graph(doc: dict) -> tuple[PlumbingGraph, Optional[int]]:
    if not isinstance(doc, dict):
        raise DocumentError("graph document must be a JSON object")
    version = doc.get("format_version")
    if version != FORMAT_VERSION:
        raise DocumentError(f"unsupported format_version {version!r}, expected {FORMAT_VERSION}")
    try:
        vertices = [(int(v["id"]), int(v["weight"])) for v in doc["vertices"]]
        edges = [tuple(int(x) for x in e) for e in doc.get("edges", [])]
    except (KeyError, TypeError, ValueError) as exc:
        raise DocumentError(f"malformed graph document: {exc}") from exc
    for e in edges:
        if len(e) != 2:
            raise DocumentError(f"edge {list(e)} must have exactly two endpoints")
    try:
        g = PlumbingGraph(vertices, edges)
    except GraphStructureError as exc:
        raise DocumentError(str(exc)) from exc
    center = doc.get("center")
    if center is not None:
        center = int(center)
        if center not in {v for v, _ in g.vertices}:
            raise DocumentError(f"center {center} is not a vertex id")
    return g, center


def dumps_document(doc: dict) -> str:
    return json.dumps(doc, sort_keys=True, indent=2) + "\n"


def load_graph(path: str) -> tuple[PlumbingGraph, Optional[int]]:
    try:
        with open(path, "r", encoding="utf-8") as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise DocumentError(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise DocumentError(f"{path} is not valid JSON: {exc}") from exc
    return document_to_graph(doc)


def save_graph(g: PlumbingGraph, path: str, center: Optional[int] = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_document(graph_to_document(g, center)))
