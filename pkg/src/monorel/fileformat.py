"""JSON relation files.

Two layouts are accepted::

    {"d": 2, "matrix": [[1, 0], [0, 1]]}                  # row-major d x d
    {"d": 2, "graph_basis": [[1, 0, 1, 0], ...]}          # each vector is (x, x*)

Writers always emit the ``graph_basis`` layout.  ``+inf`` is serialised as
the string ``"inf"``.
"""

from __future__ import annotations

import json
import math

import numpy as np

from .errors import MonorelError
from .relation import LinearRelation, from_graph_basis, from_matrix

__all__ = ["ParseError", "ShapeError", "parse_relation", "load_relation",
           "relation_to_dict", "dump_relation", "encode_value"]


class ParseError(MonorelError, ValueError):
    pass


class ShapeError(MonorelError, ValueError):
    pass


def _numeric_rows(rows, what):
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise ParseError(f"{what} must be a list of lists")
    try:
        out = [[float(v) for v in r] for r in rows]
    except (TypeError, ValueError) as exc:
        raise ParseError(f"{what} contains a non-numeric entry") from exc
    if any(isinstance(v, bool) for r in rows for v in r):
        raise ParseError(f"{what} contains a boolean")
    if not all(math.isfinite(v) for r in out for v in r):
        raise ParseError(f"{what} contains a non-finite entry")
    return out


def parse_relation(doc) -> LinearRelation:
    """Build a relation from an already-decoded JSON document."""
    if not isinstance(doc, dict):
        raise ParseError("top level must be an object")
    d = doc.get("d")
    if not isinstance(d, int) or isinstance(d, bool):
        raise ParseError("'d' must be an integer")
    if d < 1:
        raise ShapeError("'d' must be positive")
    has_m, has_b = "matrix" in doc, "graph_basis" in doc
    if has_m == has_b:
        raise ParseError("exactly one of 'matrix' and 'graph_basis' is required")
    if has_m:
        rows = _numeric_rows(doc["matrix"], "matrix")
        if len(rows) != d or any(len(r) != d for r in rows):
            raise ShapeError(f"matrix must be {d} x {d}")
        return from_matrix(np.array(rows, dtype=float).reshape(d, d))
    vecs = _numeric_rows(doc["graph_basis"], "graph_basis")
    if any(len(v) != 2 * d for v in vecs):
        raise ShapeError(f"every graph_basis vector must have length {2 * d}")
    B = np.array(vecs, dtype=float).reshape(len(vecs), 2 * d).T
    return from_graph_basis(B, d)


def load_relation(path) -> LinearRelation:
    """Read a relation file.

    Raises
    ------
    ParseError
        Malformed JSON or schema.
    ShapeError
        Inconsistent dimensions.
    OSError
        Unreadable file.
    """
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc}") from exc
    return parse_relation(doc)


def relation_to_dict(A: LinearRelation) -> dict:
    return {"d": A.d, "graph_basis": [[float(v) for v in col] for col in A.graph.basis.T]}


def dump_relation(A: LinearRelation) -> str:
    return json.dumps(relation_to_dict(A), indent=1) + "\n"


def encode_value(v: float):
    """JSON encoding of an extended real."""
    if v == math.inf:
        return "inf"
    if math.isnan(v) or v == -math.inf:
        raise ValueError(f"{v} is not a valid extended-real result")
    return float(v)
