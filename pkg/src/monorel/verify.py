"""Seeded verification suites.

Each suite maps a seed (or an explicit relation) to a record
``{"seed", "ok", "residual", "witness"?, ...}``.  Instance ``i`` uses
``d = 1 + i % dim_max``.
"""

from __future__ import annotations

import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import replace
from functools import partial

import numpy as np

from .bbsolver import decompose
from .errors import MonorelError
from .extquad import canonical_distance, equal_canonical
from .fitzpatrick import (INF_ORDER, bracket_check, closed_form_object, fitz, fitz_n,
                          probe_points)
from .fileformat import encode_value
from .oracle import KINDS, random_relation
from .relation import LinearRelation, is_symmetric, maximality_report
from .subspace import DEFAULT_TOL, contains
from .sums import fs6_sides

__all__ = ["SUITES", "MAXIMAL_KINDS", "run_suite", "run_instance", "new1_instance"]

MAXIMAL_KINDS = ("symmetric_maximal", "skew", "general_monotone")
NEW1_ORDERS = (2, 3, 4, 5, 6)
FS6_ORDERS = (2, 3, 4, 5, INF_ORDER)


def _order_label(n):
    return "inf" if n == INF_ORDER else int(n)


def _values_differ(a, b, tol):
    if math.isinf(a) or math.isinf(b):
        return a != b
    return abs(a - b) > tol.tau_eq * (1.0 + abs(a) + abs(b))


def _witness(A, f, g, tol, seed=0):
    """First probe point where ``f`` and ``g`` disagree (graph points first)."""
    pts, on_graph = probe_points(A, seed)
    order = np.concatenate([np.flatnonzero(on_graph), np.flatnonzero(~on_graph)])
    for i in order:
        p = pts[i]
        a = math.inf if f is None else f(p)
        b = g(p)
        if _values_differ(a, b, tol):
            return {"point": [float(v) for v in p], "lhs": encode_value(a),
                    "rhs": encode_value(b)}
    return None


def new1_instance(A: LinearRelation, tol, orders=NEW1_ORDERS, seed=0):
    """Recursion against the symmetric closed-form object for each order."""
    worst = 0.0
    failures = []
    for n in orders:
        try:
            rhs = closed_form_object(A, n, tol)
        except MonorelError as exc:
            failures.append({"order": n, "error": type(exc).__name__})
            continue
        try:
            lhs = fitz_n(A, n, tol)
        except MonorelError:
            lhs = None  # F_{A,n} is identically +inf
        if lhs is not None and equal_canonical(lhs, rhs, tol):
            worst = max(worst, canonical_distance(lhs, rhs))
            continue
        wit = _witness(A, lhs, rhs, tol, seed) or {"point": None}
        wit["order"] = n
        failures.append(wit)
    return {"ok": not failures, "residual": worst, "failures": failures}


def _new1(seed, dim_max, tol, A=None):
    if A is None:
        A = random_relation(seed, 1 + seed % dim_max, "symmetric_maximal")
    return new1_instance(A, tol, seed=seed)


def _fs6(seed, dim_max, tol, A=None):
    d = 1 + seed % dim_max
    if A is None:
        A = random_relation(2 * seed, d, "symmetric_maximal")
        B = random_relation(2 * seed + 1, d, "symmetric_maximal")
    else:
        B = A
    worst, failures = 0.0, []
    for n in FS6_ORDERS:
        try:
            lhs, rhs = fs6_sides(A, B, n, tol)
        except MonorelError as exc:
            failures.append({"order": _order_label(n), "error": type(exc).__name__})
            continue
        if equal_canonical(lhs, rhs, tol):
            worst = max(worst, canonical_distance(lhs, rhs))
        else:
            wit = _witness(A, lhs, rhs, tol, seed) or {"point": None}
            wit["order"] = _order_label(n)
            failures.append(wit)
    return {"ok": not failures, "residual": worst, "failures": failures}


def _bb(seed, dim_max, tol, A=None):
    kind = None
    if A is None:
        kind = KINDS[seed % len(KINDS)]
        A = random_relation(seed, 1 + seed % dim_max, kind)
    r = maximality_report(A, tol)
    ok = (not r.monotone) or (r.adjoint_monotone == r.maximal_by_dim == r.sz_surjective)
    out = {"ok": ok, "residual": 0.0, "report": r.as_dict()}
    if kind:
        out["kind"] = kind
    return out


def _sz(seed, dim_max, tol, A=None, n_points=10):
    if A is None:
        kind = MAXIMAL_KINDS[seed % len(MAXIMAL_KINDS)]
        A = random_relation(seed, 1 + seed % dim_max, kind)
    rng = np.random.default_rng([seed, A.d, 31])
    worst, failures = 0.0, []
    for p in rng.standard_normal((n_points, 2 * A.d)):
        try:
            gp, jp = decompose(A, p, tol)
        except MonorelError as exc:
            failures.append({"point": [float(v) for v in p], "error": type(exc).__name__})
            continue
        res = float(np.linalg.norm(gp + jp - p))
        worst = max(worst, res)
        on_graph = contains(A.graph, gp, replace(tol, tau_rank=tol.tau_eq))
        if res > tol.tau_eq or not on_graph or not np.array_equal(jp[A.d:], -jp[:A.d]):
            failures.append({"point": [float(v) for v in p], "residual": res})
    return {"ok": not failures, "residual": worst, "failures": failures}


def _bracket(seed, dim_max, tol, A=None):
    if A is None:
        kind = MAXIMAL_KINDS[seed % len(MAXIMAL_KINDS)]
        A = random_relation(seed, 1 + seed % dim_max, kind)
    if not maximality_report(A, tol).maximal_by_dim:
        return {"ok": False, "residual": 0.0,
                "failures": [{"error": "NotMaximal"}]}
    candidates = [("fitz", fitz(A, tol))]
    if is_symmetric(A, tol):
        candidates.append(("fitz_3", fitz_n(A, 3, tol)))
    failures = []
    for name, F in candidates:
        res = bracket_check(A, F, seed=seed, tol=tol)
        if not res:
            failures.append({"function": name, "reason": res.reason,
                             "point": [float(v) for v in res.witness]})
    return {"ok": not failures, "residual": 0.0, "failures": failures}


SUITES = {"new1": _new1, "fs6": _fs6, "bb": _bb, "sz": _sz, "bracket": _bracket}


def run_instance(suite, seed, dim_max, tol=None, relation=None):
    tol = DEFAULT_TOL if tol is None else tol
    rec = SUITES[suite](seed, dim_max, tol, relation)
    rec["seed"] = seed
    return rec


def run_suite(suite: str, seeds: int, dim_max: int, tol=None, relation=None,
              jobs: int = 1) -> dict:
    """Run one suite (or ``"all"``) and summarise.

    Records are ordered by seed regardless of ``jobs``.
    """
    tol = DEFAULT_TOL if tol is None else tol
    if suite == "all":
        parts = [run_suite(s, seeds, dim_max, tol, relation, jobs) for s in SUITES]
        return {
            "suite": "all",
            "instances": sum(p["instances"] for p in parts),
            "failures": [dict(f, suite=p["suite"]) for p in parts for f in p["failures"]],
            "max_residual": max(p["max_residual"] for p in parts),
        }
    if suite not in SUITES:
        raise ValueError(f"unknown suite {suite!r}")
    seed_list = [0] if relation is not None else list(range(seeds))
    fn = partial(run_instance, suite, dim_max=dim_max, tol=tol, relation=relation)
    if jobs > 1 and len(seed_list) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            records = list(pool.map(fn, seed_list, chunksize=8))
    else:
        records = [fn(s) for s in seed_list]
    failures = [r for r in records if not r["ok"]]
    return {
        "suite": suite,
        "instances": len(records),
        "failures": failures,
        "max_residual": max((r["residual"] for r in records), default=0.0),
    }
