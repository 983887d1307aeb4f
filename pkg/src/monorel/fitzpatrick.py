"""Quadratic forms and Fitzpatrick functions of linear relations.

All functions here return :class:`~monorel.extquad.ExtQuad` objects on
``R^d x R^d`` (argument ``(x, x*)``), computed exactly.  ``fitz_n`` follows
the recursion

    F_{n+1}(x, x*) = sup_{(a, a*) in gra A} F_n(a, x*) + <x - a, a*>

starting from ``F_2 = F_A``; the symmetric closed forms are assembled from
``q_A`` and its conjugate and serve as the comparison target.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NotMaximal, NotMonotone, NotSymmetric
from .extquad import (ExtQuad, JointQuadratic, conjugate, equal_canonical, pairing_matrix,
                      partial_maximize)
from .relation import LinearRelation, is_monotone, is_symmetric, parts
from .subspace import DEFAULT_TOL, rank_cutoff

__all__ = [
    "INF_ORDER",
    "qform",
    "qform_conjugate",
    "fitz",
    "fitz_n",
    "fitz_n_closed_symmetric",
    "closed_form_object",
    "fitz_inf",
    "fitz_star_transpose",
    "separable_sum",
    "probe_points",
    "BracketResult",
    "bracket_check",
]

INF_ORDER = math.inf
"""Sentinel order for the limit function ``F_{A, inf}``."""


def _tol(tol):
    return DEFAULT_TOL if tol is None else tol


def _require_monotone(A, tol):
    if not is_monotone(A, tol):
        raise NotMonotone("relation is not monotone")


def _require_symmetric_maximal(A, tol):
    _require_monotone(A, tol)
    if not is_symmetric(A, tol):
        raise NotSymmetric("relation is not symmetric")
    if A.graph_dim != A.d:
        raise NotMaximal(f"graph dimension {A.graph_dim} != {A.d}")


def _check_order(n):
    if n != INF_ORDER and (int(n) != n or n < 2):
        raise ValueError(f"order must be an integer >= 2 or INF_ORDER, got {n!r}")


def qform(A: LinearRelation, tol=None) -> ExtQuad:
    """``x -> 1/2 <x, Ax>`` on ``dom A``, ``+inf`` elsewhere.

    The value does not depend on the selection in ``Ax`` because
    ``dom A`` is orthogonal to ``A0`` for monotone ``A``.  The domain is a
    closed subspace, so the object is its own lower semicontinuous hull.
    """
    tol = _tol(tol)
    _require_monotone(A, tol)
    dom, _, _ = parts(A, tol)
    u, s, vt = np.linalg.svd(A.B1, full_matrices=False)
    keep = s > rank_cutoff(s, tol)
    B1_pinv = vt[keep].T @ np.diag(1.0 / s[keep]) @ u[:, keep].T
    P = B1_pinv.T @ A.pairing_form() @ B1_pinv
    return ExtQuad(P, None, 0.0, dom, tol)


def qform_conjugate(A: LinearRelation, tol=None) -> ExtQuad:
    return conjugate(qform(A, tol))


def _blocks(d, pairs):
    """4d x 4d symmetric matrix with identity blocks at the given positions."""
    E = np.zeros((4 * d, 4 * d))
    I = np.eye(d)
    for (i, j), s in pairs.items():
        E[i * d:(i + 1) * d, j * d:(j + 1) * d] += s * I
        E[j * d:(j + 1) * d, i * d:(i + 1) * d] += s * I
    return E


# block indices in the joint variable (x, x*, a, a*)
_X, _XS, _A, _AS = range(4)


def fitz(A: LinearRelation, tol=None) -> ExtQuad:
    """``F_A(x, x*) = sup_{(a, a*) in gra A} <x, a*> + <a, x*> - <a, a*>``.

    Raises
    ------
    InnerNotConcave
        If ``A`` is not monotone.
    """
    tol = _tol(tol)
    d = A.d
    E = _blocks(d, {(_X, _AS): 1.0, (_A, _XS): 1.0, (_A, _AS): -1.0})
    obj = JointQuadratic(E, np.zeros(4 * d), 0.0, 2 * d)
    return partial_maximize(obj, A.graph, tol)


def _fitz_step(A, F, tol):
    d = A.d
    Z, I = np.zeros((d, d)), np.eye(d)
    # (x, x*, a, a*) -> (a, x*)
    L = np.block([[Z, Z, I, Z], [Z, I, Z, Z]])
    Fc = F.compose(L)
    E = _blocks(d, {(_X, _AS): 1.0, (_A, _AS): -1.0})
    obj = JointQuadratic(Fc.P + E, Fc.q, Fc.r, 2 * d, Fc.domain)
    return partial_maximize(obj, A.graph, tol)


def fitz_n(A: LinearRelation, n, tol=None) -> ExtQuad:
    """Fitzpatrick function of order ``n`` by ``n - 2`` recursion steps.

    Raises
    ------
    InnerNotConcave, EmptyDomain
        When ``F_{A,n}`` is identically ``+inf`` (``A`` is not ``n``-cyclically
        monotone), or when ``A`` is not monotone.
    """
    tol = _tol(tol)
    _check_order(n)
    if n == INF_ORDER:
        raise ValueError("use fitz_inf for the limit order")
    F = fitz(A, tol)
    for _ in range(int(n) - 2):
        F = _fitz_step(A, F, tol)
    return F


def separable_sum(A: LinearRelation, tol=None) -> ExtQuad:
    """``(x, x*) -> q_A(x) + q_A*(x*)``."""
    q = qform(A, tol)
    return q.direct_sum(conjugate(q))


def closed_form_object(A: LinearRelation, n, tol=None) -> ExtQuad:
    """The symmetric closed-form expression, built without checking that it applies.

    ``(n-1)/n q(x) + (n-1)/n q*(x*) + 1/n <x, x*>``, and ``q(x) + q*(x*)``
    for ``n = INF_ORDER``.
    """
    tol = _tol(tol)
    _check_order(n)
    base = separable_sum(A, tol)
    if n == INF_ORDER:
        return base
    return ((n - 1) / n * base).plus_quadratic(pairing_matrix(A.d) / n)


def fitz_n_closed_symmetric(A: LinearRelation, n, tol=None) -> ExtQuad:
    """Closed form of ``F_{A,n}`` for symmetric maximal monotone ``A``.

    Raises
    ------
    NotSymmetric, NotMaximal
    """
    tol = _tol(tol)
    _require_symmetric_maximal(A, tol)
    return closed_form_object(A, n, tol)


def fitz_inf(A: LinearRelation, tol=None) -> ExtQuad:
    """``F_{A, inf} = q_A (+) q_A*`` for symmetric maximal monotone ``A``.

    The identity ``F_{A, inf} = 2 F_A - <.,.>`` is checked before returning.
    """
    tol = _tol(tol)
    _require_symmetric_maximal(A, tol)
    F = separable_sum(A, tol)
    other = (2.0 * fitz(A, tol)).plus_quadratic(-pairing_matrix(A.d))
    if not equal_canonical(F, other, tol):  # pragma: no cover - would be a bug
        raise ArithmeticError("q (+) q* and 2 F_A - <.,.> disagree")
    return F


def fitz_star_transpose(A: LinearRelation, tol=None) -> ExtQuad:
    """Upper end of the Fitzpatrick family: ``(x, x*) -> F_A*(x*, x)``."""
    return conjugate(fitz(A, tol)).transposed()


def probe_points(A: LinearRelation, seed: int = 0, n_random: int = 64,
                 grid_max_d: int = 3) -> tuple[np.ndarray, np.ndarray]:
    """Deterministic probe points in ``R^2d``.

    Returns ``(points, on_graph)``: the grid ``{-1, 0, 1}^2d`` (for
    ``d <= grid_max_d``), ``n_random`` seeded Gaussian points, then graph
    points (the lifts of the coordinate vectors lying in ``dom A`` followed by
    the graph basis).  ``on_graph`` flags the graph points.
    """
    d = A.d
    chunks = []
    if d <= grid_max_d:
        g = np.array(np.meshgrid(*[[-1.0, 0.0, 1.0]] * (2 * d), indexing="ij"))
        chunks.append(g.reshape(2 * d, -1).T)
    rng = np.random.default_rng([seed, d, 17])
    chunks.append(rng.standard_normal((n_random, 2 * d)))
    off = np.vstack(chunks)

    graph_pts = []
    dom, _, _ = parts(A)
    for i in range(d):
        e = np.zeros(d)
        e[i] = 1.0
        if np.linalg.norm(e - dom.basis @ (dom.basis.T @ e)) < 1e-12:
            graph_pts.append(np.concatenate([e, A.select(e)]))
    graph_pts.extend(A.graph.basis.T)
    graph_pts = np.array(graph_pts).reshape(-1, 2 * d)
    pts = np.vstack([off, graph_pts])
    flags = np.zeros(len(pts), dtype=bool)
    flags[len(off):] = True
    return pts, flags


@dataclass(frozen=True)
class BracketResult:
    ok: bool
    witness: np.ndarray | None = None
    reason: str = ""

    def __bool__(self):
        return self.ok


def _le(a, b, tol):
    """``a <= b`` in ]-inf, +inf] with a relative slack."""
    if b == math.inf:
        return True
    if a == math.inf:
        return False
    return a <= b + tol.tau_eq * (1.0 + abs(a) + abs(b))


def bracket_check(A: LinearRelation, F: ExtQuad, seed: int = 0, tol=None,
                  points=None) -> BracketResult:
    """Test membership of ``F`` in the Fitzpatrick family of maximal ``A``.

    At every probe point: ``F_A <= F <= F_A^{*T}``, ``F >= <x, x*>``, and
    ``F = <x, x*>`` at graph points.  Returns a falsy result with the first
    failing point as witness.
    """
    tol = _tol(tol)
    d = A.d
    lower = fitz(A, tol)
    upper = fitz_star_transpose(A, tol)
    if points is None:
        pts, on_graph = probe_points(A, seed)
    else:
        pts, on_graph = points
    for p, g in zip(pts, on_graph):
        lo, mid, hi = lower(p), F(p), upper(p)
        pair = float(p[:d] @ p[d:])
        if not _le(lo, mid, tol):
            return BracketResult(False, p, "F_A > F")
        if not _le(mid, hi, tol):
            return BracketResult(False, p, "F > F_A^{*T}")
        if not _le(pair, mid, tol):
            return BracketResult(False, p, "F < <x, x*>")
        if g and not _le(mid, pair, tol):
            return BracketResult(False, p, "F != <x, x*> on the graph")
    return BracketResult(True)
