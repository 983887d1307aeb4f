"""Maximality reports for a relation and its adjoint, and the decomposition
``R^d x R^d = gra A + gra(-J)`` for maximal monotone ``A``.

The decomposition minimises

    g(y, y*) = 1/2 |y|^2 + 1/2 |y*|^2 + <y, y*> = 1/2 |y + y*|^2

over the affine set ``(y, y*) in p + gra A``.  A minimiser ``(z, z*)`` has
``z* = -z`` when ``A`` is maximal, so ``p = (p - (z, -z)) + (z, -z)`` with the
first part on the graph.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from .errors import DimensionMismatch, NotMaximal
from .relation import LinearRelation, MaximalityReport, adjoint_of, maximality_report
from .subspace import DEFAULT_TOL, contains, pseudo_solve

__all__ = ["BBReport", "bb_report", "minimize_g", "decompose"]


@dataclass(frozen=True)
class BBReport:
    relation: MaximalityReport
    adjoint: MaximalityReport

    @property
    def consistent(self) -> bool:
        """The three maximality flags of the relation agree (for monotone input)."""
        r = self.relation
        return r.adjoint_monotone == r.maximal_by_dim == r.sz_surjective

    def as_dict(self):
        return {"relation": self.relation.as_dict(), "adjoint": self.adjoint.as_dict()}


def bb_report(A: LinearRelation, tol=None) -> BBReport:
    return BBReport(maximality_report(A, tol), maximality_report(adjoint_of(A, tol), tol))


def minimize_g(A: LinearRelation, p, tol=None):
    """Least-norm minimiser ``(z, z*)`` of ``g`` over ``p + gra A``.

    Writing ``(y, y*) = p + B c`` the objective is ``1/2 |s + G c|^2`` with
    ``s = x + x*`` and ``G = B1 + B2``; the stationarity system
    ``G^T G c = -G^T s`` is solved by spectral pseudo-inverse.
    """
    tol = DEFAULT_TOL if tol is None else tol
    d = A.d
    p = np.asarray(p, dtype=float)
    if p.shape != (2 * d,):
        raise DimensionMismatch("point must have length 2d")
    G = A.B1 + A.B2
    s = p[:d] + p[d:]
    c, _ = pseudo_solve(G.T @ G, -(G.T @ s), tol)
    y = p + A.graph.basis @ c
    return y[:d], y[d:]


def decompose(A: LinearRelation, p, tol=None):
    """Split ``p = graph_part + j_part`` with ``graph_part in gra A`` and
    ``j_part = (z, -z) in gra(-J)``.

    Raises
    ------
    NotMaximal
        If ``A`` is not maximal monotone, or if the minimiser does not satisfy
        ``z* = -z`` within ``tau_eq``.
    """
    tol = DEFAULT_TOL if tol is None else tol
    rep = maximality_report(A, tol)
    if not rep.maximal_by_dim:
        raise NotMaximal("decomposition needs a maximal monotone relation")
    p = np.asarray(p, dtype=float)
    z, zs = minimize_g(A, p, tol)
    if np.linalg.norm(z + zs) > tol.tau_eq * (1.0 + np.linalg.norm(p)):
        raise NotMaximal("minimiser does not lie on gra(-J)")
    j_part = np.concatenate([z, -z])
    graph_part = p - j_part
    if not contains(A.graph, graph_part, _loose(tol)):
        raise NotMaximal("graph part left the graph")  # pragma: no cover
    return graph_part, j_part


def _loose(tol):
    return replace(tol, tau_rank=max(tol.tau_rank, tol.tau_eq))
