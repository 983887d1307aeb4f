"""Linear relations on R^d stored through their graphs in R^d x R^d.

A graph vector is laid out as ``(x, x*)``: the first ``d`` coordinates are the
primal point, the last ``d`` the dual one.  Since the duality map of the
Euclidean norm is the identity, ``gra(-J) = {(v, -v)}``.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from .errors import DimensionMismatch, NotMonotone
from .subspace import (DEFAULT_TOL, Subspace, complement, intersect, orthonormalize,
                       spectral_pinv, subspace_sum)

__all__ = [
    "LinearRelation",
    "MaximalityReport",
    "from_matrix",
    "from_graph_basis",
    "parts",
    "inverse_of",
    "adjoint_of",
    "is_monotone",
    "is_symmetric",
    "monotonically_related",
    "maximality_report",
    "neg_duality_graph",
]


def _tol(tol):
    return DEFAULT_TOL if tol is None else tol


@dataclass(frozen=True, eq=False)
class LinearRelation:
    """Set-valued linear operator ``A: R^d => R^d`` given by its graph."""

    d: int
    graph: Subspace

    def __post_init__(self):
        if self.graph.ambient_dim != 2 * self.d:
            raise DimensionMismatch("graph must live in R^(2d)")

    @property
    def B1(self) -> np.ndarray:
        """Primal block of the orthonormal graph basis."""
        return self.graph.basis[:self.d]

    @property
    def B2(self) -> np.ndarray:
        """Dual block of the orthonormal graph basis."""
        return self.graph.basis[self.d:]

    @property
    def graph_dim(self) -> int:
        return self.graph.dim

    def pairing_form(self) -> np.ndarray:
        """Symmetric matrix ``S`` with ``<a, a*> = c^T S c`` for ``(a, a*) = B c``."""
        G = self.B1.T @ self.B2
        return 0.5 * (G + G.T)

    def select(self, x, tol=None) -> np.ndarray:
        """Least-norm graph coordinate lifting ``x in dom A``, mapped to one ``a* in Ax``."""
        c, *_ = np.linalg.lstsq(self.B1, np.asarray(x, dtype=float), rcond=None)
        return self.B2 @ c

    def __eq__(self, other):
        if not isinstance(other, LinearRelation):
            return NotImplemented
        return self.d == other.d and self.graph == other.graph

    __hash__ = None

    def __repr__(self):
        return f"LinearRelation(d={self.d}, graph_dim={self.graph_dim})"


@dataclass(frozen=True)
class MaximalityReport:
    monotone: bool
    adjoint_monotone: bool
    graph_dim: int
    maximal_by_dim: bool
    sz_surjective: bool

    def as_dict(self):
        return asdict(self)


def from_matrix(M, tol=None) -> LinearRelation:
    """Graph of the single-valued map ``x -> M x``."""
    M = np.atleast_2d(np.asarray(M, dtype=float))
    d = M.shape[0]
    if M.shape != (d, d):
        raise DimensionMismatch("matrix must be square")
    return LinearRelation(d, orthonormalize(np.vstack([np.eye(d), M]), tol))


def from_graph_basis(B, d: int | None = None, tol=None) -> LinearRelation:
    """Relation whose graph is the span of the columns of ``B`` (2d rows)."""
    B = np.asarray(B, dtype=float)
    if B.ndim == 1:
        B = B[:, None]
    if d is None:
        if B.shape[0] % 2:
            raise DimensionMismatch("graph vectors need an even length")
        d = B.shape[0] // 2
    if B.shape[0] != 2 * d:
        raise DimensionMismatch("graph vectors must have length 2d")
    return LinearRelation(d, orthonormalize(B, tol))


def parts(A: LinearRelation, tol=None):
    """Return ``(dom A, ran A, A0)`` as subspaces of R^d."""
    d = A.d
    dom = orthonormalize(A.B1, tol)
    ran = orthonormalize(A.B2, tol)
    zero_x = Subspace(np.vstack([np.zeros((d, d)), np.eye(d)]), 2 * d)
    a0 = intersect(A.graph, zero_x, tol)
    return dom, ran, orthonormalize(a0.basis[d:], tol)


def _block_swap(d, sign=1.0):
    Z, I = np.zeros((d, d)), np.eye(d)
    return np.block([[Z, sign * I], [I, Z]])


def inverse_of(A: LinearRelation, tol=None) -> LinearRelation:
    return LinearRelation(A.d, orthonormalize(_block_swap(A.d) @ A.graph.basis, tol))


def adjoint_of(A: LinearRelation, tol=None) -> LinearRelation:
    """``gra A* = {(x, x*) : (x*, -x) in (gra A)^perp}``.

    A complement vector ``(u, v)`` gives ``x* = u`` and ``x = -v``.
    """
    perp = complement(A.graph, tol).basis
    return LinearRelation(A.d, orthonormalize(_block_swap(A.d, -1.0) @ perp, tol))


def is_monotone(A: LinearRelation, tol=None) -> bool:
    tol = _tol(tol)
    if A.graph_dim == 0:
        return True
    return bool(np.linalg.eigvalsh(A.pairing_form())[0] >= -tol.tau_psd)


def is_symmetric(A: LinearRelation, tol=None) -> bool:
    """``<Ax, y> = <Ay, x>`` on ``dom A``; defined for monotone relations only."""
    tol = _tol(tol)
    if not is_monotone(A, tol):
        raise NotMonotone("symmetry is defined for monotone relations")
    G = A.B2.T @ A.B1
    return bool(np.max(np.abs(G - G.T), initial=0.0) <= tol.tau_eq)


def monotonically_related(A: LinearRelation, p, tol=None) -> bool:
    """Whether ``inf_{(a,a*) in gra A} <x - a, x* - a*> >= 0``.

    With ``(a, a*) = B c`` the objective is ``<x,x*> - b^T c + c^T S c``; its
    infimum is ``-inf`` unless ``S`` is PSD and ``b`` is in the range of ``S``.
    """
    tol = _tol(tol)
    p = np.asarray(p, dtype=float)
    d = A.d
    if p.shape != (2 * d,):
        raise DimensionMismatch("point must have length 2d")
    x, xs = p[:d], p[d:]
    base = float(x @ xs)
    if A.graph_dim == 0:
        return base >= -tol.tau_eq
    S = A.pairing_form()
    b = A.B2.T @ x + A.B1.T @ xs
    pinv, kernel, w = spectral_pinv(S, tol)
    if w[0] < -tol.tau_psd:
        return False
    if kernel.size and np.linalg.norm(kernel.T @ b) > tol.tau_eq * (1.0 + np.linalg.norm(b)):
        return False
    return base - 0.25 * float(b @ pinv @ b) >= -tol.tau_eq


def neg_duality_graph(d: int) -> Subspace:
    """``gra(-J) = {(v, -v)}`` for the Euclidean norm."""
    return orthonormalize(np.vstack([np.eye(d), -np.eye(d)]))


def maximality_report(A: LinearRelation, tol=None) -> MaximalityReport:
    """Three independent views of maximal monotonicity.

    ``maximal_by_dim`` is the finite-dimensional ground truth (a monotone
    linear relation is maximal iff its graph has dimension ``d``);
    ``adjoint_monotone`` and ``sz_surjective`` are the adjoint and the
    ``gra A + gra(-J) = R^2d`` characterisations.
    """
    mono = is_monotone(A, tol)
    adj = is_monotone(adjoint_of(A, tol), tol)
    total = subspace_sum(A.graph, neg_duality_graph(A.d), tol)
    return MaximalityReport(
        monotone=mono,
        adjoint_monotone=adj,
        graph_dim=A.graph_dim,
        maximal_by_dim=bool(mono and A.graph_dim == A.d),
        sz_surjective=total.dim == 2 * A.d,
    )
