"""Sums of linear relations and the sum rule for order-n Fitzpatrick functions."""

from __future__ import annotations

import numpy as np

from .errors import DimensionMismatch
from .extquad import canonical_distance, equal_canonical, partial_inf_conv2
from .fitzpatrick import INF_ORDER, _require_symmetric_maximal, fitz_inf, fitz_n
from .relation import LinearRelation
from .subspace import DEFAULT_TOL, intersect, orthonormalize

__all__ = ["op_sum", "fs6_sides", "check_fs6", "fs6_residual"]


def op_sum(A: LinearRelation, B: LinearRelation, tol=None) -> LinearRelation:
    """``gra(A + B) = {(x, a* + b*) : (x, a*) in gra A, (x, b*) in gra B}``.

    Both graphs are lifted to ``(x, a*, b*)`` in R^3d, intersected, and mapped
    to ``(x, a* + b*)``.
    """
    if A.d != B.d:
        raise DimensionMismatch("relations act on different spaces")
    d = A.d
    Z, I = np.zeros((d, d)), np.eye(d)
    lift_a = np.block([[A.B1, Z], [A.B2, Z], [np.zeros((d, A.graph_dim)), I]])
    lift_b = np.block([[B.B1, Z], [np.zeros((d, B.graph_dim)), I], [B.B2, Z]])
    common = intersect(orthonormalize(lift_a, tol), orthonormalize(lift_b, tol), tol)
    proj = np.block([[I, Z, Z], [Z, I, I]])
    return LinearRelation(d, orthonormalize(proj @ common.basis, tol))


def fs6_sides(A: LinearRelation, B: LinearRelation, n, tol=None):
    """``(F_{A+B,n}, F_{A,n} []_2 F_{B,n})``; ``n = INF_ORDER`` uses the limit functions."""
    tol = DEFAULT_TOL if tol is None else tol
    _require_symmetric_maximal(A, tol)
    _require_symmetric_maximal(B, tol)
    S = op_sum(A, B, tol)
    if n == INF_ORDER:
        return fitz_inf(S, tol), partial_inf_conv2(fitz_inf(A, tol), fitz_inf(B, tol), tol)
    return fitz_n(S, n, tol), partial_inf_conv2(fitz_n(A, n, tol), fitz_n(B, n, tol), tol)


def check_fs6(A: LinearRelation, B: LinearRelation, n, tol=None) -> bool:
    """Whether ``F_{A+B,n}`` equals ``F_{A,n} []_2 F_{B,n}`` as canonical ExtQuads.

    The closedness of ``dom A - dom B`` needed in infinite dimensions holds
    automatically here.

    Raises
    ------
    NotSymmetric, NotMaximal
    """
    lhs, rhs = fs6_sides(A, B, n, tol)
    return equal_canonical(lhs, rhs, tol)


def fs6_residual(A, B, n, tol=None) -> float:
    lhs, rhs = fs6_sides(A, B, n, tol)
    return canonical_distance(lhs, rhs)
