"""Linear and affine subspaces of R^m with tolerance-controlled rank decisions.

Every subspace is stored as a matrix with orthonormal columns.  Rank is
decided from singular values: a value ``s`` counts as nonzero when
``s > tau_rank * max(s_max, 1)``.  The floor of one keeps round-off noise in
an otherwise-zero matrix from being promoted to a genuine direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionMismatch, EmptyDomain, NotSymmetricMatrix

__all__ = [
    "Tolerances",
    "DEFAULT_TOL",
    "Subspace",
    "AffineSubspace",
    "orthonormalize",
    "complement",
    "subspace_sum",
    "intersect",
    "contains",
    "project",
    "pseudo_solve",
    "spectral_pinv",
    "rank_cutoff",
]


@dataclass(frozen=True)
class Tolerances:
    """Numerical tolerances used throughout the package.

    Parameters
    ----------
    tau_rank : float
        Relative singular-value / eigenvalue cutoff.
    tau_orth : float
        Allowed deviation from exact symmetry and orthonormality.
    tau_psd : float
        Allowed negativity of an eigenvalue that is still counted as >= 0.
    tau_eq : float
        Tolerance for equality of function data and values.
    """

    tau_rank: float = 1e-10
    tau_orth: float = 1e-12
    tau_psd: float = 1e-9
    tau_eq: float = 1e-8

    def __post_init__(self):
        for name in ("tau_rank", "tau_orth", "tau_psd", "tau_eq"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be strictly positive")


DEFAULT_TOL = Tolerances()


def _tol(tol):
    return DEFAULT_TOL if tol is None else tol


def rank_cutoff(values, tol=None):
    """Threshold below which singular values / |eigenvalues| count as zero."""
    tol = _tol(tol)
    vmax = float(np.max(np.abs(values))) if np.size(values) else 0.0
    return tol.tau_rank * max(vmax, 1.0)


@dataclass(frozen=True, eq=False)
class Subspace:
    """A linear subspace of R^m stored through an orthonormal basis.

    Subspaces compare equal by mutual containment, not by basis matrices.
    """

    basis: np.ndarray
    ambient_dim: int = field(default=-1)

    def __post_init__(self):
        basis = np.asarray(self.basis, dtype=float)
        if basis.ndim != 2:
            raise DimensionMismatch("basis must be a 2-d array")
        m = basis.shape[0] if self.ambient_dim < 0 else self.ambient_dim
        if basis.shape[0] != m:
            raise DimensionMismatch("basis rows do not match ambient_dim")
        if m < 1:
            raise DimensionMismatch("ambient dimension must be positive")
        basis.setflags(write=False)
        object.__setattr__(self, "basis", basis)
        object.__setattr__(self, "ambient_dim", m)

    @property
    def dim(self) -> int:
        return self.basis.shape[1]

    @property
    def projector(self) -> np.ndarray:
        return self.basis @ self.basis.T

    @classmethod
    def trivial(cls, m: int) -> "Subspace":
        return cls(np.zeros((m, 0)), m)

    @classmethod
    def full(cls, m: int) -> "Subspace":
        return cls(np.eye(m), m)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return equal(self, other)

    __hash__ = None

    def __repr__(self):
        return f"Subspace(dim={self.dim}, ambient_dim={self.ambient_dim})"


def orthonormalize(vectors, tol=None) -> Subspace:
    """Orthonormal basis for the span of the columns of ``vectors``.

    Examples
    --------
    >>> orthonormalize(np.array([[1.0, 2.0], [0.0, 0.0]])).dim
    1
    """
    v = np.asarray(vectors, dtype=float)
    if v.ndim == 1:
        v = v[:, None]
    m = v.shape[0]
    if m < 1:
        raise DimensionMismatch("ambient dimension must be positive")
    if v.shape[1] == 0:
        return Subspace.trivial(m)
    u, s, _ = np.linalg.svd(v, full_matrices=False)
    k = int(np.sum(s > rank_cutoff(s, tol)))
    return Subspace(u[:, :k].copy(), m)


def complement(S: Subspace, tol=None) -> Subspace:
    """Orthogonal complement of ``S`` in its ambient space."""
    m, k = S.ambient_dim, S.dim
    if k == 0:
        return Subspace.full(m)
    u, _, _ = np.linalg.svd(S.basis, full_matrices=True)
    return Subspace(u[:, k:].copy(), m)


def _check_same(S, T):
    if S.ambient_dim != T.ambient_dim:
        raise DimensionMismatch(
            f"ambient dimensions differ: {S.ambient_dim} vs {T.ambient_dim}")


def subspace_sum(S: Subspace, T: Subspace, tol=None) -> Subspace:
    """Span of ``S`` and ``T``."""
    _check_same(S, T)
    return orthonormalize(np.hstack([S.basis, T.basis]), tol)


def intersect(S: Subspace, T: Subspace, tol=None) -> Subspace:
    """``S`` intersected with ``T``, computed as ``(S^perp + T^perp)^perp``."""
    _check_same(S, T)
    return complement(subspace_sum(complement(S, tol), complement(T, tol), tol), tol)


def project(S: Subspace, v) -> np.ndarray:
    v = np.asarray(v, dtype=float)
    if v.shape[0] != S.ambient_dim:
        raise DimensionMismatch("vector dimension does not match subspace")
    return S.basis @ (S.basis.T @ v)


def contains(S: Subspace, v, tol=None) -> bool:
    tol = _tol(tol)
    v = np.asarray(v, dtype=float)
    return bool(np.linalg.norm(v - project(S, v)) <= tol.tau_rank * (1.0 + np.linalg.norm(v)))


def equal(S: Subspace, T: Subspace, tol=None) -> bool:
    """Mutual containment of bases."""
    if S.ambient_dim != T.ambient_dim or S.dim != T.dim:
        return False
    return all(contains(T, b, tol) for b in S.basis.T) and all(
        contains(S, b, tol) for b in T.basis.T)


def _check_symmetric(P, tol):
    P = np.asarray(P, dtype=float)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise DimensionMismatch("matrix must be square")
    scale = max(1.0, float(np.max(np.abs(P)))) if P.size else 1.0
    if P.size and np.max(np.abs(P - P.T)) > tol.tau_orth * scale * 10 * P.shape[0]:
        raise NotSymmetricMatrix("matrix is not symmetric")
    return 0.5 * (P + P.T)


def spectral_pinv(P, tol=None):
    """Pseudo-inverse of a symmetric matrix plus an orthonormal kernel basis.

    Returns
    -------
    pinv : ndarray
    kernel : ndarray
        Columns span the eigenspace treated as zero.
    eigvals : ndarray
    """
    tol = _tol(tol)
    P = _check_symmetric(P, tol)
    n = P.shape[0]
    if n == 0:
        return np.zeros((0, 0)), np.zeros((0, 0)), np.zeros(0)
    w, V = np.linalg.eigh(P)
    keep = np.abs(w) > rank_cutoff(w, tol)
    Vk = V[:, keep]
    pinv = (Vk / w[keep]) @ Vk.T
    return pinv, V[:, ~keep], w


def pseudo_solve(P, b, tol=None):
    """Least-norm solution of ``P x = b`` for symmetric ``P``.

    Returns
    -------
    x : ndarray
    in_range : bool
        Whether ``b`` lies in the range of ``P`` (within ``tau_rank``).
    """
    tol = _tol(tol)
    b = np.asarray(b, dtype=float)
    pinv, _, _ = spectral_pinv(P, tol)
    x = pinv @ b
    P = np.asarray(P, dtype=float)
    in_range = np.linalg.norm(P @ x - b) <= tol.tau_rank * (1.0 + np.linalg.norm(b))
    return x, bool(in_range)


class AffineSubspace:
    """The set ``offset + direction`` with ``offset`` orthogonal to ``direction``."""

    __slots__ = ("offset", "direction")

    def __init__(self, offset, direction: Subspace):
        offset = np.asarray(offset, dtype=float).copy()
        if offset.shape != (direction.ambient_dim,):
            raise DimensionMismatch("offset does not match direction")
        offset = offset - project(direction, offset)
        offset.setflags(write=False)
        self.offset = offset
        self.direction = direction

    @property
    def ambient_dim(self) -> int:
        return self.direction.ambient_dim

    @property
    def dim(self) -> int:
        return self.direction.dim

    @classmethod
    def full(cls, m: int) -> "AffineSubspace":
        return cls(np.zeros(m), Subspace.full(m))

    @classmethod
    def linear(cls, S: Subspace) -> "AffineSubspace":
        return cls(np.zeros(S.ambient_dim), S)

    @classmethod
    def from_constraints(cls, C, c, m: int | None = None, tol=None) -> "AffineSubspace":
        """Solution set of ``C z = c``; raises EmptyDomain if inconsistent."""
        C = np.asarray(C, dtype=float)
        c = np.asarray(c, dtype=float).reshape(-1)
        if m is None:
            m = C.shape[1]
        if C.size == 0:
            return cls.full(m)
        u, s, vt = np.linalg.svd(C, full_matrices=False)
        k = int(np.sum(s > rank_cutoff(s, tol)))
        uk, sk, vk = u[:, :k], s[:k], vt[:k]
        coef = uk.T @ c
        resid = c - uk @ coef
        t = _tol(tol)
        if np.linalg.norm(resid) > t.tau_eq * (1.0 + np.linalg.norm(c)):
            raise EmptyDomain("affine constraints are inconsistent")
        offset = vk.T @ (coef / sk)
        direction = complement(Subspace(vk.T.copy(), m), tol)
        return cls(offset, direction)

    def constraints(self, tol=None):
        """Return ``(C, c)`` with orthonormal rows such that the set is ``C z = c``."""
        N = complement(self.direction, tol).basis
        return N.T, N.T @ self.offset

    def contains(self, z, tol=None) -> bool:
        t = _tol(tol)
        z = np.asarray(z, dtype=float)
        if z.shape != (self.ambient_dim,):
            raise DimensionMismatch("point dimension does not match")
        r = z - self.offset
        return bool(np.linalg.norm(r - project(self.direction, r))
                    <= t.tau_rank * (1.0 + np.linalg.norm(z)))

    def nearest(self, z) -> np.ndarray:
        z = np.asarray(z, dtype=float)
        return self.offset + project(self.direction, z)

    def intersect(self, other: "AffineSubspace", tol=None) -> "AffineSubspace":
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatch("ambient dimensions differ")
        C1, c1 = self.constraints(tol)
        C2, c2 = other.constraints(tol)
        return AffineSubspace.from_constraints(
            np.vstack([C1, C2]), np.concatenate([c1, c2]), self.ambient_dim, tol)

    def is_full(self) -> bool:
        return self.dim == self.ambient_dim

    def equals(self, other: "AffineSubspace", tol=None) -> bool:
        t = _tol(tol)
        if self.ambient_dim != other.ambient_dim:
            return False
        return equal(self.direction, other.direction, tol) and bool(
            np.linalg.norm(self.offset - other.offset)
            <= t.tau_eq * (1.0 + np.linalg.norm(self.offset)))

    def __repr__(self):
        return f"AffineSubspace(dim={self.dim}, ambient_dim={self.ambient_dim})"
