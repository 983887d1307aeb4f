"""Convex functions of the form "quadratic + indicator of an affine subspace".

An :class:`ExtQuad` is the function

    f(z) = 1/2 z^T P z + q^T z + r    if z in offset + span(dir)
         = +inf                       otherwise.

The class is closed under addition, nonnegative scaling, precomposition with
linear maps, direct sums, Fenchel conjugation, suprema of concave quadratics
over a subspace and infima of convex ones.  All of these are computed exactly
up to floating point through spectral pseudo-inverses, so the values never
need to be sampled.

Every instance is stored in canonical form: with ``Pi`` the orthogonal
projector onto the domain direction and ``v0`` the domain offset (orthogonal
to the direction),

    P_c = Pi P Pi,   q_c = Pi (P v0 + q),   r_c = f(v0).

Two objects describing the same function therefore carry the same data.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (DimensionMismatch, EmptyDomain, InnerNotConcave, MinusInfinity,
                     NotConvexOnDomain, NotProper)
from .subspace import (DEFAULT_TOL, AffineSubspace, Subspace, orthonormalize,
                       rank_cutoff, spectral_pinv)

__all__ = [
    "ExtQuad",
    "JointQuadratic",
    "make_extquad",
    "eval_extquad",
    "add_extquad",
    "conjugate",
    "partial_maximize",
    "partial_minimize",
    "partial_inf_conv2",
    "equal_canonical",
    "canonical_distance",
    "pairing_matrix",
]

INF = math.inf


def _tol(tol):
    return DEFAULT_TOL if tol is None else tol


def _sym(P):
    return 0.5 * (P + P.T)


def pairing_matrix(d: int) -> np.ndarray:
    """Matrix ``E`` with ``1/2 w^T E w = <x, x*>`` for ``w = (x, x*)``."""
    E = np.zeros((2 * d, 2 * d))
    E[:d, d:] = np.eye(d)
    E[d:, :d] = np.eye(d)
    return E


class ExtQuad:
    """Extended-real-valued convex quadratic on an affine subspace.

    Parameters
    ----------
    P : array_like, shape (m, m)
        Symmetric Hessian.
    q : array_like, shape (m,), optional
    r : float, optional
    domain : AffineSubspace or Subspace, optional
        Defaults to all of R^m.  A :class:`Subspace` is read as a linear domain.
    tol : Tolerances, optional

    Raises
    ------
    NotConvexOnDomain
        If ``P`` restricted to the domain direction has an eigenvalue below
        ``-tau_psd``.
    """

    __slots__ = ("P", "q", "r", "domain", "tol")

    def __init__(self, P, q=None, r=0.0, domain=None, tol=None):
        tol = _tol(tol)
        P = np.atleast_2d(np.asarray(P, dtype=float))
        m = P.shape[0]
        if P.shape != (m, m):
            raise DimensionMismatch("P must be square")
        if np.max(np.abs(P - P.T), initial=0.0) > 1e3 * tol.tau_orth * max(
                1.0, np.max(np.abs(P), initial=0.0)):
            raise DimensionMismatch("P must be symmetric")
        P = _sym(P)
        q = np.zeros(m) if q is None else np.asarray(q, dtype=float).reshape(-1)
        if q.shape != (m,):
            raise DimensionMismatch("q does not match P")
        if domain is None:
            domain = AffineSubspace.full(m)
        elif isinstance(domain, Subspace):
            domain = AffineSubspace.linear(domain)
        if domain.ambient_dim != m:
            raise DimensionMismatch("domain does not match P")

        B = domain.direction.basis
        v0 = domain.offset
        H = _sym(B.T @ P @ B)
        if H.size:
            w = np.linalg.eigvalsh(H)
            if w[0] < -tol.tau_psd * max(1.0, float(np.max(np.abs(w)))):
                raise NotConvexOnDomain(
                    f"quadratic part has eigenvalue {w[0]:.3e} on the domain")
        r_c = float(0.5 * v0 @ P @ v0 + q @ v0 + r)
        P_c = B @ H @ B.T
        q_c = B @ (B.T @ (P @ v0 + q))
        for a in (P_c, q_c):
            a.setflags(write=False)
        self.P = P_c
        self.q = q_c
        self.r = r_c
        self.domain = domain
        self.tol = tol

    # -- basic protocol -------------------------------------------------
    @property
    def dim(self) -> int:
        return self.P.shape[0]

    def __call__(self, z) -> float:
        z = np.asarray(z, dtype=float).reshape(-1)
        if z.shape != (self.dim,):
            raise DimensionMismatch(f"expected a point of dimension {self.dim}")
        if not self.domain.contains(z, self.tol):
            return INF
        z = self.domain.nearest(z)
        return float(0.5 * z @ self.P @ z + self.q @ z + self.r)

    def values(self, Z) -> np.ndarray:
        """Evaluate at the rows of ``Z``."""
        return np.array([self(z) for z in np.atleast_2d(Z)])

    def __repr__(self):
        return f"ExtQuad(dim={self.dim}, domain_dim={self.domain.dim})"

    # -- algebra ----------------------------------------------------------
    def __add__(self, other):
        if isinstance(other, ExtQuad):
            return add_extquad(self, other)
        if np.isscalar(other):
            return self.plus_quadratic(r=float(other))
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, ExtQuad):
            if not self.domain.equals(other.domain, self.tol):
                raise EmptyDomain("difference requires identical domains")
            return ExtQuad(self.P - other.P, self.q - other.q, self.r - other.r,
                           self.domain, self.tol)
        if np.isscalar(other):
            return self.plus_quadratic(r=-float(other))
        return NotImplemented

    def __mul__(self, c):
        if not np.isscalar(c):
            return NotImplemented
        c = float(c)
        if c < 0:
            raise NotConvexOnDomain("negative multiple of a convex function")
        # 0 * (+inf) = +inf, so a zero multiple keeps the domain
        return ExtQuad(c * self.P, c * self.q, c * self.r, self.domain, self.tol)

    __rmul__ = __mul__

    def plus_quadratic(self, P=None, q=None, r=0.0) -> "ExtQuad":
        """Add ``1/2 z^T P z + q^T z + r`` (possibly indefinite) on the same domain."""
        m = self.dim
        P = np.zeros((m, m)) if P is None else np.asarray(P, dtype=float)
        q = np.zeros(m) if q is None else np.asarray(q, dtype=float)
        return ExtQuad(self.P + P, self.q + q, self.r + r, self.domain, self.tol)

    def compose(self, L, b=None) -> "ExtQuad":
        """The function ``w -> f(L w + b)``."""
        L = np.atleast_2d(np.asarray(L, dtype=float))
        if L.shape[0] != self.dim:
            raise DimensionMismatch("L rows must match the function dimension")
        n = L.shape[1]
        b = np.zeros(self.dim) if b is None else np.asarray(b, dtype=float)
        C, c = self.domain.constraints(self.tol)
        domain = AffineSubspace.from_constraints(C @ L, c - C @ b, n, self.tol)
        P = L.T @ self.P @ L
        q = L.T @ (self.P @ b + self.q)
        r = 0.5 * b @ self.P @ b + self.q @ b + self.r
        return ExtQuad(P, q, r, domain, self.tol)

    def transposed(self) -> "ExtQuad":
        """Swap the two halves of the argument: ``(x*, x) -> f(x, x*)``."""
        m = self.dim
        if m % 2:
            raise DimensionMismatch("transpose needs an even dimension")
        d = m // 2
        S = np.zeros((m, m))
        S[:d, d:] = np.eye(d)
        S[d:, :d] = np.eye(d)
        return self.compose(S)

    def direct_sum(self, other: "ExtQuad") -> "ExtQuad":
        """``(x, y) -> f(x) + g(y)``."""
        m1, m2 = self.dim, other.dim
        P = np.zeros((m1 + m2, m1 + m2))
        P[:m1, :m1] = self.P
        P[m1:, m1:] = other.P
        B1, B2 = self.domain.direction.basis, other.domain.direction.basis
        B = np.zeros((m1 + m2, B1.shape[1] + B2.shape[1]))
        B[:m1, :B1.shape[1]] = B1
        B[m1:, B1.shape[1]:] = B2
        domain = AffineSubspace(np.concatenate([self.domain.offset, other.domain.offset]),
                                Subspace(B, m1 + m2))
        return ExtQuad(P, np.concatenate([self.q, other.q]), self.r + other.r, domain,
                       self.tol)

    def conjugate(self) -> "ExtQuad":
        return conjugate(self)


def make_extquad(P, q=None, r=0.0, V=None, tol=None) -> ExtQuad:
    return ExtQuad(P, q, r, V, tol)


def eval_extquad(f: ExtQuad, z) -> float:
    return f(z)


def add_extquad(f: ExtQuad, g: ExtQuad) -> ExtQuad:
    """Pointwise sum; the domain is the intersection of the two domains.

    Raises
    ------
    EmptyDomain
        If the domains do not meet.
    """
    if f.dim != g.dim:
        raise DimensionMismatch("functions live on different spaces")
    domain = f.domain.intersect(g.domain, f.tol)
    return ExtQuad(f.P + g.P, f.q + g.q, f.r + g.r, domain, f.tol)


def _schur_min(App, Apv, Avv, ap, av, a0, tol):
    """Minimise ``1/2 [p;v]^T A [p;v] + a^T [p;v] + a0`` over ``v``.

    ``Avv`` must be positive semidefinite.  Returns the quadratic in ``p``
    together with the constraint ``(K, k)`` (``K p = k``) that describes the
    set of ``p`` where the infimum is finite.
    """
    nv = Avv.shape[0]
    npar = App.shape[0]
    if nv == 0:
        return App, ap, a0, np.zeros((0, npar)), np.zeros(0), 0.0
    pinv, kernel, w = spectral_pinv(Avv, tol)
    wmin = float(w[0])
    Avp = Apv.T
    P = App - Apv @ pinv @ Avp
    q = ap - Apv @ pinv @ av
    r = a0 - 0.5 * av @ pinv @ av
    K = kernel.T @ Avp
    k = -(kernel.T @ av)
    scale = max(1.0, float(np.max(np.abs(w))))
    return P, q, r, K, k, wmin / scale


@dataclass(frozen=True)
class JointQuadratic:
    """A quadratic in ``(p, c)`` (not necessarily convex), optionally restricted
    to an affine domain.  ``n_outer`` is the length of ``p``."""

    P: np.ndarray
    q: np.ndarray
    r: float
    n_outer: int
    domain: AffineSubspace | None = None

    @classmethod
    def from_blocks(cls, P_pp, P_pc, P_cc, q_p, q_c, r=0.0):
        P_pp, P_pc, P_cc = (np.atleast_2d(np.asarray(a, dtype=float))
                            for a in (P_pp, P_pc, P_cc))
        P = np.block([[P_pp, P_pc], [P_pc.T, P_cc]])
        return cls(P, np.concatenate([np.ravel(q_p), np.ravel(q_c)]).astype(float),
                   float(r), P_pp.shape[0])


def partial_maximize(obj: JointQuadratic, C: Subspace, tol=None) -> ExtQuad:
    """``g(p) = sup_{c in C} obj(p, c)`` as an :class:`ExtQuad` in ``p``.

    ``g`` is finite exactly where the linear coefficient of the inner problem
    stays in the range of the inner Hessian; everywhere else it is ``+inf``
    and those points are excluded from the domain.  When ``obj`` carries a
    domain, ``g(p)`` is ``+inf`` unless the whole slice ``{p} x C`` is inside it.

    Raises
    ------
    InnerNotConcave
        If ``obj(p, .)`` is not concave on ``C`` (then ``g`` is ``+inf``
        everywhere).
    EmptyDomain
        If every slice leaves the domain of ``obj``.
    """
    tol = _tol(tol)
    no = obj.n_outer
    P = _sym(np.asarray(obj.P, dtype=float))
    q = np.asarray(obj.q, dtype=float)
    nc = P.shape[0] - no
    if C.ambient_dim != nc:
        raise DimensionMismatch("inner subspace does not match the objective")
    Bc = C.basis

    constraints = []
    if obj.domain is not None and not obj.domain.is_full():
        M, m = obj.domain.constraints(tol)
        Mp, Mc = M[:, :no], M[:, no:]
        if Mc.size and np.max(np.abs(Mc @ Bc), initial=0.0) > tol.tau_eq:
            raise EmptyDomain("objective is +inf on every slice")
        constraints.append((Mp, m))

    App = P[:no, :no]
    Apu = P[:no, no:] @ Bc
    Auu = Bc.T @ P[no:, no:] @ Bc
    ap = q[:no]
    au = Bc.T @ q[no:]
    Pn, qn, rn, K, k, wmin = _schur_min(-App, -Apu, -Auu, -ap, -au, -obj.r, tol)
    if wmin < -tol.tau_psd:
        raise InnerNotConcave("inner objective is not concave on the subspace")
    constraints.append((K, k))
    Cm = np.vstack([c[0] for c in constraints])
    cv = np.concatenate([c[1] for c in constraints])
    domain = AffineSubspace.from_constraints(Cm, cv, no, tol)
    return ExtQuad(-Pn, -qn, -rn, domain, tol)


def partial_minimize(f: ExtQuad, n_outer: int, tol=None) -> ExtQuad:
    """``h(p) = inf_y f(p, y)`` over the trailing coordinates ``y``.

    The domain of ``h`` is the projection of the domain of ``f``.

    Raises
    ------
    MinusInfinity
        If the infimum is ``-inf`` somewhere on that projection.
    """
    tol = f.tol if tol is None else tol
    no = n_outer
    W = f.domain.direction.basis
    w0 = f.domain.offset
    Wp = W[:no]
    p0 = w0[:no]
    k = W.shape[1]
    if k:
        u, s, vt = np.linalg.svd(Wp, full_matrices=True)
        rk = int(np.sum(s > rank_cutoff(s, tol)))
    else:
        u, s, vt, rk = np.eye(no), np.zeros(0), np.zeros((0, 0)), 0
    Ur = u[:, :rk]
    M = vt[:rk].T @ np.diag(1.0 / s[:rk]) @ Ur.T if rk else np.zeros((k, no))
    N = vt[rk:].T if k else np.zeros((0, 0))

    Hu = W.T @ f.P @ W
    gu = W.T @ (f.P @ w0 + f.q)
    r0 = 0.5 * w0 @ f.P @ w0 + f.q @ w0 + f.r
    Pt, qt, rt, K, kv, wmin = _schur_min(M.T @ Hu @ M, M.T @ Hu @ N, N.T @ Hu @ N,
                                         M.T @ gu, N.T @ gu, r0, tol)
    if wmin < -tol.tau_psd:
        raise NotConvexOnDomain("objective is not convex in the minimised variable")
    if K.size:
        bad = max(np.max(np.abs(K @ Ur), initial=0.0), np.max(np.abs(kv), initial=0.0))
        if bad > tol.tau_eq:
            raise MinusInfinity("inner infimum is -inf on part of the domain")
    P = Pt
    q = qt - Pt @ p0
    r = rt - qt @ p0 + 0.5 * p0 @ Pt @ p0
    domain = AffineSubspace(p0, Subspace(Ur.copy(), no))
    return ExtQuad(P, q, r, domain, tol)


def partial_inf_conv2(F1: ExtQuad, F2: ExtQuad, tol=None) -> ExtQuad:
    """``(x, x*) -> inf_{y*} F1(x, x* - y*) + F2(x, y*)`` on ``R^d x R^d``."""
    if F1.dim != F2.dim or F1.dim % 2:
        raise DimensionMismatch("both functions must live on the same R^d x R^d")
    d = F1.dim // 2
    I, Z = np.eye(d), np.zeros((d, d))
    L1 = np.block([[I, Z, Z], [Z, I, -I]])
    L2 = np.block([[I, Z, Z], [Z, Z, I]])
    G = add_extquad(F1.compose(L1), F2.compose(L2))
    return partial_minimize(G, 2 * d, tol)


def conjugate(f: ExtQuad) -> ExtQuad:
    """Exact Fenchel conjugate ``f*(s) = sup_z <s, z> - f(z)``."""
    tol = f.tol
    if f.domain is None:
        raise NotProper("function has no domain")
    m = f.dim
    B = f.domain.direction.basis
    v0 = f.domain.offset
    H = B.T @ f.P @ B
    g = B.T @ f.q
    r0 = 0.5 * v0 @ f.P @ v0 + f.q @ v0 + f.r
    if B.shape[1] == 0:
        return ExtQuad(np.zeros((m, m)), v0, -r0, None, tol)
    pinv, kernel, _ = spectral_pinv(H, tol)
    # sup over u of (B^T s - g)^T u - 1/2 u^T H u
    P = B @ pinv @ B.T
    q = v0 - B @ pinv @ g
    r = -r0 + 0.5 * g @ pinv @ g
    domain = AffineSubspace.from_constraints((B @ kernel).T, kernel.T @ g, m, tol)
    return ExtQuad(P, q, r, domain, tol)


def canonical_distance(f: ExtQuad, g: ExtQuad) -> float:
    """Largest difference of canonical data; ``inf`` if the domains differ."""
    if f.dim != g.dim or not f.domain.equals(g.domain, f.tol):
        return INF
    return float(max(np.max(np.abs(f.P - g.P), initial=0.0),
                     np.max(np.abs(f.q - g.q), initial=0.0), abs(f.r - g.r)))


def equal_canonical(f: ExtQuad, g: ExtQuad, tol=None) -> bool:
    """Same domain and canonical ``(P, q, r)`` within ``tau_eq`` (relative to
    the size of the data, floored at one)."""
    tol = f.tol if tol is None else tol
    dist = canonical_distance(f, g)
    if dist == INF:
        return False
    scale = max(1.0, *(float(np.max(np.abs(a), initial=0.0)) for a in (f.P, g.P, f.q, g.q)),
                abs(f.r), abs(g.r))
    return dist <= tol.tau_eq * scale
