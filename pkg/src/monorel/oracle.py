"""Independent ground truth: brute-force chain suprema, finite differences,
and seeded instance generators.

Nothing in here uses the :mod:`monorel.extquad` calculus to produce a value;
``brute_fitz_n`` evaluates the chain expression directly and only ever
reports values it actually attained, so it is a lower bound on the true
supremum.
"""

from __future__ import annotations

import math

import numpy as np

from .errors import PointOutsideDomain
from .extquad import ExtQuad
from .relation import LinearRelation, from_graph_basis, from_matrix, is_monotone
from .subspace import complement, orthonormalize

__all__ = ["KINDS", "random_relation", "brute_fitz_n", "chain_values", "finite_diff_grad"]

KINDS = ("symmetric_maximal", "skew", "general_monotone", "nonmaximal_monotone")


def _rng(seed, d, kind):
    return np.random.default_rng([int(seed), int(d), KINDS.index(kind)])


def _symmetric_maximal(rng, d):
    # dom A = D, A x = Q x + D^perp with Q PSD on D
    r = d if rng.random() < 0.5 else int(rng.integers(0, d + 1))
    D = orthonormalize(rng.standard_normal((d, r))) if r else None
    parts = []
    if r:
        Db = D.basis
        rank = int(rng.integers(0, r + 1))
        lam = np.zeros(r)
        lam[:rank] = rng.uniform(0.25, 2.0, size=rank)
        U, _ = np.linalg.qr(rng.standard_normal((r, r)))
        Q = Db @ U @ np.diag(lam) @ U.T @ Db.T
        parts.append(np.vstack([Db, Q @ Db]))
        perp = complement(D).basis
    else:
        perp = np.eye(d)
    if perp.shape[1]:
        parts.append(np.vstack([np.zeros_like(perp), perp]))
    return from_graph_basis(np.hstack(parts), d)


def random_relation(seed: int, d: int, kind: str) -> LinearRelation:
    """Deterministic random relation of the given kind.

    ``symmetric_maximal`` graphs are ``{(x, Qx + w) : x in D, w in D^perp}``;
    ``skew`` is an antisymmetric matrix; ``general_monotone`` is
    ``R^T R + W`` with ``W`` antisymmetric; ``nonmaximal_monotone`` is a
    proper subspace of a symmetric maximal graph.
    """
    if d < 1:
        raise ValueError("d must be positive")
    if kind not in KINDS:
        raise ValueError(f"unknown kind {kind!r}; expected one of {KINDS}")
    rng = _rng(seed, d, kind)
    if kind == "symmetric_maximal":
        return _symmetric_maximal(rng, d)
    if kind == "skew":
        W = rng.standard_normal((d, d))
        return from_matrix(W - W.T)
    if kind == "general_monotone":
        R = rng.standard_normal((int(rng.integers(1, d + 1)), d))
        W = rng.standard_normal((d, d))
        return from_matrix(R.T @ R + 0.5 * (W - W.T))
    base = _symmetric_maximal(rng, d)
    k = int(rng.integers(0, d))
    A = from_graph_basis(base.graph.basis @ rng.standard_normal((d, k)), d)
    assert is_monotone(A)
    return A


def chain_values(A: LinearRelation, n: int, p, coords) -> np.ndarray:
    """The chain expression for a batch of chains.

    ``coords`` has shape ``(batch, n - 1, k)``: graph coordinates of the
    chain points ``a_1, ..., a_{n-1}``.  Returns

        <x,x*> + sum_{i<n-1} <a_{i+1} - a_i, a_i*> + <x - a_{n-1}, a_{n-1}*> + <a_1 - x, x*>
    """
    d = A.d
    p = np.asarray(p, dtype=float)
    x, xs = p[:d], p[d:]
    a = coords @ A.B1.T
    astar = coords @ A.B2.T
    val = np.full(coords.shape[0], float(x @ xs))
    if n > 2:
        val += np.einsum("bij,bij->b", a[:, 1:] - a[:, :-1], astar[:, :-1])
    val += np.einsum("bj,bj->b", x[None, :] - a[:, -1], astar[:, -1])
    val += (a[:, 0] - x[None, :]) @ xs
    return val


def brute_fitz_n(A: LinearRelation, n: int, p, budget: int = 10_000, seed: int = 0,
                 chunk: int = 8192, lines: int = 64) -> float:
    """Sampled lower bound on ``F_{A,n}(p)`` from the chain definition.

    Half the budget goes to Gaussian chains at scale ``1 + |p|`` (plus a
    coarse grid when the graph has dimension <= 2 and ``n <= 3``); the rest
    is spent on rounds of ``lines`` random-direction line searches from the
    incumbent chain, each fitting a parabola through three evaluations and
    evaluating its vertex.
    """
    if n < 2 or int(n) != n:
        raise ValueError("n must be an integer >= 2")
    if budget < 1:
        raise ValueError("budget must be positive")
    n = int(n)
    p = np.asarray(p, dtype=float)
    d = A.d
    if p.shape != (2 * d,):
        raise ValueError("point must have length 2d")
    k = A.graph_dim
    if k == 0:
        return float(chain_values(A, n, p, np.zeros((1, n - 1, 0)))[0])
    rng = np.random.default_rng([int(seed), n, k, 7])
    scale = 1.0 + float(np.linalg.norm(p))
    shape = (n - 1, k)
    ndim = (n - 1) * k

    best_val = -math.inf
    best = np.zeros(shape)
    used = 0

    def consider(C):
        nonlocal best_val, best
        v = chain_values(A, n, p, C)
        i = int(np.argmax(v))
        if v[i] > best_val:
            best_val, best = float(v[i]), C[i].copy()
        return v

    consider(np.zeros((1,) + shape))
    used += 1

    if k <= 2 and n <= 3:
        per_axis = max(2, int((budget / 4) ** (1.0 / ndim)))
        axis = np.linspace(-2 * scale, 2 * scale, per_axis)
        grid = np.array(np.meshgrid(*[axis] * ndim, indexing="ij")).reshape(ndim, -1).T
        for s in range(0, len(grid), chunk):
            consider(grid[s:s + chunk].reshape((-1,) + shape))
        used += len(grid)

    n_global = max(0, budget // 2 - used)
    while n_global > 0:
        m = min(chunk, n_global)
        consider(scale * rng.standard_normal((m,) + shape))
        n_global -= m
        used += m

    h = scale
    while used + 3 * lines + 1 <= budget:
        U = rng.standard_normal((lines,) + shape)
        U /= np.linalg.norm(U.reshape(lines, -1), axis=1)[:, None, None]
        base = best
        trial = np.concatenate([base - h * U, base[None], base + h * U])
        v = consider(trial)
        used += 2 * lines + 1
        fm, f0, fp = v[:lines], v[lines], v[lines + 1:]
        curv = fp - 2 * f0 + fm
        ok = curv < 0
        if np.any(ok):
            t = 0.5 * h * (fm[ok] - fp[ok]) / curv[ok]
            consider(base[None] + t[:, None, None] * U[ok])
            used += int(ok.sum())
        h = max(1e-8 * scale, 0.9 * h)
    return best_val


def finite_diff_grad(f: ExtQuad, x, h: float = 1e-6) -> np.ndarray:
    """Central-difference gradient of ``f`` at ``x`` along its domain directions.

    Raises
    ------
    PointOutsideDomain
    """
    x = np.asarray(x, dtype=float)
    if not f.domain.contains(x, f.tol):
        raise PointOutsideDomain("x is not in the domain of f")
    g = np.zeros_like(x)
    for b in f.domain.direction.basis.T:
        g += (f(x + h * b) - f(x - h * b)) / (2 * h) * b
    return g
