import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from monorel import (AffineSubspace, EmptyDomain, Subspace, Tolerances, complement, contains,
                     intersect, orthonormalize, pseudo_solve, subspace_sum)
from monorel.errors import NotSymmetricMatrix
from monorel.subspace import equal, project, spectral_pinv


def span(*cols):
    return orthonormalize(np.array(cols, dtype=float).T)


def test_orthonormalize_collinear():
    S = span((1, 0), (2, 0))
    assert S.dim == 1
    assert contains(S, [1, 0])


def test_orthonormalize_empty():
    S = orthonormalize(np.zeros((3, 0)))
    assert S.dim == 0 and S.ambient_dim == 3


def test_orthonormalize_full():
    assert span((1, 1), (1, -1)).dim == 2


def test_complement_examples():
    assert complement(span((1, 0))) == span((0, 1))
    assert complement(Subspace.full(2)).dim == 0
    assert complement(Subspace.trivial(3)).dim == 3


def test_sum_examples():
    S = span((1, 0))
    assert subspace_sum(S, span((1, 1))).dim == 2
    assert subspace_sum(S, S) == S
    assert subspace_sum(S, Subspace.trivial(2)) == S


def test_intersect_examples():
    assert intersect(Subspace.full(2), span((1, 1))) == span((1, 1))
    assert intersect(span((1, 0)), span((0, 1))).dim == 0
    S = span((1, 2, 3))
    assert intersect(S, S) == S


def test_contains_examples():
    assert contains(span((1, 1)), [1, 1])
    assert not contains(span((0, 1)), [1, 0])
    assert contains(span((3, 1, 4)), np.zeros(3))


def test_pseudo_solve_examples():
    P = np.diag([1.0, 0.0])
    x, ok = pseudo_solve(P, [2.0, 0.0])
    np.testing.assert_allclose(x, [2.0, 0.0])
    assert ok
    _, ok = pseudo_solve(P, [0.0, 1.0])
    assert not ok
    b = np.array([0.3, -1.7, 2.0])
    x, ok = pseudo_solve(np.eye(3), b)
    np.testing.assert_allclose(x, b)
    assert ok


def test_pseudo_solve_rejects_asymmetric():
    with pytest.raises(NotSymmetricMatrix):
        pseudo_solve(np.array([[1.0, 1.0], [0.0, 1.0]]), [1.0, 1.0])


def test_spectral_pinv_kernel():
    pinv, K, w = spectral_pinv(np.diag([2.0, 0.0, 4.0]))
    np.testing.assert_allclose(pinv, np.diag([0.5, 0.0, 0.25]), atol=1e-15)
    assert K.shape == (3, 1)
    np.testing.assert_allclose(np.abs(K[:, 0]), [0, 1, 0])


def test_tolerances_validate():
    with pytest.raises(ValueError):
        Tolerances(tau_eq=-1.0)


def test_affine_from_constraints_consistent():
    V = AffineSubspace.from_constraints(np.array([[1.0, 0.0]]), np.array([2.0]))
    assert V.dim == 1
    assert V.contains([2.0, 5.0])
    assert not V.contains([1.0, 5.0])


def test_affine_from_constraints_inconsistent():
    C = np.array([[1.0, 0.0], [1.0, 0.0]])
    with pytest.raises(EmptyDomain):
        AffineSubspace.from_constraints(C, np.array([1.0, -1.0]))


def test_affine_intersect_parallel_distinct():
    C = np.array([[1.0]])
    a = AffineSubspace.from_constraints(C, np.array([1.0]))
    b = AffineSubspace.from_constraints(C, np.array([-1.0]))
    with pytest.raises(EmptyDomain):
        a.intersect(b)


def test_affine_constraints_roundtrip():
    V = AffineSubspace.from_constraints(np.array([[1.0, 1.0, 0.0]]), np.array([3.0]))
    C, c = V.constraints()
    assert AffineSubspace.from_constraints(C, c, 3).equals(V)


mats = st.integers(1, 5).flatmap(lambda m: st.integers(0, 5).flatmap(
    lambda k: arrays(np.float64, (m, k), elements=st.floats(-3, 3, width=32))))


@settings(max_examples=60, deadline=None)
@given(mats)
def test_orthonormal_basis_property(V):
    S = orthonormalize(V)
    np.testing.assert_allclose(S.basis.T @ S.basis, np.eye(S.dim), atol=1e-12)
    assert S.dim == np.linalg.matrix_rank(V, tol=1e-10 * max(1.0, np.abs(V).max(initial=0)))


@settings(max_examples=60, deadline=None)
@given(mats)
def test_complement_is_orthogonal_and_spans(V):
    S = orthonormalize(V)
    T = complement(S)
    assert S.dim + T.dim == S.ambient_dim
    np.testing.assert_allclose(S.basis.T @ T.basis, 0.0, atol=1e-12)
    assert complement(T) == S


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_dimension_formula(seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(1, 6))
    S = orthonormalize(rng.standard_normal((m, int(rng.integers(0, m + 1)))))
    T = orthonormalize(rng.standard_normal((m, int(rng.integers(0, m + 1)))))
    assert subspace_sum(S, T).dim + intersect(S, T).dim == S.dim + T.dim


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 2**31 - 1))
def test_projection_residual_orthogonal(seed):
    rng = np.random.default_rng(seed)
    S = orthonormalize(rng.standard_normal((4, 2)))
    v = rng.standard_normal(4)
    r = v - project(S, v)
    np.testing.assert_allclose(S.basis.T @ r, 0.0, atol=1e-12)
    assert equal(S, S)
