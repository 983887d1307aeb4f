import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from monorel import (bb_report, contains, decompose, from_graph_basis, from_matrix,
                     minimize_g, random_relation)
from monorel.errors import NotMaximal


def test_bb_report_identity():
    r = bb_report(from_matrix(np.eye(2)))
    assert r.relation == r.adjoint
    assert r.consistent and r.relation.maximal_by_dim


def test_bb_report_rank_one(rank_one):
    r = bb_report(rank_one)
    assert r.relation.monotone and not r.relation.maximal_by_dim
    assert not r.adjoint.monotone
    assert r.consistent


def test_bb_report_rotation(rotation):
    r = bb_report(rotation)
    assert r.relation.maximal_by_dim and r.adjoint.maximal_by_dim
    assert set(r.as_dict()) == {"relation", "adjoint"}


@pytest.mark.parametrize("M, p, graph_part, j_part", [
    ([[1.0]], [2.0, 0.0], [1.0, 1.0], [1.0, -1.0]),
    ([[0.0]], [0.0, 3.0], [3.0, 0.0], [-3.0, 3.0]),
    ([[1.0]], [2.0, 2.0], [2.0, 2.0], [0.0, 0.0]),
])
def test_decompose_examples(M, p, graph_part, j_part):
    g, j = decompose(from_matrix(M), p)
    np.testing.assert_allclose(g, graph_part, atol=1e-12)
    np.testing.assert_allclose(j, j_part, atol=1e-12)


def test_decompose_nonmaximal(rank_one):
    with pytest.raises(NotMaximal):
        decompose(rank_one, [0.0, 1.0, 0.0, 1.0])
    # minimiser off gra(-J): the decomposition really fails here
    z, zs = minimize_g(rank_one, np.array([0.0, 1.0, 0.0, 1.0]))
    assert np.linalg.norm(z + zs) > 1.0


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 5),
       st.sampled_from(("symmetric_maximal", "skew", "general_monotone")))
def test_decompose_reconstructs(seed, d, kind):
    A = random_relation(seed, d, kind)
    p = np.random.default_rng(seed).standard_normal(2 * d)
    g, j = decompose(A, p)
    np.testing.assert_allclose(g + j, p, atol=1e-9)
    np.testing.assert_array_equal(j[d:], -j[:d])
    assert contains(A.graph, g)


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 10_000), st.integers(1, 5),
       st.sampled_from(("symmetric_maximal", "skew", "general_monotone", "nonmaximal_monotone")))
def test_report_flags_agree(seed, d, kind):
    assert bb_report(random_relation(seed, d, kind)).consistent


def test_generated_adjoint_nonmonotone():
    for seed in range(20):
        A = random_relation(seed, 3, "nonmaximal_monotone")
        assert not bb_report(A).relation.adjoint_monotone


def test_full_graph_not_monotone():
    r = bb_report(from_graph_basis(np.eye(2), 1))
    assert not r.relation.monotone
