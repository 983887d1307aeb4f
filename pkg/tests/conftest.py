import numpy as np
import pytest

from monorel import DEFAULT_TOL, from_graph_basis, from_matrix


@pytest.fixture
def tol():
    return DEFAULT_TOL


@pytest.fixture
def identity1():
    return from_matrix(np.eye(1))


@pytest.fixture
def zero1():
    return from_matrix(np.zeros((1, 1)))


@pytest.fixture
def rotation():
    return from_matrix(np.array([[0.0, -1.0], [1.0, 0.0]]))


@pytest.fixture
def rank_one():
    """Graph span{(1,0,1,0)} in R^2 x R^2."""
    return from_graph_basis(np.array([[1.0], [0.0], [1.0], [0.0]]), 2)
