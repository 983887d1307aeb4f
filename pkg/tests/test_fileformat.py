import json
import math

import numpy as np
import pytest

from monorel import from_matrix, random_relation
from monorel.fileformat import (ParseError, ShapeError, dump_relation, encode_value,
                                load_relation, parse_relation, relation_to_dict)


def test_matrix_layout():
    A = parse_relation({"d": 2, "matrix": [[1, 0], [0, 1]]})
    assert A == from_matrix(np.eye(2))


def test_graph_basis_layout():
    A = parse_relation({"d": 2, "graph_basis": [[1, 0, 1, 0]]})
    assert A.graph_dim == 1


@pytest.mark.parametrize("doc", [
    [1, 2],
    {"d": "2", "matrix": [[1]]},
    {"d": True, "matrix": [[1]]},
    {"d": 1},
    {"d": 1, "matrix": [[1]], "graph_basis": [[1, 1]]},
    {"d": 1, "matrix": [["a"]]},
    {"d": 1, "matrix": [[True]]},
    {"d": 1, "matrix": [1]},
])
def test_schema_errors(doc):
    with pytest.raises(ParseError):
        parse_relation(doc)


@pytest.mark.parametrize("doc", [
    {"d": 0, "matrix": []},
    {"d": 2, "matrix": [[1, 0]]},
    {"d": 2, "graph_basis": [[1, 0, 1]]},
])
def test_shape_errors(doc):
    with pytest.raises(ShapeError):
        parse_relation(doc)


def test_invalid_json(tmp_path):
    f = tmp_path / "bad.json"
    f.write_text('{"d": 2,')
    with pytest.raises(ParseError):
        load_relation(f)


def test_roundtrip_is_lossless(tmp_path):
    for kind in ("symmetric_maximal", "general_monotone"):
        A = random_relation(9, 4, kind)
        f = tmp_path / f"{kind}.json"
        f.write_text(dump_relation(A))
        vecs = np.array(json.loads(f.read_text())["graph_basis"]).T
        assert np.array_equal(vecs, A.graph.basis)  # floats survive bit-for-bit
        assert load_relation(f) == A


def test_encode_value():
    assert encode_value(math.inf) == "inf"
    assert encode_value(0.25) == 0.25
    with pytest.raises(ValueError):
        encode_value(math.nan)
