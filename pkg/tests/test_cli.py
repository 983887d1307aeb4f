import json

import pytest

from monorel.cli import main, tolerances_from_env


def write(tmp_path, name, doc):
    f = tmp_path / name
    f.write_text(doc if isinstance(doc, str) else json.dumps(doc))
    return str(f)


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, (json.loads(out) if out.strip() else None), err


@pytest.fixture
def id1(tmp_path):
    return write(tmp_path, "id1.json", {"d": 1, "matrix": [[1]]})


def test_analyze_identity(tmp_path, capsys):
    f = write(tmp_path, "identity.json", {"d": 2, "matrix": [[1, 0], [0, 1]]})
    code, doc, _ = run(capsys, "analyze", f)
    assert code == 0
    assert all(doc[k] for k in ("monotone", "symmetric", "adjoint_monotone",
                                "maximal_by_dim", "sz_surjective"))
    assert doc["graph_dim"] == 2 and doc["a0_dim"] == 0


def test_analyze_rank_one(tmp_path, capsys):
    f = write(tmp_path, "r1.json", {"d": 2, "graph_basis": [[1, 0, 1, 0]]})
    code, doc, _ = run(capsys, "analyze", f)
    assert code == 0 and doc["monotone"] and not doc["maximal_by_dim"]


def test_analyze_malformed(tmp_path, capsys):
    code, doc, err = run(capsys, "analyze", write(tmp_path, "bad.json", '{"d": 2,'))
    assert code == 2 and doc is None and "invalid JSON" in err


def test_analyze_shape_error(tmp_path, capsys):
    code, _, _ = run(capsys, "analyze", write(tmp_path, "s.json", {"d": 2, "matrix": [[1]]}))
    assert code == 3


def test_analyze_missing_file(tmp_path, capsys):
    code, _, _ = run(capsys, "analyze", str(tmp_path / "nope.json"))
    assert code == 3


@pytest.mark.parametrize("order, point, value", [
    ("4", "1;0", 0.375),
    ("inf", "1;0", 0.5),
    ("2", "1;1", 1.0),
])
def test_fitz_identity(id1, capsys, order, point, value):
    code, doc, _ = run(capsys, "fitz", id1, "--order", order, "--point", point)
    assert code == 0
    assert doc["value"] == pytest.approx(value)


def test_fitz_closed_form(id1, capsys):
    code, doc, _ = run(capsys, "fitz", id1, "--order", "3", "--point", "1;0", "--closed-form")
    assert code == 0 and doc["method"] == "closed_form"
    assert doc["value"] == pytest.approx(1 / 3)


def test_fitz_zero_map_infinite(tmp_path, capsys):
    f = write(tmp_path, "z.json", {"d": 1, "matrix": [[0]]})
    code, doc, _ = run(capsys, "fitz", f, "--order", "2", "--point", "1;1")
    assert code == 0 and doc["value"] == "inf"


def test_fitz_oracle(id1, capsys):
    code, doc, _ = run(capsys, "fitz", id1, "--point", "1;0", "--oracle", "2000")
    assert code == 0
    assert doc["oracle_lower_bound"] <= doc["value"] + 1e-9
    assert doc["value"] - doc["oracle_lower_bound"] < 1e-3


def test_fitz_rotation_preconditions(tmp_path, capsys):
    f = write(tmp_path, "rot.json", {"d": 2, "matrix": [[0, -1], [1, 0]]})
    code, doc, _ = run(capsys, "fitz", f, "--point", "1,0;0,1", "--closed-form")
    assert code == 4 and doc["reason"] == "not_symmetric"
    code, doc, _ = run(capsys, "fitz", f, "--order", "3", "--point", "1,0;0,1")
    assert code == 0 and doc["value"] == "inf" and doc["identically_infinite"]


@pytest.mark.parametrize("argv, code", [
    (["--point", "1;0", "--order", "x"], 2),
    (["--point", "1;0", "--order", "1"], 4),
    (["--point", "1,2;0"], 4),
    (["--point", "1"], 2),
    (["--point", "a;0"], 2),
])
def test_fitz_bad_arguments(id1, capsys, argv, code):
    assert run(capsys, "fitz", id1, *argv)[0] == code


def test_fitz_not_monotone(tmp_path, capsys):
    f = write(tmp_path, "neg.json", {"d": 1, "matrix": [[-1]]})
    code, doc, _ = run(capsys, "fitz", f, "--point", "1;0")
    assert code == 4 and doc["reason"] == "not_monotone"


def test_verify_bb(capsys):
    code, doc, _ = run(capsys, "verify", "--suite", "bb", "--seeds", "200", "--dim-max", "5")
    assert code == 0 and doc["instances"] == 200 and doc["failures"] == []


def test_verify_new1(capsys):
    code, doc, _ = run(capsys, "verify", "--suite", "new1", "--seeds", "30")
    assert code == 0 and doc["max_residual"] <= 1e-8


def test_verify_rotation_fails_with_witness(tmp_path, capsys):
    f = write(tmp_path, "rot.json", {"d": 2, "matrix": [[0, -1], [1, 0]]})
    code, doc, _ = run(capsys, "verify", "--suite", "new1", "--file", f)
    assert code == 1
    first = doc["failures"][0]["failures"][0]
    assert first["order"] == 2
    assert first["point"] == pytest.approx([1.0, 0.0, 0.0, 1.0])


def test_verify_jobs_same_result(capsys):
    _, serial, _ = run(capsys, "verify", "--suite", "sz", "--seeds", "12", "--dim-max", "3")
    _, pooled, _ = run(capsys, "verify", "--suite", "sz", "--seeds", "12", "--dim-max", "3",
                       "--jobs", "2")
    assert serial == pooled


def test_random_byte_identical(tmp_path, capsys):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    for out in (a, b):
        assert run(capsys, "random", "--kind", "symmetric_maximal", "--dim", "3",
                   "--seed", "7", "--out", str(out))[0] == 0
    assert a.read_bytes() == b.read_bytes()


@pytest.mark.parametrize("kind, expect", [
    ("skew", {"symmetric": False, "monotone": True, "maximal_by_dim": True}),
    ("nonmaximal_monotone", {"adjoint_monotone": False, "monotone": True}),
    ("symmetric_maximal", {"symmetric": True, "maximal_by_dim": True, "sz_surjective": True}),
    ("general_monotone", {"monotone": True, "adjoint_monotone": True}),
])
def test_random_then_analyze(tmp_path, capsys, kind, expect):
    for seed in range(5):
        out = str(tmp_path / f"{kind}{seed}.json")
        run(capsys, "random", "--kind", kind, "--dim", "3", "--seed", str(seed), "--out", out)
        code, doc, _ = run(capsys, "analyze", out)
        assert code == 0
        assert {k: doc[k] for k in expect} == expect


def test_random_unwritable(tmp_path, capsys):
    code, _, _ = run(capsys, "random", "--kind", "skew", "--dim", "2",
                     "--out", str(tmp_path / "no" / "such" / "dir.json"))
    assert code == 3


def test_tolerance_env():
    assert tolerances_from_env({"MONOREL_TOLERANCE_EQ": "1e-6"}).tau_eq == 1e-6
    assert tolerances_from_env({}).tau_eq == 1e-8
