import json
import subprocess
import sys

import pytest

from disentangle import fixtures
from disentangle.cli import main


def data(name):
    return str(fixtures.data_path(name))


def run(capsys, *argv):
    code = main(list(argv))
    out = capsys.readouterr()
    return code, out.out, out.err


def run_json(capsys, *argv):
    code, out, _ = run(capsys, "--json", *argv)
    return code, json.loads(out)


def test_divdiff(capsys):
    code, out, _ = run(capsys, "divdiff", data("b_infinity"), "--k", "2")
    assert code == 0
    assert out.splitlines() == ["x1 + x2", "u1^2"]
    code, out, _ = run(capsys, "divdiff", data("s_infinity"), "--k", "3")
    assert code == 0 and "1" in out.splitlines()


@pytest.mark.parametrize("name, expected", [
    ("s_infinity", 0), ("b_infinity", 0), ("degenerate", 1), ("x2_x4", 1),
])
def test_dimcheck_exit_codes(capsys, name, expected):
    code, out, _ = run(capsys, "dimcheck", data(name), "--kmax", "4")
    assert code == expected
    assert ("verdict: DimensionallyCorrect" in out) == (expected == 0)


def test_dimcheck_json(capsys):
    code, doc = run_json(capsys, "dimcheck", data("s_infinity"))
    assert code == 0
    assert doc["outputs"]["verdict"] == "DimensionallyCorrect"
    assert all(c["pass"] for c in doc["checks"])
    assert len(doc["inputs_digest"]) == 64


def test_image(capsys):
    code, out, _ = run(capsys, "image", data("b_infinity_top_left"), "--profile", "2,3,1")
    assert code == 0
    assert "betti: 1 1 1" in out and "Consistent" in out
    code, doc = run_json(capsys, "image", data("b2_perturbation"), "--profile", "2,3,0")
    assert code == 0
    assert doc["outputs"]["betti"] == [1, 0, 2]
    assert doc["outputs"]["bound_check"]["verdict"] == "Consistent"


def test_image_inconsistent_profile(capsys):
    # nodal edge has b_1 = 1, forbidden when d = 0
    code, doc = run_json(capsys, "image", data("nodal_edge"), "--profile", "2,3,0")
    assert code == 1
    assert doc["outputs"]["bound_check"]["verdict"] == "Inconsistent"


def test_image_non_chain_map_exits_3(capsys, tmp_path):
    doc = fixtures.document("b_infinity_top_left")
    # eps^2 moves vertices but kills edges
    doc["face_maps"][1] = {"k": 2, "i": 2, "degree": 0,
                           "entries": [[1 + j % 4, j, 1] for j in range(8)]}
    path = tmp_path / "bad.json"
    path.write_text(json.dumps(doc))
    code, _, err = run(capsys, "image", str(path))
    assert code == 3 and "NotADoubleComplex" in err


def test_validate(capsys, tmp_path):
    assert run(capsys, "validate", data("b1_perturbation"))[0] == 0
    braid = {"k": 3, "basis_sizes": [4],
             "generators": [[{"perm": [1, 0, 2, 3]}], [{"perm": [0, 1, 3, 2]}]]}
    path = tmp_path / "braid.json"
    path.write_text(json.dumps({"levels": [None, {"basis_sizes": [1], "generators": [[{"perm": [0]}]]},
                                           braid],
                                "phi": [{"k": 2, "degree": 0, "entries": []},
                                        {"k": 3, "degree": 0, "entries": []}]}))
    code, out, _ = run(capsys, "validate", str(path))
    assert code == 1 and "braid relation" in out
    empty = tmp_path / "empty.json"
    empty.write_text("")
    assert run(capsys, "validate", str(empty))[0] == 2


def test_bounds(capsys):
    code, out, _ = run(capsys, "bounds", "2", "3", "1")
    assert code == 0 and "0, 1, 2" in out and "×" in out and "•" in out
    code, doc = run_json(capsys, "bounds", "2", "3", "0")
    assert doc["outputs"]["admissible_total_degrees"] == [0, 2]
    code, doc = run_json(capsys, "bounds", "3", "5", "1")
    assert sorted(doc["outputs"]["mask"]) == ["1", "2"]
    assert run(capsys, "bounds", "3", "3", "1")[0] == 2


def test_input_errors(capsys, tmp_path):
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"n": 2, "N": 3, "components": ["x^2 +", "x^3"]}))
    assert run(capsys, "divdiff", str(bad), "--k", "2")[0] == 2
    assert run(capsys, "dimcheck", str(tmp_path / "missing.json"))[0] == 2
    assert run(capsys, "bogus")[0] == 2


def test_budget_exceeded(capsys, tmp_path):
    g = tmp_path / "g.json"
    g.write_text(json.dumps({"n": 2, "N": 3, "components": ["x^3", "x^4 + u1*x"]}))
    assert run(capsys, "dimcheck", str(g))[0] == 1
    code, _, err = run(capsys, "--budget", "1", "dimcheck", str(g))
    assert code == 4 and "GroebnerBudgetExceeded" in err


def test_json_is_byte_identical():
    cmd = [sys.executable, "-m", "disentangle", "--json", "image", data("b2_perturbation")]
    a = subprocess.run(cmd, capture_output=True, check=True).stdout
    b = subprocess.run(cmd, capture_output=True, check=True).stdout
    assert a == b and json.loads(a)["outputs"]["betti"] == [1, 0, 2]


def test_global_flags_after_subcommand(capsys):
    code, out, _ = run(capsys, "bounds", "2", "3", "1", "--json")
    assert code == 0 and json.loads(out)["command"] == ["bounds", "2", "3", "1"]
