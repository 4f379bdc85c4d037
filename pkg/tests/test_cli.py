import json

from cyclolie.cli import main


def run(capsys, *argv):
    code = main(list(argv))
    return code, capsys.readouterr().out


def test_validate(capsys, tmp_path):
    code, out = run(capsys, "validate", "oscillator4R")
    assert code == 0 and "signature (3,1)" in out and out.strip().endswith("valid")
    bad = tmp_path / "bad.json"
    bad.write_text(json.dumps({"id": "bad", "dim": 3, "brackets": [
        {"i": 1, "j": 2, "k": 1, "c": "1"}, {"i": 1, "j": 3, "k": 2, "c": "1"}, {"i": 2, "j": 3, "k": 1, "c": "1"}]}))
    code, out = run(capsys, "validate", str(bad))
    assert code == 1 and "Jacobi" in out
    assert run(capsys, "validate", "nope")[0] == 2


def test_validate_json(capsys):
    code, out = run(capsys, "validate", "sl2C", "--json")
    data = json.loads(out)
    assert code == 0 and data["jacobi"] and data["problems"] == [] and data["forms"][0]["nondegenerate"]


def test_cohomology(capsys):
    code, out = run(capsys, "cohomology", "W3")
    assert code == 0
    assert "1 |    3 |     3 |   7" in out
    code, out = run(capsys, "cohomology", "W3", "--json", "--degrees", "1,2")
    data = json.loads(out)
    assert [(r["n"], r["hc"], r["h"]) for r in data["rows"]] == [(1, 3, 7), (2, 3, 9)]
    code, out = run(capsys, "cohomology", "g62", "--lambda", "3", "--expected")
    assert code == 0 and "OPEN h" in out


def test_cohomology_input_errors(capsys):
    assert run(capsys, "cohomology", "g62")[0] == 2
    assert run(capsys, "cohomology", "sl2C", "--degrees", "0-9")[0] == 2
    assert run(capsys, "cohomology", "sl2C", "--form", "3")[0] == 2
    assert run(capsys, "frobnicate")[0] == 2


def test_deform_jacobi_and_cyclic(capsys):
    code, out = run(capsys, "deform", "W3", "jacobi", "--points", "4")
    assert code == 0 and out.count("PASS") == 4
    code, out = run(capsys, "deform", "diamond4C", "cyclic", "--at", "2", "--at=-1/3")
    assert code == 0 and out.count("PASS") == 2
    code, out = run(capsys, "deform", "g62_1", "jacobi", "--at=t1=-1")
    assert code == 2 and "SKIP" in out
    code, out = run(capsys, "deform", "g62_1", "jacobi", "--at", "t1=1/2,t2=1")  # off the relation variety
    assert code == 1 and "FAIL" in out


def test_deform_relations(capsys):
    code, out = run(capsys, "deform", "g62_1", "relations", "--at", "t1=1,t5=1", "--json")
    data = json.loads(out)
    assert code == 0 and len(data["relations"]) == 3 and data["results"][0]["values"][2] == "2"


def test_deform_iso(capsys):
    code, out = run(capsys, "deform", "diamond4C", "iso")
    assert code == 0 and "G^-1" in out
    code, out = run(capsys, "deform", "sl2C", "iso", "--matrix", "[[1,0,0],[0,1,0],[0,0,1]]", "--target", "sl2C")
    assert code == 0 and "PASS" in out
    assert run(capsys, "deform", "sl2C", "iso", "--matrix", "[[1,0],[0,1]]", "--target", "sl2C")[0] == 2
    assert run(capsys, "deform", "sl2C", "iso", "--matrix", "[[1,0,0]]")[0] == 2


def test_catalog_commands(capsys):
    code, out = run(capsys, "catalog", "list", "--dim", "3")
    assert code == 0 and [line.split()[1] for line in out.splitlines()] == ["sl2C", "sl2R", "so3R"]
    code, out = run(capsys, "catalog", "graph", "--json")
    data = json.loads(out)
    assert data["acyclic"] and ["3", "1"] in data["edges"]


def test_json_file_round_trip(capsys, tmp_path):
    path = tmp_path / "ab2.json"
    path.write_text(json.dumps({"id": "ab2", "dim": 2, "brackets": [], "forms": [{"matrix": [["1", "0"], ["0", "-1"]]}]}))
    code, out = run(capsys, "cohomology", str(path), "--json")
    data = json.loads(out)
    assert code == 0 and [r["h"] for r in data["rows"]] == [2, 4, 2]


def test_reproduce_dim3(capsys):
    code, out = run(capsys, "reproduce", "--dim", "3", "--fast")
    assert code == 0
    assert out.strip().splitlines()[-1].startswith("25 checks: 25 PASS")
