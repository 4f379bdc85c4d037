import json
import shutil
from fractions import Fraction

import pytest

from cyclolie import catalog
from cyclolie.catalog import CatalogError, TYPE_IDS


def test_enumerate_examples():
    assert catalog.enumerate(dim=3) == ["sl2C", "sl2R", "so3R"]
    assert catalog.enumerate(dim=6) == ["sl2sl2", "Tstar_sl2", "sl2C3", "g62", "g62_0", "g63", "g62_1", "W3plusC", "W4"]
    assert set(catalog.enumerate(dim=4, field="real")) == {"diamond4R", "oscillator4R", "sl2R_R", "so3R_R"}
    assert catalog.enumerate(dim=7) == []
    assert set(catalog.enumerate(solvable=False)) == {
        "sl2C", "sl2R", "so3R", "sl2C_C", "sl2R_R", "so3R_R", "sl2C_C2", "sl2R_R2", "so3R_R2", "sl2sl2", "Tstar_sl2", "sl2C3"
    }
    assert len(catalog.all_ids()) == 25


@pytest.mark.parametrize("entry_id", catalog.all_ids())
def test_every_entry_self_validates(entry_id):
    e = catalog.load(entry_id, lam=2) if entry_id == "g62" else catalog.load(entry_id)
    assert e.validate(strict=False) == []
    assert e.dim in (3, 4, 5, 6)


def test_load_examples():
    sl2 = catalog.load("sl2C")
    assert sl2.dim == 3 and sl2.d == sl2.cochain("psi[{1,2}->3] - 2*psi[{1,3}->1] + 2*psi[{2,3}->2]")
    assert catalog.load("g62(5)").env() == {"lambda": Fraction(5)}
    assert catalog.load("g62", lam="5") is catalog.load("g62(lambda=5)")


def test_special_parameter_values_redirect():
    assert catalog.load("g62", lam=0).label == catalog.load("g62_0").label
    assert catalog.load("g62(1)").label == catalog.load("g62_1").label


def test_load_errors():
    with pytest.raises(CatalogError):
        catalog.load("nope")
    with pytest.raises(CatalogError):
        catalog.load("g62")
    with pytest.raises(CatalogError):
        catalog.load("g62(2)", lam=3)


def test_load_file_round_trip(tmp_path):
    path = tmp_path / "ab2.json"
    path.write_text(json.dumps({"id": "ab2", "dim": 2, "brackets": [], "forms": [{"matrix": [["1", "0"], ["0", "1"]]}]}))
    e = catalog.load_file(path)
    assert e.d.is_zero() and e.dim == 2


def test_validation_problems(tmp_path):
    path = tmp_path / "bad.json"
    path.write_text(json.dumps({
        "id": "bad", "dim": 3,
        "brackets": [{"i": 1, "j": 2, "k": 3, "c": "1"}, {"i": 1, "j": 3, "k": 1, "c": "-2"}, {"i": 2, "j": 3, "k": 2, "c": "2"}],
        "forms": [{"matrix": [["1", "0", "0"], ["0", "1", "0"], ["0", "0", "1"]]}],
    }))
    with pytest.raises(CatalogError):
        catalog.load_file(path)
    e = catalog.load_file(path, validate=False)
    assert any("not invariant" in p for p in e.validate(strict=False))
    path.write_text("{not json")
    with pytest.raises(CatalogError):
        catalog.load_file(path)


def test_catalog_dir_override(tmp_path, monkeypatch):
    (tmp_path / "3").mkdir()
    shutil.copy(catalog.catalog_dir() / "3" / "sl2C.json", tmp_path / "3" / "sl2C.json")
    monkeypatch.setenv("CYCLOLIE_CATALOG", str(tmp_path))
    assert catalog.all_ids() == ["sl2C"]
    assert catalog.load("sl2C").dim == 3


def test_jump_graph():
    g = catalog.jump_graph()
    assert g.nodes == list(TYPE_IDS)
    assert set(g.jumps["7"]) == set(TYPE_IDS) - {"7"}
    assert g.jumps["3"] == ("1",)
    assert g.jumps["1"] == ()
    assert g.is_acyclic()
    order = g.topological_order()
    for a, b in g.edges():
        assert order.index(b) < order.index(a)
    assert g.smooth["4(lambda)"] == ("4(lambda)",)


def test_describe():
    rows = catalog.describe(dim=5)
    assert [r["id"] for r in rows] == catalog.enumerate(dim=5)
    assert all(r["dim"] == 5 for r in rows)
