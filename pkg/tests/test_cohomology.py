from math import comb

import pytest

from cyclolie import catalog
from cyclolie.cochains import BilinearForm, FormError, JacobiError, LieAlgebra, parse_cochain, tilde
from cyclolie.cohomology import (
    adjoint_cohomology,
    cohomology_report,
    convolve,
    cyclic_cohomology,
    cyclic_subspace,
    direct_sum,
    kunneth_check,
    reduced_cyclic_cohomology,
    trivial_cocycle_dim,
    trivial_cohomology,
)
from cyclolie.scalar_linalg import Matrix

# (HC, HRC, H) for n = 0..3, computed once and frozen
TABLES = {
    "sl2C": ([0, 0, 1, 0], [0, 0, 0, 0], [0, 0, 0, 0]),
    "sl2C_C": ([1, 0, 1, 1], [1, 0, 0, 1], [1, 1, 0, 1]),
    "diamond4C": ([1, 0, 1, 1], [1, 0, 1, 1], [1, 2, 2, 2]),
    "oscillator4R": ([1, 0, 1, 1], [1, 0, 1, 1], [1, 2, 2, 2]),
    "sl2C_C2": ([2, 1, 1, 2], [2, 1, 0, 2], [2, 4, 2, 2]),
    "diamond4C_C": ([2, 1, 1, 2], [2, 1, 1, 2], [2, 5, 5, 5]),
    "W3": ([2, 3, 3, 2], [2, 3, 3, 2], [2, 7, 9, 9]),
    "sl2sl2": ([0, 0, 2, 0], [0, 0, 0, 0], [0, 0, 0, 0]),
    "Tstar_sl2": ([0, 0, 2, 0], [0, 0, 1, 0], [0, 1, 1, 0]),
    "sl2C3": ([3, 3, 2, 3], [3, 3, 1, 3], [3, 9, 9, 6]),
    "g62_0": ([3, 3, 2, 3], [3, 3, 2, 3], [3, 10, 13, 12]),
    "g63": ([1, 1, 2, 1], [1, 1, 2, 1], [1, 3, 3, 2]),
    "g62_1": ([1, 3, 6, 3], [1, 3, 6, 3], [1, 5, 7, 6]),
    "W3plusC": ([3, 5, 6, 5], [3, 5, 6, 5], [3, 12, 21, 24]),
    "W4": ([3, 8, 12, 8], [3, 8, 12, 8], [3, 15, 30, 36]),
    # generic members of the g62 family; the adjoint column depends on lambda
    "g62(2)": ([1, 1, 2, 1], [1, 1, 2, 1], [1, 3, 5, 6]),
    "g62(3)": ([1, 1, 2, 1], [1, 1, 2, 1], [1, 3, 3, 2]),
    "g62(5)": ([1, 1, 2, 1], [1, 1, 2, 1], [1, 3, 3, 2]),
    "g62(-1/2)": ([1, 1, 2, 1], [1, 1, 2, 1], [1, 3, 5, 6]),
}


@pytest.mark.parametrize("entry_id", sorted(TABLES))
def test_frozen_tables(entry_id):
    e = catalog.load(entry_id)
    rep = cohomology_report(e.algebra, e.form, range(4), e.label)
    assert (rep.hc, rep.hrc, rep.h) == TABLES[entry_id]
    assert all(r["hrc"] <= r["hc"] for r in rep.rows)
    assert [r["hc"] for r in rep.rows] == [r["hc_shifted"] for r in rep.rows]


def test_catalog_expectations_match_frozen_tables():
    for entry_id, (hc, hrc, h) in TABLES.items():
        e = catalog.load(entry_id)
        assert e.expected["hc"] == hc and e.expected["hrc"] == hrc
        if "h" not in e.expected_open:
            assert e.expected["h"] == h


def test_adjoint_examples():
    sl2 = catalog.load("sl2C").algebra
    assert [adjoint_cohomology(sl2, n).dim for n in range(4)] == [0, 0, 0, 0]
    diamond = catalog.load("diamond4C").algebra
    assert [adjoint_cohomology(diamond, n).dim for n in range(4)] == [1, 2, 2, 2]
    reps = adjoint_cohomology(diamond, 1)
    assert len(reps.cochains(4, 1)) == 2


def test_trivial_examples():
    sl2 = catalog.load("sl2C").algebra
    assert [trivial_cohomology(sl2, n) for n in range(4)] == [1, 0, 0, 1]
    assert [trivial_cohomology(LieAlgebra.abelian(1), n) for n in range(4)] == [1, 1, 0, 0]
    assert [trivial_cohomology(LieAlgebra.abelian(2), n) for n in range(3)] == [1, 2, 1]
    assert trivial_cocycle_dim(catalog.load("diamond4C").algebra, 1) == 1


def test_abelian_adjoint_cohomology_is_whole_space():
    ab = LieAlgebra.abelian(2)
    assert [adjoint_cohomology(ab, n).dim for n in range(3)] == [2 * comb(2, n) for n in range(3)]


def test_cyclic_subspace_dims():
    diamond = catalog.load("diamond4C")
    assert [cyclic_subspace(diamond.algebra, diamond.form, n).dim for n in range(4)] == [4, 6, 4, 1]
    sl2 = catalog.load("sl2C")
    assert cyclic_subspace(sl2.algebra, sl2.form, 2).dim == 1
    w4 = catalog.load("W4")
    assert cyclic_subspace(w4.algebra, w4.form, 2).dim == 20


def test_cyclic_cohomology_of_sl2_is_spanned_by_d():
    e = catalog.load("sl2C")
    hc2 = cyclic_cohomology(e.algebra, e.form, 2)
    assert hc2.dim == 1
    (rep,) = hc2.cochains(3, 2)
    assert tilde(rep, e.form)[1] is not None
    assert reduced_cyclic_cohomology(e.algebra, e.form, 2).dim == 0


def test_reduced_gap_for_cotangent_sl2():
    e = catalog.load("Tstar_sl2")
    assert cyclic_cohomology(e.algebra, e.form, 2).dim == 2
    assert reduced_cyclic_cohomology(e.algebra, e.form, 2).dim == 1


def test_cohomology_errors():
    bad = LieAlgebra.unchecked(parse_cochain("psi[{1,2}->1] + psi[{1,3}->2] + psi[{2,3}->1]", 3))
    with pytest.raises(JacobiError):
        adjoint_cohomology(bad, 1)
    sl2 = catalog.load("sl2C").algebra
    with pytest.raises(FormError):
        cyclic_cohomology(sl2, BilinearForm(Matrix.identity(3)), 1)
    with pytest.raises(FormError):
        cyclic_cohomology(sl2, BilinearForm(Matrix.zeros(3, 3)), 1)


def test_direct_sum_examples():
    sl2 = catalog.load("sl2C")
    s, b = direct_sum(sl2.algebra, sl2.form, LieAlgebra.abelian(1), BilinearForm(Matrix([[1]])))
    ref = catalog.load("sl2C_C")
    assert s.d == ref.d
    assert b.matrix == Matrix([[0, 1, 0, 0], [1, 0, 0, 0], [0, 0, 2, 0], [0, 0, 0, 1]])
    a, _ = direct_sum(LieAlgebra.abelian(2), None, LieAlgebra.abelian(3), None)
    assert a.d.is_zero() and a.dim == 5
    ss, bb = direct_sum(sl2.algebra, sl2.form, sl2.algebra, sl2.form)
    pair = catalog.load("sl2sl2")
    assert ss.d == pair.d and bb == pair.form
    assert trivial_cohomology(ss, 3) == 2


def test_kunneth():
    sl2 = catalog.load("sl2C").algebra
    ok, direct, predicted = kunneth_check(sl2, LieAlgebra.abelian(1), 3)
    assert ok and direct == predicted == 1
    for n in range(5):
        assert kunneth_check(LieAlgebra.abelian(1), LieAlgebra.abelian(1), n)[0]
    for n in (2, 3, 4):
        assert kunneth_check(sl2, LieAlgebra.abelian(2), n)[0]
    assert convolve([1, 0, 0, 1], [1, 1], 3) == 1


def test_report_render_and_dict():
    e = catalog.load("W3")
    rep = cohomology_report(e.algebra, e.form, range(4), "W3")
    lines = rep.render().splitlines()
    assert lines[1] == "n | HC^n | HRC^n | H^n"
    assert lines[3:] == ["0 |    2 |     2 |   2", "1 |    3 |     3 |   7", "2 |    3 |     3 |   9", "3 |    2 |     2 |   9"]
    d = rep.to_dict()
    assert d["algebra"] == "W3" and [r["h"] for r in d["rows"]] == [2, 7, 9, 9]
