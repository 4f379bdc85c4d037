import random
from fractions import Fraction

import pytest

from cyclolie import catalog
from cyclolie.cochains import AdjCochain, coboundary_adj, is_cyclic, nr_bracket
from cyclolie.deformations import (
    Deformation,
    RelationSet,
    check_cyclic_at,
    check_isomorphism,
    check_jacobi_at,
    convention_matrix,
    gauge_orbit_check,
    isomorphism_conventions,
    jacobi_residual_at,
    pushforward,
    quadratic_span_matches,
    relations_at,
    versal_order2,
)
from cyclolie.polynomial import Polynomial
from cyclolie.properties import random_invertible, random_scalar, random_unimodular
from cyclolie.scalar_linalg import Matrix, inverse

PSI = "psi[{2,3}->1] - psi[{2,4}->2] + psi[{3,4}->3]"


def test_evaluate_examples():
    diamond = catalog.load("diamond4C")
    defo = diamond.deformation
    assert defo.evaluate([0]) == diamond.d
    assert defo.evaluate([1]) == diamond.d + diamond.cochain(PSI)
    w3 = catalog.load("W3").deformation
    assert w3.grouped()[(1, 0, 1)] == catalog.load("W3").cochain(
        "-psi[{1,5}->3] - psi[{3,5}->4] - psi[{1,2}->3] + psi[{2,3}->4] + psi[{1,3}->5]"
    )
    with pytest.raises(ValueError):
        defo.evaluate([1, 2])


def test_denominator_rejected():
    defo = catalog.load("g62_1").deformation
    with pytest.raises(ZeroDivisionError):
        defo.evaluate([-1, 0, 0, 0, 0, 0])
    with pytest.raises(ValueError):
        defo.grouped()


def test_round_trip_dict():
    defo = catalog.load("g62_1").deformation
    again = Deformation.from_dict(defo.to_dict())
    pt = [Fraction(1, 2), 1, 0, 2, -1, 3]
    assert again.evaluate(pt) == defo.evaluate(pt)
    with pytest.raises(ValueError):
        Deformation.from_dict({"dim": 3, "base": "psi[{1,2}->3]", "params": ["t"], "terms": [{"monomial": {"s": 1}, "cochain": "psi[{1,2}->3]"}]})


def test_restrict():
    defo = catalog.load("W3").deformation
    r = defo.restrict({"t2": Fraction(1, 3)})
    assert r.params == ("t1", "t3")
    assert r.evaluate([2, 5]) == defo.evaluate([2, Fraction(1, 3), 5])


def test_check_jacobi_examples():
    w3 = catalog.load("W3").deformation
    rng = random.Random(25)
    assert all(check_jacobi_at(w3, [random_scalar(rng) for _ in range(3)]) for _ in range(25))
    diamond = catalog.load("diamond4C").deformation
    assert all(check_jacobi_at(diamond, [t]) for t in (1, Fraction(-1, 2), Fraction(7, 3)))


def test_g62_1_relation_variety():
    e = catalog.load("g62_1")
    pt = {"t1": 1, "t2": 1, "t3": 1}
    assert relations_at(e.relations, [1, 1, 1, 0, 0, 0]) == [0, 0, 0]
    assert check_jacobi_at(e.deformation, e.relation_point(pt))
    off = {"t1": 1, "t4": Fraction(1, 2)}
    assert relations_at(e.relations, [1, 0, 0, Fraction(1, 2), 0, 0]) == [0, 1, 0]
    assert not jacobi_residual_at(e.deformation, e.relation_point(off)).is_zero()


def test_relations_examples():
    e = catalog.load("g62_1")
    rels = e.relations
    assert len(rels) == 3
    assert relations_at(rels, [0] * 6) == [0, 0, 0]
    r3 = list(rels)[2]
    # variables t1, t2, t5, t6 only
    assert r3.evaluate([1, 2, 0, 0, 2, 1]) == 0
    assert r3.evaluate([1, 0, 0, 0, 1, 0]) == 2
    with pytest.raises(ValueError):
        RelationSet(("t1",), ["t1 + t1^2"])


def test_check_cyclic_examples():
    diamond = catalog.load("diamond4C")
    assert all(check_cyclic_at(diamond.deformation, diamond.form, [t]) for t in (1, -3, Fraction(2, 7)))
    osc = catalog.load("oscillator4R")
    assert check_cyclic_at(osc.deformation, osc.form, [1]) and check_cyclic_at(osc.deformation, osc.form, [-1])
    sl2 = catalog.load("sl2C")
    assert sl2.deformation.evaluate([3]) == sl2.d * 4
    assert check_cyclic_at(sl2.deformation, sl2.form, [3])


def test_pushforward_examples():
    sl2 = catalog.load("sl2C")
    d = sl2.d
    assert pushforward(Matrix.identity(3), d) == d
    assert pushforward(Matrix.identity(3) * 5, d) == d * 5
    rng = random.Random(4)
    for _ in range(5):
        g = random_invertible(rng, 3)
        gd = pushforward(g, d)
        assert nr_bracket(gd, gd).is_zero()
        assert pushforward(inverse(g), gd) == d
    with pytest.raises(ValueError):
        pushforward(Matrix([[1, 1, 0], [1, 1, 0], [0, 0, 1]]), d)


def _linear_coefficient(points, values):
    """Coefficient of eps^1 of the polynomial through (points, values)."""
    total = None
    for a, (x, v) in enumerate(zip(points, values)):
        others = [y for b, y in enumerate(points) if b != a]
        den = Fraction(1)
        for y in others:
            den *= x - y
        lin = Fraction(0)
        for skip in range(len(others)):
            p = Fraction(1)
            for m, y in enumerate(others):
                if m != skip:
                    p *= -y
            lin += p
        term = v * (lin / den)
        total = term if total is None else total + term
    return total


@pytest.mark.parametrize("entry_id", ["sl2C_C2", "diamond4C", "W3", "g63"])
def test_gauge_compatibility_first_order(entry_id):
    # d/d(eps) of (I + eps N) . d at eps = 0 is [d, N]
    e = catalog.load(entry_id)
    n = e.dim
    rng = random.Random(entry_id)
    for _ in range(3):
        N = [[rng.randint(-2, 2) if j > i else 0 for j in range(n)] for i in range(n)]
        nc = AdjCochain(n, 1, {((j + 1,), i + 1): N[i][j] for i in range(n) for j in range(n) if N[i][j]})
        # (I + eps N)^-1 is polynomial since N is nilpotent: degree <= n + 1 in eps
        pts = [Fraction(k) for k in range(1, n + 4)]
        vals = [pushforward(Matrix([[int(i == j) + x * N[i][j] for j in range(n)] for i in range(n)]), e.d) for x in pts]
        assert _linear_coefficient(pts, vals) == nr_bracket(e.d, nc)


def test_check_isomorphism_examples():
    d = catalog.load("sl2C").d
    assert check_isomorphism(Matrix.identity(3), d, d)
    diamond = catalog.load("diamond4C")
    (inst, *_) = list(diamond.isomorphism_instances())
    assert inst.convention == "G^-1"
    assert isomorphism_conventions(inst.matrix, inst.source, inst.image) == ["G^-1"]
    assert check_isomorphism(inst.effective_matrix, inst.source, inst.image)
    with pytest.raises(ValueError):
        convention_matrix(inst.matrix, "G^2")


def test_family_map():
    e = catalog.load("g62", lam=2)
    (inst,) = list(e.isomorphism_instances())
    assert inst.point == {"lambda": 2, "t2": 1}
    assert inst.target == "g62(1)" or inst.target == "g62_1" or inst.target.startswith("g62")
    assert check_isomorphism(inst.effective_matrix, inst.source, inst.image)


def test_isomorphism_composition():
    rng = random.Random(9)
    for entry_id in ("diamond4C", "diamond4R", "oscillator4R", "g62_0"):
        e = catalog.load(entry_id)
        for inst in e.isomorphism_instances():
            g1 = inst.effective_matrix
            r = random_unimodular(rng, e.dim)
            d3 = pushforward(inverse(r), inst.image)
            assert check_isomorphism(g1, inst.source, inst.image)
            assert check_isomorphism(r, inst.image, d3)
            assert check_isomorphism(r @ g1, inst.source, d3)


def test_gauge_orbit_examples():
    sl2 = catalog.load("sl2C")
    cyc, img = gauge_orbit_check(sl2.cochain("phi[{1}->1] + phi[{2}->2] + phi[{3}->3]"), sl2.algebra, sl2.form)
    assert (cyc, img) == (False, sl2.d)
    t = catalog.load("Tstar_sl2")
    cyc, img = gauge_orbit_check(t.cochain("phi[{1}->5] - 2*phi[{2}->4]"), t.algebra, t.form)
    assert not cyc and img == t.hc2_basis[1].cochain and is_cyclic(img, t.form)
    osc = catalog.load("oscillator4R")
    assert gauge_orbit_check(osc.cochain("phi[{1}->1] - phi[{4}->4]"), osc.algebra, osc.form) == (True, osc.d)
    with pytest.raises(ValueError):
        gauge_orbit_check(sl2.d, sl2.algebra, sl2.form)


def test_first_order_terms_are_cocycles():
    for entry_id in catalog.all_ids():
        e = catalog.load(entry_id, lam=3) if entry_id == "g62" else catalog.load(entry_id)
        if e.deformation is None:
            continue
        for t in e.deformation.terms:
            if sum(t.monomial) == 1 and t.denominator is None:
                assert coboundary_adj(e.algebra, t.cochain).is_zero(), entry_id


@pytest.mark.parametrize("entry_id", ["diamond4C", "oscillator4R", "W3", "sl2C3", "sl2sl2", "g62_0", "g62(5)"])
def test_exact_expansion_vanishes(entry_id):
    assert catalog.load(entry_id).deformation.bracket_expansion() == {}


def test_versal_order2_w3():
    e = catalog.load("W3")
    v = versal_order2(e.algebra, e.form, [h.cochain for h in e.hc2_basis])
    assert all(not any(cs) for cs in v.coefficients.values())
    assert all(r.terms == {} for r in v.relations())
    expansion = v.deformation(e.d).bracket_expansion()
    assert not [m for m in expansion if sum(m) <= 2]


def test_versal_order2_sl2():
    e = catalog.load("sl2C")
    v = versal_order2(e.algebra, e.form)
    assert len(v.basis) == 1 and v.relations() == []
    assert all(x.is_zero() for x in v.corrections.values())


def test_versal_order2_g62_1_matches_listed_quadratic_parts():
    e = catalog.load("g62_1")
    v = versal_order2(e.algebra, e.form, [h.cochain for h in e.hc2_basis])
    computed = v.relations()
    reference = [p.homogeneous_part(2) for p in e.relations_in_parameters()]
    assert quadratic_span_matches(computed, reference) == (True, 3, 3)
    # the monomial t1*t5 of the listed r3 is t4*t5 in the deformation's parameters
    assert any((1, 0, 0, 0, 1, 0) in p.terms or (0, 0, 0, 1, 1, 0) in p.terms for p in computed)


def test_versal_order2_rejects_non_cocycles():
    e = catalog.load("sl2C")
    with pytest.raises(ValueError):
        versal_order2(e.algebra, e.form, [e.cochain("psi[{1,2}->1]")])


def test_quadratic_span_matches():
    names = ("a", "b")
    p = Polynomial.parse("a*b + b^2", names)
    q = Polynomial.parse("a^2", names)
    assert quadratic_span_matches([p, q], [q * 2, p + q]) == (True, 2, 2)
    assert quadratic_span_matches([p], [q]) == (False, 1, 1)
