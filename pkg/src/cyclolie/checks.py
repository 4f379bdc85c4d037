"""The reproduction suite behind ``cyclolie reproduce``.

Every check yields a :class:`CheckResult` with status PASS, FAIL or WARN.
WARN marks a documented discrepancy in the source data (an open question or
a claim that does not hold as listed); FAIL is a hard failure.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Iterator

from . import catalog
from .catalog import CatalogEntry
from .cochains import LieAlgebra, coboundary_adj, identity_cochain, is_invariant, nr_bracket
from .cohomology import (
    CohomologyReport,
    coboundary_matrix,
    cohomology_report,
    cyclic_subspace,
    direct_sum,
    kunneth_check,
    trivial_cohomology,
)
from .deformations import (
    check_cyclic_at,
    check_isomorphism,
    check_jacobi_at,
    gauge_orbit_check,
    quadratic_span_matches,
    relations_at,
    versal_order2,
)
from .properties import (
    antisymmetry_holds,
    basis_change_invariant,
    cyclic_closure_holds,
    naive_nr_bracket,
    random_cochain,
    random_cyclic_cochain,
    random_scalar,
    random_unimodular,
    tilde_compatibility_holds,
)
from .scalar_linalg import rank, render_scalar, signature

__all__ = ["CheckResult", "instances", "run", "CRITERIA", "DEFAULT_SEED"]

DEFAULT_SEED = 20240601
PASS, FAIL, WARN = "PASS", "FAIL", "WARN"

CRITERIA = {
    "1": "cohomology tables",
    "2": "HC/HRC gap",
    "3": "two-route cyclic cohomology",
    "4": "Kunneth",
    "5": "structural identities",
    "6": "signatures",
    "7": "deformations",
    "8": "order-2 versal step",
    "9": "property suites",
    "catalog": "catalog data",
}


@dataclass
class CheckResult:
    name: str
    status: str
    detail: str = ""
    criterion: str = ""
    dim: int | None = None

    @property
    def ok(self) -> bool:
        return self.status != FAIL

    def to_dict(self) -> dict:
        return asdict(self)

    def line(self) -> str:
        tail = f"  {self.detail}" if self.detail else ""
        return f"{self.status:4}  [{self.criterion}] {self.name}{tail}"


def _result(name, ok, detail="", criterion="", dim=None, warn=False) -> CheckResult:
    status = PASS if ok else (WARN if warn else FAIL)
    return CheckResult(name, status, detail, criterion, dim)


def instances(dim: int | None = None) -> list[CatalogEntry]:
    """Every catalog entry, families expanded at their listed generic values."""
    out = []
    for i in catalog.enumerate(dim):
        data = catalog._read(catalog._index()[i])
        fam = data.get("family")
        if fam:
            out.extend(catalog.load(i, lam=v) for v in fam.get("generic_values", ()))
        else:
            out.append(catalog.load(i))
    return out


class _Reports:
    """Cohomology tables computed once per entry."""

    def __init__(self):
        self._cache: dict[str, CohomologyReport] = {}

    def __call__(self, e: CatalogEntry) -> CohomologyReport:
        if e.label not in self._cache:
            self._cache[e.label] = cohomology_report(e.algebra, e.form, range(4), e.label)
        return self._cache[e.label]


def _fmt(xs) -> str:
    return ",".join(str(x) for x in xs)


# ---------------------------------------------------------------------------
# criteria 1-3: tables
# ---------------------------------------------------------------------------


def table_checks(entries, reports) -> Iterator[CheckResult]:
    for e in entries:
        if not e.expected:
            continue
        rep = reports(e)
        bad, soft = [], []
        for col in ("hc", "hrc", "h"):
            want = e.expected.get(col)
            if want is None:
                continue
            got = rep.column(col)
            if got != list(want):
                (soft if col in e.expected_open else bad).append(f"{col}: computed {_fmt(got)}, listed {_fmt(want)}")
        if bad:
            yield CheckResult(f"table {e.label}", FAIL, "; ".join(bad + soft), "1", e.dim)
        elif soft:
            yield CheckResult(f"table {e.label}", WARN, "open question; " + "; ".join(soft), "1", e.dim)
        else:
            yield CheckResult(f"table {e.label}", PASS, f"HC {_fmt(rep.hc)} HRC {_fmt(rep.hrc)} H {_fmt(rep.h)}", "1", e.dim)


def gap_checks(entries, reports) -> Iterator[CheckResult]:
    for e in entries:
        rep = reports(e)
        hc, hrc = rep.hc, rep.hrc
        if e.simple_quotient:
            ok = hrc[2] < hc[2] and all(hrc[n] == hc[n] for n in (0, 1, 3))
            want = "HRC^2 < HC^2, equal elsewhere"
        else:
            ok = hrc == hc
            want = "HRC = HC"
        yield _result(f"gap {e.label}", ok, f"{want}: HC {_fmt(hc)} HRC {_fmt(hrc)}", "2", e.dim)


def two_route_checks(entries, reports) -> Iterator[CheckResult]:
    for e in entries:
        rows = reports(e).rows
        ok = all(r["hc"] == r["hc_shifted"] for r in rows)
        yield _result(
            f"HC^n = H^(n+1)(V,k) {e.label}",
            ok,
            f"HC {_fmt(r['hc'] for r in rows)} vs {_fmt(r['hc_shifted'] for r in rows)}",
            "3",
            e.dim,
        )


# ---------------------------------------------------------------------------
# criterion 4
# ---------------------------------------------------------------------------


def kunneth_checks() -> Iterator[CheckResult]:
    sl2 = catalog.load("sl2C").algebra
    pairs = [("sl2+C", sl2, LieAlgebra.abelian(1)), ("sl2+C^2", sl2, LieAlgebra.abelian(2))]
    pairs += [(f"C^{a}+C^{b}", LieAlgebra.abelian(a), LieAlgebra.abelian(b)) for a, b in ((1, 1), (1, 2), (2, 2))]
    for name, g, h in pairs:
        results = [kunneth_check(g, h, n) for n in range(5)]
        ok = all(r[0] for r in results)
        yield _result(f"Kunneth {name}", ok, f"h_triv {_fmt(r[1] for r in results)}", "4")
    s, _ = direct_sum(sl2, None, LieAlgebra.abelian(1), None)
    got = [trivial_cohomology(s, n) for n in range(4)]
    yield _result("trivial cohomology of sl2+C", got == [1, 1, 0, 1], f"h^0..h^3 = {_fmt(got)}", "4")


# ---------------------------------------------------------------------------
# criteria 5-6
# ---------------------------------------------------------------------------


def _d_squared_zero(alg: LieAlgebra) -> bool:
    n = alg.dim
    for trivial in (False, True):
        for p in range(0, min(n, 3)):
            a = coboundary_matrix(alg, p, trivial)
            b = coboundary_matrix(alg, p + 1, trivial)
            if b.cols and a.cols and any(x for row in (b @ a).tolist() for x in row):
                return False
    return True


def structural_checks(entries) -> Iterator[CheckResult]:
    for e in entries:
        d = e.d
        jac = nr_bracket(d, d).is_zero()
        inv = all(is_invariant(e.algebra, f.form) and f.form.is_nondegenerate() for f in e.forms)
        dd = _d_squared_zero(e.algebra)
        di = nr_bracket(d, identity_cochain(e.dim)) == d
        ok = jac and inv and dd and di
        detail = f"[d,d]=0 {jac}, invariant {inv}, D^2=0 {dd}, [d,I]=d {di}"
        yield _result(f"structure {e.label}", ok, detail, "5", e.dim)
        for g in e.gauge:
            beta = e.cochain(g["beta"])
            cyc, img = gauge_orbit_check(beta, e.algebra, e.form)
            want = e.cochain(g["bracket"])
            ok = img == want and cyc == bool(g["cyclic"])
            yield _result(
                f"gauge {e.label} beta={g['beta']}",
                ok,
                f"[d,beta] = {img}; beta cyclic {cyc}",
                "5",
                e.dim,
            )


def signature_checks(entries) -> Iterator[CheckResult]:
    for e in entries:
        for k, f in enumerate(e.forms):
            if f.signature is None:
                continue
            pos, neg, zero = signature(f.form.matrix)
            yield _result(
                f"signature {e.label} form {k + 1}",
                (pos, neg) == f.signature and zero == 0,
                f"({pos},{neg}) stored {f.signature}",
                "6",
                e.dim,
            )


# ---------------------------------------------------------------------------
# criterion 7
# ---------------------------------------------------------------------------


def _points(rng, m, count, nonneg=False):
    for _ in range(count):
        if nonneg:
            yield [abs(random_scalar(rng)) for _ in range(m)]
        else:
            yield [random_scalar(rng) for _ in range(m)]


def deformation_checks(entries, rng) -> Iterator[CheckResult]:
    sampled = {"W3": (25, False), "diamond4C": (10, True), "diamond4R": (10, True), "oscillator4R": (10, True)}
    seen = set()
    for e in entries:
        defo = e.deformation
        if defo is None:
            continue
        first = [t.cochain for t in defo.terms if sum(t.monomial) == 1 and t.denominator is None]
        ok = all(coboundary_adj(e.algebra, c).is_zero() for c in first)
        yield _result(f"first-order terms are cocycles {e.label}", ok, f"{len(first)} terms", "7", e.dim)
        if defo.is_polynomial and not len(e.relations or ()):
            residue = defo.bracket_expansion()
            yield _result(
                f"[d_t,d_t] = 0 identically {e.label}",
                not residue,
                "exact expansion" if not residue else f"nonzero at monomials {sorted(residue)}",
                "7",
                e.dim,
            )
        if e.id in sampled:
            count, cyc = sampled[e.id]
            pts = list(_points(rng, len(defo.params), count))
            ok = all(check_jacobi_at(defo, p) for p in pts)
            yield _result(f"Jacobi at {count} random points {e.label}", ok, "", "7", e.dim)
            if cyc:
                ok = all(check_cyclic_at(defo, e.form, p) for p in pts)
                yield _result(f"cyclic at {count} random points {e.label}", ok, "", "7", e.dim)
        if e.id == "g62_1":
            yield from _g62_1_checks(e, rng)
        if e.id in seen:
            continue
        seen.add(e.id)
        for inst in e.isomorphism_instances():
            ok = check_isomorphism(inst.effective_matrix, inst.source, inst.image)
            pt = ", ".join(f"{k}={render_scalar(v)}" for k, v in inst.point.items())
            yield _result(
                f"isomorphism {e.id} -> {inst.target} at {pt}",
                ok,
                f"convention {inst.convention}",
                "7",
                e.dim,
            )


def _g62_1_checks(e: CatalogEntry, rng) -> Iterator[CheckResult]:
    defo, rels = e.deformation, e.relations
    names = rels.params
    on = [{names[0]: 1, names[1]: 1, names[2]: 1}]
    for p in _points(rng, 3, 4, nonneg=True):
        on.append(dict(zip(names[:3], p)))
    ok = True
    for vals in on:
        rel_pt = [Fraction(vals.get(n, 0)) for n in names]
        if any(relations_at(rels, rel_pt)):
            ok = False
            break
        if not check_jacobi_at(defo, e.relation_point(vals)):
            ok = False
            break
    yield _result(f"Jacobi at {len(on)} points of the relation variety {e.label}", ok, "slice t4=t5=t6=0", "7", e.dim)
    off = {names[0]: 1, names[3]: Fraction(1, 2)}
    rel_pt = [Fraction(off.get(n, 0)) for n in names]
    r = relations_at(rels, rel_pt)
    fails = not check_jacobi_at(defo, e.relation_point(off))
    yield _result(
        f"Jacobi fails off the relation variety {e.label}",
        any(r) and fails,
        f"relations {_fmt(render_scalar(x) for x in r)} at t1=1, t4=1/2",
        "7",
        e.dim,
    )


# ---------------------------------------------------------------------------
# criterion 8
# ---------------------------------------------------------------------------


def versal_checks(entries) -> Iterator[CheckResult]:
    for e in entries:
        if e.id == "W3":
            basis = [h.cochain for h in e.hc2_basis]
            v = versal_order2(e.algebra, e.form, basis)
            zero = all(not any(cs) for cs in v.coefficients.values())
            yield _result("order-2 relations vanish W3", zero, f"{len(v.h3_basis)} HC^3 representatives", "8", e.dim)
            quad = {k: c for k, c in v.deformation(e.d).bracket_expansion().items() if sum(k) == 2}
            yield _result("order-2 correction kills the quadratic term W3", not quad, "", "8", e.dim)
        elif e.id == "sl2C":
            v = versal_order2(e.algebra, e.form)
            ok = all(x.is_zero() for x in v.corrections.values()) and not v.relations()
            yield _result("order-2 step sl2C: no correction, no relations", ok, "", "8", e.dim)
        elif e.id == "g62_1":
            basis = [h.cochain for h in e.hc2_basis]
            v = versal_order2(e.algebra, e.form, basis)
            computed = v.relations()
            reference = [p.homogeneous_part(2) for p in e.relations_in_parameters()]
            same, rc, rr = quadratic_span_matches(computed, reference)
            yield _result(
                "order-2 relations g62_1 match the listed quadratic parts",
                same,
                f"ranks {rc}/{rr}; computed {'; '.join(map(str, computed))}",
                "8",
                e.dim,
            )


# ---------------------------------------------------------------------------
# criterion 9
# ---------------------------------------------------------------------------


def property_checks(rng, entries) -> Iterator[CheckResult]:
    forms = {e.dim: e.form for e in entries}
    for n in (3, 4, 5, 6):
        pairs = [
            (random_cochain(rng, n, rng.randint(1, 3)), random_cochain(rng, n, rng.randint(1, 3))) for _ in range(50)
        ]
        ok = all(antisymmetry_holds(a, b) for a, b in pairs)
        yield _result(f"graded antisymmetry, 50 pairs, dim {n}", ok, "", "9")
    cyc_pairs = []
    for n in sorted(forms):
        b = forms[n]
        for _ in range(6):
            k, l = rng.choice([(1, 1), (1, 2), (2, 1), (2, 2)])
            cyc_pairs.append((random_cyclic_cochain(rng, b, k), random_cyclic_cochain(rng, b, l), b))
    yield _result(
        f"cyclic cochains closed under the bracket, {len(cyc_pairs)} pairs",
        all(cyclic_closure_holds(a, c, b) for a, c, b in cyc_pairs),
        "",
        "9",
    )
    yield _result(
        f"lowering intertwines the brackets, {len(cyc_pairs)} pairs",
        all(tilde_compatibility_holds(a, c, b) for a, c, b in cyc_pairs),
        "",
        "9",
    )
    oracle = []
    for n in (2, 3):
        for k in (1, 2, 3):
            for l in (1, 2, 3):
                if k + l - 1 <= n:
                    oracle.extend((random_cochain(rng, n, k), random_cochain(rng, n, l)) for _ in range(3))
    ok = all(naive_nr_bracket(a, b) == nr_bracket(a, b) for a, b in oracle)
    yield _result(f"bracket equals the permutation-sum oracle, {len(oracle)} pairs", ok, "dims 2-3", "9")


def basis_change_checks(entries, rng, count=5) -> Iterator[CheckResult]:
    for e in entries:
        ok = True
        for _ in range(count):
            good, _, _ = basis_change_invariant(e.algebra, e.form, random_unimodular(rng, e.dim))
            if not good:
                ok = False
                break
        yield _result(f"cohomology invariant under {count} basis changes {e.label}", ok, "", "9", e.dim)


# ---------------------------------------------------------------------------
# catalog-level data checks
# ---------------------------------------------------------------------------


def hc2_basis_checks(entries, reports) -> Iterator[CheckResult]:
    for e in entries:
        if not e.hc2_basis:
            continue
        used = [h.cochain for h in e.hc2_basis if h.asserted]
        prev = cyclic_subspace(e.algebra, e.form, 1)
        dm = coboundary_matrix(e.algebra, 1)
        img = [dm @ v for v in prev.basis]
        r0 = rank(img) if img else 0
        independent = rank(img + [c.to_vector() for c in used]) - r0 if used else 0
        hc2 = reports(e).hc[2]
        skipped = [h.label for h in e.hc2_basis if not h.asserted]
        repaired = [h.label for h in e.hc2_basis if h.status in ("typo", "erratum")]
        detail = f"{independent} independent of HC^2 = {hc2}"
        if repaired:
            detail += f"; repaired {', '.join(repaired)}"
        if independent == len(used) == hc2:
            yield CheckResult(f"listed HC^2 basis {e.label}", PASS, detail, "catalog", e.dim)
        elif skipped and independent == len(used):
            detail += f"; unverified {', '.join(skipped)}"
            yield CheckResult(f"listed HC^2 basis {e.label}", WARN, detail, "catalog", e.dim)
        else:
            yield CheckResult(f"listed HC^2 basis {e.label}", FAIL, detail, "catalog", e.dim)


def jump_graph_checks(reports) -> Iterator[CheckResult]:
    g = catalog.jump_graph()
    yield _result("jump graph is acyclic", g.is_acyclic(), f"{len(g.edges())} edges", "catalog", 6)
    reps = {}
    for t, i in g.ids.items():
        e = catalog.load(i, lam=2) if i == "g62" else catalog.load(i)
        reps[t] = reports(e)
    hc_bad = [(a, b) for a, b in g.edges() if not reps[b].hc[2] < reps[a].hc[2]]
    hrc_bad = [(a, b) for a, b in g.edges() if not reps[b].hrc[2] < reps[a].hrc[2]]
    yield _result(
        "jumps strictly lower HRC^2",
        not hrc_bad,
        ", ".join(f"{t}:{reps[t].hrc[2]}" for t in g.nodes),
        "catalog",
        6,
    )
    yield _result(
        "jumps strictly lower HC^2",
        not hc_bad,
        "fails on " + ", ".join(f"{a}->{b} ({reps[a].hc[2]}->{reps[b].hc[2]})" for a, b in hc_bad) if hc_bad else "",
        "catalog",
        6,
        warn=True,
    )


def open_question_checks(entries) -> Iterator[CheckResult]:
    seen = set()
    for e in entries:
        if e.id in seen:
            continue
        seen.add(e.id)
        for q in e.open_questions:
            yield CheckResult(f"open question {e.id}", WARN, q, "catalog", e.dim)


# ---------------------------------------------------------------------------


def run(dim: int | None = None, seed: int = DEFAULT_SEED, properties: bool = True) -> Iterator[CheckResult]:
    """All checks, lazily.  ``dim`` restricts to catalog entries of that dimension."""
    rng = random.Random(seed)
    entries = instances(dim)
    reports = _Reports()
    yield from table_checks(entries, reports)
    yield from gap_checks(entries, reports)
    yield from two_route_checks(entries, reports)
    if dim is None:
        yield from kunneth_checks()
    yield from structural_checks(entries)
    yield from signature_checks(entries)
    yield from deformation_checks(entries, rng)
    yield from versal_checks(entries)
    yield from hc2_basis_checks(entries, reports)
    if dim in (None, 6):
        yield from jump_graph_checks(reports)
    yield from open_question_checks(entries)
    if properties:
        if dim is None:
            yield from property_checks(rng, entries)
        yield from basis_change_checks(entries, rng)
