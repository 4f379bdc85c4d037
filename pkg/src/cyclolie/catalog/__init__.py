"""Embedded catalog of metric Lie algebras in dimensions 3 to 6.

Each algebra lives in ``<dim>/<id>.json``.  The same schema is accepted for
user input files (see :func:`entry_from_dict`).  ``CYCLOLIE_CATALOG`` points
the loader at a different directory.

The ``g62`` entry is a one-parameter family: load it with ``lam=...`` or as
``"g62(5)"``.  The values 0 and 1 redirect to ``g62_0`` and ``g62_1``.
"""

from __future__ import annotations

import builtins
import graphlib
import json
import os
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Iterator, Mapping

from ..cochains import (
    AdjCochain,
    BilinearForm,
    FormError,
    JacobiError,
    LieAlgebra,
    coboundary_adj,
    is_cyclic,
    is_invariant,
    parse_cochain,
)
from ..deformations import Deformation, RelationSet, convention_matrix
from ..polynomial import ExpressionError, Polynomial, eval_expression
from ..scalar_linalg import Matrix, parse_scalar, render_scalar, signature

__all__ = [
    "CatalogError",
    "CatalogEntry",
    "FormSpec",
    "HC2Element",
    "IsomorphismInstance",
    "JumpGraph",
    "catalog_dir",
    "entry_from_dict",
    "load",
    "load_file",
    "enumerate",
    "all_ids",
    "jump_graph",
    "TYPE_IDS",
]


class CatalogError(ValueError):
    """Unknown id, malformed entry or failed self-validation."""


# the ordering of the 6-dimensional complex metric algebras
TYPE_IDS = {
    "1": "sl2sl2",
    "2": "Tstar_sl2",
    "3": "sl2C3",
    "4(lambda)": "g62",
    "4(0)": "g62_0",
    "4(1)": "g63",
    "5": "g62_1",
    "6": "W3plusC",
    "7": "W4",
}


def catalog_dir() -> Path:
    env = os.environ.get("CYCLOLIE_CATALOG")
    return Path(env) if env else Path(__file__).resolve().parent


@dataclass(frozen=True)
class FormSpec:
    form: BilinearForm
    signature: tuple[int, int] | None = None


@dataclass(frozen=True)
class HC2Element:
    label: str
    cochain: AdjCochain
    status: str = "ok"  # ok | typo | erratum | open
    verbatim: str | None = None
    readings: tuple[str, ...] = ()
    note: str = ""

    @property
    def asserted(self) -> bool:
        return self.status != "open"


@dataclass(frozen=True)
class IsomorphismInstance:
    target: str
    point: dict[str, Fraction]
    matrix: Matrix  # as listed, evaluated at the point
    convention: str
    source: AdjCochain
    image: AdjCochain

    @property
    def effective_matrix(self) -> Matrix:
        return convention_matrix(self.matrix, self.convention)


@dataclass
class CatalogEntry:
    id: str
    name: str
    dim: int
    field: str
    algebra: LieAlgebra
    forms: list[FormSpec]
    expected: dict[str, list[int]]
    raw: dict = field(repr=False)
    lam: Fraction | None = None
    order: int = 0
    solvable: bool = True
    nilpotent: bool = False
    simple_quotient: bool = False
    expected_open: tuple[str, ...] = ()
    hc2_basis: list[HC2Element] = field(default_factory=list)
    deformation: Deformation | None = None
    relations: RelationSet | None = None
    relation_parameters: dict[str, str] = field(default_factory=dict)
    gauge: list[dict] = field(default_factory=list)
    ordering: dict | None = None
    notes: list[str] = field(default_factory=list)
    errata: list[str] = field(default_factory=list)
    open_questions: list[str] = field(default_factory=list)
    warnings: list[str] = field(default_factory=list)

    @property
    def d(self) -> AdjCochain:
        return self.algebra.d

    @property
    def form(self) -> BilinearForm:
        if not self.forms:
            raise CatalogError(f"{self.id} has no invariant form")
        return self.forms[0].form

    @property
    def label(self) -> str:
        if self.lam is None:
            return self.id
        return f"{self.id}({render_scalar(self.lam)})"

    @property
    def type(self) -> str | None:
        return (self.ordering or {}).get("type")

    def env(self) -> dict[str, Fraction]:
        return {} if self.lam is None else {"lambda": self.lam}

    def cochain(self, text: str) -> AdjCochain:
        return parse_cochain(text, self.dim, self.env())

    def relation_point(self, values: Mapping[str, Any]) -> list[Fraction]:
        """Deformation parameters for a point given in the relations' own variables.

        Stored relations may use their own labelling of the parameters;
        ``relation_parameters`` expresses each relation variable in terms of
        the deformation parameters.  Only signed permutations are supported.
        """
        if self.deformation is None:
            raise CatalogError(f"{self.id} has no deformation")
        params = self.deformation.params
        if not self.relation_parameters:
            return [Fraction(values.get(p, 0)) for p in params]
        out = {p: Fraction(0) for p in params}
        for rel_var, expr in self.relation_parameters.items():
            m = re.fullmatch(r"\s*(-?)\s*(\w+)\s*", expr)
            if not m or m.group(2) not in out:
                raise CatalogError(f"relation parameter {expr!r} is not a signed deformation parameter")
            sign = -1 if m.group(1) else 1
            out[m.group(2)] = sign * Fraction(values.get(rel_var, 0))
        return [out[p] for p in params]

    def relations_in_parameters(self) -> list[Polynomial]:
        """The stored relations rewritten in the deformation's own parameters."""
        if self.relations is None:
            return []
        params = self.deformation.params
        if not self.relation_parameters:
            return [Polynomial(params, p.terms) for p in self.relations]
        # relation variable -> (index of deformation parameter, sign)
        where = []
        for rel_var in self.relations.params:
            m = re.fullmatch(r"\s*(-?)\s*(\w+)\s*", self.relation_parameters[rel_var])
            where.append((params.index(m.group(2)), -1 if m.group(1) else 1))
        out = []
        for p in self.relations:
            terms = {}
            for exps, c in p.terms.items():
                e = [0] * len(params)
                for (idx, sign), k in zip(where, exps):
                    e[idx] += k
                    if sign < 0 and k % 2:
                        c = -c
                terms[tuple(e)] = terms.get(tuple(e), 0) + c
            out.append(Polynomial(params, terms))
        return out

    def isomorphism_instances(self) -> Iterator[IsomorphismInstance]:
        """Every stored isomorphism matrix evaluated at each stored point."""
        for iso in self.raw.get("isomorphisms", ()):
            params = list(iso.get("params", ()))
            for pt in iso.get("points", ()):
                env = dict(self.env())
                env.update({p: parse_scalar(v) for p, v in zip(params, pt)})
                src = self._source_at(iso, env)
                tgt_lam = iso.get("target_lambda")
                target = load(iso["target"], lam=eval_expression(tgt_lam, env) if tgt_lam else None)
                g = Matrix([[eval_expression(x, env) for x in row] for row in iso["matrix"]])
                yield IsomorphismInstance(target.label, env, g, iso.get("convention", "G"), src, target.d)

    def _source_at(self, iso: Mapping, env: Mapping) -> AdjCochain:
        if "lambda" in env and self.lam != env["lambda"]:
            return load(self.id, lam=env["lambda"])._source_at(iso, env)
        if self.deformation is None:
            return self.d
        sp = iso.get("source_params", {})
        point = [eval_expression(sp.get(p, "0"), env) for p in self.deformation.params]
        return self.deformation.evaluate(point)

    def validate(self, strict: bool = True) -> list[str]:
        """Self-check; returns the list of problems (hard ones raise when strict)."""
        problems = []
        if not self.algebra.is_jacobi():
            problems.append("bracket fails the Jacobi identity")
            if strict:
                raise CatalogError(f"{self.label}: " + problems[0])
            return problems
        for k, spec in builtins.enumerate(self.forms, start=1):
            b = spec.form
            if b.dim != self.dim:
                problems.append(f"form {k}: size {b.dim} != dim {self.dim}")
                continue
            if not b.is_nondegenerate():
                problems.append(f"form {k}: degenerate")
            if not is_invariant(self.algebra, b):
                problems.append(f"form {k}: not invariant")
            if spec.signature is not None:
                pos, neg, _ = signature(b.matrix)
                if (pos, neg) != spec.signature:
                    problems.append(f"form {k}: signature {(pos, neg)} != stored {spec.signature}")
        if self.forms:
            b = self.form
            for el in self.hc2_basis:
                if not el.asserted:
                    continue
                if not is_cyclic(el.cochain, b):
                    problems.append(f"{el.label}: not cyclic")
                if not coboundary_adj(self.algebra, el.cochain).is_zero():
                    problems.append(f"{el.label}: not a cocycle")
        if problems and strict:
            raise CatalogError(f"{self.label}: " + "; ".join(problems))
        return problems


# ---------------------------------------------------------------------------
# reading entries
# ---------------------------------------------------------------------------


def _bracket_cochain(data: Mapping, dim: int, env: Mapping) -> AdjCochain:
    if "d" in data:
        return parse_cochain(data["d"], dim, env)
    coeffs: dict = {}
    for t in data.get("brackets", ()):
        i, j, k = int(t["i"]), int(t["j"]), int(t["k"])
        c = eval_expression(t.get("c", "1"), env)
        if i == j:
            raise CatalogError(f"bracket [e{i}, e{i}] must vanish")
        if i > j:
            i, j, c = j, i, -c
        key = ((i, j), k)
        coeffs[key] = coeffs.get(key, 0) + c
    return AdjCochain(dim, 2, coeffs)


def _form(spec, env) -> FormSpec:
    if isinstance(spec, list):
        spec = {"matrix": spec}
    m = Matrix([[eval_expression(x, env) for x in row] for row in spec["matrix"]])
    sig = spec.get("signature")
    return FormSpec(BilinearForm(m), tuple(sig) if sig is not None else None)


def entry_from_dict(data: Mapping, lam=None, *, validate: bool = True, jacobi: bool = True) -> CatalogEntry:
    """Build an entry from the JSON schema.  Raises CatalogError on bad input.

    With ``jacobi=False`` a bracket failing the Jacobi identity is accepted
    and left for :meth:`CatalogEntry.validate` to report.
    """
    try:
        dim = int(data["dim"])
        fam = data.get("family")
        env: dict[str, Fraction] = {}
        if fam:
            if lam is None:
                raise CatalogError(f"{data.get('id', '?')} is a family; a value for {fam['parameter']} is required")
            env[fam["parameter"]] = Fraction(lam) if not isinstance(lam, str) else parse_scalar(lam)
        elif lam is not None:
            raise CatalogError(f"{data.get('id', '?')} takes no parameter")
        d = _bracket_cochain(data, dim, env)
        try:
            alg = LieAlgebra(d) if jacobi else LieAlgebra.unchecked(d)
        except JacobiError as exc:
            raise CatalogError(f"{data.get('id', '?')}: bracket fails the Jacobi identity") from exc
        forms = [_form(f, env) for f in data.get("forms", ())]
        hc2 = [
            HC2Element(
                h.get("label", f"psi^{k + 1}"),
                parse_cochain(h["cochain"], dim, env),
                h.get("status", "ok"),
                h.get("verbatim"),
                tuple(h.get("readings", ())),
                h.get("note", ""),
            )
            for k, h in builtins.enumerate(data.get("hc2_basis", ()))
        ]
        defo = rels = None
        rel_params = {}
        dd = data.get("deformation")
        if dd:
            defo = Deformation.from_dict({"dim": dim, "base": str(d), **dd}, env)
            rel_vars = list(dd.get("relation_parameters", {})) or list(defo.params)
            rels = RelationSet(rel_vars, dd.get("relations", ()), env)
            rel_params = dict(dd.get("relation_parameters", {}))
        entry = CatalogEntry(
            id=data.get("id", "input"),
            name=data.get("name", data.get("id", "input")),
            dim=dim,
            field=data.get("field", "complex"),
            algebra=alg,
            forms=forms,
            expected={k: list(v) for k, v in data.get("expected", {}).items()},
            raw=dict(data),
            lam=env.get("lambda"),
            order=int(data.get("order", 0)),
            solvable=bool(data.get("solvable", True)),
            nilpotent=bool(data.get("nilpotent", False)),
            simple_quotient=bool(data.get("simple_quotient", False)),
            expected_open=tuple(data.get("expected_open", ())),
            hc2_basis=hc2,
            deformation=defo,
            relations=rels,
            relation_parameters=rel_params,
            gauge=list(data.get("gauge", ())),
            ordering=data.get("ordering"),
            notes=list(data.get("notes", ())),
            errata=list(data.get("errata", ())),
            open_questions=list(data.get("open_questions", ())),
        )
    except CatalogError:
        raise
    except (KeyError, TypeError, ValueError, ExpressionError, FormError) as exc:
        raise CatalogError(f"malformed entry {data.get('id', '?') if isinstance(data, Mapping) else ''}: {exc}") from exc
    entry.warnings = [f"{el.label}: listed element left unverified ({el.note})" for el in entry.hc2_basis if not el.asserted]
    if validate:
        entry.validate(strict=True)
    return entry


def _index() -> dict[str, Path]:
    root = catalog_dir()
    out = {}
    for p in sorted(root.glob("*/*.json")):
        out[p.stem] = p
    return out


_ID_WITH_PARAM = re.compile(r"^(\w+)\((?:lambda\s*=\s*)?([^()]+)\)$")


def _read(path: Path) -> dict:
    try:
        return json.loads(path.read_text())
    except json.JSONDecodeError as exc:
        raise CatalogError(f"{path}: invalid JSON ({exc})") from exc


_cache: dict[tuple, CatalogEntry] = {}


def load(id: str, lam=None) -> CatalogEntry:
    """Validated catalog entry.  ``id`` may carry its parameter: ``"g62(5)"``."""
    m = _ID_WITH_PARAM.match(id)
    if m:
        if lam is not None:
            raise CatalogError("parameter given twice")
        id, lam = m.group(1), m.group(2)
    if isinstance(lam, str):
        lam = parse_scalar(lam)
    idx = _index()
    if id not in idx:
        raise CatalogError(f"unknown catalog id {id!r}")
    key = (str(catalog_dir()), id, lam)
    if key in _cache:
        return _cache[key]
    data = _read(idx[id])
    fam = data.get("family")
    if fam and lam is not None:
        special = fam.get("special", {})
        for value, other in special.items():
            if parse_scalar(value) == lam:
                return load(other)
    entry = entry_from_dict(data, lam)
    _cache[key] = entry
    return entry


def load_file(path: str | os.PathLike, lam=None, **kw) -> CatalogEntry:
    return entry_from_dict(_read(Path(path)), lam, **kw)


def _meta(path: Path) -> dict:
    data = _read(path)
    return {
        "id": path.stem,
        "dim": int(data["dim"]),
        "field": data.get("field", "complex"),
        "order": int(data.get("order", 0)),
        "solvable": bool(data.get("solvable", True)),
        "simple_quotient": bool(data.get("simple_quotient", False)),
        "family": bool(data.get("family")),
        "name": data.get("name", path.stem),
        "type": (data.get("ordering") or {}).get("type"),
    }


def all_ids() -> list[str]:
    return enumerate()


def enumerate(dim: int | None = None, field: str | None = None, solvable: bool | None = None, simple_quotient: bool | None = None) -> list[str]:
    """Ids matching the filters, ordered by dimension then listing order."""
    metas = [_meta(p) for p in _index().values()]
    keep = [
        m
        for m in metas
        if (dim is None or m["dim"] == dim)
        and (field is None or m["field"] == field)
        and (solvable is None or m["solvable"] == solvable)
        and (simple_quotient is None or m["simple_quotient"] == simple_quotient)
    ]
    keep.sort(key=lambda m: (m["dim"], m["order"], m["id"]))
    return [m["id"] for m in keep]


def describe(dim: int | None = None) -> list[dict]:
    return [_meta(_index()[i]) for i in enumerate(dim)]


# ---------------------------------------------------------------------------
# jump deformations among the 6-dimensional complex algebras
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class JumpGraph:
    jumps: dict[str, tuple[str, ...]]
    smooth: dict[str, tuple[str, ...]]
    ids: dict[str, str]

    @property
    def nodes(self) -> list[str]:
        return list(self.jumps)

    def edges(self) -> list[tuple[str, str]]:
        return [(a, b) for a, outs in self.jumps.items() for b in outs]

    def topological_order(self) -> list[str]:
        """Targets before sources; raises graphlib.CycleError on a cycle."""
        ts = graphlib.TopologicalSorter({a: set(outs) for a, outs in self.jumps.items()})
        return list(ts.static_order())

    def is_acyclic(self) -> bool:
        try:
            self.topological_order()
        except graphlib.CycleError:
            return False
        return True


def jump_graph() -> JumpGraph:
    jumps, smooth, ids = {}, {}, {}
    for t, i in TYPE_IDS.items():
        data = _read(_index()[i])
        o = data.get("ordering") or {}
        if o.get("type") != t:
            raise CatalogError(f"{i}: ordering type {o.get('type')!r} != {t!r}")
        jumps[t] = tuple(o.get("jumps", ()))
        smooth[t] = tuple(o.get("smooth", ()))
        ids[t] = i
    for t, outs in jumps.items():
        for o in outs:
            if o not in jumps:
                raise CatalogError(f"type {t} jumps to unknown type {o}")
    return JumpGraph(jumps, smooth, ids)
