"""Command-line interface.

Exit codes: 0 success, 1 a check failed, 2 bad input.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from collections import Counter
from fractions import Fraction
from pathlib import Path

from . import catalog
from .catalog import CatalogEntry, CatalogError
from .checks import CRITERIA, DEFAULT_SEED, run
from .cochains import FormError, JacobiError, is_cyclic, tilde
from .cohomology import cohomology_report
from .deformations import (
    CONVENTIONS,
    check_isomorphism,
    convention_matrix,
    isomorphism_conventions,
    jacobi_residual_at,
    relations_at,
)
from .polynomial import ExpressionError, eval_expression
from .properties import random_scalar
from .scalar_linalg import Matrix, render_scalar, signature

OK, FAILED, BAD_INPUT = 0, 1, 2


class InputError(Exception):
    pass


def _json(obj) -> str:
    def default(x):
        if isinstance(x, Fraction):
            return render_scalar(x)
        raise TypeError(f"cannot serialise {type(x).__name__}")

    return json.dumps(obj, indent=2, default=default)


def _load(source: str, lam: str | None, *, strict: bool = True) -> CatalogEntry:
    """A catalog id (optionally ``id(value)``) or a path to a JSON entry."""
    try:
        if source.endswith(".json") or Path(source).is_file():
            path = Path(source)
            if not path.is_file():
                raise InputError(f"no such file: {source}")
            return catalog.load_file(path, lam, validate=strict, jacobi=strict)
        return catalog.load(source, lam)
    except (CatalogError, ExpressionError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from exc


def _degrees(text: str | None, dim: int) -> list[int]:
    if text is None:
        return list(range(min(3, dim) + 1))
    try:
        if "-" in text:
            lo, hi = (int(x) for x in text.split("-", 1))
            out = list(range(lo, hi + 1))
        else:
            out = [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad degree range {text!r}") from exc
    if not out or min(out) < 0 or max(out) > dim:
        raise InputError(f"degrees must lie in 0..{dim}")
    return out


def _point(text: str, names, env) -> list[Fraction]:
    """``"1,2,-1/3"`` (positional) or ``"t1=1,t3=1/2"`` (named, others zero)."""
    parts = [p.strip() for p in text.split(",") if p.strip()]
    try:
        if parts and all("=" in p for p in parts):
            vals = {}
            for p in parts:
                k, v = (x.strip() for x in p.split("=", 1))
                if k not in names:
                    raise InputError(f"unknown parameter {k!r}; expected one of {', '.join(names)}")
                vals[k] = eval_expression(v, env)
            return [vals.get(n, Fraction(0)) for n in names]
        vals = [eval_expression(p, env) for p in parts]
    except (ExpressionError, ZeroDivisionError) as exc:
        raise InputError(str(exc)) from exc
    if len(vals) != len(names):
        raise InputError(f"expected {len(names)} values ({', '.join(names)}), got {len(vals)}")
    return vals


def _fmt_point(names, pt) -> str:
    return ", ".join(f"{n}={render_scalar(v)}" for n, v in zip(names, pt))


# ---------------------------------------------------------------------------
# commands
# ---------------------------------------------------------------------------


def cmd_validate(args) -> int:
    e = _load(args.input, args.lam, strict=False)
    problems = e.validate(strict=False)
    report = {"input": e.label, "dim": e.dim, "jacobi": e.algebra.is_jacobi(), "forms": []}
    for k, f in enumerate(e.forms):
        b = f.form
        pos, neg, zero = signature(b.matrix)
        report["forms"].append({"form": k + 1, "signature": [pos, neg], "nondegenerate": zero == 0})
    report["problems"] = problems
    report["warnings"] = list(e.warnings)
    if args.json:
        print(_json(report))
    else:
        print(f"{e.label}: dim {e.dim}, Jacobi {'ok' if report['jacobi'] else 'FAILS'}")
        for f in report["forms"]:
            print(f"  form {f['form']}: signature ({f['signature'][0]},{f['signature'][1]})")
        for p in problems:
            print(f"  FAIL {p}")
        for w in e.warnings:
            print(f"  WARN {w}")
        if not e.forms:
            print("  no invariant form given")
        print("valid" if not problems else "invalid")
    return OK if not problems else FAILED


def cmd_cohomology(args) -> int:
    e = _load(args.input, args.lam)
    if not e.forms:
        raise InputError(f"{e.label} has no invariant form")
    k = args.form - 1
    if not 0 <= k < len(e.forms):
        raise InputError(f"{e.label} has {len(e.forms)} form(s)")
    degrees = _degrees(args.degrees, e.dim)
    rep = cohomology_report(e.algebra, e.forms[k].form, degrees, e.label)
    mismatches = []
    if args.expected:
        if not e.expected:
            raise InputError(f"{e.label} has no expected values")
        for col, want in e.expected.items():
            got = [r[col] for r in rep.rows]
            ref = [want[n] for n in degrees if n < len(want)]
            if got[: len(ref)] != ref:
                tag = "open" if col in e.expected_open else "mismatch"
                mismatches.append({"column": col, "computed": got, "expected": ref, "status": tag})
    if args.json:
        out = rep.to_dict()
        if args.expected:
            out["mismatches"] = mismatches
        print(_json(out))
    else:
        print(rep.render())
        for m in mismatches:
            print(f"{m['status'].upper()} {m['column']}: computed {m['computed']}, expected {m['expected']}")
        if args.expected and not mismatches:
            print("matches the expected values")
    hard = [m for m in mismatches if m["status"] == "mismatch"]
    return FAILED if hard else OK


def _deform_points(args, e, names, env):
    if args.at:
        return [_point(a, names, env) for a in args.at]
    rng = random.Random(args.seed)
    return [[random_scalar(rng) for _ in names] for _ in range(args.points)]


def cmd_deform(args) -> int:
    e = _load(args.input, args.lam)
    if args.check == "iso":
        return _deform_iso(args, e)
    defo = e.deformation
    if defo is None:
        raise InputError(f"{e.label} has no stored deformation")
    env = e.env()
    records = []
    if args.check == "relations":
        rels = e.relations
        if rels is None or not len(rels):
            records.append({"point": None, "values": [], "note": "no relations"})
        else:
            names = list(rels.params)
            for pt in _deform_points(args, e, names, env):
                records.append({"point": _fmt_point(names, pt), "values": [render_scalar(v) for v in relations_at(rels, pt)]})
        if args.json:
            print(_json({"input": e.label, "check": "relations", "relations": [str(p) for p in rels or ()], "results": records}))
        else:
            for i, p in enumerate(rels or (), start=1):
                print(f"r{i} = {p}")
            for r in records:
                if r["point"] is None:
                    print(f"{e.label}: no relations")
                else:
                    print(f"{r['point']}: {', '.join(r['values'])}")
        return OK
    names = list(defo.params)
    failed = False
    for pt in _deform_points(args, e, names, env):
        rec = {"point": _fmt_point(names, pt)}
        try:
            if args.check == "jacobi":
                res = jacobi_residual_at(defo, pt)
                rec["pass"] = res.is_zero()
                if not rec["pass"]:
                    rec["residual"] = str(res)
            else:
                d = defo.evaluate(pt)
                rec["pass"] = is_cyclic(d, e.form)
                if not rec["pass"]:
                    defects = tilde(d, e.form)[0]
                    rec["residual"] = f"{len(defects)} non-alternating entries of the lowered cochain"
        except ZeroDivisionError as exc:
            rec["pass"] = None
            rec["rejected"] = str(exc)
        failed |= rec.get("pass") is False
        records.append(rec)
    if args.check == "jacobi" and len(e.relations or ()) and not args.at:
        note = "random points are generally off the relation variety; pass --at to choose points"
    else:
        note = ""
    if args.json:
        print(_json({"input": e.label, "check": args.check, "results": records, "note": note}))
    else:
        for r in records:
            if r["pass"] is None:
                print(f"SKIP  {r['point']}: {r['rejected']}")
            else:
                tail = f"  residual {r['residual']}" if "residual" in r else ""
                print(f"{'PASS' if r['pass'] else 'FAIL'}  {r['point']}{tail}")
        if note:
            print(f"note: {note}")
    if records and all(r["pass"] is None for r in records):
        return BAD_INPUT
    return FAILED if failed else OK


def _deform_iso(args, e: CatalogEntry) -> int:
    records = []
    if args.matrix:
        if not args.target:
            raise InputError("--matrix needs --target")
        target = _load(args.target, None)
        try:
            rows = json.loads(args.matrix)
            g = Matrix([[eval_expression(str(x), e.env()) for x in row] for row in rows])
        except (json.JSONDecodeError, ExpressionError, TypeError, ValueError) as exc:
            raise InputError(f"bad matrix: {exc}") from exc
        source = e.d
        if args.at:
            if e.deformation is None:
                raise InputError(f"{e.label} has no stored deformation")
            source = e.deformation.evaluate(_point(args.at[0], e.deformation.params, e.env()))
        if g.rows != e.dim or g.cols != e.dim:
            raise InputError(f"matrix must be {e.dim}x{e.dim}")
        try:
            conventions = [args.convention] if args.convention else list(CONVENTIONS)
            ok = [c for c in conventions if check_isomorphism(convention_matrix(g, c), source, target.d)]
        except (ValueError, ZeroDivisionError) as exc:
            raise InputError(str(exc)) from exc
        records.append({"target": target.label, "point": args.at[0] if args.at else "", "conventions": ok, "pass": bool(ok)})
    else:
        for inst in e.isomorphism_instances():
            ok = check_isomorphism(inst.effective_matrix, inst.source, inst.image)
            valid = isomorphism_conventions(inst.matrix, inst.source, inst.image)
            pt = ", ".join(f"{k}={render_scalar(v)}" for k, v in inst.point.items())
            records.append(
                {"target": inst.target, "point": pt, "stored_convention": inst.convention, "conventions": valid, "pass": ok}
            )
        if not records:
            raise InputError(f"{e.label} has no stored isomorphisms; give --matrix and --target")
    if args.json:
        print(_json({"input": e.label, "check": "iso", "results": records}))
    else:
        for r in records:
            conv = ", ".join(r["conventions"]) or "none"
            print(f"{'PASS' if r['pass'] else 'FAIL'}  {e.label} -> {r['target']} at {r['point'] or 'base'}  (holds for: {conv})")
    return OK if all(r["pass"] for r in records) else FAILED


def cmd_catalog_list(args) -> int:
    rows = catalog.describe(args.dim)
    if args.json:
        print(_json(rows))
        return OK
    for r in rows:
        flags = []
        if r.get("family"):
            flags.append("family in lambda")
        if r.get("type"):
            flags.append(f"type {r['type']}")
        if r.get("simple_quotient"):
            flags.append("simple quotient")
        if r.get("solvable"):
            flags.append("solvable")
        print(f"{r['dim']}  {r['id']:<16} {r['field']:<8} {r['name']}" + (f"  [{', '.join(flags)}]" if flags else ""))
    return OK


def cmd_catalog_graph(args) -> int:
    g = catalog.jump_graph()
    if args.json:
        print(_json({"nodes": g.nodes, "ids": g.ids, "edges": g.edges(), "smooth": g.smooth, "acyclic": g.is_acyclic()}))
        return OK
    for t in g.topological_order():
        print(f"{t:<10} {g.ids[t]:<10} jumps to: {', '.join(g.jumps.get(t, ())) or '-'}")
    return OK


def cmd_reproduce(args) -> int:
    counts: Counter = Counter()
    records = []
    for r in run(dim=args.dim, seed=args.seed, properties=not args.fast):
        counts[r.status] += 1
        if args.json:
            records.append(r.to_dict())
        else:
            print(r.line(), flush=True)
    if args.json:
        print(_json({"seed": args.seed, "counts": dict(counts), "criteria": CRITERIA, "checks": records}))
    else:
        total = sum(counts.values())
        print(f"{total} checks: {counts['PASS']} PASS, {counts['WARN']} WARN, {counts['FAIL']} FAIL")
    return FAILED if counts["FAIL"] else OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cyclolie", description="Cyclic cohomology and metric deformations of Lie algebras.")
    sub = p.add_subparsers(dest="command", required=True)

    def add_input(sp):
        sp.add_argument("input", help="catalog id (e.g. W3, g62(2)) or a JSON file in the catalog schema")
        sp.add_argument("--lambda", dest="lam", help="parameter value for a family entry")
        sp.add_argument("--json", action="store_true", help="structured output")

    v = sub.add_parser("validate", help="Jacobi, invariance, nondegeneracy and signature report")
    add_input(v)
    v.set_defaults(func=cmd_validate)

    c = sub.add_parser("cohomology", help="table of HC^n, HRC^n and H^n")
    add_input(c)
    c.add_argument("--degrees", help="range such as 0-4 or list such as 1,2 (default 0-3, capped at the dimension)")
    c.add_argument("--form", type=int, default=1, help="which stored form to use (default 1)")
    c.add_argument("--expected", action="store_true", help="compare with the catalog's expected values")
    c.set_defaults(func=cmd_cohomology)

    d = sub.add_parser("deform", help="check a stored deformation")
    add_input(d)
    d.add_argument("check", choices=("jacobi", "cyclic", "relations", "iso"))
    d.add_argument("--points", type=int, default=10, help="number of seeded random points (default 10)")
    d.add_argument("--seed", type=int, default=DEFAULT_SEED)
    d.add_argument("--at", action="append", help="explicit point, '1,0,2' or 't1=1,t4=1/2'; repeatable")
    d.add_argument("--matrix", help="iso: JSON matrix to test instead of the stored ones")
    d.add_argument("--target", help="iso: catalog id or file of the target algebra")
    d.add_argument("--convention", choices=CONVENTIONS, help="iso: how to read --matrix (default: try all)")
    d.set_defaults(func=cmd_deform)

    cat = sub.add_parser("catalog", help="browse the catalog")
    csub = cat.add_subparsers(dest="catalog_command", required=True)
    cl = csub.add_parser("list", help="list entries")
    cl.add_argument("--dim", type=int)
    cl.add_argument("--json", action="store_true")
    cl.set_defaults(func=cmd_catalog_list)
    cg = csub.add_parser("graph", help="jump deformation graph of the dimension-6 types")
    cg.add_argument("--json", action="store_true")
    cg.set_defaults(func=cmd_catalog_graph)

    r = sub.add_parser("reproduce", help="run every verification check")
    r.add_argument("--dim", type=int, help="restrict to catalog entries of this dimension")
    r.add_argument("--seed", type=int, default=DEFAULT_SEED)
    r.add_argument("--json", action="store_true")
    r.add_argument("--fast", action="store_true", help="skip the randomized property suites")
    r.set_defaults(func=cmd_reproduce)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return BAD_INPUT if exc.code else OK
    try:
        return args.func(args)
    except InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT
    except (JacobiError, FormError, CatalogError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return BAD_INPUT


if __name__ == "__main__":
    sys.exit(main())
