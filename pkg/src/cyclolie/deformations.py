"""Parameterized deformations of a Lie bracket.

A deformation is ``d(t) = base + sum_k  m_k(t) / q_k(t) * c_k`` with monomials
``m_k``, optional polynomial denominators ``q_k`` and 2-cochains ``c_k``.
Polynomial deformations (no denominators) can be expanded exactly: the
coefficient of every parameter monomial in ``[d(t), d(t)]`` is a cochain, so
"``[d(t), d(t)] = 0`` identically" is checked without sampling.  Terms with
denominators are checked at rational points only.

Matrices act on column vectors: ``G e_i = sum_k G[k][i] e_k``.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations_with_replacement
from typing import Mapping, Sequence

from .cochains import (
    AdjCochain,
    BilinearForm,
    LieAlgebra,
    coboundary_adj,
    is_cyclic,
    nr_bracket,
    parse_cochain,
)
from .cohomology import coboundary_matrix, cyclic_cohomology, cyclic_subspace
from .polynomial import Polynomial
from .scalar_linalg import Matrix, inverse, rank, solve

__all__ = [
    "DeformationTerm",
    "Deformation",
    "RelationSet",
    "relations_at",
    "check_jacobi_at",
    "check_cyclic_at",
    "jacobi_residual_at",
    "pushforward",
    "check_isomorphism",
    "isomorphism_conventions",
    "convention_matrix",
    "CONVENTIONS",
    "gauge_orbit_check",
    "VersalOrder2",
    "versal_order2",
    "quadratic_span_matches",
]


@dataclass(frozen=True)
class DeformationTerm:
    monomial: tuple[int, ...]
    cochain: AdjCochain
    denominator: Polynomial | None = None


@dataclass
class Deformation:
    base: AdjCochain
    params: tuple[str, ...]
    terms: list[DeformationTerm] = field(default_factory=list)

    def __post_init__(self):
        self.params = tuple(self.params)
        for t in self.terms:
            if len(t.monomial) != len(self.params):
                raise ValueError("monomial length does not match the parameter list")
            if t.cochain.dim != self.base.dim or t.cochain.degree != 2:
                raise ValueError("deformation terms must be 2-cochains of the base dimension")

    @property
    def dim(self) -> int:
        return self.base.dim

    @property
    def is_polynomial(self) -> bool:
        return all(t.denominator is None for t in self.terms)

    @classmethod
    def from_dict(cls, data: Mapping, env: Mapping | None = None) -> Deformation:
        """Read ``{dim, base, params, terms: [{monomial, denominator?, cochain}]}``.

        ``env`` binds extra symbols such as lambda.
        """
        dim = int(data["dim"])
        params = tuple(data.get("params", ()))
        base = parse_cochain(data["base"], dim, env)
        terms = []
        for t in data.get("terms", ()):
            mono = t.get("monomial", {})
            unknown = set(mono) - set(params)
            if unknown:
                raise ValueError(f"monomial uses unknown parameters {sorted(unknown)}")
            exps = tuple(int(mono.get(p, 0)) for p in params)
            den = t.get("denominator")
            den = Polynomial.parse(den, params, env) if den else None
            terms.append(DeformationTerm(exps, parse_cochain(t["cochain"], dim, env), den))
        return cls(base, params, terms)

    def to_dict(self) -> dict:
        out = {"dim": self.dim, "base": str(self.base), "params": list(self.params), "terms": []}
        for t in self.terms:
            entry = {"monomial": {p: e for p, e in zip(self.params, t.monomial) if e}, "cochain": str(t.cochain)}
            if t.denominator is not None:
                entry["denominator"] = str(t.denominator)
            out["terms"].append(entry)
        return out

    def restrict(self, fixed: Mapping[str, Fraction]) -> Deformation:
        """Substitute values for some parameters, keeping the others free."""
        keep = [p for p in self.params if p not in fixed]
        idx = [self.params.index(p) for p in keep]
        terms = []
        for t in self.terms:
            if t.denominator is not None:
                raise ValueError("cannot restrict a deformation with denominators")
            scale = Fraction(1)
            for p, e in zip(self.params, t.monomial):
                if p in fixed and e:
                    scale *= Fraction(fixed[p]) ** e
            if scale:
                terms.append(DeformationTerm(tuple(t.monomial[i] for i in idx), t.cochain * scale))
        return Deformation(self.base, tuple(keep), terms)

    def evaluate(self, point: Sequence) -> AdjCochain:
        if len(point) != len(self.params):
            raise ValueError(f"expected {len(self.params)} parameter values, got {len(point)}")
        pt = [Fraction(x) for x in point]
        out = self.base
        for t in self.terms:
            w = Fraction(1)
            for x, e in zip(pt, t.monomial):
                if e:
                    w *= x**e
            if t.denominator is not None:
                q = t.denominator.evaluate(pt)
                if q == 0:
                    raise ZeroDivisionError(f"denominator {t.denominator} vanishes at {list(map(str, pt))}")
                w /= q
            if w:
                out = out + t.cochain * w
        return out

    def grouped(self) -> dict[tuple, AdjCochain]:
        """Monomial -> cochain, base under the zero monomial (polynomial only)."""
        if not self.is_polynomial:
            raise ValueError("deformation has rational-function coefficients")
        out: dict = {(0,) * len(self.params): self.base}
        for t in self.terms:
            out[t.monomial] = out.get(t.monomial, AdjCochain(self.dim, 2)) + t.cochain
        return {k: v for k, v in out.items() if not v.is_zero()}

    def bracket_expansion(self) -> dict[tuple, AdjCochain]:
        """Exact expansion of ``[d(t), d(t)]`` as ``{monomial: 3-cochain}``."""
        g = list(self.grouped().items())
        out: dict = {}
        for a in range(len(g)):
            for b in range(a, len(g)):
                (ea, ca), (eb, cb) = g[a], g[b]
                e = tuple(x + y for x, y in zip(ea, eb))
                br = nr_bracket(ca, cb)
                if a != b:
                    br = br * 2  # [x, y] = [y, x] for 2-cochains
                out[e] = out.get(e, AdjCochain(self.dim, 3)) + br
        return {k: v for k, v in out.items() if not v.is_zero()}

    def max_degree(self) -> int:
        return max((sum(t.monomial) for t in self.terms), default=0)


class RelationSet:
    """Relation polynomials on the base of a deformation."""

    def __init__(self, params: Sequence[str], polys: Sequence[Polynomial | str], env=None):
        self.params = tuple(params)
        self.polys = [p if isinstance(p, Polynomial) else Polynomial.parse(p, self.params, env) for p in polys]
        for p in self.polys:
            if p.terms and p.min_degree() < 2:
                raise ValueError(f"relation {p} has a constant or linear part")

    def __len__(self):
        return len(self.polys)

    def __iter__(self):
        return iter(self.polys)

    def quadratic_parts(self) -> list[Polynomial]:
        return [p.homogeneous_part(2) for p in self.polys]


def relations_at(rels: RelationSet, point: Sequence) -> list[Fraction]:
    return [p.evaluate(point) for p in rels]


def jacobi_residual_at(defo: Deformation, point: Sequence) -> AdjCochain:
    d = defo.evaluate(point)
    return nr_bracket(d, d)


def check_jacobi_at(defo: Deformation, point: Sequence) -> bool:
    return jacobi_residual_at(defo, point).is_zero()


def check_cyclic_at(defo: Deformation, b: BilinearForm, point: Sequence) -> bool:
    return is_cyclic(defo.evaluate(point), b)


# ---------------------------------------------------------------------------
# basis changes
# ---------------------------------------------------------------------------


def _as_matrix(g) -> Matrix:
    return g if isinstance(g, Matrix) else Matrix(g)


def pushforward(g, d: AdjCochain) -> AdjCochain:
    """``(g . d)(x, y) = g^-1 d(g x, g y)``; raises ValueError for singular g."""
    g = _as_matrix(g)
    n = d.dim
    if g.rows != n or g.cols != n:
        raise ValueError("matrix and cochain dimensions differ")
    gi = inverse(g)
    # d(g e_i, g e_j) = sum_{a<b} (g_ai g_bj - g_bi g_aj) d(e_a, e_b)
    out: dict = defaultdict(Fraction)
    terms = list(d.terms())
    for i in range(n):
        for j in range(i + 1, n):
            img = [Fraction(0)] * n
            for ((a, b), k), c in terms:
                w = g[a - 1, i] * g[b - 1, j] - g[b - 1, i] * g[a - 1, j]
                if w:
                    img[k - 1] += w * c
            if not any(img):
                continue
            back = gi @ img
            for k in range(n):
                if back[k]:
                    out[((i + 1, j + 1), k + 1)] += back[k]
    return AdjCochain(n, 2, out)


def check_isomorphism(g, d1: AdjCochain, d2: AdjCochain) -> bool:
    """``G d1(x, y) == d2(G x, G y)`` on all basis pairs."""
    if d1.dim != d2.dim:
        raise ValueError("brackets of different dimensions")
    return pushforward(g, d2) == d1


CONVENTIONS = ("G", "G^T", "G^-1", "G^-T")


def convention_matrix(g, convention: str) -> Matrix:
    """The matrix actually used when a listed G is read under ``convention``."""
    g = _as_matrix(g)
    if convention == "G":
        return g
    if convention == "G^T":
        return g.T
    if convention == "G^-1":
        return inverse(g)
    if convention == "G^-T":
        return inverse(g).T
    raise ValueError(f"unknown convention {convention!r}; expected one of {', '.join(CONVENTIONS)}")


def isomorphism_conventions(g, d1: AdjCochain, d2: AdjCochain) -> list[str]:
    """Which of G, G^T, G^-1, G^-T satisfy :func:`check_isomorphism`."""
    return [c for c in CONVENTIONS if check_isomorphism(convention_matrix(g, c), d1, d2)]


def gauge_orbit_check(beta: AdjCochain, alg: LieAlgebra, b: BilinearForm) -> tuple[bool, AdjCochain]:
    """Whether the 1-cochain beta is cyclic, and the bracket ``[d, beta]``."""
    if beta.degree != 1:
        raise ValueError("gauge generators are 1-cochains")
    return is_cyclic(beta, b), nr_bracket(alg.d, beta)


# ---------------------------------------------------------------------------
# second-order step of the cyclic versal deformation
# ---------------------------------------------------------------------------


@dataclass
class VersalOrder2:
    basis: list[AdjCochain]
    h3_basis: list[AdjCochain]
    corrections: dict[tuple[int, int], AdjCochain]
    coefficients: dict[tuple[int, int], list[Fraction]]
    params: tuple[str, ...]

    def relations(self) -> list[Polynomial]:
        """Leading quadratic part of each relation, one per HC^3 representative."""
        rels = []
        for k in range(len(self.h3_basis)):
            terms = {}
            for (i, j), cs in self.coefficients.items():
                e = [0] * len(self.params)
                e[i] += 1
                e[j] += 1
                if cs[k]:
                    terms[tuple(e)] = cs[k]
            rels.append(Polynomial(self.params, terms))
        return rels

    def deformation(self, base: AdjCochain) -> Deformation:
        m = len(self.params)
        terms = []
        for i, delta in enumerate(self.basis):
            e = [0] * m
            e[i] = 1
            terms.append(DeformationTerm(tuple(e), delta))
        for (i, j), xi in sorted(self.corrections.items()):
            if xi.is_zero():
                continue
            e = [0] * m
            e[i] += 1
            e[j] += 1
            terms.append(DeformationTerm(tuple(e), xi))
        return Deformation(base, self.params, terms)


def versal_order2(alg: LieAlgebra, b: BilinearForm, basis: Sequence[AdjCochain] | None = None) -> VersalOrder2:
    """Quadratic corrections and leading relations of the cyclic versal deformation.

    With ``d(t) = d + t_i delta^i + t_i t_j xi_ij`` (i <= j), the t_i t_j
    coefficient of ``[d(t), d(t)]`` is ``Q_ij - 2 D(xi_ij)`` where
    ``Q_ij = 2[delta^i, delta^j]`` (i < j) or ``[delta^i, delta^i]``.  Each
    Q_ij is split as ``sum_k r_k alpha^k + 2 D(xi_ij)`` with alpha^k the HC^3
    representatives and xi_ij cyclic; the r_k are the leading relation
    coefficients.
    """
    n = alg.dim
    if basis is None:
        basis = cyclic_cohomology(alg, b, 2).cochains(n, 2)
    basis = list(basis)
    for delta in basis:
        if not is_cyclic(delta, b) or not coboundary_adj(alg, delta).is_zero():
            raise ValueError(f"{delta} is not a cyclic 2-cocycle")
    alphas = cyclic_cohomology(alg, b, 3).cochains(n, 3)
    cc2 = cyclic_subspace(alg, b, 2)
    dm = coboundary_matrix(alg, 2)
    d_cc = [dm @ v for v in cc2.basis]
    cols = [a.to_vector() for a in alphas] + [tuple(2 * x for x in v) for v in d_cc]
    rows = AdjCochain.space_dim(n, 3)
    system = Matrix.from_columns(cols, rows) if cols else Matrix.zeros(rows, 0)
    params = tuple(f"t{i + 1}" for i in range(len(basis)))
    corrections, coeffs = {}, {}
    for i, j in combinations_with_replacement(range(len(basis)), 2):
        q = nr_bracket(basis[i], basis[j])
        if i != j:
            q = q * 2
        if not coboundary_adj(alg, q).is_zero():
            raise ArithmeticError("bracket of cyclic cocycles is not a cocycle")
        if not cols:
            if not q.is_zero():
                raise ArithmeticError("nonzero obstruction with no HC^3 and no cyclic coboundaries")
            corrections[(i, j)] = AdjCochain(n, 2)
            coeffs[(i, j)] = []
            continue
        sol = solve(system, q.to_vector())
        if sol is None:
            raise ArithmeticError(f"[delta^{i + 1}, delta^{j + 1}] does not split into HC^3 plus cyclic coboundary")
        na = len(alphas)
        coeffs[(i, j)] = list(sol[:na])
        xi = [Fraction(0)] * AdjCochain.space_dim(n, 2)
        for w, v in zip(sol[na:], cc2.basis):
            if w:
                for k, x in enumerate(v):
                    xi[k] += w * x
        corrections[(i, j)] = AdjCochain.from_vector(n, 2, xi)
    return VersalOrder2(basis, alphas, corrections, coeffs, params)


def quadratic_span_matches(computed: Sequence[Polynomial], reference: Sequence[Polynomial]) -> tuple[bool, int, int]:
    """Compare the spans of two lists of quadratic forms in the same variables.

    Returns ``(equal_spans, rank_computed, rank_reference)``.
    """
    monos = sorted({e for p in list(computed) + list(reference) for e in p.terms})

    def vec(p):
        return [p.terms.get(e, Fraction(0)) for e in monos]

    a = [vec(p) for p in computed]
    r = [vec(p) for p in reference]
    ra = rank(a) if a else 0
    rr = rank(r) if r else 0
    both = rank(a + r) if a or r else 0
    return ra == rr == both, ra, rr
