"""Ordinary, cyclic and reduced cyclic cohomology of metric Lie algebras.

Everything is reduced to exact ranks of coboundary matrices.  Coordinates on
C^p(V, V) follow :meth:`AdjCochain.basis_keys` (multi-index major, target
minor); coordinates on C^q(V, k) follow the lexicographic multi-indices.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import NamedTuple, Sequence

from .cochains import (
    AdjCochain,
    BilinearForm,
    FormError,
    JacobiError,
    LieAlgebra,
    TrivCochain,
    coboundary_adj,
    coboundary_triv,
    is_invariant,
)
from .exterior import enumerate_multiindices, merge_sign
from .scalar_linalg import (
    Matrix,
    Subspace,
    image_basis_rows,
    intersect,
    kernel_basis,
    rank,
)

__all__ = [
    "Cohomology",
    "CohomologyReport",
    "coboundary_matrix",
    "cocycles",
    "coboundaries",
    "adjoint_cohomology",
    "trivial_cohomology",
    "trivial_cocycle_dim",
    "cyclic_subspace",
    "cyclic_cohomology",
    "cyclic_cohomology_dim",
    "reduced_cyclic_cohomology",
    "cohomology_report",
    "direct_sum",
    "kunneth_check",
    "convolve",
]


class Cohomology(NamedTuple):
    dim: int
    representatives: Subspace

    def cochains(self, alg_dim: int, degree: int) -> list[AdjCochain]:
        return [AdjCochain.from_vector(alg_dim, degree, v) for v in self.representatives.basis]


def _require_jacobi(alg: LieAlgebra):
    if not _jacobi(alg):
        raise JacobiError("cohomology requires a bracket with [d,d] = 0")


@lru_cache(maxsize=256)
def _jacobi(alg: LieAlgebra) -> bool:
    return alg.is_jacobi()


@lru_cache(maxsize=256)
def _metric_ok(alg: LieAlgebra, b: BilinearForm) -> None:
    if b.dim != alg.dim:
        raise FormError("form and algebra dimensions differ")
    if not b.is_nondegenerate():
        raise FormError("invariant form is degenerate")
    if not is_invariant(alg, b):
        raise FormError("form is not invariant for this bracket")


def _space_dim(n: int, p: int, trivial: bool) -> int:
    return (TrivCochain if trivial else AdjCochain).space_dim(n, p)


@lru_cache(maxsize=512)
def coboundary_matrix(alg: LieAlgebra, p: int, trivial: bool = False) -> Matrix:
    """Matrix of D: C^p -> C^(p+1), columns indexed by the basis of C^p."""
    n = alg.dim
    rows, cols = _space_dim(n, p + 1, trivial), _space_dim(n, p, trivial)
    if p < 0 or cols == 0:
        return Matrix.zeros(rows, 0)
    cls = TrivCochain if trivial else AdjCochain
    op = coboundary_triv if trivial else coboundary_adj
    columns = []
    for key in cls.basis_keys(n, p):
        columns.append(op(alg, cls(n, p, {key: 1})).to_vector())
    return Matrix.from_columns(columns, rows)


@lru_cache(maxsize=512)
def _rank_D(alg: LieAlgebra, p: int, trivial: bool) -> int:
    if p < 0:
        return 0
    return rank(coboundary_matrix(alg, p, trivial))


@lru_cache(maxsize=256)
def cocycles(alg: LieAlgebra, n: int, trivial: bool = False) -> Subspace:
    _require_jacobi(alg)
    m = coboundary_matrix(alg, n, trivial)
    if m.rows == 0:
        return Subspace.full(m.cols)
    return kernel_basis(m)


@lru_cache(maxsize=256)
def coboundaries(alg: LieAlgebra, n: int, trivial: bool = False) -> Subspace:
    _require_jacobi(alg)
    amb = _space_dim(alg.dim, n, trivial)
    if n <= 0:
        return Subspace.zero(amb)
    m = coboundary_matrix(alg, n - 1, trivial)
    cols = [m.column(j) for j in range(m.cols)]
    return Subspace(amb, tuple(image_basis_rows(cols, amb)))


def _completion(sub: Subspace, sup: Subspace) -> Subspace:
    """Vectors of ``sup`` extending a basis of ``sub``, chosen in basis order."""
    rows = list(sub.basis) + list(sup.basis)
    chosen = image_basis_rows(rows, sup.ambient_dim)
    return Subspace(sup.ambient_dim, tuple(chosen[sub.dim :]))


def adjoint_cohomology(alg: LieAlgebra, n: int) -> Cohomology:
    """H^n(V, V) with representative cocycles."""
    z, b = cocycles(alg, n), coboundaries(alg, n)
    reps = _completion(b, z)
    return Cohomology(z.dim - b.dim, reps)


def adjoint_cohomology_dim(alg: LieAlgebra, n: int) -> int:
    _require_jacobi(alg)
    if n < 0 or n > alg.dim:
        return 0
    return _space_dim(alg.dim, n, False) - _rank_D(alg, n, False) - _rank_D(alg, n - 1, False)


def trivial_cohomology(alg: LieAlgebra, n: int) -> int:
    """dim H^n(V, k)."""
    _require_jacobi(alg)
    if n < 0 or n > alg.dim:
        return 0
    return _space_dim(alg.dim, n, True) - _rank_D(alg, n, True) - _rank_D(alg, n - 1, True)


def trivial_cocycle_dim(alg: LieAlgebra, n: int) -> int:
    """dim Z^n(V, k)."""
    _require_jacobi(alg)
    if n < 0 or n > alg.dim:
        return 0
    return _space_dim(alg.dim, n, True) - _rank_D(alg, n, True)


def _cyclicity_constraints(b: BilinearForm, n: int) -> Matrix:
    """Linear conditions on C^n(V, V) coordinates saying the lowered form alternates."""
    dim = b.dim
    keys = AdjCochain.basis_keys(dim, n)
    col = {k: j for j, k in enumerate(keys)}

    def lowered(I, m):
        # coefficient row of c~(e_I, e_m) = sum_i c(I, i) b(e_i, e_m)
        return {col[(I, i)]: b.entry(i, m) for i in range(1, dim + 1) if b.entry(i, m)}

    rows = []
    seen = set()
    for I in enumerate_multiindices(dim, n):
        for m in range(1, dim + 1):
            r = dict(lowered(I, m))
            if m not in I:
                J, s = merge_sign(I, (m,))
                if (J[:-1], J[-1]) == (I, m):
                    continue
                for j, v in lowered(J[:-1], J[-1]).items():
                    r[j] = r.get(j, 0) - s * v
            r = {j: v for j, v in r.items() if v}
            if not r:
                continue
            key = tuple(sorted(r.items()))
            if key in seen:
                continue
            seen.add(key)
            dense = [Fraction(0)] * len(keys)
            for j, v in r.items():
                dense[j] = Fraction(v)
            rows.append(dense)
    return Matrix(rows, cols=len(keys))


@lru_cache(maxsize=256)
def _cyclic_subspace(b: BilinearForm, n: int) -> Subspace:
    amb = AdjCochain.space_dim(b.dim, n)
    if amb == 0:
        return Subspace.zero(0)
    m = _cyclicity_constraints(b, n)
    if m.rows == 0:
        return Subspace.full(amb)
    return kernel_basis(m)


def cyclic_subspace(alg: LieAlgebra, b: BilinearForm, n: int) -> Subspace:
    """CC^n: cochains whose lowering by ``b`` is alternating (dim = C(dim, n+1))."""
    _metric_ok(alg, b)
    return _cyclic_subspace(b, n)


def _apply(m: Matrix, vecs: Sequence[Sequence]) -> list[tuple]:
    return [m @ v for v in vecs]


@lru_cache(maxsize=256)
def _cyclic_parts(alg: LieAlgebra, b: BilinearForm, n: int):
    """(dim CC^n, dim Z^n ∩ CC^n, dim D(CC^(n-1)), dim B^n ∩ CC^n) via ranks."""
    _require_jacobi(alg)
    _metric_ok(alg, b)
    cc = _cyclic_subspace(b, n)
    k = cc.dim
    if k == 0:
        return 0, 0, 0, 0
    z_cap = k - rank(_apply(coboundary_matrix(alg, n), cc.basis)) if AdjCochain.space_dim(alg.dim, n + 1) else k
    if n == 0:
        return k, z_cap, 0, 0
    prev = _cyclic_subspace(b, n - 1)
    dm = coboundary_matrix(alg, n - 1)
    d_cc = rank(_apply(dm, prev.basis)) if prev.dim else 0
    r_b = _rank_D(alg, n - 1, False)
    if r_b == 0:
        return k, z_cap, d_cc, 0
    stacked = [dm.column(j) for j in range(dm.cols)] + list(cc.basis)
    b_cap = r_b + k - rank(stacked)
    return k, z_cap, d_cc, b_cap


def cyclic_cohomology_dim(alg: LieAlgebra, b: BilinearForm, n: int) -> int:
    _, z, dcc, _ = _cyclic_parts(alg, b, n)
    return z - dcc


def reduced_cyclic_cohomology_dim(alg: LieAlgebra, b: BilinearForm, n: int) -> int:
    _, z, _, bcap = _cyclic_parts(alg, b, n)
    return z - bcap


def _cyclic_cocycles(alg, b, n) -> Subspace:
    return intersect(cocycles(alg, n), cyclic_subspace(alg, b, n))


def cyclic_cohomology(alg: LieAlgebra, b: BilinearForm, n: int) -> Cohomology:
    """HC^n via the cyclic subcomplex; HC^0 is the space of cyclic 0-cocycles."""
    z = _cyclic_cocycles(alg, b, n)
    if n == 0:
        return Cohomology(z.dim, z)
    prev = cyclic_subspace(alg, b, n - 1)
    dm = coboundary_matrix(alg, n - 1)
    img = Subspace.span(z.ambient_dim, _apply(dm, prev.basis)) if prev.dim else Subspace.zero(z.ambient_dim)
    return Cohomology(z.dim - img.dim, _completion(img, z))


def reduced_cyclic_cohomology(alg: LieAlgebra, b: BilinearForm, n: int) -> Cohomology:
    """HRC^n = (Z^n ∩ CC^n) / (B^n ∩ CC^n)."""
    z = _cyclic_cocycles(alg, b, n)
    bc = intersect(coboundaries(alg, n), cyclic_subspace(alg, b, n))
    return Cohomology(z.dim - bc.dim, _completion(bc, z))


@dataclass
class CohomologyReport:
    algebra_id: str
    dim: int
    rows: list[dict] = field(default_factory=list)

    def column(self, name: str) -> list[int]:
        return [r[name] for r in self.rows]

    @property
    def hc(self) -> list[int]:
        return self.column("hc")

    @property
    def hrc(self) -> list[int]:
        return self.column("hrc")

    @property
    def h(self) -> list[int]:
        return self.column("h")

    def render(self) -> str:
        lines = [f"{self.algebra_id} (dim {self.dim})", "n | HC^n | HRC^n | H^n", "--+------+-------+----"]
        for r in self.rows:
            lines.append(f"{r['n']} | {r['hc']:>4} | {r['hrc']:>5} | {r['h']:>3}")
        return "\n".join(lines)

    def to_dict(self) -> dict:
        return {"algebra": self.algebra_id, "dim": self.dim, "rows": [dict(r) for r in self.rows]}


def cohomology_report(
    alg: LieAlgebra, b: BilinearForm, degrees: Sequence[int] = range(4), algebra_id: str = ""
) -> CohomologyReport:
    """Table of h^n, h^n_triv, hc^n (both routes) and hrc^n."""
    rep = CohomologyReport(algebra_id, alg.dim)
    for n in degrees:
        hc = cyclic_cohomology_dim(alg, b, n)
        shifted = trivial_cocycle_dim(alg, 1) if n == 0 else trivial_cohomology(alg, n + 1)
        rep.rows.append(
            {
                "n": n,
                "hc": hc,
                "hrc": reduced_cyclic_cohomology_dim(alg, b, n),
                "h": adjoint_cohomology_dim(alg, n),
                "h_triv": trivial_cohomology(alg, n),
                "hc_shifted": shifted,
            }
        )
    return rep


def direct_sum(
    g: LieAlgebra, bg: BilinearForm | None, h: LieAlgebra, bh: BilinearForm | None
) -> tuple[LieAlgebra, BilinearForm | None]:
    """``g ⊕ h`` with h's basis shifted after g's; the form is block diagonal."""
    n, m = g.dim, h.dim
    consts = [(i, j, k, c) for i, j, k, c in g.structure_constants()]
    consts += [(i + n, j + n, k + n, c) for i, j, k, c in h.structure_constants()]
    alg = LieAlgebra.from_structure_constants(n + m, consts)
    if bg is None or bh is None:
        return alg, None
    rows = []
    for i in range(n):
        rows.append(list(bg.matrix.row(i)) + [0] * m)
    for i in range(m):
        rows.append([0] * n + list(bh.matrix.row(i)))
    return alg, BilinearForm(Matrix(rows, cols=n + m))


def convolve(a: Sequence[int], b: Sequence[int], n: int) -> int:
    return sum(a[k] * b[n - k] for k in range(n + 1) if k < len(a) and n - k < len(b))


def kunneth_check(g: LieAlgebra, h: LieAlgebra, n: int) -> tuple[bool, int, int]:
    """Compare h^n_triv(g ⊕ h) with the Künneth convolution; returns (ok, direct, predicted)."""
    s, _ = direct_sum(g, None, h, None)
    direct = trivial_cohomology(s, n)
    hg = [trivial_cohomology(g, k) for k in range(n + 1)]
    hh = [trivial_cohomology(h, k) for k in range(n + 1)]
    predicted = convolve(hg, hh, n)
    return direct == predicted, direct, predicted
