"""Exact rational linear algebra.

Scalars are :class:`fractions.Fraction`.  Matrices are small dense row-major
tables; subspaces are carried as lists of linearly independent coordinate
vectors.  Nothing here ever touches floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

__all__ = [
    "Scalar",
    "parse_scalar",
    "render_scalar",
    "Matrix",
    "Subspace",
    "rref",
    "rank",
    "kernel_basis",
    "image_basis",
    "intersect",
    "subspace_sum",
    "complete_basis",
    "solve",
    "inverse",
    "signature",
]

Scalar = Fraction

ZERO = Fraction(0)
ONE = Fraction(1)


def parse_scalar(text: str | int | Fraction) -> Fraction:
    """Parse ``"p/q"``, ``"p"`` (or an int / Fraction) into a Fraction."""
    if isinstance(text, Fraction):
        return text
    if isinstance(text, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(text, int):
        return Fraction(text)
    if not isinstance(text, str):
        raise TypeError(f"cannot parse scalar from {type(text).__name__}")
    s = text.strip().replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    return Fraction(s)


def render_scalar(x: Fraction) -> str:
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("_data", "rows", "cols", "_sparse")

    def __init__(self, data: Iterable[Iterable], cols: int | None = None):
        rows = tuple(tuple(parse_scalar(x) for x in row) for row in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged matrix rows")
            if cols is not None and cols != width:
                raise ValueError("column count mismatch")
        else:
            width = cols or 0
        self._data = rows
        self.rows = len(rows)
        self.cols = width
        self._sparse = None

    def _nonzero_rows(self) -> list[list[tuple[int, Fraction]]]:
        # coboundary matrices are very sparse; cache (column, value) pairs per row
        if self._sparse is None:
            self._sparse = [[(j, x) for j, x in enumerate(r) if x] for r in self._data]
        return self._sparse

    @classmethod
    def zeros(cls, rows: int, cols: int) -> Matrix:
        return cls([[ZERO] * cols for _ in range(rows)], cols=cols)

    @classmethod
    def identity(cls, n: int) -> Matrix:
        return cls([[ONE if i == j else ZERO for j in range(n)] for i in range(n)], cols=n)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], rows: int) -> Matrix:
        if not columns:
            return cls.zeros(rows, 0)
        return cls(zip(*columns), cols=len(columns))

    def __getitem__(self, key):
        i, j = key
        return self._data[i][j]

    def row(self, i: int) -> tuple:
        return self._data[i]

    def column(self, j: int) -> tuple:
        return tuple(r[j] for r in self._data)

    def tolist(self) -> list[list[Fraction]]:
        return [list(r) for r in self._data]

    @property
    def shape(self) -> tuple[int, int]:
        return (self.rows, self.cols)

    def transpose(self) -> Matrix:
        if not self.rows:
            return Matrix.zeros(self.cols, 0)
        return Matrix(zip(*self._data), cols=self.rows)

    T = property(transpose)

    def __matmul__(self, other):
        if isinstance(other, Matrix):
            if self.cols != other.rows:
                raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
            ot = other.transpose()._data
            return Matrix(
                [[sum((a * b for a, b in zip(r, c) if a and b), ZERO) for c in ot] for r in self._data],
                cols=other.cols,
            )
        vec = tuple(other)
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum((a * vec[j] for j, a in r if vec[j]), ZERO) for r in self._nonzero_rows())

    def __mul__(self, c):
        c = parse_scalar(c)
        return Matrix([[c * x for x in r] for r in self._data], cols=self.cols)

    __rmul__ = __mul__

    def __add__(self, other: Matrix) -> Matrix:
        if self.shape != other.shape:
            raise ValueError("shape mismatch")
        return Matrix([[a + b for a, b in zip(r, s)] for r, s in zip(self._data, other._data)], cols=self.cols)

    def __sub__(self, other: Matrix) -> Matrix:
        return self + (-1) * other

    def __neg__(self) -> Matrix:
        return (-1) * self

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self._data == other._data

    def __hash__(self):
        return hash(self._data)

    def __repr__(self):
        body = "; ".join(" ".join(render_scalar(x) for x in r) for r in self._data)
        return f"Matrix[{self.rows}x{self.cols}]({body})"

    def is_symmetric(self) -> bool:
        return self.rows == self.cols and all(
            self._data[i][j] == self._data[j][i] for i in range(self.rows) for j in range(i)
        )

    def to_strings(self) -> list[list[str]]:
        return [[render_scalar(x) for x in r] for r in self._data]


@dataclass(frozen=True)
class Subspace:
    """Span of linearly independent vectors inside a coordinate space."""

    ambient_dim: int
    basis: tuple[tuple[Fraction, ...], ...]

    def __post_init__(self):
        for v in self.basis:
            if len(v) != self.ambient_dim:
                raise ValueError("basis vector has wrong length")

    @classmethod
    def span(cls, ambient_dim: int, vectors: Iterable[Sequence]) -> Subspace:
        """Subspace spanned by arbitrary (possibly dependent) vectors."""
        vecs = [tuple(parse_scalar(x) for x in v) for v in vectors]
        return cls(ambient_dim, tuple(image_basis_rows(vecs, ambient_dim)))

    @classmethod
    def zero(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, ())

    @classmethod
    def full(cls, ambient_dim: int) -> Subspace:
        return cls(ambient_dim, Matrix.identity(ambient_dim)._data)

    @property
    def dim(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        return rank(list(self.basis) + [tuple(v)]) == self.dim

    def as_matrix(self) -> Matrix:
        """Basis vectors as the rows of a matrix."""
        return Matrix(self.basis, cols=self.ambient_dim)


def _rows_of(m) -> list[list[Fraction]]:
    if isinstance(m, Matrix):
        return m.tolist()
    return [[parse_scalar(x) for x in r] for r in m]


def _rref_inplace(a: list[list[Fraction]], ncols: int) -> list[int]:
    """Gauss-Jordan elimination in place; returns pivot columns."""
    pivots: list[int] = []
    r = 0
    nrows = len(a)
    for c in range(ncols):
        if r == nrows:
            break
        p = next((i for i in range(r, nrows) if a[i][c]), None)
        if p is None:
            continue
        a[r], a[p] = a[p], a[r]
        prow = a[r]
        inv = 1 / prow[c]
        if inv != 1:
            for j in range(c, ncols):
                if prow[j]:
                    prow[j] *= inv
        nz = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = a[i]
            f = row[c]
            if f:
                for j in nz:
                    row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return pivots


def rref(m) -> tuple[Matrix, int]:
    """Reduced row-echelon form and rank."""
    a = _rows_of(m)
    ncols = m.cols if isinstance(m, Matrix) else (len(a[0]) if a else 0)
    pivots = _rref_inplace(a, ncols)
    return Matrix(a, cols=ncols), len(pivots)


def _integer_rows(a) -> list[list[int]]:
    """Scale each nonzero rational row to a primitive integer row."""
    out = []
    for r in a:
        den = lcm(*(x.denominator for x in r if x)) if any(r) else 0
        if not den:
            continue
        ints = [x.numerator * (den // x.denominator) if x else 0 for x in r]
        g = gcd(*ints)
        out.append([v // g for v in ints] if g > 1 else ints)
    return out


def _rank_integer(rows: list[list[int]], ncols: int) -> int:
    """Fraction-free forward elimination; rows are modified in place."""
    r = 0
    n = len(rows)
    for c in range(ncols):
        if r == n:
            break
        best = None
        for i in range(r, n):
            v = rows[i][c]
            if v and (best is None or abs(v) < abs(rows[best][c])):
                best = i
                if abs(v) == 1:
                    break
        if best is None:
            continue
        rows[r], rows[best] = rows[best], rows[r]
        prow = rows[r]
        pc = prow[c]
        for i in range(r + 1, n):
            row = rows[i]
            f = row[c]
            if not f:
                continue
            g = gcd(pc, f)
            a, b = pc // g, f // g
            new = [a * x - b * y for x, y in zip(row, prow)]
            h = gcd(*new)
            rows[i] = [x // h for x in new] if h > 1 else new
        r += 1
    return r


def rank(m) -> int:
    a = _rows_of(m)
    if not a:
        return 0
    return _rank_integer(_integer_rows(a), len(a[0]))


def _kernel_from_rref(a: list[list[Fraction]], pivots: list[int], ncols: int) -> list[tuple]:
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for r, pc in enumerate(pivots):
            if a[r][f]:
                v[pc] = -a[r][f]
        basis.append(tuple(v))
    return basis


def kernel_basis(m) -> Subspace:
    """Basis of the null space ``{x : m x = 0}``."""
    a = _rows_of(m)
    ncols = m.cols if isinstance(m, Matrix) else (len(a[0]) if a else 0)
    pivots = _rref_inplace(a, ncols)
    return Subspace(ncols, tuple(_kernel_from_rref(a, pivots, ncols)))


def image_basis_rows(vectors: list, ambient_dim: int) -> list[tuple]:
    """Independent subset of ``vectors`` (in order) spanning the same space."""
    if not vectors:
        return []
    # eliminate on the transpose so the chosen pivots index original vectors
    a = [list(col) for col in zip(*vectors)]
    pivots = _rref_inplace(a, len(vectors))
    return [tuple(vectors[p]) for p in pivots]


def image_basis(m: Matrix) -> Subspace:
    """Column space of ``m``, spanned by a subset of its columns."""
    cols = [m.column(j) for j in range(m.cols)]
    return Subspace(m.rows, tuple(image_basis_rows(cols, m.rows)))


def subspace_sum(u: Subspace, w: Subspace) -> Subspace:
    if u.ambient_dim != w.ambient_dim:
        raise ValueError("ambient dimension mismatch")
    return Subspace(u.ambient_dim, tuple(image_basis_rows(list(u.basis) + list(w.basis), u.ambient_dim)))


def intersect(u: Subspace, w: Subspace) -> Subspace:
    """Basis of ``u ∩ w`` from the solutions of ``U a = W b``."""
    if u.ambient_dim != w.ambient_dim:
        raise ValueError(f"ambient dimension mismatch: {u.ambient_dim} vs {w.ambient_dim}")
    n = u.ambient_dim
    if not u.basis or not w.basis:
        return Subspace.zero(n)
    k = u.dim
    system = [list(u.basis[i][r] for i in range(k)) + [-w.basis[j][r] for j in range(w.dim)] for r in range(n)]
    sols = kernel_basis(Matrix(system, cols=k + w.dim)).basis
    vecs = []
    for s in sols:
        vecs.append(tuple(sum((s[i] * u.basis[i][r] for i in range(k) if s[i]), ZERO) for r in range(n)))
    return Subspace(n, tuple(image_basis_rows(vecs, n)))


def complete_basis(sub: Subspace, sup: Subspace) -> list[tuple]:
    """Vectors of ``sup``'s basis that extend a basis of ``sub`` to one of ``sup``.

    Candidates are tried in basis order, so the choice is deterministic.
    """
    chosen: list[tuple] = []
    current = list(sub.basis)
    r = len(current)
    for v in sup.basis:
        if rank(current + [v]) > r:
            current.append(v)
            chosen.append(v)
            r += 1
    return chosen


def solve(m: Matrix, b: Sequence) -> tuple | None:
    """One solution of ``m x = b`` (free variables set to zero), or None."""
    aug = [list(m.row(i)) + [parse_scalar(b[i])] for i in range(m.rows)]
    pivots = _rref_inplace(aug, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [ZERO] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = aug[r][m.cols]
    return tuple(x)


def inverse(m: Matrix) -> Matrix:
    if m.rows != m.cols:
        raise ValueError("inverse of a non-square matrix")
    n = m.rows
    aug = [list(m.row(i)) + [ONE if i == j else ZERO for j in range(n)] for i in range(n)]
    pivots = _rref_inplace(aug, 2 * n)
    if pivots[:n] != list(range(n)) or len(pivots) < n:
        raise ValueError("matrix is singular")
    return Matrix([r[n:] for r in aug], cols=n)


def signature(b: Matrix) -> tuple[int, int, int]:
    """Inertia ``(positive, negative, zero)`` of a symmetric matrix.

    Diagonalizes by simultaneous row/column operations.  A zero pivot with a
    nonzero off-diagonal entry ``b[k][j]`` is fixed by adding row/column j to k,
    which makes the pivot ``2 b[k][j] + b[j][j]`` after a diagonal swap is ruled out.
    """
    if not b.is_symmetric():
        raise ValueError("signature requires a symmetric matrix")
    a = b.tolist()
    n = b.rows
    pos = neg = 0
    for k in range(n):
        if not a[k][k]:
            j = next((j for j in range(k + 1, n) if a[j][j]), None)
            if j is not None:
                a[k], a[j] = a[j], a[k]
                for row in a:
                    row[k], row[j] = row[j], row[k]
            else:
                j = next((j for j in range(k + 1, n) if a[k][j]), None)
                if j is None:
                    continue
                for c in range(n):
                    a[k][c] += a[j][c]
                for row in a:
                    row[k] += row[j]
        piv = a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / piv
            if f:
                for c in range(k, n):
                    a[i][c] -= f * a[k][c]
        for i in range(k + 1, n):
            a[k][i] = ZERO
        if piv > 0:
            pos += 1
        else:
            neg += 1
    return pos, neg, n - pos - neg
