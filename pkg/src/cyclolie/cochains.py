"""Cochains of a Lie algebra with adjoint and trivial coefficients.

An adjoint p-cochain is a sparse combination of the basis maps
``psi[I->i]`` sending ``e_I`` to ``e_i`` (I strictly increasing of length p);
a trivial q-cochain is a sparse combination of the dual basis forms
``omega[J]``.  A Lie algebra is the 2-cochain ``d`` with ``[e_i, e_j] = d(e_i, e_j)``.

Sign conventions
----------------
``compose(phi, psi)`` inserts psi into the first slot of phi, with psi's l
arguments forming the head block of an unshuffle in Sh(l, k-1)::

    (phi o psi)(v) = sum sign(s) phi(psi(v_s1..v_sl), v_s(l+1)..)

and ``nr_bracket(phi, psi) = phi o psi - (-1)^((k+1)(l+1)) psi o phi``.  With
this, ``nr_bracket(d, d)`` is twice the Jacobiator and ``nr_bracket(d, I) = d``.

``coboundary_adj`` is the Chevalley-Eilenberg differential with
``D(x)(v) = [v, x]`` on 0-cochains.  It agrees with the bracket as
``D(c) = (-1)^(p+1) [d, c]`` for c of degree p.  ``coboundary_triv`` carries
the same sign on its bracket-insertion sum, so ``tilde`` is a chain map:
``tilde(D c) = D(tilde c)`` for cyclic c.
"""

from __future__ import annotations

import re
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from math import comb
from typing import Iterable, Iterator, Mapping, Sequence

from .exterior import enumerate_multiindices, merge_sign, sort_with_sign
from .polynomial import eval_expression
from .scalar_linalg import Matrix, inverse, parse_scalar, rank, render_scalar

__all__ = [
    "AdjCochain",
    "TrivCochain",
    "LieAlgebra",
    "BilinearForm",
    "JacobiError",
    "FormError",
    "evaluate",
    "evaluate_vectors",
    "compose",
    "nr_bracket",
    "coboundary_adj",
    "coboundary_triv",
    "tilde",
    "is_cyclic",
    "is_invariant",
    "bracket_triv",
    "raise_form",
    "identity_cochain",
    "parse_cochain",
    "parse_triv_cochain",
]


class JacobiError(ValueError):
    """The bracket does not satisfy the Jacobi identity."""


class FormError(ValueError):
    """A bilinear form is unsuitable (non-symmetric, degenerate, non-invariant)."""


def _check_index(I, dim: int):
    if any(not (1 <= x <= dim) for x in I):
        raise IndexError(f"index out of range 1..{dim}: {I}")
    if any(a >= b for a, b in zip(I, I[1:])):
        raise ValueError(f"multi-index not strictly increasing: {I}")


class _Sparse:
    __slots__ = ("dim", "degree", "_c", "_hash")

    def __init__(self, dim: int, degree: int, coeffs: Mapping | None = None):
        self.dim = dim
        self.degree = degree
        clean = {}
        for key, c in (coeffs or {}).items():
            c = parse_scalar(c)
            if c:
                self._validate(key)
                clean[key] = c
        self._c = clean
        self._hash = None

    def _validate(self, key):
        raise NotImplementedError

    @property
    def coeffs(self) -> dict:
        return dict(self._c)

    def terms(self) -> Iterator:
        return iter(self._c.items())

    def __len__(self):
        return len(self._c)

    def __bool__(self):
        return bool(self._c)

    def is_zero(self) -> bool:
        return not self._c

    def _same(self, other):
        if type(other) is not type(self):
            raise TypeError(f"cannot combine {type(self).__name__} with {type(other).__name__}")
        if other.dim != self.dim or other.degree != self.degree:
            raise ValueError(
                f"cochain mismatch: dim {self.dim}/deg {self.degree} vs dim {other.dim}/deg {other.degree}"
            )

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        self._same(other)
        out = dict(self._c)
        for k, c in other._c.items():
            out[k] = out.get(k, 0) + c
        return type(self)(self.dim, self.degree, out)

    __radd__ = __add__

    def __neg__(self):
        return type(self)(self.dim, self.degree, {k: -c for k, c in self._c.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        s = parse_scalar(s)
        return type(self)(self.dim, self.degree, {k: s * c for k, c in self._c.items()})

    __rmul__ = __mul__

    def __truediv__(self, s):
        return self * (1 / parse_scalar(s))

    def __eq__(self, other):
        if type(other) is not type(self):
            if isinstance(other, int) and other == 0:
                return not self._c
            return NotImplemented
        return self.dim == other.dim and self.degree == other.degree and self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((type(self).__name__, self.dim, self.degree, frozenset(self._c.items())))
        return self._hash

    def __repr__(self):
        return f"{type(self).__name__}(dim={self.dim}, {self})"


class AdjCochain(_Sparse):
    """Sparse element of C^p(V, V), keyed by ``(I, i)``."""

    __slots__ = ()

    def _validate(self, key):
        I, i = key
        if len(I) != self.degree:
            raise ValueError(f"multi-index {I} does not have length {self.degree}")
        _check_index(I, self.dim)
        if not 1 <= i <= self.dim:
            raise IndexError(f"target index {i} out of range 1..{self.dim}")

    @classmethod
    def basis_keys(cls, dim: int, degree: int) -> list[tuple]:
        return [(I, i) for I in enumerate_multiindices(dim, degree) for i in range(1, dim + 1)]

    @classmethod
    def space_dim(cls, dim: int, degree: int) -> int:
        return comb(dim, degree) * dim if 0 <= degree <= dim else 0

    @classmethod
    def psi(cls, dim: int, I: Sequence[int], i: int, c=1) -> AdjCochain:
        s = sort_with_sign(tuple(I))
        if s is None:
            return cls(dim, len(I))
        J, sign = s
        return cls(dim, len(I), {(J, i): sign * parse_scalar(c)})

    def coeff(self, I, i) -> Fraction:
        return self._c.get((tuple(I), i), Fraction(0))

    def to_vector(self) -> tuple:
        return tuple(self._c.get(k, Fraction(0)) for k in _adj_keys(self.dim, self.degree))

    @classmethod
    def from_vector(cls, dim: int, degree: int, vec: Sequence) -> AdjCochain:
        keys = _adj_keys(dim, degree)
        if len(vec) != len(keys):
            raise ValueError("vector length does not match cochain space")
        return cls(dim, degree, {k: c for k, c in zip(keys, vec) if c})

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for (I, i) in sorted(self._c):
            c = self._c[(I, i)]
            body = f"psi[{{{','.join(map(str, I))}}}->{i}]"
            mag = abs(c)
            if mag != 1:
                body = f"{render_scalar(mag)}*{body}"
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def restrict_targets(self) -> set[int]:
        return {i for (_, i) in self._c}


class TrivCochain(_Sparse):
    """Sparse element of C^q(V, k), keyed by the multi-index J."""

    __slots__ = ()

    def _validate(self, key):
        if len(key) != self.degree:
            raise ValueError(f"multi-index {key} does not have length {self.degree}")
        _check_index(key, self.dim)

    @classmethod
    def basis_keys(cls, dim: int, degree: int) -> list[tuple]:
        return list(enumerate_multiindices(dim, degree))

    @classmethod
    def space_dim(cls, dim: int, degree: int) -> int:
        return comb(dim, degree) if 0 <= degree <= dim else 0

    def coeff(self, J) -> Fraction:
        return self._c.get(tuple(J), Fraction(0))

    def value(self, args: Sequence[int]) -> Fraction:
        """Value on basis vectors in arbitrary order."""
        s = sort_with_sign(tuple(args))
        if s is None:
            return Fraction(0)
        return s[1] * self._c.get(s[0], Fraction(0))

    def to_vector(self) -> tuple:
        return tuple(self._c.get(k, Fraction(0)) for k in enumerate_multiindices(self.dim, self.degree))

    @classmethod
    def from_vector(cls, dim: int, degree: int, vec: Sequence) -> TrivCochain:
        keys = enumerate_multiindices(dim, degree)
        if len(vec) != len(keys):
            raise ValueError("vector length does not match cochain space")
        return cls(dim, degree, {k: c for k, c in zip(keys, vec) if c})

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for J in sorted(self._c):
            c = self._c[J]
            body = f"omega[{{{','.join(map(str, J))}}}]"
            mag = abs(c)
            if mag != 1:
                body = f"{render_scalar(mag)}*{body}"
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


_KEYS: dict = {}


def _adj_keys(dim: int, degree: int) -> list[tuple]:
    k = (dim, degree)
    if k not in _KEYS:
        _KEYS[k] = AdjCochain.basis_keys(dim, degree)
    return _KEYS[k]


def identity_cochain(dim: int) -> AdjCochain:
    """The identity map ``I = sum phi[{i}->i]``."""
    return AdjCochain(dim, 1, {((i,), i): 1 for i in range(1, dim + 1)})


# ---------------------------------------------------------------------------
# text syntax
# ---------------------------------------------------------------------------

_ADJ_ATOM = re.compile(r"^(?:psi|phi)\[\{([\d,\s]*)\}\s*->\s*(\d+)\]$")
_TRIV_ATOM = re.compile(r"^omega\[\{([\d,\s]*)\}\]$")


def _split_top(text: str, seps: str) -> list[tuple[str, str]]:
    """Split at top-level separator characters, keeping the separator."""
    out, depth, start, lead = [], 0, 0, ""
    for pos, ch in enumerate(text):
        if ch in "([{":
            depth += 1
        elif ch in ")]}":
            depth -= 1
        elif ch in seps and depth == 0:
            if seps == "+-" and text[start:pos].strip().endswith(("*", "/")):
                continue  # unary sign inside a product, e.g. 2*-1
            out.append((lead, text[start:pos]))
            lead, start = ch, pos + 1
    out.append((lead, text[start:]))
    return out


def _parse_terms(text: str, atom: re.Pattern, env):
    terms = []
    for sign, chunk in _split_top(text.strip(), "+-"):
        chunk = chunk.strip()
        if not chunk:
            if sign and sign != "+" and sign != "-":
                raise ValueError(f"bad cochain syntax near {sign!r}")
            continue
        factors = [f.strip() for _, f in _split_top(chunk, "*")]
        m = atom.match(factors[-1])
        if not m:
            raise ValueError(f"cannot parse cochain term {chunk!r}")
        coeff = Fraction(-1 if sign == "-" else 1)
        for f in factors[:-1]:
            coeff *= eval_expression(f, env)
        idx = tuple(int(x) for x in m.group(1).replace(" ", "").split(",") if x)
        terms.append((idx, m, coeff))
    return terms


def parse_cochain(text: str, dim: int, env: Mapping[str, Fraction] | None = None) -> AdjCochain:
    """Parse e.g. ``psi[{1,2}->3] - 2*psi[{1,3}->1] + 2*psi[{2,3}->2]``.

    Coefficients may be rational expressions in the names bound by ``env``.
    Out-of-order indices are sorted with the antisymmetry sign.
    """
    text = text.strip()
    if text in ("", "0"):
        raise ValueError("empty cochain needs an explicit degree; use AdjCochain(dim, p)")
    out: AdjCochain | None = None
    for idx, m, coeff in _parse_terms(text, _ADJ_ATOM, env):
        term = AdjCochain.psi(dim, idx, int(m.group(2)), coeff)
        out = term if out is None else out + term
    return out


def parse_triv_cochain(text: str, dim: int, env=None) -> TrivCochain:
    out = None
    for idx, _, coeff in _parse_terms(text, _TRIV_ATOM, env):
        s = sort_with_sign(idx)
        term = TrivCochain(dim, len(idx), {s[0]: s[1] * coeff} if s else {})
        out = term if out is None else out + term
    if out is None:
        raise ValueError("empty cochain")
    return out


# ---------------------------------------------------------------------------
# algebras and forms
# ---------------------------------------------------------------------------


class LieAlgebra:
    """Finite-dimensional Lie algebra given by its bracket 2-cochain ``d``."""

    def __init__(self, d: AdjCochain, *, check: bool = True):
        if d.degree != 2:
            raise ValueError("a Lie bracket is a 2-cochain")
        self.dim = d.dim
        self.d = d
        table: dict = defaultdict(dict)
        by_target: dict = defaultdict(list)
        for ((x, y), k), c in d.terms():
            table[(x, y)][k] = c
            table[(y, x)][k] = -c
            by_target[k].append((x, y, c))
        self._table = dict(table)
        self._by_target = dict(by_target)
        if check:
            defect = nr_bracket(d, d)
            if defect:
                raise JacobiError(f"[d,d] != 0: {defect}")

    @classmethod
    def unchecked(cls, d: AdjCochain) -> LieAlgebra:
        """Construct without the Jacobi check (for deformation evaluation)."""
        return cls(d, check=False)

    @classmethod
    def from_structure_constants(cls, dim: int, constants: Iterable, *, check: bool = True) -> LieAlgebra:
        """From ``(i, j, k, c)`` tuples meaning ``[e_i, e_j] += c e_k``."""
        d = AdjCochain(dim, 2)
        for i, j, k, c in constants:
            d = d + AdjCochain.psi(dim, (i, j), k, c)
        return cls(d, check=check)

    @classmethod
    def abelian(cls, dim: int) -> LieAlgebra:
        return cls(AdjCochain(dim, 2))

    def structure_constants(self) -> list[tuple[int, int, int, Fraction]]:
        return [(I[0], I[1], k, c) for (I, k), c in sorted(self.d.terms())]

    def br(self, x: int, y: int) -> dict[int, Fraction]:
        """``[e_x, e_y]`` as ``{k: c}``."""
        return self._table.get((x, y), {})

    def bracket_vectors(self, u: Sequence, v: Sequence) -> tuple:
        out = [Fraction(0)] * self.dim
        for (x, y), row in self._table.items():
            a, b = u[x - 1], v[y - 1]
            if a and b:
                for k, c in row.items():
                    out[k - 1] += a * b * c
        return tuple(out)

    def is_jacobi(self) -> bool:
        return nr_bracket(self.d, self.d).is_zero()

    def __eq__(self, other):
        return isinstance(other, LieAlgebra) and self.d == other.d

    def __hash__(self):
        return hash(self.d)

    def __repr__(self):
        return f"LieAlgebra(dim={self.dim}, d={self.d})"


@dataclass(frozen=True)
class BilinearForm:
    """Symmetric bilinear form given by its Gram matrix."""

    matrix: Matrix
    _inv: list = field(default_factory=list, init=False, repr=False, compare=False)

    def __post_init__(self):
        if not isinstance(self.matrix, Matrix):
            object.__setattr__(self, "matrix", Matrix(self.matrix))
        if not self.matrix.is_symmetric():
            raise FormError("bilinear form matrix is not symmetric")

    @property
    def dim(self) -> int:
        return self.matrix.rows

    def __call__(self, u: Sequence, v: Sequence) -> Fraction:
        m = self.matrix
        return sum(
            (u[i] * m[i, j] * v[j] for i in range(self.dim) if u[i] for j in range(self.dim) if v[j] and m[i, j]),
            Fraction(0),
        )

    def entry(self, i: int, j: int) -> Fraction:
        return self.matrix[i - 1, j - 1]

    def is_nondegenerate(self) -> bool:
        return rank(self.matrix) == self.dim

    @property
    def inverse(self) -> Matrix:
        if not self._inv:
            if not self.is_nondegenerate():
                raise FormError("bilinear form is degenerate")
            self._inv.append(inverse(self.matrix))
        return self._inv[0]

    def __hash__(self):
        return hash(self.matrix)


# ---------------------------------------------------------------------------
# evaluation
# ---------------------------------------------------------------------------


def evaluate(c: AdjCochain, args: Sequence[int]) -> tuple:
    """``c(e_a1, ..., e_ap)`` as a coordinate vector."""
    if len(args) != c.degree:
        raise ValueError(f"{c.degree}-cochain evaluated on {len(args)} arguments")
    for a in args:
        if not 1 <= a <= c.dim:
            raise IndexError(f"basis index {a} out of range 1..{c.dim}")
    out = [Fraction(0)] * c.dim
    s = sort_with_sign(tuple(args))
    if s is None:
        return tuple(out)
    I, sign = s
    for i in range(1, c.dim + 1):
        v = c.coeff(I, i)
        if v:
            out[i - 1] = sign * v
    return tuple(out)


def evaluate_vectors(c: AdjCochain, vectors: Sequence[Sequence]) -> tuple:
    """Multilinear evaluation on arbitrary coordinate vectors (no shortcuts)."""
    if len(vectors) != c.degree:
        raise ValueError("wrong number of arguments")
    out = [Fraction(0)] * c.dim
    for idx in product(range(1, c.dim + 1), repeat=c.degree):
        w = Fraction(1)
        for v, a in zip(vectors, idx):
            w *= v[a - 1]
            if not w:
                break
        if not w:
            continue
        val = evaluate(c, idx)
        for i in range(c.dim):
            out[i] += w * val[i]
    return tuple(out)


# ---------------------------------------------------------------------------
# bracket and differentials
# ---------------------------------------------------------------------------


def compose(phi: AdjCochain, psi: AdjCochain) -> AdjCochain:
    """Insertion ``phi o psi`` of degree ``k + l - 1`` (zero if phi has degree 0)."""
    if phi.dim != psi.dim:
        raise ValueError(f"dimension mismatch: {phi.dim} vs {psi.dim}")
    k, l = phi.degree, psi.degree
    if k == 0:
        return AdjCochain(phi.dim, max(l - 1, 0))
    out: dict = defaultdict(Fraction)
    phi_terms = list(phi.terms())
    for (Ip, i), cp in psi.terms():
        for (If, j), cf in phi_terms:
            if i not in If:
                continue
            pos = If.index(i)
            R = If[:pos] + If[pos + 1 :]
            m = merge_sign(Ip, R)
            if m is None:
                continue
            J, s1 = m
            s2 = -1 if pos & 1 else 1
            out[(J, j)] += s1 * s2 * cp * cf
    return AdjCochain(phi.dim, k + l - 1, out)


def nr_bracket(phi: AdjCochain, psi: AdjCochain) -> AdjCochain:
    """Graded bracket ``[phi, psi] = phi o psi - (-1)^((k+1)(l+1)) psi o phi``."""
    if phi.dim != psi.dim:
        raise ValueError(f"dimension mismatch: {phi.dim} vs {psi.dim}")
    k, l = phi.degree, psi.degree
    if k + l == 0:
        raise ValueError("bracket of two 0-cochains is not defined")
    a = compose(phi, psi)
    b = compose(psi, phi)
    if ((k + 1) * (l + 1)) % 2:
        return a + b
    return a - b


def coboundary_adj(alg: LieAlgebra, c: AdjCochain) -> AdjCochain:
    """Chevalley-Eilenberg differential on C^p(V, V); equals ``(-1)^(p+1) [d, c]``."""
    n = alg.dim
    if c.dim != n:
        raise ValueError("cochain and algebra dimensions differ")
    out: dict = defaultdict(Fraction)
    for (I, i), cf in c.terms():
        # action sum over Sh(1, p): sign of moving x in front of I
        for x in range(1, n + 1):
            if x in I:
                continue
            row = alg.br(x, i)
            if not row:
                continue
            J, s = merge_sign((x,), I)
            for k, ck in row.items():
                out[(J, k)] += s * cf * ck
        # bracket-insertion sum over Sh(2, p-1), subtracted
        for pos, k in enumerate(I):
            R = I[:pos] + I[pos + 1 :]
            s2 = -1 if pos & 1 else 1
            for x, y, ck in alg._by_target.get(k, ()):
                m = merge_sign((x, y), R)
                if m is None:
                    continue
                J, s1 = m
                out[(J, i)] -= s1 * s2 * ck * cf
    return AdjCochain(n, c.degree + 1, out)


def coboundary_triv(alg: LieAlgebra, c: TrivCochain) -> TrivCochain:
    """Differential on C^q(V, k): only the bracket-insertion sum survives."""
    n = alg.dim
    if c.dim != n:
        raise ValueError("cochain and algebra dimensions differ")
    out: dict = defaultdict(Fraction)
    for I, cf in c.terms():
        for pos, k in enumerate(I):
            R = I[:pos] + I[pos + 1 :]
            s2 = -1 if pos & 1 else 1
            for x, y, ck in alg._by_target.get(k, ()):
                m = merge_sign((x, y), R)
                if m is None:
                    continue
                J, s1 = m
                out[J] -= s1 * s2 * ck * cf
    return TrivCochain(n, c.degree + 1, out)


# ---------------------------------------------------------------------------
# tilde map and cyclicity
# ---------------------------------------------------------------------------


def _tilde_table(c: AdjCochain, b: BilinearForm) -> dict:
    table: dict = defaultdict(Fraction)
    n = c.dim
    for (I, i), cf in c.terms():
        for m in range(1, n + 1):
            w = b.entry(i, m)
            if w:
                table[(I, m)] += cf * w
    return {k: v for k, v in table.items() if v}


def _alternation_defects(table: Mapping, degree: int, dim: int) -> Iterator[tuple]:
    """Pairs ``(I, m)`` where the lowered table fails to be alternating."""
    for I in enumerate_multiindices(dim, degree):
        for m in range(1, dim + 1):
            v = table.get((I, m), 0)
            if m in I:
                if v:
                    yield (I, m)
                continue
            J, s = merge_sign(I, (m,))
            if v != s * table.get((J[:-1], J[-1]), 0):
                yield (I, m)


def tilde(c: AdjCochain, b: BilinearForm) -> tuple[dict, TrivCochain | None]:
    """Lower ``c`` with ``b``: ``c~(v1..vp, w) = b(c(v1..vp), w)``.

    Returns the coefficient table ``{(I, m): value}`` and, when the lowered
    form is alternating, the same data as a ``TrivCochain`` of degree p+1.
    """
    if b.dim != c.dim:
        raise ValueError("form and cochain dimensions differ")
    table = _tilde_table(c, b)
    if next(_alternation_defects(table, c.degree, c.dim), None) is not None:
        return table, None
    coeffs = {I + (m,): v for (I, m), v in table.items() if all(x < m for x in I)}
    return table, TrivCochain(c.dim, c.degree + 1, coeffs)


def is_cyclic(c: AdjCochain, b: BilinearForm) -> bool:
    if not b.is_nondegenerate():
        raise FormError("cyclicity needs a nondegenerate form")
    return tilde(c, b)[1] is not None


def is_invariant(alg: LieAlgebra, b: BilinearForm) -> bool:
    """``b([x,y],z) == b(x,[y,z])`` on every basis triple."""
    n = alg.dim
    if b.dim != n:
        raise ValueError("form and algebra dimensions differ")
    for x in range(1, n + 1):
        for y in range(1, n + 1):
            xy = alg.br(x, y)
            for z in range(1, n + 1):
                lhs = sum((c * b.entry(k, z) for k, c in xy.items()), Fraction(0))
                rhs = sum((c * b.entry(x, k) for k, c in alg.br(y, z).items()), Fraction(0))
                if lhs != rhs:
                    return False
    return True


def raise_form(w: TrivCochain, b: BilinearForm) -> AdjCochain:
    """Inverse of ``tilde`` on alternating forms: the cyclic cochain lowering to w."""
    if w.degree == 0:
        raise ValueError("a 0-form is not the lowering of any cochain")
    inv = b.inverse
    n = w.dim
    out: dict = defaultdict(Fraction)
    for J, c in w.terms():
        # w(e_I, e_m) for each split of J into (I, m)
        for pos, m in enumerate(J):
            I = J[:pos] + J[pos + 1 :]
            s = -1 if (len(J) - 1 - pos) & 1 else 1
            for i in range(1, n + 1):
                g = inv[m - 1, i - 1]
                if g:
                    out[(I, i)] += s * c * g
    return AdjCochain(n, w.degree - 1, out)


def bracket_triv(phi: TrivCochain, psi: TrivCochain, b: BilinearForm) -> TrivCochain:
    """Bracket of alternating forms of degrees k+1 and l+1, degree k+l.

    ``[phi, psi](v) = sum over Sh(l, k) sign(s) phi(psi#(v_head), v_tail)`` where
    ``psi#(u)`` is the vector with ``b(psi#(u), w) = psi(u, w)``.
    """
    if phi.degree < 1 or psi.degree < 1:
        raise ValueError("bracket_triv needs forms of degree >= 1")
    n = phi.dim
    inv = b.inverse
    phi_terms = list(phi.terms())
    out: dict = defaultdict(Fraction)
    for K, cpsi in psi.terms():
        for upos, u in enumerate(K):
            H = K[:upos] + K[upos + 1 :]
            su = -1 if (len(K) - 1 - upos) & 1 else 1
            for L, cphi in phi_terms:
                for mpos, m in enumerate(L):
                    g = inv[u - 1, m - 1]
                    if not g:
                        continue
                    T = L[:mpos] + L[mpos + 1 :]
                    merged = merge_sign(H, T)
                    if merged is None:
                        continue
                    J, sj = merged
                    sm = -1 if mpos & 1 else 1
                    out[J] += sj * sm * su * g * cpsi * cphi
    return TrivCochain(n, phi.degree + psi.degree - 2, out)
