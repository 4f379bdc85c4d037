"""Seeded random generators and property checks shared by the test suite and
the ``reproduce`` command.

Everything takes an explicit ``random.Random`` so runs are deterministic.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import permutations
from math import factorial
from typing import Sequence

from .cochains import (
    AdjCochain,
    BilinearForm,
    LieAlgebra,
    bracket_triv,
    evaluate,
    nr_bracket,
    tilde,
)
from .cohomology import _cyclic_subspace, cohomology_report
from .deformations import pushforward
from .exterior import enumerate_multiindices, permutation_sign
from .scalar_linalg import Matrix, rank

__all__ = [
    "random_scalar",
    "random_cochain",
    "random_cyclic_cochain",
    "random_unimodular",
    "random_invertible",
    "conjugate",
    "naive_compose",
    "naive_nr_bracket",
    "antisymmetry_holds",
    "cyclic_closure_holds",
    "tilde_compatibility_holds",
    "basis_change_invariant",
]


def random_scalar(rng: random.Random, num: int = 9, den: int = 5) -> Fraction:
    return Fraction(rng.randint(-num, num), rng.randint(1, den))


def random_cochain(rng: random.Random, dim: int, degree: int, density: float = 0.4) -> AdjCochain:
    coeffs = {}
    for key in AdjCochain.basis_keys(dim, degree):
        if rng.random() < density:
            coeffs[key] = random_scalar(rng, 4, 3)
    return AdjCochain(dim, degree, coeffs)


def random_cyclic_cochain(rng: random.Random, b: BilinearForm, degree: int) -> AdjCochain:
    basis = _cyclic_subspace(b, degree).basis
    n = b.dim
    if not basis:
        return AdjCochain(n, degree)
    cs = [Fraction(rng.randint(-3, 3)) for _ in basis]
    vec = [sum((c * v[i] for c, v in zip(cs, basis)), Fraction(0)) for i in range(len(basis[0]))]
    return AdjCochain.from_vector(n, degree, vec)


def random_unimodular(rng: random.Random, n: int, steps: int | None = None) -> Matrix:
    """Integer matrix of determinant ±1: a signed permutation times shears."""
    perm = list(range(n))
    rng.shuffle(perm)
    rows = [[0] * n for _ in range(n)]
    for i, p in enumerate(perm):
        rows[i][p] = rng.choice((1, -1))
    for _ in range(steps if steps is not None else max(2, n // 2)):
        i, j = rng.sample(range(n), 2)
        c = rng.choice((-2, -1, 1, 2))
        rows[i] = [a + c * b for a, b in zip(rows[i], rows[j])]
    return Matrix(rows)


def random_invertible(rng: random.Random, n: int) -> Matrix:
    while True:
        m = Matrix([[random_scalar(rng, 5, 3) for _ in range(n)] for _ in range(n)])
        if rank(m) == n:
            return m


def conjugate(g: Matrix, alg: LieAlgebra, b: BilinearForm) -> tuple[LieAlgebra, BilinearForm]:
    """The same metric algebra written in the basis ``g e_1, ..., g e_n``."""
    d = pushforward(g, alg.d)
    return LieAlgebra(d), BilinearForm(g.T @ b.matrix @ g)


# ---------------------------------------------------------------------------
# naive evaluator: full permutation sums, no unshuffles
# ---------------------------------------------------------------------------


def _value(c: AdjCochain, first: Sequence[Fraction], rest: Sequence[int]) -> list[Fraction]:
    out = [Fraction(0)] * c.dim
    for m, w in enumerate(first, start=1):
        if w:
            val = evaluate(c, (m, *rest))
            for i in range(c.dim):
                out[i] += w * val[i]
    return out


def naive_compose(phi: AdjCochain, psi: AdjCochain) -> AdjCochain:
    """``phi o psi`` from the averaged permutation sum over S_{k+l-1}."""
    k, l, n = phi.degree, psi.degree, phi.dim
    deg = k + l - 1
    norm = Fraction(1, factorial(l) * factorial(k - 1))
    coeffs = {}
    for J in enumerate_multiindices(n, deg):
        total = [Fraction(0)] * n
        for perm in permutations(range(deg)):
            s = permutation_sign(perm)
            args = [J[p] for p in perm]
            inner = evaluate(psi, args[:l])
            val = _value(phi, inner, args[l:])
            for i in range(n):
                total[i] += s * val[i]
        for i in range(n):
            if total[i]:
                coeffs[(J, i + 1)] = total[i] * norm
    return AdjCochain(n, deg, coeffs)


def naive_nr_bracket(phi: AdjCochain, psi: AdjCochain) -> AdjCochain:
    k, l = phi.degree, psi.degree
    sign = -1 if ((k + 1) * (l + 1)) % 2 else 1
    return naive_compose(phi, psi) - naive_compose(psi, phi) * sign


# ---------------------------------------------------------------------------
# property checks
# ---------------------------------------------------------------------------


def antisymmetry_holds(phi: AdjCochain, psi: AdjCochain) -> bool:
    """``[phi, psi] = -(-1)^((k-1)(l-1)) [psi, phi]`` (shifted degrees)."""
    k, l = phi.degree, psi.degree
    sign = -1 if ((k - 1) * (l - 1)) % 2 else 1
    return nr_bracket(phi, psi) == nr_bracket(psi, phi) * (-sign)


def cyclic_closure_holds(phi: AdjCochain, psi: AdjCochain, b: BilinearForm) -> bool:
    return tilde(nr_bracket(phi, psi), b)[1] is not None


def tilde_compatibility_holds(phi: AdjCochain, psi: AdjCochain, b: BilinearForm) -> bool:
    """Lowering turns the cochain bracket into the bracket of forms."""
    t = tilde(nr_bracket(phi, psi), b)[1]
    tp, tq = tilde(phi, b)[1], tilde(psi, b)[1]
    if t is None or tp is None or tq is None:
        return False
    return bracket_triv(tp, tq, b) == t


def basis_change_invariant(alg: LieAlgebra, b: BilinearForm, g: Matrix, degrees=range(4)) -> tuple[bool, dict, dict]:
    before = cohomology_report(alg, b, degrees)
    alg2, b2 = conjugate(g, alg, b)
    after = cohomology_report(alg2, b2, degrees)
    x = {k: before.column(k) for k in ("hc", "hrc", "h")}
    y = {k: after.column(k) for k in ("hc", "hrc", "h")}
    return x == y, x, y
