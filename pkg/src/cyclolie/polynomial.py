"""Multivariate polynomials with rational coefficients, plus a rational
expression evaluator.  Both read the same small syntax: numbers, names,
``+ - * /``, parentheses and integer powers (``^`` or ``**``).
"""

from __future__ import annotations

import ast
import keyword
import re
from fractions import Fraction
from typing import Mapping, Sequence

from .scalar_linalg import render_scalar

__all__ = ["Polynomial", "eval_expression", "ExpressionError"]


class ExpressionError(ValueError):
    pass


_KW_PREFIX = "_kw_"
_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")


def _protect(m: re.Match) -> str:
    # symbols such as ``lambda`` are Python keywords; rename before ast sees them
    w = m.group(0)
    return _KW_PREFIX + w if keyword.iskeyword(w) else w


def _parse(text: str) -> ast.expr:
    try:
        return ast.parse(_NAME.sub(_protect, text.replace("^", "**")), mode="eval").body
    except SyntaxError as exc:
        raise ExpressionError(f"cannot parse expression {text!r}") from exc


def _walk(node, leaf, zero_div_ok=False):
    if isinstance(node, ast.Constant) and isinstance(node.value, int) and not isinstance(node.value, bool):
        return leaf(node.value)
    if isinstance(node, ast.Name):
        name = node.id
        return leaf(name[len(_KW_PREFIX) :] if name.startswith(_KW_PREFIX) else name)
    if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.USub, ast.UAdd)):
        v = _walk(node.operand, leaf)
        return -v if isinstance(node.op, ast.USub) else v
    if isinstance(node, ast.BinOp):
        if isinstance(node.op, ast.Pow):
            exp = node.right
            sign = 1
            if isinstance(exp, ast.UnaryOp) and isinstance(exp.op, ast.USub):
                sign, exp = -1, exp.operand
            if not (isinstance(exp, ast.Constant) and isinstance(exp.value, int)):
                raise ExpressionError("only integer exponents are supported")
            return _walk(node.left, leaf) ** (sign * exp.value)
        a = _walk(node.left, leaf)
        b = _walk(node.right, leaf)
        if isinstance(node.op, ast.Add):
            return a + b
        if isinstance(node.op, ast.Sub):
            return a - b
        if isinstance(node.op, ast.Mult):
            return a * b
        if isinstance(node.op, ast.Div):
            return a / b
    raise ExpressionError(f"unsupported syntax: {ast.dump(node)}")


def eval_expression(text: str | int | Fraction, env: Mapping[str, Fraction] | None = None) -> Fraction:
    """Exact value of a rational expression such as ``"-1/(2*t)"``."""
    if isinstance(text, (int, Fraction)) and not isinstance(text, bool):
        return Fraction(text)
    env = env or {}

    def leaf(x):
        if isinstance(x, int):
            return Fraction(x)
        if x not in env:
            raise ExpressionError(f"unknown symbol {x!r}")
        return Fraction(env[x])

    try:
        return Fraction(_walk(_parse(str(text)), leaf))
    except ZeroDivisionError as exc:
        raise ZeroDivisionError(f"division by zero evaluating {text!r}") from exc


class Polynomial:
    """Sparse polynomial in named variables: ``{exponent tuple: coefficient}``."""

    __slots__ = ("names", "terms")

    def __init__(self, names: Sequence[str], terms: Mapping[tuple, Fraction] | None = None):
        self.names = tuple(names)
        clean = {}
        for exps, c in (terms or {}).items():
            if len(exps) != len(self.names):
                raise ValueError("exponent vector length mismatch")
            c = Fraction(c)
            if c:
                clean[tuple(exps)] = c
        self.terms = clean

    @classmethod
    def constant(cls, names, c) -> Polynomial:
        return cls(names, {(0,) * len(names): Fraction(c)})

    @classmethod
    def variable(cls, names, name) -> Polynomial:
        exps = tuple(1 if n == name else 0 for n in names)
        return cls(names, {exps: Fraction(1)})

    @classmethod
    def monomial(cls, names, exps, c=1) -> Polynomial:
        return cls(names, {tuple(exps): Fraction(c)})

    @classmethod
    def parse(cls, text: str, names: Sequence[str], env: Mapping[str, Fraction] | None = None) -> Polynomial:
        names = tuple(names)
        env = env or {}

        def leaf(x):
            if isinstance(x, int):
                return cls.constant(names, x)
            if x in names:
                return cls.variable(names, x)
            if x in env:
                return cls.constant(names, env[x])
            raise ExpressionError(f"unknown symbol {x!r} in polynomial {text!r}")

        p = _walk(_parse(str(text)), leaf)
        if not isinstance(p, Polynomial):
            raise ExpressionError(f"{text!r} is not a polynomial")
        return p

    def _coerce(self, other) -> Polynomial:
        if isinstance(other, Polynomial):
            if other.names != self.names:
                raise ValueError("polynomials over different variables")
            return other
        return Polynomial.constant(self.names, other)

    def __add__(self, other):
        other = self._coerce(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return Polynomial(self.names, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial(self.names, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        out: dict = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.names, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Polynomial):
            if other.is_constant():
                other = other.terms.get((0,) * len(self.names), Fraction(0))
            else:
                raise ExpressionError("division by a non-constant polynomial")
        return self * (1 / Fraction(other))

    def __pow__(self, k: int):
        if k < 0:
            raise ExpressionError("negative power of a polynomial")
        out = Polynomial.constant(self.names, 1)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(self.names, other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.names == other.names and self.terms == other.terms

    def __hash__(self):
        return hash((self.names, frozenset(self.terms.items())))

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def degree(self) -> int:
        return max((sum(e) for e in self.terms), default=-1)

    def min_degree(self) -> int:
        return min((sum(e) for e in self.terms), default=-1)

    def homogeneous_part(self, deg: int) -> Polynomial:
        return Polynomial(self.names, {e: c for e, c in self.terms.items() if sum(e) == deg})

    def __call__(self, point: Sequence) -> Fraction:
        return self.evaluate(point)

    def evaluate(self, point: Sequence) -> Fraction:
        if len(point) != len(self.names):
            raise ValueError(f"expected {len(self.names)} parameter values, got {len(point)}")
        total = Fraction(0)
        pt = [Fraction(x) for x in point]
        for e, c in self.terms.items():
            v = c
            for x, k in zip(pt, e):
                if k:
                    v *= x**k
            total += v
        return total

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for e in sorted(self.terms, key=lambda e: (sum(e), tuple(-x for x in e))):
            c = self.terms[e]
            factors = []
            for name, k in zip(self.names, e):
                if k == 1:
                    factors.append(name)
                elif k > 1:
                    factors.append(f"{name}^{k}")
            mono = "*".join(factors)
            mag = abs(c)
            if mono:
                body = mono if mag == 1 else f"{render_scalar(mag)}*{mono}"
            else:
                body = render_scalar(mag)
            parts.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    def __repr__(self):
        return f"Polynomial({self})"
