from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from cyclolie.polynomial import ExpressionError, Polynomial, eval_expression

NAMES = ("t1", "t2", "t3")


def test_eval_expression():
    assert eval_expression("-1/(2*t)", {"t": Fraction(3)}) == Fraction(-1, 6)
    assert eval_expression("(1+t2)/lambda", {"t2": 1, "lambda": 2}) == 1
    assert eval_expression("2^3 - 3**2") == -1
    assert eval_expression("t^-1", {"t": 4}) == Fraction(1, 4)
    assert eval_expression(Fraction(2, 3)) == Fraction(2, 3)
    with pytest.raises(ExpressionError):
        eval_expression("x + 1")
    with pytest.raises(ExpressionError):
        eval_expression("2^t", {"t": 2})
    with pytest.raises(ExpressionError):
        eval_expression("__import__('os')")
    with pytest.raises(ZeroDivisionError):
        eval_expression("1/(1+t)", {"t": -1})


def test_parse_and_print():
    p = Polynomial.parse("2*t1*t5 - 2*t6*t2", ("t1", "t2", "t5", "t6"))
    assert str(p) == "2*t1*t5 - 2*t2*t6"
    assert p.evaluate([1, 2, 2, 1]) == 0
    assert p.evaluate([1, 0, 1, 0]) == 2
    q = Polynomial.parse("(t1 + t2)^2 - lambda*t3", NAMES, {"lambda": Fraction(1, 2)})
    assert q.terms == {(2, 0, 0): 1, (1, 1, 0): 2, (0, 2, 0): 1, (0, 0, 1): Fraction(-1, 2)}
    assert q.degree() == 2 and q.min_degree() == 1
    assert q.homogeneous_part(1) == Polynomial.monomial(NAMES, (0, 0, 1), Fraction(-1, 2))
    with pytest.raises(ExpressionError):
        Polynomial.parse("1/t1", NAMES)
    with pytest.raises(ExpressionError):
        Polynomial.parse("t4", NAMES)


polys = st.dictionaries(
    st.tuples(*(st.integers(0, 2) for _ in NAMES)),
    st.fractions(min_value=-5, max_value=5, max_denominator=4),
    max_size=5,
).map(lambda t: Polynomial(NAMES, t))
points = st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=3, max_size=3)


@given(polys, polys, points)
def test_ring_operations_commute_with_evaluation(p, q, x):
    assert (p + q)(x) == p(x) + q(x)
    assert (p * q)(x) == p(x) * q(x)
    assert (p - q)(x) == p(x) - q(x)
    assert (p**2)(x) == p(x) ** 2


@given(polys)
def test_print_parse_round_trip(p):
    assert Polynomial.parse(str(p), NAMES) == p
