from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from extstirling.numeric import (
    Poly,
    binomial,
    falling_factorial_poly,
    format_scalar,
    parse_scalar,
    poly_eval,
)

rationals = st.fractions(max_denominator=50).filter(lambda q: abs(q) < 10**6)
polys = st.lists(rationals, max_size=6).map(lambda cs: Poly(tuple(cs)))


@pytest.mark.parametrize("n,k,expected", [(5, 2, 10), (7, 0, 1), (4, 7, 0), (4, -1, 0), (0, 0, 1)])
def test_binomial(n, k, expected):
    assert binomial(n, k) == expected


def test_binomial_rejects_negative_n():
    with pytest.raises(ValueError):
        binomial(-1, 0)


def test_pascal_recurrence():
    for n in range(1, 65):
        for k in range(1, n + 1):
            assert binomial(n, k) == binomial(n - 1, k - 1) + binomial(n - 1, k)


def test_falling_factorial():
    assert falling_factorial_poly(0) == Poly.constant(1)
    assert falling_factorial_poly(2) == Poly((0, -1, 1))
    # x(x-1)(x-2) by repeated multiplication
    by_hand = Poly((0, 1)) * Poly((-1, 1)) * Poly((-2, 1))
    assert falling_factorial_poly(3) == by_hand == Poly((0, 2, -3, 1))


def test_falling_factorial_values_at_integers():
    for l in range(7):
        p = falling_factorial_poly(l)
        for v in range(10):
            expected = 1
            for i in range(l):
                expected *= v - i
            assert p(v) == expected


def test_poly_eval_examples():
    assert poly_eval(Poly((0, -1, 1)), Fraction(3)) == 6
    assert poly_eval(Poly(), Fraction(7, 2)) == 0
    assert poly_eval(Poly((0, 2, -3, 1)), Fraction(1, 2)) == Fraction(3, 8)


def test_trailing_zeros_trimmed():
    p = Poly((1, 2, 0, 0))
    assert p.coeffs == (1, 2)
    assert p.degree == 1
    assert Poly((0, 0)).is_zero() and Poly().degree == -1


@given(polys, polys, rationals)
def test_eval_is_multiplicative(p, q, v):
    assert poly_eval(p * q, v) == poly_eval(p, v) * poly_eval(q, v)


@given(polys, polys, rationals)
def test_eval_is_additive(p, q, v):
    assert poly_eval(p + q, v) == poly_eval(p, v) + poly_eval(q, v)


@given(rationals, rationals, rationals)
def test_field_laws(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * b == b * a and a + b == b + a
    assert a * (b + c) == a * b + a * c


@given(rationals)
def test_scalar_string_roundtrip(q):
    assert parse_scalar(format_scalar(q)) == q


@pytest.mark.parametrize("text,value", [("-3/7", Fraction(-3, 7)), ("5", Fraction(5)), ("6/4", Fraction(3, 2)), (" 2/-4 ", Fraction(-1, 2))])
def test_parse_scalar(text, value):
    assert parse_scalar(text) == value


def test_format_is_canonical():
    assert format_scalar(Fraction(-6, 14)) == "-3/7"
    assert format_scalar(Fraction(10, 2)) == "5"


@pytest.mark.parametrize("bad", ["1.5", "a/b", "", "1/2/3"])
def test_parse_scalar_rejects(bad):
    with pytest.raises(ValueError):
        parse_scalar(bad)


def test_parse_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        parse_scalar("1/0")
