from fractions import Fraction

import pytest
from hypothesis import given

from gradecone import ParseError, QQ, parse_polynomial

from conftest import polynomials, ring

R = ring("xyz")
RQ = ring("xyz", QQ)


@given(polynomials(R, max_deg=5, max_terms=6))
def test_print_parse_round_trip_fp(f):
    assert R.parse(str(f)) == f


@given(polynomials(RQ, max_deg=4))
def test_print_parse_round_trip_q(f):
    g = f * Fraction(2, 7)
    assert RQ.parse(str(g)) == g


@pytest.mark.parametrize("text,expected", [
    ("x^2*y - 3*z", "x^2*y - 3*z"),
    ("  x *  y ", "x*y"),
    ("-x + x", "0"),
    ("(x + y)^2", "x^2 + 2*x*y + y^2"),
    ("2*(x - 1/2)", "2*x - 1"),
    ("-(x)", "-x"),
    ("0", "0"),
])
def test_accepted_forms(text, expected):
    assert str(R.parse(text)) == expected


def test_rational_coefficients():
    f = RQ.parse("3/4*x^2 - 1/6")
    assert f.as_dict()[(2, 0, 0)] == Fraction(3, 4)
    assert R.parse("3/2*x") == R.parse("16003*x")


@pytest.mark.parametrize("text,position", [
    ("x^", 2),
    ("2x", 1),
    ("x**2", 2),
    ("x + + y", 4),
    ("w", 0),
    ("x^-1", 2),
    ("x^2y", 3),
    ("", 0),
    ("x/y", 1),
    ("(x + y", 6),
])
def test_errors_carry_position(text, position):
    with pytest.raises(ParseError) as info:
        parse_polynomial(text, R)
    assert info.value.position == position
    assert f"position {position}" in str(info.value)


def test_division_by_zero_rejected():
    with pytest.raises((ParseError, ZeroDivisionError)):
        R.parse("x/0")
    with pytest.raises((ParseError, ZeroDivisionError)):
        RQ.parse("1/0*x")
