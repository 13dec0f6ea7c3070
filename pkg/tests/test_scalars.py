from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from virw.scalars import GaussianRational, arith, as_scalar, format_scalar, gq, parse_scalar

rationals = st.fractions(max_denominator=50).filter(lambda f: abs(f.numerator) < 10**6)
scalars = st.builds(gq, rationals, rationals)


@given(scalars, scalars, scalars)
def test_field_axioms(a, b, c):
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a - a == 0


@given(scalars, scalars)
def test_division_inverts_multiplication(a, b):
    if b:
        assert (a * b) / b == a
        assert arith(a, b, "div") * b == a


@given(scalars)
def test_format_parse_round_trip(a):
    assert parse_scalar(format_scalar(a)) == a


@given(rationals)
def test_real_values_are_fractions(x):
    z = gq(x, 1) - gq(0, 1)
    assert isinstance(z, Fraction) and z == x


def test_i_squared():
    i = gq(0, 1)
    assert i * i == -1
    assert format_scalar(gq(Fraction(1, 2), Fraction(-3, 4))) == "1/2-3/4*i"
    assert isinstance(i, GaussianRational)


def test_parse_abbreviations():
    assert parse_scalar("i") == gq(0, 1)
    assert parse_scalar("-i") == gq(0, -1)
    assert parse_scalar("3") == 3
    assert parse_scalar("(1/2+2*i)") == gq(Fraction(1, 2), 2)


def test_division_by_zero_raises():
    with pytest.raises(ZeroDivisionError):
        arith(1, 0, "div")
    with pytest.raises(ZeroDivisionError):
        gq(1, 1) / gq(0, 0)


def test_inexact_inputs_rejected():
    with pytest.raises(TypeError):
        as_scalar(0.5)
    with pytest.raises(TypeError):
        as_scalar(True)
    with pytest.raises(ValueError):
        parse_scalar("abc")
