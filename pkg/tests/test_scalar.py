from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from qcousin import ConfigurationError, FieldArithmeticError, ParseError, field_from_spec
from conftest import FIELDS


def test_generic_inverse_of_q():
    F = field_from_spec("generic_q")
    assert F.q.inverse() == F.q_power(-1)
    assert F.q * F.q.inverse() == F.one


def test_fourth_root_squares_to_minus_one():
    F = field_from_spec("cyclotomic:4")
    assert F.q * F.q == -F.one


def test_rational_sum():
    F = field_from_spec("rationals")
    assert F(Fraction(1, 2)) + F(Fraction(1, 3)) == F(Fraction(5, 6))


def test_q_power_examples():
    assert field_from_spec("generic_q").q_power(0) == field_from_spec("generic_q").one
    C3 = field_from_spec("cyclotomic:3")
    assert C3.q_power(3) == C3.one
    C4 = field_from_spec("cyclotomic:4")
    assert C4.q_power(-1) == -C4.q
    assert C4.q * C4.q_power(-1) == C4.one


def test_rationals_q_is_one():
    F = field_from_spec("rationals")
    assert F.q == F.one and F.q_power(-7) == F.one


@pytest.mark.parametrize("spec", FIELDS)
def test_zero_inverse_raises(spec):
    F = field_from_spec(spec)
    with pytest.raises(FieldArithmeticError):
        F.zero.inverse()


def test_mixing_fields_raises():
    with pytest.raises(ConfigurationError):
        field_from_spec("generic_q").q + field_from_spec("cyclotomic:4").q


@pytest.mark.parametrize("bad", ["reals", "cyclotomic:0", "cyclotomic:x", ""])
def test_bad_spec(bad):
    with pytest.raises((ConfigurationError, ParseError)):
        field_from_spec(bad)


def test_parse_coefficients():
    F = field_from_spec("generic_q")
    assert F.parse("3/2 q^1") == F(Fraction(3, 2)) * F.q
    assert F.parse("q^-2") == F.q_power(-2)


def _elements(spec):
    F = field_from_spec(spec)
    frac = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    return st.builds(lambda c, e: F(c) * F.q_power(e), frac, st.integers(-4, 4)) | st.builds(
        lambda a, b: a + b, st.builds(F, frac), st.builds(lambda e: F.q_power(e), st.integers(-3, 3))
    )


@pytest.mark.parametrize("spec", FIELDS)
@given(data=st.data())
def test_field_axioms(spec, data):
    el = _elements(spec)
    a, b, c = data.draw(el), data.draw(el), data.draw(el)
    assert (a * b) * c == a * (b * c)
    assert (a + b) + c == a + (b + c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    if a:
        assert a * a.inverse() == field_from_spec(spec).one


@pytest.mark.parametrize("spec", FIELDS)
def test_q_power_inverse_pairs(spec):
    F = field_from_spec(spec)
    for e in range(-50, 51):
        assert F.q_power(e) * F.q_power(-e) == F.one


@pytest.mark.parametrize("m", [3, 4, 5, 6])
@given(e=st.integers(-40, 40))
def test_cyclotomic_period(m, e):
    F = field_from_spec(f"cyclotomic:{m}")
    assert F.q_power(e) == F.q_power(e % m)
