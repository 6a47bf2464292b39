from fractions import Fraction

import pytest
from hypothesis import given

from conftest import gaussians, nonzero_gaussians
from liereach.gaussian import I, ONE, ZERO, GaussianRational, format_coefficient, gq


def test_i_squared_is_minus_one():
    assert I * I == -ONE


def test_coerce_rejects_floats():
    with pytest.raises(TypeError):
        GaussianRational.coerce(0.5)
    with pytest.raises(TypeError):
        GaussianRational.coerce(1j)


def test_immutable():
    z = gq(1, 2)
    with pytest.raises(AttributeError):
        z.re = Fraction(3)


def test_division_and_conjugate():
    z = gq(1, 1)
    assert z / z == ONE
    assert z * z.conjugate() == gq(2)
    assert z.inverse() == gq(Fraction(1, 2), Fraction(-1, 2))
    with pytest.raises(ZeroDivisionError):
        ZERO.inverse()


@pytest.mark.parametrize("z, text", [
    (gq(2), "2"),
    (gq(0, 2), "2i"),
    (gq(-1), "-1"),
    (gq(0, Fraction(1, 2)), "(1/2)i"),
])
def test_format(z, text):
    assert format_coefficient(z) == text


def test_equal_values_hash_alike():
    assert hash(gq(Fraction(2, 4), 0)) == hash(gq(Fraction(1, 2)))
    assert gq(3) == 3


@given(gaussians, gaussians)
def test_add_sub_round_trip(a, b):
    assert (a + b) - b == a


@given(gaussians, nonzero_gaussians)
def test_mul_div_round_trip(a, b):
    assert (a * b) / b == a


@given(gaussians, gaussians, gaussians)
def test_distributive(a, b, c):
    assert a * (b + c) == a * b + a * c


@given(gaussians, gaussians)
def test_complex_cast_matches_float_arithmetic(a, b):
    assert abs(complex(a * b) - complex(a) * complex(b)) < 1e-12
