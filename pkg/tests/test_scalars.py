from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from supersphere.scalars import GaussianRational, NotASquare, grat, rational_sqrt


rationals = st.fractions(min_value=-50, max_value=50, max_denominator=20)
gaussians = st.builds(GaussianRational, rationals, rationals)


def test_basic_arithmetic():
    a = grat("3/2")
    b = grat(1, -2)
    assert a + b == GaussianRational(Fraction(5, 2), -2)
    assert a * grat(0, 1) == grat(0, "3/2")
    assert (b * b.inverse()) == grat(1)
    assert grat(2) ** -2 == grat("1/4")


def test_parse_forms():
    assert GaussianRational.parse("3/2") == grat("3/2")
    assert GaussianRational.parse("-1/3i") == grat(0, "-1/3")
    assert GaussianRational.parse("(3/2+1i)") == grat("3/2", 1)
    assert GaussianRational.parse("(2-1i)") == grat(2, -1)
    assert GaussianRational.parse("i") == grat(0, 1)


@given(gaussians, gaussians, gaussians)
def test_field_laws(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert a * b == b * a
    assert (a - b) + b == a


@given(gaussians)
def test_inverse_roundtrip(a):
    if a:
        assert a * a.inverse() == grat(1)
    else:
        with pytest.raises(ZeroDivisionError):
            a.inverse()


def test_str_parse_roundtrip():
    for value in (grat(2), grat("-7/3"), grat(0, "2/5"), grat(1, -1),
                  grat("-1/2", "-3/4")):
        assert GaussianRational.parse(str(value)) == value


def test_rational_sqrt():
    assert rational_sqrt(Fraction(9, 4)) == Fraction(3, 2)
    with pytest.raises(NotASquare):
        rational_sqrt(2)
    with pytest.raises(NotASquare):
        rational_sqrt(-1)


@given(gaussians)
def test_gaussian_sqrt_of_squares(a):
    root = (a * a).sqrt()
    assert root * root == a * a


def test_gaussian_sqrt_failures():
    with pytest.raises(NotASquare):
        grat(2).sqrt()
    with pytest.raises(NotASquare):
        grat(0, 1).sqrt()  # sqrt(i) is not Gaussian rational
    assert grat(-4).sqrt() == grat(0, 2)
    assert grat(0, 2).sqrt() * grat(0, 2).sqrt() == grat(0, 2)
