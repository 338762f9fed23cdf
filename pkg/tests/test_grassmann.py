import pytest
from hypothesis import given, settings, strategies as st

from supersphere.grassmann import (
    DimensionMismatch,
    NotInvertible,
    Supernumber,
    labels_from_mask,
    mask_from_labels,
)
from supersphere.scalars import GaussianRational, grat

L = 6

coeffs = st.builds(
    GaussianRational,
    st.fractions(min_value=-9, max_value=9, max_denominator=4),
    st.fractions(min_value=-9, max_value=9, max_denominator=4),
)


def supernumbers(generators=L, max_terms=5):
    return st.dictionaries(
        st.integers(min_value=0, max_value=(1 << generators) - 1),
        coeffs,
        max_size=max_terms,
    ).map(lambda terms: Supernumber(generators, terms))


def homogeneous(generators=L, parity=0):
    mask_values = [m for m in range(1 << generators)
                   if m.bit_count() % 2 == parity]
    return st.dictionaries(
        st.sampled_from(mask_values), coeffs, max_size=4
    ).map(lambda terms: Supernumber(generators, terms))


def test_generator_relations():
    z1 = Supernumber.generator(L, 1)
    z2 = Supernumber.generator(L, 2)
    assert z1 * z2 == Supernumber.monomial(L, (1, 2))
    assert z2 * z1 == Supernumber.monomial(L, (1, 2), grat(-1))
    assert (z1 * z1).is_zero()


def test_distributes_over_simple_sum():
    z1 = Supernumber.generator(L, 1)
    z2 = Supernumber.generator(L, 2)
    one = Supernumber.one(L)
    product = (one + z1) * (one + z2)
    assert product == one + z1 + z2 + z1 * z2


def test_mask_labels_roundtrip():
    assert labels_from_mask(mask_from_labels((1, 3, 6), L)) == (1, 3, 6)
    with pytest.raises(ValueError):
        mask_from_labels((3, 1), L)
    with pytest.raises(ValueError):
        mask_from_labels((1, 7), L)


def test_body_soul_examples():
    z12 = Supernumber.monomial(L, (1, 2))
    x = Supernumber.scalar(L, 3) + z12
    body, soul = x.body_soul()
    assert body == grat(3)
    assert soul == z12
    assert Supernumber.generator(L, 1).body_soul() == (
        grat(0), Supernumber.generator(L, 1))
    assert Supernumber.zero(L).body_soul() == (grat(0), Supernumber.zero(L))


def test_inverse_examples():
    two = Supernumber.scalar(L, 2)
    assert two.inverse() == Supernumber.scalar(L, "1/2")
    x = Supernumber.one(L) + Supernumber.monomial(L, (1, 2))
    inv = x.inverse()
    # oracle: multiplying back must give exactly one
    assert x * inv == Supernumber.one(L)
    assert inv == Supernumber.one(L) + Supernumber.monomial(L, (1, 2), grat(-1))
    with pytest.raises(NotInvertible):
        Supernumber.generator(L, 1).inverse()


def test_extend_restrict_examples():
    z12 = Supernumber.monomial(2, (1, 2))
    assert z12.extend(4) == Supernumber.monomial(4, (1, 2))
    mixed = Supernumber.generator(4, 1) + Supernumber.generator(4, 3)
    assert mixed.restrict(2) == Supernumber.generator(2, 1)
    x = Supernumber.one(4) + Supernumber.monomial(4, (2, 4), grat(0, 1))
    assert x.extend(6).restrict(4) == x
    with pytest.raises(DimensionMismatch):
        x.extend(3)
    with pytest.raises(DimensionMismatch):
        x.restrict(5)


def test_dimension_mismatch_in_product():
    with pytest.raises(DimensionMismatch):
        Supernumber.one(4) * Supernumber.one(6)


@settings(max_examples=60)
@given(supernumbers(), supernumbers(), supernumbers())
def test_associativity_and_distributivity(x, y, z):
    assert (x * y) * z == x * (y * z)
    assert x * (y + z) == x * y + x * z


@settings(max_examples=60)
@given(st.integers(0, 1), st.integers(0, 1), st.data())
def test_supercommutativity(p, q, data):
    x = data.draw(homogeneous(parity=p))
    y = data.draw(homogeneous(parity=q))
    sign = (-1) ** (p * q)
    assert x * y == (y * x).scale(sign)
    product = x * y
    if product:
        assert product.parity() == (p + q) % 2


@settings(max_examples=60)
@given(supernumbers())
def test_nilpotency_and_inverse(x):
    assert (x.soul() ** (L + 1)).is_zero()
    if x.body():
        inv = x.inverse()
        assert x * inv == Supernumber.one(L)
        assert inv * x == Supernumber.one(L)
    else:
        with pytest.raises(NotInvertible):
            x.inverse()


@settings(max_examples=40)
@given(supernumbers(generators=4), supernumbers(generators=4))
def test_extension_is_multiplicative(x, y):
    assert (x * y).extend(6) == x.extend(6) * y.extend(6)
    assert (x + y).extend(6) == x.extend(6) + y.extend(6)
    assert x.extend(6).restrict(4) == x


def test_parity_queries():
    x = Supernumber.one(L) + Supernumber.monomial(L, (1, 2))
    assert x.parity() == 0 and x.is_even()
    y = Supernumber.generator(L, 3) + Supernumber.monomial(L, (1, 2, 4))
    assert y.parity() == 1 and y.is_odd()
    assert (x + y).parity() is None
    assert (x + y).even_part() == x
    assert (x + y).odd_part() == y
    assert Supernumber.zero(L).parity() == 0


def test_grade_involution_is_product_twist():
    x = Supernumber.generator(L, 1) + Supernumber.one(L)
    assert x.grade_involution() == Supernumber.one(L) - Supernumber.generator(L, 1)
