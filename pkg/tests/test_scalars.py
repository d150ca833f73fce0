from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from artifact.scalars import (
    ONE,
    ZERO,
    Cyclotomic,
    QSeries,
    cyc_root,
    geometric_inverse,
    series_mul,
    sqrt_minus3,
    zeta3,
)

small = st.fractions(min_value=-5, max_value=5, max_denominator=6)
cyclotomics = st.lists(small, min_size=8, max_size=8).map(Cyclotomic)


def test_cyc_root_one_is_one():
    assert cyc_root(1) == ONE


@pytest.mark.parametrize("n", [1, 2, 3, 4, 6, 8, 12, 24])
def test_cyc_root_is_primitive(n):
    z = cyc_root(n)
    assert z ** n == ONE
    assert all(z ** k != ONE for k in range(1, n))


def test_cube_root_minimal_polynomial():
    assert cyc_root(3) + cyc_root(3) ** 2 == Cyclotomic.from_rational(-1)


def test_cyc_root_rejects_non_divisor():
    with pytest.raises(ValueError):
        cyc_root(5)


def test_named_roots_inside_zeta24():
    z = cyc_root(24)
    assert zeta3() == z ** 8
    assert cyc_root(8) == z ** 3
    assert sqrt_minus3() == zeta3(1) - zeta3(2)
    assert sqrt_minus3() ** 2 == Cyclotomic.from_rational(-3)
    assert cyc_root(3) * cyc_root(8) == z ** 11


def test_kappa_compatibility():
    z = cyc_root(24)
    for m in (1, 2, 3, 4, 6, 8, 12, 24):
        assert z ** (24 // m) == cyc_root(m)


def test_zeta24_to_the_24_reduces_to_one():
    assert Cyclotomic.zeta(24) == ONE
    assert Cyclotomic.zeta(25) == Cyclotomic.zeta(1)


@given(cyclotomics, cyclotomics, cyclotomics)
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + ZERO == a


@given(cyclotomics)
def test_inverse_of_nonzero(a):
    if not a.is_zero():
        assert a * a.inverse() == ONE


def test_rational_embedding_is_coefficient_zero():
    r = Cyclotomic.from_rational(Fraction(3, 7))
    assert r.coeffs == (Fraction(3, 7),) + (Fraction(0),) * 7
    assert r.to_rational() == Fraction(3, 7)


def _poly(coeffs, order):
    return QSeries.from_exponents(coeffs, order)


def test_series_identity_product():
    a = QSeries.one(2)
    b = _poly({0: 1, Fraction(1, 3): 1}, 2)
    assert series_mul(a, b) == b


def test_series_square_is_binomial():
    b = _poly({0: 1, Fraction(1, 3): 1}, 2)
    assert b * b == _poly({0: 1, Fraction(1, 3): 2, Fraction(2, 3): 1}, 2)


def test_geometric_inverse_cancels():
    order = 5
    g = geometric_inverse(Fraction(1, 3), 1, order)
    one_minus = _poly({0: 1, Fraction(1, 3): -1}, order)
    assert one_minus * g == QSeries.one(order)


def test_truncation_drops_high_terms():
    s = _poly({0: 1, 3: 5}, 2)
    assert s == QSeries.one(2)
    assert s.order == 2
    with pytest.raises(ValueError):
        s.coefficient(3)


def test_rendering_format():
    s = _poly({Fraction(1, 3): 2}, 1)
    assert str(s) == "2 * q^(1/3)"


exps = st.sampled_from([0, Fraction(1, 9), Fraction(1, 6), Fraction(1, 3), Fraction(1, 2), 1])
series = st.dictionaries(exps, st.integers(-3, 3), max_size=4).map(lambda d: _poly(d, 2))


@given(series, series, series)
def test_series_ring_laws(a, b, c):
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
