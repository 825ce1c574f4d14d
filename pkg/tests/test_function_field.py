"""Field elements of Q(t), places, valuations, heights and S-predicates."""

from fractions import Fraction
from random import Random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffdyn import (
    FieldElement,
    Place,
    height_elem,
    height_elem_place_sum,
    is_S_integer,
    is_S_unit,
    log_abs,
    ord_at,
    place_set,
    product_formula_defect,
    quasi_integral,
    support,
)
from ffdyn.errors import DomainError
from ffdyn.function_field import poly_ord
from ffdyn.polynomials import Poly
from ffdyn.randgen import rand_field_elem

T = Poly.t()
INF = Place.infinity()
P_T = Place.finite(T)
P_T1 = Place.finite(Poly.of(1, 1))  # t + 1


def elem(num, den=Poly.one()):
    return FieldElement.make(num, den)


def test_make_reduces_and_monicizes():
    x = FieldElement.make(Poly.of(0, 2), Poly.of(0, 0, 2))  # 2t / 2t^2
    assert x.num == Poly.one()
    assert x.den == T
    assert FieldElement.make(Poly.zero(), T) == FieldElement.zero()
    with pytest.raises(DomainError):
        FieldElement.make(T, Poly.zero())


def test_field_axioms_small():
    x = elem(Poly.of(1, 1), T)
    y = elem(Poly.of(-1, 0, 1))
    assert (x + y) - y == x
    assert (x * y) / y == x
    assert x * x.inverse() == FieldElement.one()
    assert x ** (-2) == (x * x).inverse()


def test_place_validation():
    with pytest.raises(DomainError):
        Place.finite(Poly.of(0, 2))  # not monic
    with pytest.raises(DomainError):
        Place.finite(Poly.of(-1, 0, 1))  # t^2 - 1 reducible
    assert Place.finite(Poly.of(1, 0, 1)).degree == 2  # t^2 + 1 irreducible
    assert INF.degree == 1


def test_ord_and_log_abs_examples():
    # x = t^2/(t+1): ord_(t) = 2, ord_(t+1) = -1, ord_inf = -1
    x = elem(T * T, Poly.of(1, 1))
    assert ord_at(x, P_T) == 2
    assert ord_at(x, P_T1) == -1
    assert ord_at(x, INF) == -1
    assert log_abs(x, INF) == 1
    with pytest.raises(DomainError):
        ord_at(FieldElement.zero(), P_T)


def test_poly_ord():
    p = T * T * Poly.of(1, 1)
    assert poly_ord(p, T) == 2
    assert poly_ord(p, Poly.of(1, 1)) == 1
    assert poly_ord(p, Poly.of(2, 1)) == 0


def test_product_formula_seeded():
    rng = Random(7)
    for _ in range(300):
        x = rand_field_elem(rng, nonzero=True)
        assert product_formula_defect(x) == 0


def test_height_two_routes_agree_seeded():
    rng = Random(11)
    for _ in range(300):
        x = rand_field_elem(rng)
        assert height_elem(x) == height_elem_place_sum(x)


def test_height_examples():
    assert height_elem(FieldElement.zero()) == 0
    assert height_elem(elem(Poly.of(1, 0, 1), T)) == 2  # (t^2+1)/t
    assert height_elem(elem(Poly.of(5))) == 0


def test_support():
    x = elem(T * T, Poly.of(1, 1))
    sup = support(x)
    assert set(sup) == {P_T, P_T1}


def test_is_S_integer():
    S = place_set([INF])
    # nonconstant polynomials have a pole at infinity
    assert not is_S_integer(elem(Poly.of(3, 1)), place_set([]))
    assert is_S_integer(elem(Poly.of(3, 1)), S)
    assert is_S_integer(FieldElement.zero(), place_set([]))
    # 1/t needs (t) in S
    x = elem(Poly.one(), T)
    assert not is_S_integer(x, S)
    assert is_S_integer(x, place_set([P_T]))  # integral at infinity too
    assert is_S_integer(elem(Poly.of(7)), place_set([]))  # constants always


def test_is_S_unit():
    S = place_set([P_T, INF])
    assert is_S_unit(elem(T), S)
    assert is_S_unit(elem(T, Poly.of(1, 1)) * elem(Poly.of(1, 1), Poly.one()), S)
    assert not is_S_unit(elem(Poly.of(1, 1)), S)  # t+1 not an S-unit
    assert not is_S_unit(FieldElement.zero(), S)
    assert is_S_unit(elem(Poly.of(5)), place_set([]))  # nonzero constants
    # t/(t+1) is a unit for S = {(t), (t+1)} (degrees match at infinity)
    S2 = place_set([P_T, P_T1])
    assert is_S_unit(elem(T, Poly.of(1, 1)), S2)
    assert not is_S_unit(elem(T), S2)


def test_quasi_integral():
    S = place_set([INF])
    x = elem(Poly.of(0, 0, 1), Poly.of(1, 1))  # t^2/(t+1): h = 2, S-part = 1
    assert quasi_integral(x, S, Fraction(1, 2))
    assert not quasi_integral(x, S, Fraction(3, 4))
    assert quasi_integral(FieldElement.zero(), S, Fraction(1, 2))
    with pytest.raises(DomainError):
        quasi_integral(x, S, Fraction(0))
    with pytest.raises(DomainError):
        quasi_integral(x, S, Fraction(3, 2))


@given(st.integers(-40, 40), st.integers(1, 40))
@settings(max_examples=60, deadline=None)
def test_constants_have_zero_height(a, b):
    x = FieldElement.from_rational(Fraction(a, b))
    assert height_elem(x) == 0
    if a != 0:
        assert product_formula_defect(x) == 0
