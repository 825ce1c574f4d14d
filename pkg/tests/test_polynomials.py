"""Exact polynomial arithmetic in Q[t] and Q[t][z]."""

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from ffdyn.errors import DomainError
from ffdyn.polynomials import Poly, ZPoly, poly_gcd

fractions = st.fractions(
    min_value=-20, max_value=20, max_denominator=8
)
polys = st.lists(fractions, min_size=0, max_size=6).map(Poly.from_list)
nonzero_polys = polys.filter(lambda p: not p.is_zero)


def test_zero_poly_conventions():
    z = Poly.zero()
    assert z.degree == -1
    assert z.is_zero
    assert z.coeffs == ()
    assert Poly.of(0, 0, 0) == z


def test_basic_arithmetic():
    p = Poly.of(1, 2)  # 2t + 1
    q = Poly.of(-1, 0, 3)  # 3t^2 - 1
    assert p + q == Poly.of(0, 2, 3)
    assert p * q == Poly.of(-1, -2, 3, 6)
    assert (p - p).is_zero
    assert p.scale(Fraction(1, 2)) == Poly.of(Fraction(1, 2), 1)
    assert Poly.t() ** 3 == Poly.of(0, 0, 0, 1)


def test_divmod_and_exact_div():
    p = Poly.of(-1, 0, 1)  # t^2 - 1
    d = Poly.of(1, 1)  # t + 1
    q, r = p.divmod(d)
    assert q == Poly.of(-1, 1) and r.is_zero
    assert p.exact_div(d) == q
    with pytest.raises(DomainError):
        Poly.of(1, 1).exact_div(Poly.t())


def test_gcd_and_content():
    a = Poly.of(0, 2, 2)  # 2t^2 + 2t = 2t(t+1)
    b = Poly.of(0, 0, 4)  # 4t^2
    assert poly_gcd(a, b) == Poly.t()
    assert a.content() == 2
    assert a.primitive() == Poly.of(0, 1, 1)
    assert Poly.of(-2, -4).primitive() == Poly.of(1, 2)


@given(polys, polys, polys)
@settings(max_examples=100, deadline=None)
def test_ring_axioms(a, b, c):
    assert a + b == b + a
    assert a * b == b * a
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)


@given(polys, nonzero_polys)
@settings(max_examples=100, deadline=None)
def test_divmod_invariant(a, b):
    q, r = a.divmod(b)
    assert q * b + r == a
    assert r.degree < b.degree


@given(nonzero_polys, nonzero_polys)
@settings(max_examples=100, deadline=None)
def test_gcd_divides_both(a, b):
    g = poly_gcd(a, b)
    assert g.divides(a) and g.divides(b)
    assert g.is_monic


def test_long_multiplication_int_fast_path():
    # degree >= 24 on both sides routes through the integer convolution
    a = Poly.from_list([Fraction(i, 3) for i in range(1, 30)])
    b = Poly.from_list([Fraction(2 * i + 1, 5) for i in range(30)])
    slow = Poly.zero()
    for i, c in enumerate(a.coeffs):
        slow = slow + b.scale(c).shift(i)
    assert a * b == slow


def test_zpoly_basic():
    f = ZPoly.of(Poly.t(), 0, 1)  # z^2 + t
    assert f.degree == 2
    assert f.coeff(0) == Poly.t()
    assert f.leading == Poly.one()
    g = ZPoly.z() * ZPoly.z() + ZPoly.of(Poly.t())
    assert f == g
    assert f.derivative_z() == ZPoly.of(0, 2)
    assert f.max_coeff_tdegree() == 1


def test_homogeneous_eval_matches_substitution():
    # f(z) = z^2 + t evaluated as a degree-2 form at (a, b)
    f = ZPoly.of(Poly.t(), 0, 1)
    a, b = Poly.of(1, 1), Poly.of(0, 2)
    direct = a * a + Poly.t() * b * b
    assert f.homogeneous_eval(a, b, 2) == direct
    # degree-3 homogenization multiplies by the extra power of b
    assert f.homogeneous_eval(a, b, 3) == direct * b


def test_homogeneous_eval_zpoly_arguments():
    # composing z^2 + t with itself through the homogeneous route
    f = ZPoly.of(Poly.t(), 0, 1)
    F = f.homogeneous_eval(f, ZPoly.one(), 2)
    # (z^2+t)^2 + t
    expected = f * f + ZPoly.of(Poly.t())
    assert F == expected


def test_zpoly_content_and_exact_div():
    f = ZPoly.of(Poly.of(0, 2), Poly.of(0, 0, 4))  # 4t^2 z + 2t
    assert f.content_poly() == Poly.t()
    assert f.rational_content() == 2
    assert f.exact_div_poly(Poly.t()) == ZPoly.of(Poly.of(2), Poly.of(0, 4))
