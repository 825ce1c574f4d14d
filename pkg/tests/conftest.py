from fractions import Fraction

import pytest

from ffdyn import Place, place_set, parse_point, parse_rational_map
from ffdyn.polynomials import Poly


@pytest.fixture
def quad_poly_map():
    """z^2 + t: polynomial map, good reduction everywhere."""
    return parse_rational_map("z^2+t")


@pytest.fixture
def quad_quotient_map():
    """(z^2 - t)/z: non-polynomial map with bad reduction at (t)."""
    return parse_rational_map("(z^2-t)/z")


@pytest.fixture
def monomial_map():
    """t*z^2: the excluded monomial shape."""
    return parse_rational_map("t*z^2")


@pytest.fixture
def place_t():
    return Place.finite(Poly.t())


@pytest.fixture
def S_inf():
    return place_set([Place.infinity()])


@pytest.fixture
def S_t_inf(place_t):
    return place_set([place_t, Place.infinity()])


@pytest.fixture
def half():
    return Fraction(1, 2)


@pytest.fixture
def point_zero():
    return parse_point("0")


@pytest.fixture
def point_t():
    return parse_point("t")


@pytest.fixture
def point_inf():
    return parse_point("inf")
