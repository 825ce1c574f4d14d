"""Expression parsing and canonical printing: the two must be exact inverses."""

from fractions import Fraction
from random import Random

import pytest

from ffdyn import (
    FieldElement,
    Place,
    parse_field_elem,
    parse_place,
    parse_places,
    parse_point,
    parse_rational_map,
    parse_split_form,
)
from ffdyn.errors import ParseError
from ffdyn.exprs import (
    field_elem_text,
    form_text,
    map_text,
    place_text,
    places_text,
    point_text,
    poly_text,
)
from ffdyn.polynomials import Poly
from ffdyn.randgen import (
    rand_field_elem,
    rand_map,
    rand_place_set,
    rand_point,
    rand_split_fiber_instance,
)

# ---------------------------------------------------------------------------
# Parsing
# ---------------------------------------------------------------------------


def test_parse_field_elem_examples():
    x = parse_field_elem("(t^2+1)/t")
    assert x.num == Poly.of(1, 0, 1) and x.den == Poly.t()
    y = parse_field_elem("1/2*t - 3")
    assert y == FieldElement.make(Poly.of(-6, 1), Poly.of(2))
    assert parse_field_elem("-(t+1)^2") == parse_field_elem("-t^2 - 2*t - 1")
    assert parse_field_elem("5") == FieldElement.from_rational(Fraction(5))


def test_parse_precedence_and_associativity():
    # ^ binds tighter than unary minus: -t^2 = -(t^2)
    assert parse_field_elem("-t^2") == -parse_field_elem("t^2")
    # left-assoc division: 1/2/2 = 1/4
    assert parse_field_elem("1/2/2") == FieldElement.from_rational(Fraction(1, 4))
    # * and / over + and -
    assert parse_field_elem("1 + 2*t") == parse_field_elem("2*t + 1")


def test_parse_error_position():
    with pytest.raises(ParseError) as exc:
        parse_field_elem("t/(t")
    assert exc.value.position == 4


def test_parse_errors():
    with pytest.raises(ParseError, match="map context"):
        parse_field_elem("z + 1")
    with pytest.raises(ParseError, match="constant"):
        parse_rational_map("t + 1")
    with pytest.raises(ParseError):
        parse_field_elem("t^(1+1)")  # exponent must be an integer literal
    with pytest.raises(ParseError):
        parse_field_elem("")
    with pytest.raises(ParseError, match="division by zero"):
        parse_field_elem("1/(t - t)")


def test_parse_rational_map_examples():
    phi = parse_rational_map("(z^2 - t)/z")
    assert phi.d == 2
    assert map_text(phi) == "(z^2 - t)/(z)"
    psi = parse_rational_map("z^2 + t")
    assert psi.d == 2
    assert map_text(psi) == "z^2 + t"


def test_parse_point_and_place():
    assert parse_point("inf").is_infinite
    assert parse_point("t").height == 1
    assert parse_place("inf") == Place.infinity()
    # places are monicized on input
    assert parse_place("2*t + 2") == Place.finite(Poly.of(1, 1))
    with pytest.raises(ParseError):
        parse_place("t/(t+1)")
    with pytest.raises(ParseError):
        parse_place("3")


def test_parse_places():
    S = parse_places("t, t+1, inf")
    assert len(S) == 3 and Place.infinity() in S
    assert parse_places("") == frozenset()
    assert parse_places("   ") == frozenset()


def test_parse_split_form():
    form = parse_split_form("T1*T2 - t*T3 + 1")
    assert form.arity == 3
    assert set(form.blocks) == {(1, 2), (3,), ()}
    with pytest.raises(ParseError, match="not linear"):
        parse_split_form("T1*T1")  # repeated variable in a product
    with pytest.raises(ParseError, match="split"):
        parse_split_form("T1 + T1*T2")  # T1 in two blocks
    with pytest.raises(ParseError):
        parse_split_form("t + 1")  # no variables
    with pytest.raises(ParseError):
        parse_split_form("T1 - T1")  # identically zero


# ---------------------------------------------------------------------------
# Printing
# ---------------------------------------------------------------------------


def test_poly_text_examples():
    assert poly_text(Poly.zero()) == "0"
    assert poly_text(Poly.of(Fraction(-1, 2), 0, 3)) == "3*t^2 - 1/2"
    assert poly_text(Poly.of(1, 1)) == "t + 1"


def test_field_elem_text_examples():
    assert field_elem_text(parse_field_elem("(t^2+1)/t")) == "(t^2 + 1)/(t)"
    assert field_elem_text(parse_field_elem("t - 6")) == "t - 6"
    assert field_elem_text(FieldElement.zero()) == "0"


def test_point_place_text():
    assert point_text(parse_point("inf")) == "inf"
    assert place_text(Place.infinity()) == "inf"
    assert place_text(Place.finite(Poly.of(-1, 1))) == "t - 1"
    # finite places sorted, infinity printed last
    S = parse_places("t+1, inf, t")
    assert places_text(S) == "t, t + 1, inf"


# ---------------------------------------------------------------------------
# Round trips
# ---------------------------------------------------------------------------


def test_field_elem_round_trip_seeded():
    rng = Random(43)
    for _ in range(500):
        x = rand_field_elem(rng)
        assert parse_field_elem(field_elem_text(x)) == x


def test_map_round_trip_seeded():
    rng = Random(47)
    for _ in range(100):
        phi = rand_map(rng, d=rng.choice([1, 2, 3]))
        assert parse_rational_map(map_text(phi)) == phi


def test_point_and_places_round_trip_seeded():
    rng = Random(53)
    for _ in range(200):
        P = rand_point(rng)
        assert parse_point(point_text(P)) == P
        S = rand_place_set(rng)
        assert parse_places(places_text(S)) == S


def test_form_round_trip_seeded():
    rng = Random(59)
    for _ in range(50):
        # reuse the split-instance generator's rng to vary coefficients
        form = parse_split_form("T1*T2 - t*T3 + 1")
        assert parse_split_form(form_text(form)) == form
        x = rand_field_elem(rng, nonzero=True)
        from ffdyn import SplitMultilinearForm

        f2 = SplitMultilinearForm(2, ((2,), (1,)), (x, FieldElement.one()))
        assert parse_split_form(form_text(f2)) == f2


def test_print_parse_idempotent_seeded():
    # printing is canonical: parse(print(x)) prints identically
    rng = Random(61)
    for _ in range(200):
        x = rand_field_elem(rng)
        text = field_elem_text(x)
        assert field_elem_text(parse_field_elem(text)) == text
    for _ in range(50):
        phi = rand_map(rng, d=2)
        text = map_text(phi)
        assert map_text(parse_rational_map(text)) == text
