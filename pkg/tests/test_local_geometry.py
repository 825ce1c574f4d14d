"""Chordal local heights and the two local comparison inequalities."""

from random import Random

import pytest

from ffdyn import (
    FieldElement,
    Place,
    contact_comparison,
    fiber_pullback_defect,
    lambda_sum,
    lambda_v,
    parse_field_elem,
    parse_point,
    place_set,
    support,
)
from ffdyn.errors import DomainError
from ffdyn.local_geometry import LocalHeightValue
from ffdyn.maps import ProjectivePoint
from ffdyn.polynomials import Poly
from ffdyn.randgen import rand_field_elem, rand_place, rand_point

INF = Place.infinity()
P_T = Place.finite(Poly.t())


def pt(text):
    return parse_point(text)


def test_local_height_value_algebra():
    a = LocalHeightValue.finite(2)
    b = LocalHeightValue.infinite()
    assert (a + a).value == 4
    assert (a + b).is_infinite
    assert str(a) == "2" and str(b) == "inf"


def test_lambda_basic_properties_seeded():
    rng = Random(17)
    for _ in range(200):
        P = rand_point(rng)
        Q = rand_point(rng)
        v = rand_place(rng)
        a = lambda_v(P, Q, v)
        b = lambda_v(Q, P, v)
        if P == Q:
            assert a.is_infinite and b.is_infinite
        else:
            assert a.value == b.value >= 0


def test_lambda_sum_example():
    # points t and 0 over S = {(t), infinity}: contact at (t) only
    S = place_set([P_T, INF])
    total = lambda_sum(pt("t"), pt("0"), S)
    assert total.value == 1
    assert lambda_v(pt("t"), pt("0"), P_T).value == 1
    assert lambda_v(pt("t"), pt("0"), INF).value == 0


def test_lambda_sum_infinite_on_equal_points():
    S = place_set([INF])
    assert lambda_sum(pt("t"), pt("t"), S).is_infinite


def test_height_decomposition_exact_seeded():
    # sum over all places of lambda_v(P, infinity) equals h(P)
    rng = Random(23)
    inf_pt = ProjectivePoint.infinity()
    for _ in range(200):
        x = rand_field_elem(rng, nonzero=True)
        P = ProjectivePoint.from_field(x)
        total = lambda_v(P, inf_pt, INF).value
        for v in support(x):
            total += lambda_v(P, inf_pt, v).value
        assert total == P.height


def test_contact_comparison_example():
    # x = 2t, y = t at v = (t): applicable, chain collapses to 0 <= 0 <= 0
    rec = contact_comparison(
        parse_field_elem("2*t"), parse_field_elem("t"), P_T
    )
    assert rec.applicable
    assert (rec.lower, rec.middle, rec.upper) == (0, 0, 0)
    assert rec.holds


def test_contact_comparison_at_infinity():
    # x = t, y = 1/t at infinity: evaluate and check the chain
    rec = contact_comparison(
        parse_field_elem("t"), parse_field_elem("1/t"), INF
    )
    assert rec.holds


def test_contact_comparison_rejects_equal():
    x = parse_field_elem("t")
    with pytest.raises(DomainError):
        contact_comparison(x, x, P_T)


def test_contact_comparison_seeded():
    rng = Random(29)
    applicable = 0
    for _ in range(500):
        x = rand_field_elem(rng, nonzero=True)
        y = rand_field_elem(rng)
        if x == y:
            continue
        v = rand_place(rng)
        rec = contact_comparison(x, y, v)
        assert rec.holds
        applicable += rec.applicable
    assert applicable > 0  # the inequality was actually exercised


def test_fiber_pullback_example(quad_poly_map, S_inf):
    # fiber of z^2+t over t is {0} with e = 2; P = 1
    rec = fiber_pullback_defect(quad_poly_map, 1, pt("t"), pt("1"), S_inf)
    assert rec.fiber_size == 1
    assert rec.lhs == 0  # 1 and 0 are far at infinity
    assert rec.rhs == 2  # phi(1) = t+1 is close to t at infinity
    assert rec.defect == 2
    assert rec.normalizer == 3


def test_fiber_pullback_empty_S(quad_poly_map):
    rec = fiber_pullback_defect(quad_poly_map, 1, pt("t"), pt("1"), place_set([]))
    assert rec.lhs == rec.rhs == rec.defect == 0


def test_fiber_pullback_requires_split_fiber(quad_poly_map, S_inf):
    # fiber over 0 is z^2 = -t, irreducible over Q(t)
    with pytest.raises(DomainError, match="extension"):
        fiber_pullback_defect(quad_poly_map, 1, pt("0"), pt("1"), S_inf)


def test_fiber_pullback_rejects_point_in_fiber(quad_poly_map, S_inf):
    with pytest.raises(DomainError, match="fiber"):
        fiber_pullback_defect(quad_poly_map, 1, pt("t"), pt("0"), S_inf)


def test_fiber_pullback_degree_sums_seeded():
    from ffdyn.randgen import rand_split_fiber_instance
    from ffdyn.maps import fiber

    rng = Random(31)
    for _ in range(30):
        phi, A, P = rand_split_fiber_instance(rng, d=rng.choice([2, 3]))
        assert fiber(phi, A).degree_sum() == phi.d
        S = frozenset({rand_place(rng)})
        rec = fiber_pullback_defect(phi, 1, A, P, S)
        assert rec.normalizer >= 1
