"""Heights, canonical-height intervals, classification and bound parameters."""

from fractions import Fraction
from random import Random

import pytest

from ffdyn import (
    BoundParams,
    Preperiodic,
    Wandering,
    apply_map,
    canonical_height,
    classify_preperiodic,
    displacement_bound,
    hmin_lattice_scan,
    iterate_height_check,
    map_height,
    parse_point,
    parse_rational_map,
)
from ffdyn.errors import ConfigError, DomainError, OrbitBudgetError
from ffdyn.heights import HeightInterval
from ffdyn.randgen import rand_map, rand_point


def pt(text):
    return parse_point(text)


def test_map_height_examples(quad_poly_map, quad_quotient_map, monomial_map):
    assert map_height(quad_poly_map) == 1
    assert map_height(quad_quotient_map) == 1
    assert map_height(monomial_map) == 1
    assert map_height(parse_rational_map("z^2+1")) == 0
    assert map_height(parse_rational_map("(z^2+t^3)/(t*z)")) == 3


def test_height_interval_validation():
    with pytest.raises(DomainError):
        HeightInterval(Fraction(1), Fraction(0))
    iv = HeightInterval(Fraction(1, 4), Fraction(3, 4))
    assert iv.width == Fraction(1, 2)
    assert iv.contains(Fraction(1, 2))
    assert not iv.contains(1)


def test_displacement_bound_examples(quad_poly_map, quad_quotient_map):
    # h(phi) + deg Res + 2 d h(phi)
    assert displacement_bound(quad_poly_map) == 1 + 0 + 4
    assert displacement_bound(quad_quotient_map) == 1 + 1 + 4


def test_displacement_bound_holds_seeded():
    rng = Random(21)
    for _ in range(200):
        d = rng.choice([2, 3])
        phi = rand_map(rng, d=d)
        P = rand_point(rng)
        B = displacement_bound(phi)
        assert abs(apply_map(phi, P).height - d * P.height) <= B


def test_canonical_height_main_example(quad_poly_map):
    iv = canonical_height(quad_poly_map, pt("0"), 10)
    assert iv.contains(Fraction(1, 2))
    assert iv.width <= Fraction(5, 2**9)


def test_canonical_height_preperiodic_contains_zero(quad_poly_map):
    assert canonical_height(quad_poly_map, pt("inf"), 6).contains(0)
    # z^2: 0, 1, -1, infinity all preperiodic
    sq = parse_rational_map("z^2")
    for p in ("0", "1", "-1", "inf"):
        assert canonical_height(sq, pt(p), 6).contains(0)


def test_canonical_height_functional_equation_seeded():
    # intervals for hhat(phi(P)) and d * hhat(P) enclose the same value
    rng = Random(33)
    for _ in range(40):
        d = rng.choice([2, 3])
        phi = rand_map(rng, d=d, coeff_deg=1, cmax=3)
        P = rand_point(rng, max_deg=1, cmax=2)
        try:
            a = canonical_height(phi, apply_map(phi, P), 3, height_budget=2000)
            b = canonical_height(phi, P, 4, height_budget=2000)
        except OrbitBudgetError:
            continue
        scaled = HeightInterval(d * b.lo, d * b.hi)
        assert a.lo <= scaled.hi and scaled.lo <= a.hi  # overlap


def test_iterate_height_check(quad_poly_map):
    rec = iterate_height_check(quad_poly_map, 2)
    assert rec.lhs == 2 and rec.sharp_rhs == 3
    assert rec.holds_sharp and rec.holds_loose
    rec3 = iterate_height_check(quad_poly_map, 3)
    assert rec3.sharp_rhs == 7
    assert rec3.holds_sharp


def test_iterate_height_seeded():
    rng = Random(2)
    for _ in range(30):
        phi = rand_map(rng, d=rng.choice([2, 3]), coeff_deg=1, cmax=3)
        for n in (1, 2, 3):
            assert iterate_height_check(phi, n).holds_sharp


def test_classify(quad_poly_map, quad_quotient_map):
    assert classify_preperiodic(quad_poly_map, pt("inf")) == Preperiodic(0, 1)
    w = classify_preperiodic(quad_poly_map, pt("0"))
    assert isinstance(w, Wandering) and w.canonical_lower > 0
    assert isinstance(classify_preperiodic(quad_quotient_map, pt("t")), Wandering)
    # z^2: -1 -> 1 -> 1 is preperiodic with tail 1
    sq = parse_rational_map("z^2")
    assert classify_preperiodic(sq, pt("-1")) == Preperiodic(1, 1)
    assert classify_preperiodic(sq, pt("1")) == Preperiodic(0, 1)


def test_classify_budget():
    phi = parse_rational_map("z^2+t")
    with pytest.raises(OrbitBudgetError):
        classify_preperiodic(phi, pt("0"), max_iter=1)


def test_bound_params_file(tmp_path):
    cfg = tmp_path / "bounds.cfg"
    cfg.write_text("gamma1 = 3\nkappa2 = 1/2  # comment\n\n# full-line comment\n")
    params = BoundParams.from_file(cfg)
    assert params.get("gamma1") == 3
    assert params.get("kappa2") == Fraction(1, 2)
    assert params.has("gamma1") and not params.has("gamma2")
    with pytest.raises(ConfigError):
        params.get("gamma2")


def test_bound_params_rejects_bad_input(tmp_path):
    bad = tmp_path / "bad.cfg"
    bad.write_text("nope = 1\n")
    with pytest.raises(ConfigError):
        BoundParams.from_file(bad)
    bad.write_text("gamma1 = x\n")
    with pytest.raises(ConfigError):
        BoundParams.from_file(bad)
    with pytest.raises(ConfigError):
        BoundParams.from_pairs([("gamma1", 1), ("gamma1", 2)])


def test_hmin_lattice_scan(quad_poly_map):
    report = hmin_lattice_scan(quad_poly_map, deg_bound=0, coeff_height_bound=1, depth=8)
    assert report.min_positive_upper > 0
    assert report.certified_wandering >= 1
    # the witness's canonical height interval really sits above zero
    iv = canonical_height(quad_poly_map, report.witness, 8)
    assert iv.hi == report.min_positive_upper
