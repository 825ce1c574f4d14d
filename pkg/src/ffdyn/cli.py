"""Command-line frontend. Every command emits deterministic JSON-lines (or
CSV) records: identical configuration and seed give byte-identical output.

Exit codes: 0 success, 1 domain error (exceptional target, preperiodic point
where a wandering one is required, budget exhaustion, failed verification),
2 parse or configuration error.

Defaults can be overridden with FFDYN_-prefixed environment variables
(FFDYN_SEED, FFDYN_FORMAT, FFDYN_OUTPUT, FFDYN_DEPTH, FFDYN_SAMPLES,
FFDYN_BUDGET)."""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import sys
from fractions import Fraction

from .errors import ConfigError, DomainError, ParseError
from .exprs import (
    field_elem_text,
    form_text,
    map_text,
    parse_place,
    parse_places,
    parse_point,
    parse_rational_map,
    parse_split_form,
    place_text,
    point_text,
)
from .heights import (
    DEFAULT_HEIGHT_BUDGET,
    BoundParams,
    Preperiodic,
    Wandering,
    canonical_height,
    classify_preperiodic,
)
from .maps import choose_m
from .mult_dependence import (
    DependenceQuery,
    dependence_search,
    poly_case_classifier,
    split_multilinear_zero_scan,
    unit_hits,
)
from .orbit_integrality import (
    count_S_integral,
    estimate_gamma,
    gamma_set,
    gamma_set_bound_rhs,
    integral_count_bound_rhs,
)
from .suites import SUITE_NAMES, run_suite

SCHEMA = "ffdyn.report/1"


def _env(name: str, fallback, cast=str):
    raw = os.environ.get(f"FFDYN_{name}")
    if raw is None:
        return fallback
    try:
        return cast(raw)
    except (TypeError, ValueError) as exc:
        raise ConfigError(f"bad FFDYN_{name} value {raw!r}") from exc


def _fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise ConfigError(f"bad rational {text!r}") from exc


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ffdyn",
        description="Exact arithmetic dynamics over Q(t): heights, orbits, "
        "integrality and multiplicative dependence.",
    )
    parser.add_argument(
        "--format",
        choices=["json", "csv"],
        default=_env("FORMAT", "json"),
        help="report format (default json-lines)",
    )
    parser.add_argument(
        "--output",
        default=_env("OUTPUT", None),
        help="write the report to a file instead of stdout",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def cmd(name, help):
        p = sub.add_parser(name, help=help)
        return p

    def add_map(p):
        p.add_argument("--map", required=True, help="rational map in z over Q(t)")

    def add_point(p):
        p.add_argument("--point", required=True, help="base point (element or 'inf')")

    def add_places(p, required=False):
        p.add_argument(
            "--places",
            default=None if required else "",
            required=required,
            help="comma-separated places: monic irreducible polynomials or 'inf'",
        )

    def add_depth(p, default=12):
        p.add_argument("--depth", type=int, default=_env("DEPTH", default, int))

    def add_budget(p):
        p.add_argument(
            "--budget",
            type=int,
            default=_env("BUDGET", DEFAULT_HEIGHT_BUDGET, int),
            help="orbit height budget",
        )

    p = cmd("height", "naive height of a point or field element")
    p.add_argument("expr", help="field element or 'inf'")

    p = cmd("canheight", "certified canonical-height interval")
    add_map(p)
    add_point(p)
    add_depth(p, 10)
    add_budget(p)

    p = cmd("classify", "preperiodic/wandering classification with certificate")
    add_map(p)
    add_point(p)
    p.add_argument("--max-iter", type=int, default=10_000)
    add_budget(p)

    p = cmd("orbit-scan", "quasi-integrality index scan against a target point")
    add_map(p)
    add_point(p)
    add_places(p, required=True)
    p.add_argument("--target", default="inf")
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--max-n", type=int, required=True)
    add_depth(p)
    add_budget(p)
    p.add_argument("--wandering-attested", action="store_true")
    p.add_argument("--params", help="bound-parameter file for the index bound")

    p = cmd("integral-count", "count S-integral points in an orbit prefix")
    add_map(p)
    add_point(p)
    add_places(p, required=True)
    p.add_argument("--max-n", type=int, required=True)
    add_budget(p)
    p.add_argument("--params", help="bound-parameter file for the count bound")
    add_depth(p)

    p = cmd("units-in-orbit", "indices whose orbit value is an S-unit")
    add_map(p)
    add_point(p)
    add_places(p, required=True)
    p.add_argument("--max-n", type=int, required=True)
    add_budget(p)

    p = cmd("multdep", "exhaustive multiplicative-dependence box search")
    add_map(p)
    add_point(p)
    add_places(p, required=True)
    p.add_argument("--n-max", type=int, required=True)
    p.add_argument("--k-max", type=int, required=True)
    p.add_argument("--r-max", type=int, required=True)
    p.add_argument("--s-max", type=int, required=True)
    p.add_argument("--wandering-attested", action="store_true")
    add_budget(p)

    p = cmd("split-form-scan", "zero tuples of a split multilinear form on an orbit")
    add_map(p)
    add_point(p)
    p.add_argument("--form", required=True, help="form in variables T1, T2, ...")
    p.add_argument("--max-n", type=int, required=True)
    add_budget(p)

    p = cmd("choose-m", "least fiber level with small enough ramification")
    add_map(p)
    p.add_argument("--target", required=True)
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--cap", type=int, default=6)

    p = cmd("estimate-gamma", "empirical index-bound constant over a family")
    p.add_argument(
        "--instance",
        action="append",
        required=True,
        metavar="MAP|TARGET|POINT",
        help="repeatable; three expressions separated by '|'",
    )
    add_places(p, required=True)
    p.add_argument("--epsilon", type=_fraction, required=True)
    p.add_argument("--max-n", type=int, required=True)
    add_depth(p, 8)
    add_budget(p)

    p = cmd("verify", "run a named seeded property suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--samples", type=int, default=_env("SAMPLES", 200, int))
    p.add_argument("--seed", type=int, default=_env("SEED", 0, int))

    return parser


# ---------------------------------------------------------------------------
# Serialization
# ---------------------------------------------------------------------------


def _plain(value):
    if isinstance(value, Fraction):
        return str(value)
    if isinstance(value, (list, tuple)):
        return [_plain(v) for v in value]
    if isinstance(value, dict):
        return {k: _plain(v) for k, v in value.items()}
    return value


def _emit(args, records: list[dict]) -> None:
    records = [_plain(r) for r in records]
    if args.format == "json":
        text = "".join(json.dumps(r, sort_keys=True) + "\n" for r in records)
    else:
        keys = sorted({k for r in records for k in r})
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=keys, lineterminator="\n")
        writer.writeheader()
        for r in records:
            writer.writerow({k: json.dumps(r[k]) if k in r else "" for k in r})
        text = buf.getvalue()
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _interval_dict(interval) -> dict:
    return {"lo": str(interval.lo), "hi": str(interval.hi), "width": str(interval.width)}


# ---------------------------------------------------------------------------
# Command handlers
# ---------------------------------------------------------------------------


def _run_height(args) -> int:
    P = parse_point(args.expr)
    out = f"{P.height}\n"
    if args.output:
        with open(args.output, "w") as fh:
            fh.write(out)
    else:
        sys.stdout.write(out)
    return 0


def _run_canheight(args) -> int:
    phi = parse_rational_map(args.map)
    P = parse_point(args.point)
    interval = canonical_height(phi, P, args.depth, args.budget)
    record = {
        "schema": SCHEMA,
        "command": "canheight",
        "map": map_text(phi),
        "point": point_text(P),
        "depth": args.depth,
        **_interval_dict(interval),
    }
    _emit(args, [record])
    return 0


def _run_classify(args) -> int:
    phi = parse_rational_map(args.map)
    P = parse_point(args.point)
    verdict = classify_preperiodic(phi, P, args.max_iter, args.budget)
    record = {
        "schema": SCHEMA,
        "command": "classify",
        "map": map_text(phi),
        "point": point_text(P),
    }
    if isinstance(verdict, Preperiodic):
        record.update(type="preperiodic", tail=verdict.tail, cycle=verdict.cycle)
    else:
        record.update(
            type="wandering",
            canonical_lower=str(verdict.canonical_lower),
            depth=verdict.depth,
        )
    _emit(args, [record])
    return 0


def _run_orbit_scan(args) -> int:
    phi = parse_rational_map(args.map)
    P = parse_point(args.point)
    A = parse_point(args.target)
    S = parse_places(args.places)
    report = gamma_set(
        phi,
        S,
        A,
        P,
        args.epsilon,
        args.max_n,
        depth=args.depth,
        wandering_attested=args.wandering_attested,
        height_budget=args.budget,
    )
    records = []
    for rec in report.records:
        records.append(
            {
                "schema": SCHEMA,
                "command": "orbit-scan",
                "n": rec.n,
                "proximity": "inf" if rec.proximity is None else rec.proximity,
                "hhat_lo": str(rec.hhat.lo),
                "hhat_hi": str(rec.hhat.hi),
                "membership": rec.membership,
                "s_integral": rec.s_integral,
            }
        )
    summary = {
        "schema": SCHEMA,
        "command": "orbit-scan",
        "summary": True,
        "epsilon": str(report.eps),
        "depth": report.depth,
        "in_indices": list(report.in_indices),
        "undecided_indices": list(report.undecided_indices),
        "max_in_index": report.max_in_index,
    }
    if args.params:
        params = BoundParams.from_file(args.params)
        lo, hi = gamma_set_bound_rhs(params, phi, A, P, depth=args.depth)
        summary["bound_rhs_lo"] = str(lo)
        summary["bound_rhs_hi"] = str(hi)
    records.append(summary)
    _emit(args, records)
    return 0


def _run_integral_count(args) -> int:
    phi = parse_rational_map(args.map)
    P = parse_point(args.point)
    S = parse_places(args.places)
    report = count_S_integral(phi, P, S, args.max_n, height_budget=args.budget)
    record = {
        "schema": SCHEMA,
        "command": "integral-count",
        "map": map_text(phi),
        "point": point_text(P),
        "max_n": args.max_n,
        "hits": list(report.hits),
        "count": report.count,
        "warnings": list(report.warnings),
    }
    if report.certificate is not None:
        record["certificate"] = {
            "start": report.certificate.start,
            "place": place_text(report.certificate.place),
        }
    if args.params:
        params = BoundParams.from_file(args.params)
        lo, hi = integral_count_bound_rhs(params, phi, P, depth=args.depth)
        record["bound_rhs_lo"] = str(lo)
        record["bound_rhs_hi"] = str(hi)
    _emit(args, [record])
    return 0


def _run_units_in_orbit(args) -> int:
    phi = parse_rational_map(args.map)
    P = parse_point(args.point)
    S = parse_places(args.places)
    hits = unit_hits(phi, P, S, args.max_n, height_budget=args.budget)
    _emit(
        args,
        [
            {
                "schema": SCHEMA,
                "command": "units-in-orbit",
                "map": map_text(phi),
                "point": point_text(P),
                "max_n": args.max_n,
                "hits": hits,
                "count": len(hits),
            }
        ],
    )
    return 0


def _run_multdep(args) -> int:
    phi = parse_rational_map(args.map)
    alpha = parse_point(args.point)
    S = parse_places(args.places)
    query = DependenceQuery(
        alpha=alpha,
        S=S,
        n_max=args.n_max,
        k_max=args.k_max,
        r_max=args.r_max,
        s_max=args.s_max,
    )
    report = dependence_search(
        phi, query, wandering_attested=args.wandering_attested,
        height_budget=args.budget,
    )
    records = []
    for sol in report.solutions:
        rec = {
            "schema": SCHEMA,
            "command": "multdep",
            "n": sol.n,
            "k": sol.k,
            "r": sol.r,
            "s": sol.s,
            "u": field_elem_text(sol.u),
            "rho": sol.rho,
        }
        if phi.is_polynomial:
            rec["case_label"] = poly_case_classifier(phi, sol, S).label
        records.append(rec)
    records.append(
        {
            "schema": SCHEMA,
            "command": "multdep",
            "summary": True,
            "solutions": len(report.solutions),
            "skipped": list(report.skipped),
            "zero_not_periodic": report.zero_not_periodic,
            "wandering_certified": report.wandering_certified,
        }
    )
    _emit(args, records)
    return 0


def _run_split_form_scan(args) -> int:
    phi = parse_rational_map(args.map)
    alpha = parse_point(args.point)
    form = parse_split_form(args.form)
    report = split_multilinear_zero_scan(
        form, phi, alpha, args.max_n, height_budget=args.budget
    )
    _emit(
        args,
        [
            {
                "schema": SCHEMA,
                "command": "split-form-scan",
                "form": form_text(form),
                "map": map_text(phi),
                "point": point_text(alpha),
                "max_n": args.max_n,
                "zero_tuples": [list(t) for t in report.zero_tuples],
                "skipped_tuples": [list(t) for t in report.skipped],
                "scanned": report.scanned,
            }
        ],
    )
    return 0


def _run_choose_m(args) -> int:
    phi = parse_rational_map(args.map)
    A = parse_point(args.target)
    m = choose_m(phi, A, args.epsilon, cap=args.cap)
    _emit(
        args,
        [
            {
                "schema": SCHEMA,
                "command": "choose-m",
                "map": map_text(phi),
                "target": point_text(A),
                "epsilon": str(args.epsilon),
                "m": m,
            }
        ],
    )
    return 0


def _run_estimate_gamma(args) -> int:
    instances = []
    for raw in args.instance:
        parts = raw.split("|")
        if len(parts) != 3:
            raise ConfigError(f"instance must be 'MAP|TARGET|POINT': {raw!r}")
        instances.append(
            (parse_rational_map(parts[0]), parse_point(parts[1]), parse_point(parts[2]))
        )
    S = parse_places(args.places)
    report = estimate_gamma(
        instances,
        S,
        args.epsilon,
        args.max_n,
        depth=args.depth,
        height_budget=args.budget,
    )
    _emit(
        args,
        [
            {
                "schema": SCHEMA,
                "command": "estimate-gamma",
                "gamma_hat": report.gamma_hat,
                "witnesses": list(report.witnesses),
                "warnings": list(report.warnings),
                "instances": len(instances),
            }
        ],
    )
    return 0


def _run_verify(args) -> int:
    try:
        result = run_suite(args.suite, args.samples, args.seed)
    except KeyError:
        raise ConfigError(
            f"unknown suite {args.suite!r}; known: {', '.join(SUITE_NAMES)}"
        )
    record = {
        "schema": SCHEMA,
        "command": "verify",
        "suite": result.suite,
        "samples": result.samples,
        "seed": result.seed,
        "checked": result.checked,
        "passed": result.passed,
        "failures": result.failures,
        "info": _plain(result.info),
    }
    _emit(args, [record])
    return 0 if result.passed else 1


_HANDLERS = {
    "height": _run_height,
    "canheight": _run_canheight,
    "classify": _run_classify,
    "orbit-scan": _run_orbit_scan,
    "integral-count": _run_integral_count,
    "units-in-orbit": _run_units_in_orbit,
    "multdep": _run_multdep,
    "split-form-scan": _run_split_form_scan,
    "choose-m": _run_choose_m,
    "estimate-gamma": _run_estimate_gamma,
    "verify": _run_verify,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _HANDLERS[args.command](args)
    except (ParseError, ConfigError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
