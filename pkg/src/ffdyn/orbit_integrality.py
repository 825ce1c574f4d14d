"""Orbit scans: S-integral points in orbits, quasi-integrality index sets,
and exact evaluation of the quantitative bounds on both.

The long-range S-integrality scan uses a persistence certificate instead of
computing astronomically large iterates: at a finite place v outside S where
the map has good reduction (v does not divide the resultant) and the reduced
map fixes infinity (v divides the top denominator coefficient, automatic
when deg_z G < d), a pole of the orbit at v persists forever, because
reduction mod v commutes with the map. From the first such pole onward no
iterate can be S-integral.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .errors import DomainError, OrbitBudgetError
from .function_field import (
    Place,
    PlaceSet,
    is_S_integer,
)
from .heights import (
    DEFAULT_HEIGHT_BUDGET,
    BoundParams,
    HeightInterval,
    Preperiodic,
    canonical_height,
    classify_preperiodic,
    map_height,
)
from .local_geometry import lambda_sum
from .maps import (
    ProjectivePoint,
    RationalMap,
    apply_map,
    is_exceptional,
    is_polynomial_iterate,
    require_dynamical,
    resultant_factors,
)
from .sympybridge import factor_tpoly

# ---------------------------------------------------------------------------
# Exact integer bounds for log_d^+ of rational intervals
# ---------------------------------------------------------------------------


def floor_log_plus(d: int, x: Fraction) -> int:
    """Largest integer e >= 0 with d^e <= x; 0 when x <= 1."""
    if d < 2:
        raise DomainError("log base must be at least 2")
    x = Fraction(x)
    if x <= 1:
        return 0
    e = 0
    power = Fraction(d)
    while power <= x:
        e += 1
        power *= d
    return e


def ceil_log_plus(d: int, x: Fraction) -> int:
    """Smallest integer e >= 0 with d^e >= x; 0 when x <= 1."""
    if d < 2:
        raise DomainError("log base must be at least 2")
    x = Fraction(x)
    if x <= 1:
        return 0
    e = 0
    power = Fraction(1)
    while power < x:
        e += 1
        power *= d
    return e


# ---------------------------------------------------------------------------
# S-integral points in an orbit
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class PersistenceCertificate:
    """A pole at the finite place v from iterate `start` onward: v is outside
    S, does not divide the resultant, and the reduction of the map mod v
    fixes infinity, so every later iterate also has a pole at v."""

    start: int
    place: Place


@dataclass(frozen=True)
class IntegralScanReport:
    hits: tuple[int, ...]
    scanned_to: int
    certificate: Optional[PersistenceCertificate]
    warnings: tuple[str, ...]

    @property
    def count(self) -> int:
        return len(self.hits)


def _certificate_at(
    phi: RationalMap, n: int, point: ProjectivePoint, S: PlaceSet
) -> Optional[PersistenceCertificate]:
    """Try to certify that iterates n, n+1, ... all have a pole outside S."""
    elem = point.affine()
    if elem is None or elem.den.degree == 0:
        return None
    bad = {q for q, _ in resultant_factors(phi)}
    g_top = phi.g_top()
    _, den_factors = factor_tpoly(elem.den)
    for q, _ in den_factors:
        if Place(q) in S or q in bad:
            continue
        if not g_top.is_zero and not q.divides(g_top):
            continue
        return PersistenceCertificate(start=n, place=Place(q))
    return None


def count_S_integral(
    phi: RationalMap,
    P: ProjectivePoint,
    S: PlaceSet,
    N: int,
    height_budget: int = DEFAULT_HEIGHT_BUDGET,
    certificate_height_limit: int = 256,
) -> IntegralScanReport:
    """Indices 1 <= n <= N with phi^n(P) an S-integer (infinity never counts).

    Once a persistence certificate is found the remaining range is certified
    pole-bound without computing further iterates; without a certificate the
    scan computes every iterate and enforces the height budget.
    """
    require_dynamical(phi)
    if N < 0:
        raise DomainError("scan bound must be nonnegative")
    warnings = []
    try:
        verdict = classify_preperiodic(phi, P, height_budget=height_budget)
        if isinstance(verdict, Preperiodic):
            warnings.append(
                "base point is preperiodic; finiteness is trivial for this orbit"
            )
    except OrbitBudgetError:
        warnings.append("wandering check inconclusive within budget")
    if is_polynomial_iterate(phi, 1) or is_polynomial_iterate(phi, 2):
        warnings.append(
            "map has a polynomial iterate; S-integral points need not be finite "
            "in number when S contains infinity"
        )
    hits = []
    certificate = None
    current = P
    for n in range(1, N + 1):
        current = apply_map(phi, current)
        elem = current.affine()
        if elem is not None and is_S_integer(elem, S):
            hits.append(n)
        if current.height <= certificate_height_limit:
            certificate = _certificate_at(phi, n, current, S)
            if certificate is not None:
                break
        if current.height > height_budget:
            raise OrbitBudgetError(
                f"orbit height {current.height} exceeds budget {height_budget} at "
                f"iterate {n} with no persistence certificate; raise the budget"
            )
    return IntegralScanReport(
        hits=tuple(hits),
        scanned_to=N,
        certificate=certificate,
        warnings=tuple(warnings),
    )


# ---------------------------------------------------------------------------
# Quasi-integrality index set (Gamma set)
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GammaRecord:
    n: int
    proximity: Optional[int]  # sum over S of lambda_v(phi^n P, A); None = infinite
    hhat: HeightInterval  # certified interval for hhat(phi^n P)
    membership: str  # "in" | "out" | "undecided"
    s_integral: bool


@dataclass(frozen=True)
class GammaSetReport:
    records: tuple[GammaRecord, ...]
    eps: Fraction
    depth: int
    in_indices: tuple[int, ...]
    undecided_indices: tuple[int, ...]

    @property
    def max_in_index(self) -> Optional[int]:
        return max(self.in_indices, default=None)


def gamma_set(
    phi: RationalMap,
    S: PlaceSet,
    A: ProjectivePoint,
    P: ProjectivePoint,
    eps,
    N: int,
    depth: int = 6,
    wandering_attested: bool = False,
    height_budget: int = DEFAULT_HEIGHT_BUDGET,
) -> GammaSetReport:
    """Three-valued scan of the indices n <= N where phi^n(P) is
    (S, eps)-close to A: proximity >= eps * hhat(phi^n P).

    Membership is decided by comparing the exact proximity integer with eps
    times a certified canonical-height interval; indices whose interval
    straddles the threshold are reported as undecided (increase depth). The
    per-index intervals come from the exact functional equation
    hhat(phi^n P) = d^n * hhat(P), so only one base interval is computed.
    """
    require_dynamical(phi)
    eps = Fraction(eps)
    if not (0 < eps <= 1):
        raise DomainError("eps must lie in (0, 1]")
    if depth < 1:
        raise DomainError("depth must be positive")
    if is_exceptional(phi, A):
        raise DomainError("exceptional target")
    if not wandering_attested:
        verdict = classify_preperiodic(phi, P, height_budget=height_budget)
        if isinstance(verdict, Preperiodic):
            raise DomainError("base point is preperiodic; orbit scan requires wandering")
    d = phi.d
    hhat_P = canonical_height(phi, P, depth, height_budget)
    orbit = [P]
    for _ in range(N):
        nxt = apply_map(phi, orbit[-1])
        if nxt.height > height_budget:
            raise OrbitBudgetError(
                f"orbit height {nxt.height} exceeds budget {height_budget}"
            )
        orbit.append(nxt)
    records = []
    in_idx = []
    undecided_idx = []
    for n in range(N + 1):
        x = orbit[n]
        hhat = HeightInterval(d**n * hhat_P.lo, d**n * hhat_P.hi)
        elem = x.affine()
        s_integral = elem is not None and is_S_integer(elem, S)
        prox = lambda_sum(x, A, S)
        if prox.is_infinite:
            membership = "in"
        elif Fraction(prox.value) >= eps * hhat.hi:
            membership = "in"
        elif Fraction(prox.value) < eps * hhat.lo:
            membership = "out"
        else:
            membership = "undecided"
        if membership == "in":
            in_idx.append(n)
        elif membership == "undecided":
            undecided_idx.append(n)
        records.append(
            GammaRecord(
                n=n,
                proximity=prox.value,
                hhat=hhat,
                membership=membership,
                s_integral=s_integral,
            )
        )
    return GammaSetReport(
        records=tuple(records),
        eps=eps,
        depth=depth,
        in_indices=tuple(in_idx),
        undecided_indices=tuple(undecided_idx),
    )


# ---------------------------------------------------------------------------
# Quantitative bound evaluation
# ---------------------------------------------------------------------------


def gamma_set_bound_rhs(
    params: BoundParams,
    phi: RationalMap,
    A: ProjectivePoint,
    P: ProjectivePoint,
    depth: int = 8,
    height_budget: int = DEFAULT_HEIGHT_BUDGET,
) -> tuple[Fraction, Fraction]:
    """Certified enclosure of gamma1 + log_d^+((hhat(A) + h(phi)) / hhat(P)).

    Canonical heights enter as intervals, so the result is a lower/upper pair
    of exact rationals bracketing the bound; a preperiodic P (interval lower
    endpoint 0) is rejected."""
    require_dynamical(phi)
    gamma1 = params.get("gamma1")
    h_phi = map_height(phi)
    hhat_A = canonical_height(phi, A, depth, height_budget)
    hhat_P = canonical_height(phi, P, depth, height_budget)
    if hhat_P.lo <= 0:
        raise DomainError(
            "canonical height of the base point not certified positive; "
            "increase depth or the point is preperiodic"
        )
    ratio_lo = (hhat_A.lo + h_phi) / hhat_P.hi
    ratio_hi = (hhat_A.hi + h_phi) / hhat_P.lo
    return (
        gamma1 + floor_log_plus(phi.d, ratio_lo),
        gamma1 + ceil_log_plus(phi.d, ratio_hi),
    )


def integral_count_bound_rhs(
    params: BoundParams,
    phi: RationalMap,
    P: ProjectivePoint,
    depth: int = 8,
    height_budget: int = DEFAULT_HEIGHT_BUDGET,
) -> tuple[Fraction, Fraction]:
    """Certified enclosure of gamma1 + log_d^+(h(phi) / hhat(P)) bounding the
    count of S-integral iterates for a wandering base point."""
    require_dynamical(phi)
    gamma1 = params.get("gamma1")
    h_phi = Fraction(map_height(phi))
    hhat_P = canonical_height(phi, P, depth, height_budget)
    if hhat_P.lo <= 0:
        raise DomainError(
            "canonical height of the base point not certified positive; "
            "increase depth or the point is preperiodic"
        )
    if h_phi == 0:
        return (gamma1, gamma1)
    return (
        gamma1 + floor_log_plus(phi.d, h_phi / hhat_P.hi),
        gamma1 + ceil_log_plus(phi.d, h_phi / hhat_P.lo),
    )


# ---------------------------------------------------------------------------
# Empirical constant estimation over a family of instances
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class GammaEstimateRecord:
    index: int
    max_in_index: Optional[int]
    log_term_lower: int
    contribution: int
    excluded: bool


@dataclass(frozen=True)
class GammaEstimateReport:
    gamma_hat: int
    records: tuple[GammaEstimateRecord, ...]
    witnesses: tuple[int, ...]
    warnings: tuple[str, ...]


def estimate_gamma(
    instances: Sequence[tuple[RationalMap, ProjectivePoint, ProjectivePoint]],
    S: PlaceSet,
    eps,
    N: int,
    depth: int = 6,
    height_budget: int = DEFAULT_HEIGHT_BUDGET,
) -> GammaEstimateReport:
    """Smallest integer gamma making the index bound hold on every instance:
    max over (phi, A, P) of max(Gamma-set) - log_d^+((hhat A + h phi)/hhat P),
    using the certified lower bound of the log term (conservative)."""
    if not instances:
        raise DomainError("no instances supplied")
    records = []
    warnings = []
    gamma_hat = 0
    witnesses = []
    for i, (phi, A, P) in enumerate(instances):
        try:
            report = gamma_set(
                phi, S, A, P, eps, N, depth=depth, height_budget=height_budget
            )
        except (DomainError, OrbitBudgetError) as exc:
            warnings.append(f"instance {i} excluded: {exc}")
            records.append(GammaEstimateRecord(i, None, 0, 0, True))
            continue
        if report.undecided_indices:
            warnings.append(
                f"instance {i} excluded: undecided indices "
                f"{list(report.undecided_indices)} at depth {depth}"
            )
            records.append(GammaEstimateRecord(i, None, 0, 0, True))
            continue
        m_star = report.max_in_index
        if m_star is None:
            records.append(GammaEstimateRecord(i, None, 0, 0, False))
            continue
        h_phi = map_height(phi)
        hhat_A = canonical_height(phi, A, depth, height_budget)
        hhat_P = canonical_height(phi, P, depth, height_budget)
        if hhat_P.lo <= 0:
            warnings.append(
                f"instance {i} excluded: base point canonical height not "
                "certified positive"
            )
            records.append(GammaEstimateRecord(i, None, 0, 0, True))
            continue
        log_lower = floor_log_plus(phi.d, (hhat_A.lo + h_phi) / hhat_P.hi)
        contribution = max(0, m_star - log_lower)
        records.append(GammaEstimateRecord(i, m_star, log_lower, contribution, False))
        if contribution > gamma_hat:
            gamma_hat = contribution
            witnesses = [i]
        elif contribution == gamma_hat and contribution > 0:
            witnesses.append(i)
    return GammaEstimateReport(
        gamma_hat=gamma_hat,
        records=tuple(records),
        witnesses=tuple(witnesses),
        warnings=tuple(warnings),
    )
