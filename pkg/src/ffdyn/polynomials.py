"""Dense exact polynomials: k[t] with rational coefficients, and k[t][z].

Everything here is exact; no floating point is used anywhere. Coefficients
are stored lowest degree first. The zero polynomial is the empty tuple and
has degree -1 by convention.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd as int_gcd
from typing import Iterable, Sequence

from .errors import DomainError

_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"coefficient must be int or Fraction, got {type(c)!r}")


def _trim(coeffs: Sequence[Fraction]) -> tuple[Fraction, ...]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1] == 0:
        n -= 1
    return tuple(coeffs[:n])


@dataclass(frozen=True)
class Poly:
    """Univariate polynomial in t over Q, coefficients lowest degree first."""

    coeffs: tuple[Fraction, ...]

    # -- construction -----------------------------------------------------

    @staticmethod
    def of(*coeffs) -> "Poly":
        return Poly(_trim([_as_fraction(c) for c in coeffs]))

    @staticmethod
    def from_list(coeffs: Iterable) -> "Poly":
        return Poly(_trim([_as_fraction(c) for c in coeffs]))

    @staticmethod
    def constant(c) -> "Poly":
        return Poly.of(_as_fraction(c))

    @staticmethod
    def zero() -> "Poly":
        return Poly(())

    @staticmethod
    def one() -> "Poly":
        return Poly((_ONE,))

    @staticmethod
    def t() -> "Poly":
        return Poly((_ZERO, _ONE))

    # -- basic queries -----------------------------------------------------

    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    @property
    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    @property
    def leading(self) -> Fraction:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def coeff(self, k: int) -> Fraction:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else _ZERO

    def constant_value(self) -> Fraction:
        if not self.is_constant:
            raise DomainError("polynomial is not constant")
        return self.coeffs[0] if self.coeffs else _ZERO

    # -- arithmetic ---------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] += c
        return Poly(_trim(out))

    def __neg__(self) -> "Poly":
        return Poly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "Poly") -> "Poly":
        return self + (-other)

    def __mul__(self, other: "Poly") -> "Poly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return Poly(())
        if len(a) >= 24 and len(b) >= 24:
            return Poly(_trim(_int_convolve(a, b)))
        out = [_ZERO] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if ca:
                for j, cb in enumerate(b):
                    if cb:
                        out[i + j] += ca * cb
        return Poly(_trim(out))

    def scale(self, c) -> "Poly":
        c = _as_fraction(c)
        if c == 0:
            return Poly(())
        return Poly(tuple(x * c for x in self.coeffs))

    def shift(self, k: int) -> "Poly":
        """Multiply by t**k."""
        if self.is_zero or k == 0:
            return self
        return Poly((_ZERO,) * k + self.coeffs)

    def __pow__(self, n: int) -> "Poly":
        if n < 0:
            raise DomainError("negative polynomial power")
        result = Poly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base if n > 1 else base
            n >>= 1
        return result

    def divmod(self, other: "Poly") -> tuple["Poly", "Poly"]:
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        if self.degree < other.degree:
            return Poly(()), self
        rem = list(self.coeffs)
        dlead = other.leading
        dd = other.degree
        q = [_ZERO] * (self.degree - dd + 1)
        for i in range(len(q) - 1, -1, -1):
            c = rem[i + dd] / dlead
            q[i] = c
            if c:
                for j, oc in enumerate(other.coeffs):
                    rem[i + j] -= c * oc
        return Poly(_trim(q)), Poly(_trim(rem[:dd] if dd > 0 else []))

    def __floordiv__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[0]

    def __mod__(self, other: "Poly") -> "Poly":
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero:
            raise DomainError("exact division has nonzero remainder")
        return q

    def divides(self, other: "Poly") -> bool:
        if self.is_zero:
            return other.is_zero
        return other.divmod(self)[1].is_zero

    def derivative(self) -> "Poly":
        return Poly(_trim([self.coeffs[i] * i for i in range(1, len(self.coeffs))]))

    def eval(self, x: Fraction) -> Fraction:
        acc = _ZERO
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- normal forms --------------------------------------------------------

    def monic(self) -> "Poly":
        if self.is_zero:
            return self
        return self.scale(1 / self.leading)

    def content(self) -> Fraction:
        """Positive rational c with self/c integer-coprime; 0 for zero."""
        if self.is_zero:
            return _ZERO
        num = 0
        den = 1
        for c in self.coeffs:
            num = int_gcd(num, c.numerator)
            den = den * c.denominator // int_gcd(den, c.denominator)
        return Fraction(num, den)

    def primitive(self) -> "Poly":
        """Integer-coprime coefficients and positive leading coefficient."""
        if self.is_zero:
            return self
        c = self.content()
        if self.leading < 0:
            c = -c
        return self.scale(1 / c)

    def __str__(self) -> str:  # debugging aid; canonical printing is in exprs
        from .exprs import poly_text

        return poly_text(self)


def poly_gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd in Q[t]; gcd(0, 0) = 0."""
    while not b.is_zero:
        a, b = b, a % b
        if not b.is_zero:
            b = b.monic()
    return a.monic() if not a.is_zero else a


def _int_convolve(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    # Clearing denominators lets the inner loop run on machine/long ints,
    # which is much faster than Fraction arithmetic for long operands.
    da = 1
    for c in a:
        da = da * c.denominator // int_gcd(da, c.denominator)
    db = 1
    for c in b:
        db = db * c.denominator // int_gcd(db, c.denominator)
    ia = [int(c * da) for c in a]
    ib = [int(c * db) for c in b]
    out = [0] * (len(ia) + len(ib) - 1)
    for i, ca in enumerate(ia):
        if ca:
            for j, cb in enumerate(ib):
                if cb:
                    out[i + j] += ca * cb
    d = da * db
    return [Fraction(c, d) for c in out]


# ---------------------------------------------------------------------------
# Polynomials in z with k[t] coefficients
# ---------------------------------------------------------------------------


def _ztrim(coeffs: Sequence[Poly]) -> tuple[Poly, ...]:
    n = len(coeffs)
    while n > 0 and coeffs[n - 1].is_zero:
        n -= 1
    return tuple(coeffs[:n])


@dataclass(frozen=True)
class ZPoly:
    """Polynomial in z over Q[t], z-coefficients lowest degree first."""

    coeffs: tuple[Poly, ...]

    @staticmethod
    def of(*coeffs) -> "ZPoly":
        out = []
        for c in coeffs:
            if isinstance(c, Poly):
                out.append(c)
            else:
                out.append(Poly.constant(c))
        return ZPoly(_ztrim(out))

    @staticmethod
    def from_list(coeffs: Iterable[Poly]) -> "ZPoly":
        return ZPoly(_ztrim(list(coeffs)))

    @staticmethod
    def zero() -> "ZPoly":
        return ZPoly(())

    @staticmethod
    def one() -> "ZPoly":
        return ZPoly((Poly.one(),))

    @staticmethod
    def z() -> "ZPoly":
        return ZPoly((Poly.zero(), Poly.one()))

    @staticmethod
    def const(p: Poly) -> "ZPoly":
        return ZPoly(_ztrim([p]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def coeff(self, k: int) -> Poly:
        return self.coeffs[k] if 0 <= k < len(self.coeffs) else Poly.zero()

    @property
    def leading(self) -> Poly:
        if not self.coeffs:
            raise DomainError("zero polynomial has no leading coefficient")
        return self.coeffs[-1]

    def __add__(self, other: "ZPoly") -> "ZPoly":
        a, b = self.coeffs, other.coeffs
        if len(a) < len(b):
            a, b = b, a
        out = list(a)
        for i, c in enumerate(b):
            out[i] = out[i] + c
        return ZPoly(_ztrim(out))

    def __neg__(self) -> "ZPoly":
        return ZPoly(tuple(-c for c in self.coeffs))

    def __sub__(self, other: "ZPoly") -> "ZPoly":
        return self + (-other)

    def __mul__(self, other: "ZPoly") -> "ZPoly":
        a, b = self.coeffs, other.coeffs
        if not a or not b:
            return ZPoly(())
        out = [Poly.zero()] * (len(a) + len(b) - 1)
        for i, ca in enumerate(a):
            if not ca.is_zero:
                for j, cb in enumerate(b):
                    if not cb.is_zero:
                        out[i + j] = out[i + j] + ca * cb
        return ZPoly(_ztrim(out))

    def scale_poly(self, p: Poly) -> "ZPoly":
        if p.is_zero:
            return ZPoly(())
        return ZPoly(_ztrim([c * p for c in self.coeffs]))

    def scale(self, c: Fraction) -> "ZPoly":
        return ZPoly(_ztrim([x.scale(c) for x in self.coeffs]))

    def __pow__(self, n: int) -> "ZPoly":
        if n < 0:
            raise DomainError("negative polynomial power")
        result = ZPoly.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            if n > 1:
                base = base * base
            n >>= 1
        return result

    def derivative_z(self) -> "ZPoly":
        return ZPoly(
            _ztrim([self.coeffs[i].scale(i) for i in range(1, len(self.coeffs))])
        )

    def max_coeff_tdegree(self) -> int:
        """Largest t-degree among z-coefficients; -1 for the zero polynomial."""
        return max((c.degree for c in self.coeffs), default=-1)

    def homogeneous_eval(self, a, b, d: int):
        """Evaluate the degree-d homogenization at (a, b).

        Works for a, b in any commutative ring supporting +, * with Poly
        scalars via scale_poly/mul; in practice a, b are Poly or ZPoly.
        """
        if d < self.degree:
            raise DomainError("homogenization degree below z-degree")
        a_pows = [None] * (d + 1)
        b_pows = [None] * (d + 1)
        if isinstance(a, Poly):
            one = Poly.one()
            mul = lambda x, p: x * p  # noqa: E731
            zero = Poly.zero()
        else:
            one = ZPoly.one()
            mul = lambda x, p: x.scale_poly(p)  # noqa: E731
            zero = ZPoly.zero()
        a_pows[0] = one
        b_pows[0] = one
        for i in range(1, d + 1):
            a_pows[i] = a_pows[i - 1] * a
            b_pows[i] = b_pows[i - 1] * b
        acc = zero
        for i, c in enumerate(self.coeffs):
            if not c.is_zero:
                acc = acc + mul(a_pows[i] * b_pows[d - i], c)
        return acc

    def content_poly(self) -> Poly:
        """Monic gcd in Q[t] of all z-coefficients; zero for the zero poly."""
        g = Poly.zero()
        for c in self.coeffs:
            g = poly_gcd(g, c)
            if g.degree == 0:
                break
        return g

    def rational_content(self) -> Fraction:
        c = _ZERO
        num = 0
        den = 1
        for zc in self.coeffs:
            cc = zc.content()
            num = int_gcd(num, cc.numerator)
            den = den * cc.denominator // int_gcd(den, cc.denominator)
        c = Fraction(num, den) if num else _ZERO
        return c

    def exact_div_poly(self, p: Poly) -> "ZPoly":
        return ZPoly(_ztrim([c.exact_div(p) for c in self.coeffs]))

    def __str__(self) -> str:
        from .exprs import zpoly_text

        return zpoly_text(self)
