"""Exact arithmetic on elliptic curves over Q.

Integral Weierstrass models with cached invariants, the exact group law,
scalar multiplication, Tate's algorithm per prime (valuations and residue
tests only), Laska-Kraus-Connell minimal models, conductor and Szpiro ratio.

The model a caller supplies is never transformed silently; minimal_model is
an explicit utility returning the change of variables, so denominators B_nP
keep their meaning on the model the caller chose.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property

import gmpy2

from .bigfloat import log_abs, precision
from .errors import (
    DegenerateSzpiro,
    NotMinimal,
    PointNotOnCurve,
    SingularCurve,
)
from .intfactor import factor_completely, valuation

Rational = Fraction


# ---------------------------------------------------------------------------
# Curves
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Curve:
    a1: int
    a2: int
    a3: int
    a4: int
    a6: int

    def __post_init__(self):
        for name in ("a1", "a2", "a3", "a4", "a6"):
            v = getattr(self, name)
            if isinstance(v, Fraction):
                if v.denominator != 1:
                    raise ValueError("Curve coefficients must be integers")
                object.__setattr__(self, name, int(v))
            elif not isinstance(v, int):
                object.__setattr__(self, name, int(v))
        if self.disc == 0:
            raise SingularCurve(f"discriminant vanishes for {self.ainvs()}")

    def ainvs(self) -> tuple[int, int, int, int, int]:
        return (self.a1, self.a2, self.a3, self.a4, self.a6)

    # -- standard invariants ------------------------------------------------
    @cached_property
    def b2(self) -> int:
        return self.a1 * self.a1 + 4 * self.a2

    @cached_property
    def b4(self) -> int:
        return 2 * self.a4 + self.a1 * self.a3

    @cached_property
    def b6(self) -> int:
        return self.a3 * self.a3 + 4 * self.a6

    @cached_property
    def b8(self) -> int:
        return (
            self.a1 * self.a1 * self.a6
            + 4 * self.a2 * self.a6
            - self.a1 * self.a3 * self.a4
            + self.a2 * self.a3 * self.a3
            - self.a4 * self.a4
        )

    @cached_property
    def c4(self) -> int:
        return self.b2 * self.b2 - 24 * self.b4

    @cached_property
    def c6(self) -> int:
        return -self.b2**3 + 36 * self.b2 * self.b4 - 216 * self.b6

    @cached_property
    def disc(self) -> int:
        b2, b4, b6, b8 = self.b2, self.b4, self.b6, self.b8
        return -b2 * b2 * b8 - 8 * b4**3 - 27 * b6 * b6 + 9 * b2 * b4 * b6

    @cached_property
    def j(self) -> Fraction:
        return Fraction(self.c4**3, self.disc)

    @property
    def is_standardized(self) -> bool:
        return self.a1 in (0, 1) and self.a3 in (0, 1) and self.a2 in (-1, 0, 1)

    # -- text format ----------------------------------------------------------
    def to_text(self) -> str:
        return "[" + ",".join(str(a) for a in self.ainvs()) + "]"

    @classmethod
    def from_text(cls, text: str) -> "Curve":
        body = text.strip()
        if not (body.startswith("[") and body.endswith("]")):
            raise ValueError("curve text must look like [a1,a2,a3,a4,a6]")
        parts = [p.strip() for p in body[1:-1].split(",")]
        if len(parts) != 5:
            raise ValueError("curve text needs exactly five coefficients")
        return cls(*(int(p) for p in parts))

    def __repr__(self) -> str:
        return f"Curve{self.ainvs()}"


def curve_new(a1: int, a2: int, a3: int, a4: int, a6: int) -> Curve:
    return Curve(a1, a2, a3, a4, a6)


# ---------------------------------------------------------------------------
# Points
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Point:
    x: Fraction | None
    y: Fraction | None

    def __post_init__(self):
        if (self.x is None) != (self.y is None):
            raise ValueError("either both coordinates or neither")
        if self.x is not None:
            object.__setattr__(self, "x", Fraction(self.x))
            object.__setattr__(self, "y", Fraction(self.y))

    @property
    def is_infinity(self) -> bool:
        return self.x is None

    @cached_property
    def triple(self) -> tuple[int, int, int]:
        """(A, B, C) with x = A/B^2, y = C/B^3, gcd(A,B)=gcd(C,B)=1, B >= 1."""
        if self.is_infinity:
            raise ValueError("triple undefined at infinity")
        dx = self.x.denominator
        b = math.isqrt(dx)
        if b * b != dx:
            raise ValueError(f"denominator of x is not a square: {dx}")
        a = self.x.numerator
        b3 = b**3
        if b3 % self.y.denominator != 0:
            raise ValueError("denominator of y does not divide B^3")
        c = self.y.numerator * (b3 // self.y.denominator)
        return (a, b, c)

    def to_text(self) -> str:
        if self.is_infinity:
            return "inf"

        def fmt(q: Fraction) -> str:
            return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"

        return f"{fmt(self.x)},{fmt(self.y)}"

    @classmethod
    def from_text(cls, text: str) -> "Point":
        body = text.strip()
        if body == "inf":
            return INFINITY
        parts = body.split(",")
        if len(parts) != 2:
            raise ValueError("point text must be 'inf' or 'x,y'")
        return cls(Fraction(parts[0]), Fraction(parts[1]))

    def __repr__(self) -> str:
        return f"Point({self.to_text()})"


INFINITY = Point(None, None)


def point(x, y) -> Point:
    return Point(Fraction(x), Fraction(y))


def on_curve(E: Curve, P: Point) -> bool:
    if P.is_infinity:
        return True
    x, y = P.x, P.y
    return y * y + E.a1 * x * y + E.a3 * y == x**3 + E.a2 * x * x + E.a4 * x + E.a6


def _require_on_curve(E: Curve, P: Point) -> None:
    if not on_curve(E, P):
        raise PointNotOnCurve(f"{P} not on {E}")


def point_neg(E: Curve, P: Point) -> Point:
    if P.is_infinity:
        return P
    return Point(P.x, -P.y - E.a1 * P.x - E.a3)


def point_add(E: Curve, P: Point, Q: Point) -> Point:
    _require_on_curve(E, P)
    _require_on_curve(E, Q)
    if P.is_infinity:
        return Q
    if Q.is_infinity:
        return P
    x1, y1, x2, y2 = P.x, P.y, Q.x, Q.y
    if x1 == x2:
        if y1 + y2 + E.a1 * x2 + E.a3 == 0:
            return INFINITY
        lam = (3 * x1 * x1 + 2 * E.a2 * x1 + E.a4 - E.a1 * y1) / (
            2 * y1 + E.a1 * x1 + E.a3
        )
    else:
        lam = (y2 - y1) / (x2 - x1)
    nu = y1 - lam * x1
    x3 = lam * lam + E.a1 * lam - E.a2 - x1 - x2
    y3 = -(lam + E.a1) * x3 - nu - E.a3
    return Point(x3, y3)


def point_mul(E: Curve, n: int, P: Point) -> Point:
    _require_on_curve(E, P)
    if n == 0 or P.is_infinity:
        return INFINITY
    if n < 0:
        return point_mul(E, -n, point_neg(E, P))
    result = INFINITY
    addend = P
    while n:
        if n & 1:
            result = point_add(E, result, addend)
        n >>= 1
        if n:
            addend = point_add(E, addend, addend)
    return result


# ---------------------------------------------------------------------------
# Changes of variables
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Transform:
    """Substitution x = u^2 x' + r, y = u^3 y' + s u^2 x' + t mapping a model
    E to a model E'."""

    u: Fraction
    r: Fraction
    s: Fraction
    t: Fraction

    def __post_init__(self):
        for name in ("u", "r", "s", "t"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.u == 0:
            raise ValueError("u must be nonzero")

    def apply_ainvs(self, a1, a2, a3, a4, a6) -> tuple[Fraction, ...]:
        u, r, s, t = self.u, self.r, self.s, self.t
        a1n = (a1 + 2 * s) / u
        a2n = (a2 - s * a1 + 3 * r - s * s) / u**2
        a3n = (a3 + r * a1 + 2 * t) / u**3
        a4n = (a4 - s * a3 + 2 * r * a2 - (t + r * s) * a1 + 3 * r * r - 2 * s * t) / u**4
        a6n = (a6 + r * a4 + r * r * a2 + r**3 - t * a3 - t * t - r * t * a1) / u**6
        return (a1n, a2n, a3n, a4n, a6n)

    def apply_curve(self, E: Curve) -> Curve:
        return Curve(*self.apply_ainvs(*E.ainvs()))

    def apply_point(self, P: Point) -> Point:
        if P.is_infinity:
            return P
        u, r, s, t = self.u, self.r, self.s, self.t
        xn = (P.x - r) / u**2
        yn = (P.y - s * (P.x - r) - t) / u**3
        return Point(xn, yn)

    def unapply_point(self, P: Point) -> Point:
        return self.inverse().apply_point(P)

    def then(self, other: "Transform") -> "Transform":
        """The composite substitution: first self (E -> E1), then other (E1 -> E2)."""
        u1, r1, s1, t1 = self.u, self.r, self.s, self.t
        u2, r2, s2, t2 = other.u, other.r, other.s, other.t
        return Transform(
            u1 * u2,
            u1**2 * r2 + r1,
            u1 * s2 + s1,
            u1**3 * t2 + s1 * u1**2 * r2 + t1,
        )

    def inverse(self) -> "Transform":
        u, r, s, t = self.u, self.r, self.s, self.t
        return Transform(1 / u, -r / u**2, -s / u, (r * s - t) / u**3)


IDENTITY_TRANSFORM = Transform(1, 0, 0, 0)


def integral_model(ainvs) -> tuple[Curve, Transform]:
    """Scale a rational Weierstrass model to an integral one.
    Returns (curve, transform) with transform mapping the rational model to
    the integral model."""
    a1, a2, a3, a4, a6 = (Fraction(a) for a in ainvs)
    d = 1
    for a, w in ((a1, 1), (a2, 2), (a3, 3), (a4, 4), (a6, 6)):
        den = a.denominator
        # need d^w * a integral: take d = lcm of den^(1/w) rounded up via den itself
        d = math.lcm(d, den)
    tr = Transform(Fraction(1, d), 0, 0, 0)
    E = Curve(*tr.apply_ainvs(a1, a2, a3, a4, a6))
    return E, tr


# ---------------------------------------------------------------------------
# Residue helpers for Tate's algorithm
# ---------------------------------------------------------------------------


def _gf_trim(f: list[int], p: int) -> list[int]:
    f = [c % p for c in f]
    while f and f[-1] == 0:
        f.pop()
    return f


def _gf_divmod(f: list[int], g: list[int], p: int) -> tuple[list[int], list[int]]:
    f = f[:]
    q = [0] * max(0, len(f) - len(g) + 1)
    inv = pow(g[-1], -1, p)
    while len(f) >= len(g) and any(f):
        while f and f[-1] % p == 0:
            f.pop()
        if len(f) < len(g):
            break
        c = f[-1] * inv % p
        k = len(f) - len(g)
        q[k] = c
        for i, gc in enumerate(g):
            f[k + i] = (f[k + i] - c * gc) % p
        f.pop()
    return q, _gf_trim(f, p)


def _gf_gcd(f: list[int], g: list[int], p: int) -> list[int]:
    f, g = _gf_trim(f, p), _gf_trim(g, p)
    while g:
        f, g = g, _gf_divmod(f, g, p)[1]
    if f:
        inv = pow(f[-1], -1, p)
        f = [c * inv % p for c in f]
    return f


def cubic_multiple_root(b: int, c: int, d: int, p: int) -> tuple[str, int]:
    """Root structure of T^3 + bT^2 + cT + d over GF(p)-bar.
    Returns ('distinct', 0), ('double', root) or ('triple', root); the root is
    the multiple root, which is always in GF(p)."""
    b, c, d = b % p, c % p, d % p
    disc = (18 * b * c * d - 4 * b**3 * d + b * b * c * c - 4 * c**3 - 27 * d * d) % p
    if disc != 0:
        return ("distinct", 0)
    if p < 64:
        # brute force with multiplicity via f, f', f''
        for x in range(p):
            fx = (x**3 + b * x * x + c * x + d) % p
            if fx:
                continue
            f1 = (3 * x * x + 2 * b * x + c) % p
            if f1:
                continue
            f2 = (6 * x + 2 * b) % p
            return ("triple", x) if f2 == 0 and _is_triple(b, c, d, x, p) else ("double", x)
        raise ArithmeticError("vanishing discriminant but no multiple root found")
    # p odd, p > 3 here
    f = [d, c, b, 1]
    fp = [c, 2 * b, 3]
    g = _gf_gcd(f, fp, p)
    if len(g) == 2:  # linear: double root
        return ("double", (-g[0]) % p)
    if len(g) == 3:  # (T - a)^2: triple root
        inv2 = pow(2, -1, p)
        return ("triple", (-g[1] * inv2) % p)
    raise ArithmeticError("unexpected gcd structure in cubic root analysis")


def _is_triple(b: int, c: int, d: int, x: int, p: int) -> bool:
    # T^3+bT^2+cT+d == (T-x)^3 mod p?
    return (b + 3 * x) % p == 0 and (c - 3 * x * x) % p == 0 and (d + x**3) % p == 0


def quadratic_y_distinct(a: int, bcoef: int, p: int) -> bool:
    """Does Y^2 + aY - bcoef have distinct roots over GF(p)-bar?"""
    if p == 2:
        return a % 2 == 1
    return (a * a + 4 * bcoef) % p != 0


def quadratic_y_double_root(a: int, bcoef: int, p: int) -> int:
    if p == 2:
        return bcoef % 2
    return (-a * pow(2, -1, p)) % p


def quadratic_x_distinct(a: int, b: int, c: int, p: int) -> bool:
    """Does aX^2 + bX + c (a nonzero mod p) have distinct roots over GF(p)-bar?"""
    if p == 2:
        return b % 2 == 1
    return (b * b - 4 * a * c) % p != 0


def quadratic_x_double_root(a: int, b: int, c: int, p: int) -> int:
    if p == 2:
        # aX^2+c with a odd: root = sqrt(c/a) = c mod 2
        return c % 2
    return (-b * pow(2 * a, -1, p)) % p


# ---------------------------------------------------------------------------
# Tate's algorithm
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class ReductionInfo:
    prime: int
    kodaira_type: str  # "I0", "In", "II", "III", "IV", "I0*", "In*", "IV*", "III*", "II*"
    n: int  # the n of In / In*, else 0
    ord_p_disc: int  # of the minimal-at-p model
    conductor_exponent: int
    is_minimal_at_p: bool

    @property
    def type_label(self) -> str:
        if self.kodaira_type == "In":
            return f"I{self.n}"
        if self.kodaira_type == "In*":
            return f"I{self.n}*"
        return self.kodaira_type


def _translate_to_singular(E: Curve, p: int) -> Curve:
    """Translate so the singular point of the reduction mod p sits at (0,0)."""
    if p < 64:
        for x0 in range(p):
            for y0 in range(p):
                f = (
                    y0 * y0
                    + E.a1 * x0 * y0
                    + E.a3 * y0
                    - x0**3
                    - E.a2 * x0 * x0
                    - E.a4 * x0
                    - E.a6
                ) % p
                if f:
                    continue
                fx = (E.a1 * y0 - 3 * x0 * x0 - 2 * E.a2 * x0 - E.a4) % p
                fy = (2 * y0 + E.a1 * x0 + E.a3) % p
                if fx == 0 and fy == 0:
                    return Transform(1, x0, 0, y0).apply_curve(E)
        raise ArithmeticError("no singular point found mod p")
    # p >= 64 (odd): the singular x is the multiple root of 4x^3+b2x^2+2b4x+b6
    inv4 = pow(4, -1, p)
    b = E.b2 * inv4 % p
    c = 2 * E.b4 * inv4 % p
    d = E.b6 * inv4 % p
    kind, x0 = cubic_multiple_root(b, c, d, p)
    if kind == "distinct":
        raise ArithmeticError("expected a multiple root at a bad prime")
    y0 = (-(E.a1 * x0 + E.a3) * pow(2, -1, p)) % p
    return Transform(1, x0, 0, y0).apply_curve(E)


def _normalize_step7(E: Curve, p: int) -> Curve:
    """Arrange p|a1,a2, p^2|a3,a4, p^3|a6 by an (s,t) translation."""
    if p == 2:
        for s in range(2):
            for t in range(8):
                C = Transform(1, 0, s, t).apply_curve(E)
                if (
                    C.a1 % 2 == 0
                    and C.a2 % 2 == 0
                    and C.a3 % 4 == 0
                    and C.a4 % 4 == 0
                    and C.a6 % 8 == 0
                ):
                    return C
        raise ArithmeticError("step-7 normalization failed at p=2")
    s = (-E.a1 * pow(2, -1, p)) % p
    C = Transform(1, 0, s, 0).apply_curve(E)
    t = (-C.a3 * pow(2, -1, p * p)) % (p * p)
    C = Transform(1, 0, 0, t).apply_curve(C)
    if not (
        C.a1 % p == 0
        and C.a2 % p == 0
        and C.a3 % p**2 == 0
        and C.a4 % p**2 == 0
        and C.a6 % p**3 == 0
    ):
        raise ArithmeticError(f"step-7 normalization failed at p={p}")
    return C


def _exact_div(a: int, d: int) -> int:
    if a % d != 0:
        raise ArithmeticError("inexact division in Tate loop")
    return a // d


def tate_reduction(E: Curve, p: int) -> ReductionInfo:
    """Kodaira type, ord_p of the minimal discriminant and conductor exponent
    at p, via the full Tate loop (valuations and residue tests only).

    The conductor exponent is obtained from the type through Ogg's formula
    f = ord_p(disc_min) - (#components) + 1, which absorbs wild ramification
    at p = 2, 3."""
    if p < 2 or not _is_prime_small(p):
        raise ValueError(f"{p} is not prime")
    C = E
    minimal = True

    while True:
        n = valuation(C.disc, p)
        if n == 0:
            return ReductionInfo(p, "I0", 0, 0, 0, minimal)
        C = _translate_to_singular(C, p)
        if C.b2 % p != 0:
            return ReductionInfo(p, "In", n, n, 1, minimal)
        if C.a6 % p**2 != 0:
            return ReductionInfo(p, "II", 0, n, n, minimal)
        if C.b8 % p**3 != 0:
            return ReductionInfo(p, "III", 0, n, n - 1, minimal)
        if C.b6 % p**3 != 0:
            return ReductionInfo(p, "IV", 0, n, n - 2, minimal)
        C = _normalize_step7(C, p)
        b = _exact_div(C.a2, p)
        c = _exact_div(C.a4, p * p)
        d = _exact_div(C.a6, p**3)
        kind, root = cubic_multiple_root(b, c, d, p)
        if kind == "distinct":
            return ReductionInfo(p, "I0*", 0, n, n - 4, minimal)
        if kind == "double":
            C = Transform(1, p * root, 0, 0).apply_curve(C)
            nn = _instar_loop(C, p)
            return ReductionInfo(p, "In*", nn, n, n - 4 - nn, minimal)
        # triple root
        C = Transform(1, p * root, 0, 0).apply_curve(C)
        a32 = _exact_div(C.a3, p * p)
        a64 = _exact_div(C.a6, p**4)
        if quadratic_y_distinct(a32, a64, p):
            return ReductionInfo(p, "IV*", 0, n, n - 6, minimal)
        y0 = quadratic_y_double_root(a32, a64, p)
        C = Transform(1, 0, 0, p * p * y0).apply_curve(C)
        if C.a4 % p**4 != 0:
            return ReductionInfo(p, "III*", 0, n, n - 7, minimal)
        if C.a6 % p**6 != 0:
            return ReductionInfo(p, "II*", 0, n, n - 8, minimal)
        # the model was not minimal at p: rescale and restart
        C = Transform(p, 0, 0, 0).apply_curve(C)
        minimal = False


def _instar_loop(C: Curve, p: int) -> int:
    """Subprocedure counting n for type In*.  On entry the cubic has its
    double root at T = 0, so v(a2) = 1, v(a3) >= 2, v(a4) >= 3, v(a6) >= 4."""
    nn = 1
    mx = p * p
    my = p * p
    while True:
        a2t = _exact_div(C.a2, p)
        a3t = _exact_div(C.a3, my)
        a4t = _exact_div(C.a4, p * mx)
        a6t = _exact_div(C.a6, mx * my)
        if quadratic_y_distinct(a3t, a6t, p):
            return nn
        y0 = quadratic_y_double_root(a3t, a6t, p)
        C = Transform(1, 0, 0, my * y0).apply_curve(C)
        nn += 1
        my *= p
        a4t = _exact_div(C.a4, p * mx)
        a6t = _exact_div(C.a6, mx * my)
        if quadratic_x_distinct(a2t, a4t, a6t, p):
            return nn
        x0 = quadratic_x_double_root(a2t, a4t, a6t, p)
        C = Transform(1, mx * x0, 0, 0).apply_curve(C)
        nn += 1
        mx *= p


def _is_prime_small(p: int) -> bool:
    from .intfactor import is_probable_prime

    return is_probable_prime(p)


# ---------------------------------------------------------------------------
# Minimal models (Laska-Kraus-Connell)
# ---------------------------------------------------------------------------


def _model_from_c4c6(c4: int, c6: int) -> Curve:
    """Standardized integral model with the given invariants (Kraus recovery)."""
    b2 = -c6 % 12
    if b2 > 6:
        b2 -= 12
    b4, rem = divmod(b2 * b2 - c4, 24)
    if rem:
        raise ArithmeticError("Kraus recovery failed for b4")
    b6, rem = divmod(-(b2**3) + 36 * b2 * b4 - c6, 216)
    if rem:
        raise ArithmeticError("Kraus recovery failed for b6")
    a1 = b2 % 2
    a3 = b6 % 2
    a2, rem = divmod(b2 - a1, 4)
    if rem:
        raise ArithmeticError("Kraus recovery failed for a2")
    a4, rem = divmod(b4 - a1 * a3, 2)
    if rem:
        raise ArithmeticError("Kraus recovery failed for a4")
    a6, rem = divmod(b6 - a3, 4)
    if rem:
        raise ArithmeticError("Kraus recovery failed for a6")
    return Curve(a1, a2, a3, a4, a6)


def minimal_model(E: Curve) -> tuple[Curve, Transform]:
    """The standardized global minimal model and the transform mapping E to it."""
    c4, c6, disc = E.c4, E.c6, E.disc
    u = 1
    for p, vd in factor_completely(disc).items():
        k = vd // 12
        if c4 != 0:
            k = min(k, valuation(c4, p) // 4)
        if c6 != 0:
            k = min(k, valuation(c6, p) // 6)
        u *= p**k
    while u % 2 == 0 or u % 3 == 0:
        c4u, c6u = c4 // u**4, c6 // u**6
        if c6u != 0 and valuation(c6u, 3) == 2:
            u //= 3
            continue
        if not (c6u % 4 == 3 or (c4u % 16 == 0 and c6u % 32 in (0, 8))):
            if u % 2 == 0:
                u //= 2
                continue
        break
    Emin = _model_from_c4c6(c4 // u**4, c6 // u**6)
    tr = _transform_between(E, Emin, u)
    return Emin, tr


def _transform_between(E: Curve, E2: Curve, u: int) -> Transform:
    """The (u, r, s, t) substitution from E to E2, given the scale u."""
    s = Fraction(u * E2.a1 - E.a1, 2)
    r = Fraction(u * u * E2.a2 - E.a2 + s * E.a1 + s * s, 3)
    t = Fraction(u**3 * E2.a3 - E.a3 - r * E.a1, 2)
    tr = Transform(u, r, s, t)
    if tr.apply_curve(E) != E2:
        raise ArithmeticError("inconsistent change of variables")
    return tr


def is_minimal(E: Curve) -> bool:
    Emin, _ = minimal_model(E)
    return abs(Emin.disc) == abs(E.disc)


def standardized_model(E: Curve) -> tuple[Curve, Transform]:
    """Reduce a1, a3 to {0,1} and a2 to {-1,0,1} by a unimodular substitution."""
    a1n = E.a1 % 2
    s = Fraction(a1n - E.a1, 2)
    a2_shift = E.a2 - s * E.a1 - s * s
    a2n = int(a2_shift) % 3
    if a2n > 1:
        a2n -= 3
    r = Fraction(a2n - a2_shift, 3)
    a3_shift = E.a3 + r * E.a1
    a3n = int(a3_shift) % 2
    t = Fraction(a3n - a3_shift, 2)
    tr = Transform(1, r, s, t)
    return tr.apply_curve(E), tr


# ---------------------------------------------------------------------------
# Conductor and Szpiro ratio
# ---------------------------------------------------------------------------


def bad_primes(E: Curve) -> list[int]:
    return sorted(factor_completely(E.disc).keys())


def conductor_and_szpiro(E: Curve, bits: int | None = None):
    """(conductor, szpiro ratio) for a minimal model E."""
    conductor = 1
    for p in bad_primes(E):
        info = tate_reduction(E, p)
        if not info.is_minimal_at_p:
            raise NotMinimal(f"model not minimal at {p}")
        conductor *= p**info.conductor_exponent
    if conductor == 1:
        raise DegenerateSzpiro("no bad primes")
    with precision(bits):
        ratio = log_abs(E.disc, bits) / gmpy2.log(gmpy2.mpfr(conductor))
    return conductor, ratio
