"""Exact univariate polynomial arithmetic over Q.

Coefficients are Fractions (ints accepted and normalized), stored lowest
degree first.  Everything here is pure and exact; no floats.  The degrees
that show up in practice are small (a few hundred at most, from psi_n^2
with n <= 64), so schoolbook algorithms are fine.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence


def _norm(coeffs: Iterable) -> tuple[Fraction, ...]:
    out = [Fraction(c) for c in coeffs]
    while out and out[-1] == 0:
        out.pop()
    return tuple(out)


@dataclass(frozen=True)
class XPolynomial:
    coeffs: tuple[Fraction, ...]

    def __init__(self, coeffs: Iterable = ()):  # type: ignore[override]
        object.__setattr__(self, "coeffs", _norm(coeffs))

    # -- basic structure -------------------------------------------------
    @property
    def degree(self) -> int:
        """Degree; -1 for the zero polynomial."""
        return len(self.coeffs) - 1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    @property
    def lc(self) -> Fraction:
        if self.is_zero:
            return Fraction(0)
        return self.coeffs[-1]

    def __bool__(self) -> bool:
        return not self.is_zero

    def __getitem__(self, i: int) -> Fraction:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return Fraction(0)

    # -- ring operations -------------------------------------------------
    def __add__(self, other) -> "XPolynomial":
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return XPolynomial([self[i] + other[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self) -> "XPolynomial":
        return XPolynomial([-c for c in self.coeffs])

    def __sub__(self, other) -> "XPolynomial":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "XPolynomial":
        return _coerce(other) - self

    def __mul__(self, other) -> "XPolynomial":
        if isinstance(other, (int, Fraction)):
            return XPolynomial([c * other for c in self.coeffs])
        other = _coerce(other)
        if self.is_zero or other.is_zero:
            return XPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return XPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "XPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result = XPolynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __divmod__(self, other) -> tuple["XPolynomial", "XPolynomial"]:
        other = _coerce(other)
        if other.is_zero:
            raise ZeroDivisionError("polynomial division by zero")
        q = [Fraction(0)] * max(0, self.degree - other.degree + 1)
        rem = list(self.coeffs)
        d = other.degree
        inv_lc = 1 / other.lc
        while len(rem) - 1 >= d and any(rem):
            while rem and rem[-1] == 0:
                rem.pop()
            if len(rem) - 1 < d:
                break
            k = len(rem) - 1 - d
            c = rem[-1] * inv_lc
            q[k] = c
            for i in range(d + 1):
                rem[k + i] -= c * other.coeffs[i]
            rem.pop()
        return XPolynomial(q), XPolynomial(rem)

    def __floordiv__(self, other) -> "XPolynomial":
        return divmod(self, other)[0]

    def __mod__(self, other) -> "XPolynomial":
        return divmod(self, other)[1]

    def divides(self, other: "XPolynomial") -> bool:
        """True iff self divides other exactly in Q[x]."""
        if self.is_zero:
            return other.is_zero
        return (other % self).is_zero

    def exact_div(self, other) -> "XPolynomial":
        q, r = divmod(self, other)
        if not r.is_zero:
            raise ValueError("inexact polynomial division")
        return q

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = _coerce(other)
        if not isinstance(other, XPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash(self.coeffs)

    # -- calculus / evaluation -------------------------------------------
    def derivative(self) -> "XPolynomial":
        return XPolynomial([i * c for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        """Horner evaluation; works for Fraction/int and for mpfr/mpc."""
        acc = None
        for c in reversed(self.coeffs):
            if acc is None:
                acc = c if not isinstance(c, Fraction) else _frac_as(c, x)
            else:
                acc = acc * x + _frac_as(c, x)
        if acc is None:
            return 0 * x if not isinstance(x, (int, Fraction)) else Fraction(0)
        return acc

    def eval_fraction(self, x) -> Fraction:
        x = Fraction(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    # -- derived constructions -------------------------------------------
    def monic(self) -> "XPolynomial":
        if self.is_zero:
            return self
        return self * (1 / self.lc)

    def gcd(self, other: "XPolynomial") -> "XPolynomial":
        a, b = self, _coerce(other)
        while not b.is_zero:
            a, b = b, a % b
        return a.monic() if not a.is_zero else a

    def radical(self) -> "XPolynomial":
        """Squarefree part (monic)."""
        if self.degree <= 0:
            return self.monic()
        return self.exact_div(self.gcd(self.derivative())).monic()

    def resultant(self, other: "XPolynomial") -> Fraction:
        """Resultant over Q via the Euclidean remainder sequence."""
        a, b = self, _coerce(other)
        if a.is_zero or b.is_zero:
            return Fraction(0)
        sign = 1
        acc = Fraction(1)
        while b.degree > 0:
            r = a % b
            if r.is_zero:
                return Fraction(0) if a.degree > 0 else acc
            if (a.degree * b.degree) % 2 == 1:
                sign = -sign
            acc *= b.lc ** (a.degree - r.degree)
            a, b = b, r
        return sign * acc * b.lc ** a.degree

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def int_coeffs(self) -> tuple[int, ...]:
        if not self.is_integral():
            raise ValueError("polynomial has non-integer coefficients")
        return tuple(int(c) for c in self.coeffs)

    def compose_rational(self, num: "XPolynomial", den: "XPolynomial") -> "XPolynomial":
        """self(num/den) * den^degree(self), the denominator-cleared composition."""
        d = self.degree
        if d < 0:
            return XPolynomial()
        acc = XPolynomial()
        num_pow = XPolynomial([1])
        den_pows = [XPolynomial([1])]
        for _ in range(d):
            den_pows.append(den_pows[-1] * den)
        for i, c in enumerate(self.coeffs):
            if c != 0:
                acc = acc + num_pow * den_pows[d - i] * c
            if i < d:
                num_pow = num_pow * num
        return acc

    # -- text format -------------------------------------------------------
    def to_text(self) -> str:
        """Comma-separated coefficients, lowest degree first."""
        if self.is_zero:
            return "0"
        return ",".join(
            str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
            for c in self.coeffs
        )

    @classmethod
    def from_text(cls, text: str) -> "XPolynomial":
        parts = [p.strip() for p in text.strip().split(",")]
        return cls([Fraction(p) for p in parts if p != ""])

    def __repr__(self) -> str:
        return f"XPolynomial([{self.to_text()}])"


def _coerce(v) -> XPolynomial:
    if isinstance(v, XPolynomial):
        return v
    if isinstance(v, (int, Fraction)):
        return XPolynomial([v])
    raise TypeError(f"cannot coerce {type(v)!r} to XPolynomial")


def _frac_as(c: Fraction, like):
    """Convert a Fraction into the arithmetic domain of `like` (Fraction stays
    exact; mpfr/mpc get an exact two-step division)."""
    if isinstance(like, (int, Fraction)):
        return c
    return (0 * like + c.numerator) / c.denominator


def interpolate(points: Sequence[tuple]) -> XPolynomial:
    """Lagrange interpolation through (x, y) pairs with distinct x."""
    result = XPolynomial()
    xs = [Fraction(x) for x, _ in points]
    for i, (_, yi) in enumerate(points):
        term = XPolynomial([Fraction(yi)])
        for j, xj in enumerate(xs):
            if j == i:
                continue
            term = term * XPolynomial([-xj, 1]) * Fraction(1, xs[i] - xj)
        result = result + term
    return result


X = XPolynomial([0, 1])
ONE = XPolynomial([1])
ZERO = XPolynomial()
