"""Arbitrary-precision real (and complex) helpers on top of gmpy2.

Precision is always passed explicitly (bits); the default is 192, overridable
through the EDSLAB_PRECISION environment variable.  gmpy2 contexts are
thread-local, so the local_context blocks used here are parallel-safe.
"""

from __future__ import annotations

import os
from contextlib import contextmanager
from fractions import Fraction

import gmpy2

DEFAULT_PRECISION = 192
_MIN_PRECISION = 64


def default_precision() -> int:
    raw = os.environ.get("EDSLAB_PRECISION")
    if raw is None:
        return DEFAULT_PRECISION
    try:
        prec = int(raw)
    except ValueError:
        return DEFAULT_PRECISION
    return max(_MIN_PRECISION, prec)


@contextmanager
def precision(bits: int | None = None, guard: int = 16):
    """Context with the working precision set to bits+guard."""
    bits = default_precision() if bits is None else bits
    with gmpy2.context(precision=bits + guard) as ctx:
        yield ctx


def mpfr_from_fraction(q, bits: int | None = None):
    q = Fraction(q)
    with precision(bits):
        return gmpy2.mpfr(q.numerator) / gmpy2.mpfr(q.denominator)


def log_abs(q, bits: int | None = None):
    """log|q| for a nonzero rational or mpfr."""
    with precision(bits):
        if isinstance(q, (int, Fraction)):
            q = Fraction(q)
            if q == 0:
                raise ValueError("log of zero")
            return gmpy2.log(abs(gmpy2.mpfr(q.numerator))) - gmpy2.log(
                gmpy2.mpfr(q.denominator)
            )
        return gmpy2.log(abs(q))


def to_decimal_string(x, digits: int | None = None) -> str:
    """Decimal serialization of an mpfr (round-trippable at the precision used)."""
    if digits is None:
        digits = max(2, int(gmpy2.get_context().precision * 0.3010) + 2)
    x = gmpy2.mpfr(x)
    if not gmpy2.is_finite(x):
        return str(x)
    if x == 0:
        return "0e+00"
    mant, exp, _ = gmpy2.digits(x, 10, digits)
    sign = "-" if mant.startswith("-") else ""
    mant = mant.lstrip("-")
    return f"{sign}{mant[0]}.{mant[1:]}e{exp - 1:+03d}"
