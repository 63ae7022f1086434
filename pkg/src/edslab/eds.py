"""Elliptic divisibility sequences attached to a curve/point pair.

For a minimal model E and nontorsion P in E(Q), write [n]P =
(A_n/B_n^2, C_n/B_n^3) in lowest terms with B_n > 0.  The map n -> B_n is
a divisibility sequence; its terms are produced here both one-off and
incrementally, together with the two valuation comparisons that make the
sequence useful for factoring: transfer of valuations through an isogeny
and the division-polynomial expression for B at an isogeny image.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .bigfloat import log_abs, precision
from .curve_core import Curve, Point, on_curve, point_add, point_mul, tate_reduction
from .division_polynomials import Isogeny, ayad_criterion, isogeny_apply
from .errors import NotMinimal, PointNotOnCurve
from .intfactor import factor_completely, valuation


@dataclass(frozen=True)
class EDSTerm:
    n: int
    A_n: int | None
    B_n: int | None
    C_n: int | None
    is_infinity: bool

    @classmethod
    def from_point(cls, n: int, P: Point) -> "EDSTerm":
        if P.is_infinity:
            return cls(n, None, None, None, True)
        A, B, C = P.triple
        return cls(n, A, B, C, False)


def term(E: Curve, P: Point, n: int) -> EDSTerm:
    """The n-th term B_n (with its companions A_n, C_n) via [n]P."""
    if not on_curve(E, P):
        raise PointNotOnCurve(f"{P} not on {E}")
    return EDSTerm.from_point(n, point_mul(E, n, P))


def sequence(E: Curve, P: Point, n_max: int) -> list[EDSTerm]:
    """Terms 1..n_max by repeated addition (one group operation per step)."""
    if not on_curve(E, P):
        raise PointNotOnCurve(f"{P} not on {E}")
    out = []
    Q = P
    for n in range(1, n_max + 1):
        out.append(EDSTerm.from_point(n, Q))
        Q = point_add(E, Q, P)
    return out


def _b_of(P: Point) -> int:
    return 1 if P.is_infinity else P.triple[1]


def valuation_transfer_check(
    sigma: Isogeny, P: Point, p: int
) -> tuple[int, int, bool]:
    """Compare ord_p(B_P) with ord_p(B_{sigma(P)}).

    Both models must be minimal at p.  The expected behaviour is that the
    valuation can only grow under the isogeny, and when it is already
    positive it grows by at most ord_p(deg sigma)."""
    for E in (sigma.domain, sigma.codomain):
        if not tate_reduction(E, p).is_minimal_at_p:
            raise NotMinimal(f"model not minimal at {p}")
    if not on_curve(sigma.domain, P):
        raise PointNotOnCurve(f"{P} not on {sigma.domain}")
    v1 = valuation(_b_of(P), p)
    v2 = valuation(_b_of(isogeny_apply(sigma, P)), p)
    ok = v1 <= v2 and (v1 == 0 or v2 <= v1 + valuation(sigma.degree, p))
    return v1, v2, ok


def good_reduction_everywhere(E: Curve, P: Point) -> bool:
    """True iff the reduction of P at every prime is a nonsingular point
    (reduction to the identity counts as good)."""
    if P.is_infinity:
        return True
    _, B, _ = P.triple
    for p in sorted(factor_completely(E.disc)):
        if tate_reduction(E, p).kodaira_type == "I0":
            continue
        if B % p == 0:
            continue
        if ayad_criterion(E, P, p) == "Singular":
            return False
    return True


def division_poly_link_check(sigma: Isogeny, P: Point, bits: int | None = None):
    """Compare B_{sigma(P)} with B_P^{deg} |psi_sigma(P)|.

    When P reduces to a nonsingular point everywhere the two agree exactly
    and the check is done in integers.  Otherwise the comparison is the
    two-sided logarithmic one, with slack (3/2) deg(sigma) h(E_domain).
    Returns (lhs, rhs_low, rhs_high, ok); in the exact case the three
    numbers are equal."""
    from .heights import curve_height

    if not on_curve(sigma.domain, P):
        raise PointNotOnCurve(f"{P} not on {sigma.domain}")
    psi2 = sigma.psi_sq.eval_fraction(P.x)
    _, B, _ = P.triple
    Q = isogeny_apply(sigma, P)
    B_img = _b_of(Q)
    d = sigma.degree
    if good_reduction_everywhere(sigma.domain, P):
        # exact: B_img^2 == B^(2d) * psi2
        lhs_sq = Fraction(B) ** (2 * d) * abs(psi2)
        ok = lhs_sq == Fraction(B_img) ** 2
        with precision(bits):
            val = log_abs(B_img, bits) if B_img > 1 else gmpy2.mpfr(0)
        return val, val, val, ok
    with precision(bits):
        lhs = (d * log_abs(B, bits) if B > 1 else gmpy2.mpfr(0)) + (
            log_abs(psi2, bits) / 2
        )
        low = log_abs(B_img, bits) if B_img > 1 else gmpy2.mpfr(0)
        high = low + Fraction(3, 2) * d * curve_height(sigma.domain, bits)
        eps = gmpy2.mpfr(2) ** (-32)
        ok = bool(low - eps <= lhs <= high + eps)
    return lhs, low, high, ok
