"""Division polynomials and rational-kernel isogenies.

psi_n is kept internally as a pair (f_n, parity): for odd n it is a pure
x-polynomial, for even n it carries one factor of 2y + a1 x + a3, whose
square is the x-polynomial W = 4x^3 + b2 x^2 + 2 b4 x + b6.  The public API
only exposes psi_n^2 and phi_n as x-polynomials, plus the signed value
psi_n(P) at a rational point.

Isogenies are built from a monic kernel x-polynomial by Velu's formulas,
assembled through symmetric functions of the kernel roots so no root is
ever extracted.  The codomain is reduced to its standardized minimal model
and the scaling of the invariant differential is recorded as d_sigma.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .curve_core import (
    Curve,
    INFINITY,
    Point,
    Transform,
    cubic_multiple_root,
    integral_model,
    minimal_model,
    on_curve,
    point_mul,
)
from .errors import (
    DomainMismatch,
    InvalidKernel,
    NonCoprimeDegrees,
    NonRationalKernel,
    PointNotOnCurve,
    ReducesToIdentity,
)
from .intfactor import is_probable_prime, valuation
from .polynomial import ONE, X, XPolynomial, interpolate

_F_CACHE: dict[tuple[int, int, int, int, int], dict[int, XPolynomial]] = {}


def two_torsion_poly(E: Curve) -> XPolynomial:
    """W = 4x^3 + b2 x^2 + 2 b4 x + b6, the square of 2y + a1 x + a3 on E."""
    return XPolynomial([E.b6, 2 * E.b4, E.b2, 4])


def _f_table(E: Curve) -> dict[int, XPolynomial]:
    key = E.ainvs()
    table = _F_CACHE.get(key)
    if table is None:
        b2, b4, b6, b8 = E.b2, E.b4, E.b6, E.b8
        table = {
            0: XPolynomial(),
            1: ONE,
            2: ONE,
            3: XPolynomial([b8, 3 * b6, 3 * b4, b2, 3]),
            4: XPolynomial(
                [
                    b4 * b8 - b6 * b6,
                    b2 * b8 - b4 * b6,
                    10 * b8,
                    10 * b6,
                    5 * b4,
                    b2,
                    2,
                ]
            ),
        }
        _F_CACHE[key] = table
    return table


def _f(E: Curve, n: int) -> XPolynomial:
    """The x-part of psi_n: psi_n = f_n for odd n, f_n * (2y+a1x+a3) for even."""
    if n < 0:
        return -_f(E, -n)
    table = _f_table(E)
    got = table.get(n)
    if got is not None:
        return got
    W = two_torsion_poly(E)
    m = n // 2
    if n % 2 == 0:
        val = _f(E, m) * (
            _f(E, m + 2) * _f(E, m - 1) ** 2 - _f(E, m - 2) * _f(E, m + 1) ** 2
        )
    elif m % 2 == 0:
        val = W * W * _f(E, m + 2) * _f(E, m) ** 3 - _f(E, m - 1) * _f(E, m + 1) ** 3
    else:
        val = _f(E, m + 2) * _f(E, m) ** 3 - W * W * _f(E, m - 1) * _f(E, m + 1) ** 3
    table[n] = val
    return val


def psi_n_squared(E: Curve, n: int) -> XPolynomial:
    """psi_n^2 as an integer-coefficient x-polynomial; degree n^2 - 1."""
    if n < 0:
        n = -n
    f = _f(E, n)
    sq = f * f
    if n % 2 == 0:
        sq = sq * two_torsion_poly(E)
    return sq


psi_n = psi_n_squared


def phi_n(E: Curve, n: int) -> XPolynomial:
    """phi_n = x psi_n^2 - psi_{n+1} psi_{n-1}; monic of degree n^2."""
    if n < 0:
        n = -n
    if n == 0:
        raise ValueError("phi_0 is undefined")
    W = two_torsion_poly(E)
    fsq = _f(E, n) ** 2
    cross = _f(E, n + 1) * _f(E, n - 1)
    if n % 2 == 0:
        return X * fsq * W - cross
    return X * fsq - cross * W


def psi_value(E: Curve, n: int, P: Point) -> Fraction:
    """The signed value psi_n(P) for an affine point P."""
    if P.is_infinity:
        raise ValueError("psi_n is evaluated at affine points")
    val = _f(E, n).eval_fraction(P.x)
    if n % 2 == 0:
        val *= 2 * P.y + E.a1 * P.x + E.a3
    return val


# ---------------------------------------------------------------------------
# Isogenies
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class Isogeny:
    """x-level data of an isogeny: x(sigma(P)) = phi(x(P)) / psi_sq(x(P)).

    kernel_x_poly is monic and squarefree, one root per +/- pair of kernel
    points.  d_sigma > 0 scales the invariant differential; d_sigma^2 is the
    leading coefficient of psi_sq.  mult is set when the map is [m]."""

    domain: Curve
    codomain: Curve
    degree: int
    kernel_x_poly: XPolynomial
    d_sigma: int
    psi_sq: XPolynomial
    phi: XPolynomial
    mult: int | None = None

    @property
    def is_identity(self) -> bool:
        return self.degree == 1


def identity_isogeny(E: Curve) -> Isogeny:
    return Isogeny(E, E, 1, ONE, 1, ONE, X, mult=1)


def mult_isogeny(E: Curve, m: int) -> Isogeny:
    """The multiplication-by-m map as an Isogeny (degree m^2, d_sigma = m)."""
    if m < 1:
        raise ValueError("m must be a positive integer")
    if m == 1:
        return identity_isogeny(E)
    kernel = psi_n_squared(E, m).radical()
    return Isogeny(E, E, m * m, kernel, m, psi_n_squared(E, m), phi_n(E, m), mult=m)


def _power_sums(poly: XPolynomial, upto: int) -> list[Fraction]:
    """Newton power sums p_0..p_upto of the roots of a monic polynomial."""
    k = poly.degree
    e = [Fraction(0)] * (upto + 1)
    for i in range(1, upto + 1):
        e[i] = (-1) ** i * poly[k - i] if i <= k else Fraction(0)
    p = [Fraction(k)] + [Fraction(0)] * upto
    for i in range(1, upto + 1):
        acc = Fraction(0)
        for j in range(1, i):
            acc += (-1) ** (j - 1) * e[j] * p[i - j]
        acc += (-1) ** (i - 1) * e[i] * i
        p[i] = acc
    return p


def _trace_poly(values: XPolynomial, poly: XPolynomial) -> XPolynomial:
    """Numerator of sum_i values(r_i)/(x - r_i) over the roots of monic poly."""
    return (values * poly.derivative()) % poly


def velu(E: Curve, kernel_x_poly: XPolynomial) -> Isogeny:
    """Isogeny with the given kernel, codomain reduced to its standardized
    minimal model.  The kernel polynomial is monic and squarefree with one
    root per +/- pair of kernel points."""
    k = kernel_x_poly
    if not isinstance(k, XPolynomial):
        raise NonRationalKernel("kernel must be an x-polynomial over Q")
    if k.is_zero or k.lc != 1:
        raise InvalidKernel("kernel polynomial must be monic and nonzero")
    if k.degree == 0:
        return identity_isogeny(E)
    if k != k.radical():
        raise InvalidKernel("kernel polynomial must be squarefree")
    try:
        return _velu_inner(E, k)
    except (ArithmeticError, ValueError, ZeroDivisionError) as exc:
        raise InvalidKernel(f"kernel does not define a rational subgroup: {exc}")


def _velu_inner(E: Curve, k: XPolynomial) -> Isogeny:
    W = two_torsion_poly(E)
    g = k.gcd(W.monic())
    h = k.exact_div(g)
    D = g * h * h
    d = D.degree + 1
    if not D.divides(psi_n_squared(E, d)):
        raise InvalidKernel(f"kernel roots are not {d}-torsion x-coordinates")

    b2, b4, b6 = E.b2, E.b4, E.b6
    pg = _power_sums(g, 3)
    ph = _power_sums(h, 3)
    half = Fraction(1, 2)
    # per-root quantities: T(x) = 6x^2 + b2 x + b4 (halved on 2-torsion roots)
    # and F(x) = W(x), zero on 2-torsion roots
    t = half * (6 * pg[2] + b2 * pg[1] + b4 * pg[0]) + (
        6 * ph[2] + b2 * ph[1] + b4 * ph[0]
    )
    w = half * (6 * pg[3] + b2 * pg[2] + b4 * pg[1]) + (
        6 * ph[3] + b2 * ph[2] + b4 * ph[1]
    ) + (4 * ph[3] + b2 * ph[2] + 2 * b4 * ph[1] + b6 * ph[0])

    ainvs_v = (
        Fraction(E.a1),
        Fraction(E.a2),
        Fraction(E.a3),
        E.a4 - 5 * t,
        E.a6 - b2 * t - 7 * w,
    )
    E_int, tr_int = integral_model(ainvs_v)
    E_min, tr_min = minimal_model(E_int)
    tr = tr_int.then(tr_min)
    if tr.u <= 0:
        raise ArithmeticError("unexpected nonpositive scaling")
    if tr.u.denominator != 1:
        raise InvalidKernel("differential scaling is not an integer")
    d_sigma = int(tr.u)

    # x-map numerator over D = g h^2, via trace polynomials (no root extraction)
    Tpoly = XPolynomial([b4, b2, 6])
    N_g = _trace_poly(Tpoly * half, g)
    N_h1 = _trace_poly(Tpoly, h)
    N_h2 = _trace_poly(W, h)
    N = (
        X * g * h * h
        + N_g * h * h
        + N_h1 * g * h
        + (N_h2 * h.derivative() - N_h2.derivative() * h) * g
    )
    phi = N - tr.r * D
    psi_sq = D * (d_sigma * d_sigma)

    if not (phi.is_integral() and psi_sq.is_integral()):
        raise InvalidKernel("isogeny polynomials are not integral")
    if d % d_sigma != 0:
        raise InvalidKernel("differential scaling does not divide the degree")
    if phi.degree != d or psi_sq.degree != d - 1:
        raise InvalidKernel("degree mismatch in isogeny polynomials")
    if phi.resultant(psi_sq) == 0:
        raise InvalidKernel("x-map numerator and denominator share a root")

    sigma = Isogeny(E, E_min, d, k, d_sigma, psi_sq, phi)
    if not _commutes_with_doubling(sigma):
        raise InvalidKernel("kernel is not a subgroup (doubling does not commute)")
    return sigma


def _commutes_with_doubling(sigma: Isogeny) -> bool:
    """Exact check of x(sigma(2P)) = x(2 sigma(P)) as rational functions."""
    phi2d, psi2d = phi_n(sigma.domain, 2), psi_n_squared(sigma.domain, 2)
    phi2c, psi2c = phi_n(sigma.codomain, 2), psi_n_squared(sigma.codomain, 2)
    a = sigma.phi.compose_rational(phi2d, psi2d)
    b = sigma.psi_sq.compose_rational(phi2d, psi2d) * psi2d
    c = phi2c.compose_rational(sigma.phi, sigma.psi_sq)
    e = psi2c.compose_rational(sigma.phi, sigma.psi_sq) * sigma.psi_sq
    return a * e == b * c


def isogeny_apply(sigma: Isogeny, P: Point) -> Point:
    """Image of P under sigma.  For kernel points the image is infinity.
    The y-coordinate is fixed by a deterministic branch choice, so the result
    is well defined up to the sign of sigma (which no height or denominator
    quantity sees)."""
    if not on_curve(sigma.domain, P):
        raise PointNotOnCurve(f"{P} not on {sigma.domain}")
    if P.is_infinity:
        return INFINITY
    if sigma.mult is not None:
        return point_mul(sigma.domain, sigma.mult, P)
    den = sigma.psi_sq.eval_fraction(P.x)
    if den == 0:
        return INFINITY
    x = sigma.phi.eval_fraction(P.x) / den
    E2 = sigma.codomain
    lin = E2.a1 * x + E2.a3
    disc = lin * lin + 4 * (x**3 + E2.a2 * x * x + E2.a4 * x + E2.a6)
    y = (-lin + _fraction_sqrt(disc)) / 2
    Q = Point(x, y)
    if not on_curve(E2, Q):
        raise ArithmeticError("isogeny image fell off the codomain")
    return Q


def _fraction_sqrt(q: Fraction) -> Fraction:
    if q < 0:
        raise ValueError("negative discriminant for a rational image point")
    ns = math.isqrt(q.numerator)
    ds = math.isqrt(q.denominator)
    if ns * ns != q.numerator or ds * ds != q.denominator:
        raise ValueError("discriminant is not a rational square")
    return Fraction(ns, ds)


# ---------------------------------------------------------------------------
# Composition and the chain rule
# ---------------------------------------------------------------------------


def composite_kernel_poly(sigma: Isogeny, tau: Isogeny) -> XPolynomial:
    """Monic squarefree x-polynomial of ker(tau o sigma) on domain(sigma)."""
    if sigma.codomain != tau.domain:
        raise DomainMismatch("codomain of sigma must be the domain of tau")
    pulled = tau.kernel_x_poly.compose_rational(sigma.phi, sigma.psi_sq)
    return (sigma.kernel_x_poly * pulled).radical()


def composite_isogeny(sigma: Isogeny, tau: Isogeny) -> Isogeny:
    """tau o sigma, constructed directly from its kernel."""
    comp = velu(sigma.domain, composite_kernel_poly(sigma, tau))
    if comp.degree != sigma.degree * tau.degree:
        raise InvalidKernel("composite kernel has the wrong order")
    return comp


def compose_check(sigma: Isogeny, tau: Isogeny) -> bool:
    """Exact chain-rule identities for the composite tau o sigma:
    psi_sq and phi of the composite equal the denominator-cleared
    substitutions of tau's polynomials along sigma."""
    comp = composite_isogeny(sigma, tau)
    phi_sub = tau.phi.compose_rational(sigma.phi, sigma.psi_sq)
    psi_sub = sigma.psi_sq * tau.psi_sq.compose_rational(sigma.phi, sigma.psi_sq)
    return comp.codomain == tau.codomain and comp.phi == phi_sub and comp.psi_sq == psi_sub


def image_x_poly(sigma: Isogeny, poly: XPolynomial) -> XPolynomial:
    """Monic squarefree polynomial whose roots are the x-coordinates of the
    sigma-images of the points with x-root in poly (kernel roots dropped)."""
    reduced = poly.monic().exact_div(poly.gcd(sigma.kernel_x_poly))
    deg = reduced.degree
    if deg == 0:
        return ONE
    samples = []
    yv = 0
    while len(samples) <= deg:
        cleared = sigma.phi - yv * sigma.psi_sq
        samples.append((Fraction(yv), reduced.resultant(cleared)))
        yv += 1
    return interpolate(samples).radical()


def dual_isogeny(sigma: Isogeny) -> Isogeny:
    """An isogeny from codomain(sigma) with kernel sigma(E[deg sigma])."""
    if sigma.is_identity:
        return identity_isogeny(sigma.codomain)
    if sigma.mult is not None:
        return mult_isogeny(sigma.domain, sigma.mult)
    d = sigma.degree
    full = psi_n_squared(sigma.domain, d).radical()
    kernel = image_x_poly(sigma, full)
    dual = velu(sigma.codomain, kernel)
    if dual.degree != d:
        raise InvalidKernel("dual kernel has the wrong order")
    return dual


def pullback_kernel(sigma: Isogeny, tau: Isogeny) -> Isogeny:
    """For coprime degrees, the isogeny out of domain(sigma) whose kernel is
    the image of ker(tau) under the dual of sigma; it has degree deg(tau)."""
    if math.gcd(sigma.degree, tau.degree) != 1:
        raise NonCoprimeDegrees("degrees of sigma and tau must be coprime")
    if sigma.codomain != tau.domain:
        raise DomainMismatch("codomain of sigma must be the domain of tau")
    if tau.is_identity:
        return identity_isogeny(sigma.domain)
    dual = dual_isogeny(sigma)
    if dual.codomain != sigma.domain:
        raise DomainMismatch(
            "dual does not land on domain(sigma); use a standardized minimal domain"
        )
    kernel = image_x_poly(dual, tau.kernel_x_poly)
    pulled = velu(sigma.domain, kernel)
    if pulled.degree != tau.degree:
        raise InvalidKernel("pulled-back kernel has the wrong order")
    return pulled


def pullback_divisibility_check(sigma: Isogeny, tau: Isogeny) -> bool:
    """Does psi_sq(sigma) * psi_sq(tau_sigma) divide psi_sq(tau o sigma) in Z[x]?"""
    pulled = pullback_kernel(sigma, tau)
    comp = composite_isogeny(sigma, tau)
    prod = sigma.psi_sq * pulled.psi_sq
    if not prod.divides(comp.psi_sq):
        return False
    return comp.psi_sq.exact_div(prod).is_integral()


# ---------------------------------------------------------------------------
# Ayad's singular-reduction criterion
# ---------------------------------------------------------------------------


def singular_point_mod_p(E: Curve, p: int) -> tuple[int, int] | None:
    """The singular point of E mod p, or None when reduction is good."""
    if E.disc % p != 0:
        return None
    if p < 64:
        for x0 in range(p):
            for y0 in range(p):
                f = (
                    y0 * y0 + E.a1 * x0 * y0 + E.a3 * y0
                    - x0**3 - E.a2 * x0 * x0 - E.a4 * x0 - E.a6
                ) % p
                if f:
                    continue
                fx = (E.a1 * y0 - 3 * x0 * x0 - 2 * E.a2 * x0 - E.a4) % p
                fy = (2 * y0 + E.a1 * x0 + E.a3) % p
                if fx == 0 and fy == 0:
                    return (x0, y0)
        raise ArithmeticError("no singular point found at a bad prime")
    inv4 = pow(4, -1, p)
    kind, x0 = cubic_multiple_root(
        E.b2 * inv4 % p, 2 * E.b4 * inv4 % p, E.b6 * inv4 % p, p
    )
    if kind == "distinct":
        raise ArithmeticError("no multiple root at a bad prime")
    y0 = (-(E.a1 * x0 + E.a3) * pow(2, -1, p)) % p
    return (x0, y0)


def ayad_criterion(E: Curve, P: Point, p: int) -> str:
    """'Singular' iff P reduces to the singular point of E mod p, which is
    equivalent to ord_p(psi_m(P)) > 0 and ord_p(phi_m(P)) > 0 for any m >= 2."""
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    if P.is_infinity:
        raise ReducesToIdentity("P is the identity")
    if not on_curve(E, P):
        raise PointNotOnCurve(f"{P} not on {E}")
    _, B, _ = P.triple
    if B % p == 0:
        raise ReducesToIdentity(f"P reduces to the identity mod {p}")
    sing = singular_point_mod_p(E, p)
    if sing is None:
        return "Nonsingular"
    A, B, C = P.triple
    binv = pow(B, -1, p)
    xr = A * binv * binv % p
    yr = C * binv**3 % p
    return "Singular" if (xr, yr) == sing else "Nonsingular"
