"""Heights: naive, canonical, local (archimedean and p-adic), the curve
height h(E), the real elliptic logarithm, and the height identities under
isogeny.

Normalization.  All canonical local heights carry the discriminant term:
at a prime p of good reduction

    h_p(Q) = ( (1/2) max(0, -ord_p(x(Q))) + (1/12) ord_p(Delta) ) log p

and the archimedean part is normalized so that the total decomposes as
h_hat = h_inf + sum_p h_p.  With this choice the isogeny identity

    log|psi_sigma(P)| = deg(sigma) h_inf(P) - h_inf(sigma P)
                        + (deg(sigma) log|Delta_dom| - log|Delta_cod|)/12

holds exactly, which is what pins every constant below; the test suite
asserts it to 1e-8 at 192 bits.

The archimedean part is computed as a dynamical Green's function of the
x-coordinate duplication pair, with geometric 4^-n convergence.  The
elliptic logarithm uses Carlson's symmetric integral R_F under its
duplication rule, which handles the complex root pair when Delta < 0.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import gmpy2

from .bigfloat import default_precision, log_abs, mpfr_from_fraction, precision
from .curve_core import (
    Curve,
    Point,
    on_curve,
    point_mul,
    tate_reduction,
)
from .division_polynomials import Isogeny, isogeny_apply
from .errors import (
    BoundedComponent,
    DivergencePrecision,
    IdentityPoint,
    KernelPoint,
    NotMinimal,
    PointNotOnCurve,
    UnboundedComponent,
)
from .intfactor import Budget, factor, factor_completely, valuation


def _require_minimal(E: Curve) -> None:
    from .curve_core import is_minimal

    if not is_minimal(E):
        raise NotMinimal(f"{E} is not a minimal model")


def _require_affine(E: Curve, P: Point) -> None:
    if P.is_infinity:
        raise IdentityPoint("operation needs an affine point")
    if not on_curve(E, P):
        raise PointNotOnCurve(f"{P} not on {E}")


# ---------------------------------------------------------------------------
# Naive heights
# ---------------------------------------------------------------------------


def curve_height(E: Curve, bits: int | None = None):
    """h(E) = (1/12) max{h(j(E)), log|Delta|} for a minimal model."""
    _require_minimal(E)
    with precision(bits):
        hj = gmpy2.log(gmpy2.mpfr(max(abs(E.j.numerator), E.j.denominator, 1)))
        hd = log_abs(E.disc, bits)
        return gmpy2.mpfr(max(hj, hd)) / 12


def naive_arch_height(P: Point, bits: int | None = None):
    """h_inf(P) = (1/2) log max(|x(P)|, 1), the naive archimedean part.
    Model-dependent, unlike the canonical archimedean height."""
    if P.is_infinity:
        with precision(bits):
            return gmpy2.mpfr(0)
    with precision(bits):
        x = mpfr_from_fraction(P.x, bits)
        return gmpy2.log(max(abs(x), gmpy2.mpfr(1))) / 2


def naive_height(P: Point, bits: int | None = None):
    """h(P) = (1/2) log max(|A_P|, B_P^2)."""
    if P.is_infinity:
        with precision(bits):
            return gmpy2.mpfr(0)
    A, B, _ = P.triple
    with precision(bits):
        return gmpy2.log(gmpy2.mpfr(max(abs(A), B * B, 1))) / 2


# ---------------------------------------------------------------------------
# Archimedean canonical height (Green's function of duplication)
# ---------------------------------------------------------------------------


def arch_canonical_height(E: Curve, P: Point, bits: int | None = None):
    """h_inf(P) = (1/2) G(x(P)) - (1/12) log|Delta| where G is the homogeneous
    Green's function of the duplication pair on x-coordinates."""
    _require_affine(E, P)
    bits = default_precision() if bits is None else bits
    b2, b4, b6, b8 = E.b2, E.b4, E.b6, E.b8
    with precision(bits, guard=32):
        x = mpfr_from_fraction(P.x, bits)
        z = gmpy2.mpfr(1)
        m0 = max(abs(x), gmpy2.mpfr(1))
        green = gmpy2.log(m0)
        x, z = x / m0, z / m0
        tol = gmpy2.mpfr(2) ** (-(bits // 2) - 8)
        quarter = gmpy2.mpfr(1) / 4
        scale = quarter
        log_cap = gmpy2.mpfr(1)
        for _ in range(4 * bits):
            x2, z2 = x * x, z * z
            a_val = x2 * x2 - b4 * x2 * z2 - 2 * b6 * x * z * z2 - b8 * z2 * z2
            b_val = 4 * x * x2 * z + b2 * x2 * z2 + 2 * b4 * x * z * z2 + b6 * z2 * z2
            m = max(abs(a_val), abs(b_val))
            if m == 0:
                raise DivergencePrecision("duplication pair vanished")
            logm = gmpy2.log(m)
            green += scale * logm
            log_cap = max(log_cap, abs(logm))
            x, z = a_val / m, b_val / m
            scale *= quarter
            # geometric tail bound: remaining terms sum below scale*cap*(4/3)
            if scale * (log_cap + 1) * 2 < tol:
                return green / 2 - log_abs(E.disc, bits) / 12
        raise DivergencePrecision("archimedean height did not converge")


# ---------------------------------------------------------------------------
# Non-archimedean canonical local heights
# ---------------------------------------------------------------------------


def local_height_nonarch(E: Curve, P: Point, p: int, bits: int | None = None):
    """Canonical local height at a finite prime, by the standard case split
    on the reduction of P (nonsingular / multiplicative / additive)."""
    _require_affine(E, P)
    info = tate_reduction(E, p)
    if not info.is_minimal_at_p:
        raise NotMinimal(f"model not minimal at {p}")
    x, y = P.x, P.y
    n = info.ord_p_disc

    def v(q: Fraction) -> Fraction:
        if q == 0:
            return Fraction(10**9)
        return Fraction(valuation(q.numerator, p) - valuation(q.denominator, p))

    a_val = 3 * x * x + 2 * E.a2 * x + E.a4 - E.a1 * y
    b_val = 2 * y + E.a1 * x + E.a3
    if n == 0 or min(v(a_val), v(b_val)) <= 0:
        r = Fraction(max(Fraction(0), -v(x)), 2)
    elif E.c4 != 0 and valuation(E.c4, p) == 0:
        m = min(v(b_val), Fraction(n, 2))
        r = Fraction(m * (m - n), 2 * n)
    else:
        c_val = (
            3 * x**4 + E.b2 * x**3 + 3 * E.b4 * x * x + 3 * E.b6 * x + E.b8
        )
        if v(c_val) >= 3 * v(b_val):
            r = Fraction(-2 * v(b_val), 3) / 2
        else:
            r = Fraction(-v(c_val), 4) / 2
    total = r + Fraction(n, 12)
    with precision(bits):
        return mpfr_from_fraction(total, bits) * gmpy2.log(gmpy2.mpfr(p))


# ---------------------------------------------------------------------------
# Canonical height and its report
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class HeightReport:
    naive_h: object
    canonical_h: object
    arch_canonical: object
    local_canonical: dict
    curve_h: object


def is_torsion(E: Curve, P: Point) -> bool:
    """Over Q the torsion order is at most 12, so a direct sweep decides."""
    if P.is_infinity:
        return True
    for m in range(2, 13):
        if point_mul(E, m, P).is_infinity:
            return True
    return False


def _canonical_decomposition(E: Curve, P: Point, bits: int):
    """Archimedean part, per-place nonarchimedean parts, and their sum.

    Only the discriminant primes need the full local algorithm.  At a
    prime p of good reduction the local height is ord_p(B) log p, so the
    good-reduction primes of B contribute log(B_good) in aggregate; B_good
    is split under a small budget for per-prime reporting, and any
    unsplit composite cofactor c enters as a single entry keyed by c with
    value log c (exact, since its primes all have good reduction)."""
    locals_ = {}
    bad = set(factor_completely(E.disc).keys())
    _, B, _ = P.triple
    for p in sorted(bad):
        locals_[p] = local_height_nonarch(E, P, p, bits)
    b_good = B
    for p in bad:
        while b_good % p == 0:
            b_good //= p
    if b_good > 1:
        pf = factor(b_good, Budget(200_000))
        with precision(bits):
            for p, e in sorted(pf.factors.items()):
                locals_[p] = e * gmpy2.log(gmpy2.mpfr(p))
            if pf.cofactor > 1:
                locals_[pf.cofactor] = gmpy2.log(gmpy2.mpfr(pf.cofactor))
    arch = arch_canonical_height(E, P, bits)
    with precision(bits):
        total = arch + sum(locals_.values(), gmpy2.mpfr(0))
    return arch, locals_, total


def canonical_height(E: Curve, P: Point, bits: int | None = None) -> HeightReport:
    """Full height report; the total is cross-checked against the same
    decomposition evaluated at 2P (quadraticity), to 2^(-bits/2) slack."""
    _require_minimal(E)
    _require_affine(E, P)
    bits = default_precision() if bits is None else bits
    ch = curve_height(E, bits)
    nh = naive_height(P, bits)
    if is_torsion(E, P):
        with precision(bits):
            zero = gmpy2.mpfr(0)
        return HeightReport(nh, zero, None, {}, ch)
    arch, locals_, total = _canonical_decomposition(E, P, bits)
    P2 = point_mul(E, 2, P)
    _, _, total2 = _canonical_decomposition(E, P2, bits)
    with precision(bits):
        slack = (abs(total) + 1) * gmpy2.mpfr(2) ** (-(bits // 2))
        if abs(total2 - 4 * total) > slack:
            raise ArithmeticError(
                f"doubling cross-check failed: {total2} vs 4*{total}"
            )
    return HeightReport(nh, total, arch, locals_, ch)


def canonical_height_value(E: Curve, P: Point, bits: int | None = None):
    return canonical_height(E, P, bits).canonical_h


# ---------------------------------------------------------------------------
# Real roots of the 2-division polynomial and component tests
# ---------------------------------------------------------------------------


def _cubic_roots_monic(c2, c1, c0, bits: int):
    """Roots of t^3 + c2 t^2 + c1 t + c0 with mpfr coefficients.  Returns
    (real_roots_desc, complex_pair_or_None)."""
    with precision(bits, guard=32):
        third = c2 / 3
        p = c1 - c2 * c2 / 3
        q = 2 * c2**3 / 27 - c2 * c1 / 3 + c0
        disc = -4 * p**3 - 27 * q * q
        roots = []
        if disc > 0:
            r = 2 * gmpy2.sqrt(-p / 3)
            arg = 3 * q / (p * r)
            arg = max(gmpy2.mpfr(-1), min(gmpy2.mpfr(1), arg))
            theta = gmpy2.acos(arg)
            two_pi = 2 * gmpy2.const_pi()
            for k in range(3):
                roots.append(r * gmpy2.cos((theta - two_pi * k) / 3) - third)
            roots = [_newton_cubic(c2, c1, c0, t) for t in roots]
            roots.sort(reverse=True)
            return roots, None
        half_q = -q / 2
        s = gmpy2.sqrt(q * q / 4 + p**3 / 27)
        u3 = half_q + s if half_q + s != 0 else half_q - s
        if u3 == 0:
            real = -third
            return [real], (gmpy2.mpc(-third), gmpy2.mpc(-third))
        u = gmpy2.cbrt(u3)
        vv = -p / (3 * u)
        real = _newton_cubic(c2, c1, c0, u + vv - third)
        re = -(u + vv) / 2 - third
        im = gmpy2.sqrt(gmpy2.mpfr(3)) / 2 * (u - vv)
        return [real], (gmpy2.mpc(re, im), gmpy2.mpc(re, -im))


def _newton_cubic(c2, c1, c0, t):
    for _ in range(64):
        f = ((t + c2) * t + c1) * t + c0
        df = (3 * t + 2 * c2) * t + c1
        if df == 0:
            break
        step = f / df
        t = t - step
        if abs(step) <= abs(t) * gmpy2.mpfr(2) ** (-gmpy2.get_context().precision + 4):
            break
    return t


def two_division_real_roots(E: Curve, bits: int | None = None):
    """Real roots of 4x^3 + b2 x^2 + 2 b4 x + b6, descending."""
    bits = default_precision() if bits is None else bits
    with precision(bits, guard=32):
        c2 = mpfr_from_fraction(Fraction(E.b2, 4), bits)
        c1 = mpfr_from_fraction(Fraction(E.b4, 2), bits)
        c0 = mpfr_from_fraction(Fraction(E.b6, 4), bits)
        return _cubic_roots_monic(c2, c1, c0, bits)


def on_bounded_component(E: Curve, P: Point, bits: int | None = None) -> bool:
    """True iff E(R) has two components and P lies on the compact one."""
    if P.is_infinity:
        return False
    if E.disc < 0:
        return False
    roots, _ = two_division_real_roots(E, bits)
    x = mpfr_from_fraction(P.x, bits or default_precision())
    return x < roots[0]


def bounded_component_height_bound(E: Curve, Q: Point, bits: int | None = None):
    """(bound, ok) with bound = 3h(E) + log 6 + 1.07 for a point on the
    compact real component of a minimal model."""
    _require_minimal(E)
    _require_affine(E, Q)
    if E.disc < 0 or not on_bounded_component(E, Q, bits):
        raise UnboundedComponent("Q is not on the compact real component")
    with precision(bits):
        bound = 3 * curve_height(E, bits) + gmpy2.log(gmpy2.mpfr(6)) + gmpy2.mpfr("1.07")
        ok = bool(arch_canonical_height(E, Q, bits) <= bound)
    return bound, ok


# ---------------------------------------------------------------------------
# Elliptic logarithm (Carlson R_F)
# ---------------------------------------------------------------------------


def _carlson_rf(x, y, z, bits: int):
    """Carlson's symmetric integral R_F by its duplication rule.  Arguments
    may be mpfr or mpc (complex-conjugate pair plus real is fine)."""
    with precision(bits, guard=32):
        for _ in range(8 * bits):
            sx, sy, sz = gmpy2.sqrt(x), gmpy2.sqrt(y), gmpy2.sqrt(z)
            lam = sx * sy + sy * sz + sz * sx
            x, y, z = (x + lam) / 4, (y + lam) / 4, (z + lam) / 4
            mean = (x + y + z) / 3
            if mean == 0:
                break
            spread = max(abs(x - mean), abs(y - mean), abs(z - mean)) / abs(mean)
            if spread < gmpy2.mpfr(2) ** (-(bits // 2) - 16):
                rf = 1 / gmpy2.sqrt(mean)
                return rf.real if isinstance(rf, gmpy2.mpc) else rf
        raise DivergencePrecision("Carlson R_F iteration did not converge")


def elliptic_log(E_short: Curve, P: Point, bits: int | None = None):
    """(phi(P), phi(T0)) on y^2 = x^3 + a x + b, for P on the unbounded real
    component; T0 is the real 2-torsion point of largest x."""
    if E_short.a1 or E_short.a2 or E_short.a3:
        raise ValueError("elliptic_log expects a short model y^2 = x^3 + ax + b")
    _require_affine(E_short, P)
    bits = default_precision() if bits is None else bits
    with precision(bits, guard=32):
        c1 = mpfr_from_fraction(E_short.a4, bits)
        c0 = mpfr_from_fraction(E_short.a6, bits)
        reals, cpair = _cubic_roots_monic(gmpy2.mpfr(0), c1, c0, bits)
        e1 = reals[0]
        x = mpfr_from_fraction(P.x, bits)
        if cpair is None:
            e2, e3 = reals[1], reals[2]
            if x < e1 and _strictly_left_of_top_root(E_short, P.x, reals):
                raise BoundedComponent("P is on the compact real component")
        else:
            e2, e3 = cpair
        u1 = x - e1
        if u1 < 0:
            u1 = gmpy2.mpfr(0)  # P is the 2-torsion point e1 up to rounding
        phi_p = 2 * _carlson_rf(gmpy2.mpc(u1), x - e2, x - e3, bits)
        sign = -1 if P.y < 0 else 1
        phi_t0 = 2 * _carlson_rf(gmpy2.mpc(0), e1 - e2, e1 - e3, bits)
        return sign * phi_p, phi_t0


def _strictly_left_of_top_root(E_short: Curve, x: Fraction, reals) -> bool:
    # x < e1 numerically; confirm it is not e1 itself (an exact root)
    val = x**3 + E_short.a4 * x + E_short.a6
    if val == 0:
        mid = (reals[0] + reals[1]) / 2
        return bool(mpfr_from_fraction(x) < mid)
    return True


def short_model(E: Curve) -> tuple[Curve, "object"]:
    """The integral short model (x,y) -> (36x + 3a1^2 + 12a2, 216y + 108a1 x
    + 108a3), with discriminant 6^12 Delta_E."""
    from .curve_core import Transform

    u = Fraction(1, 6)
    r = Fraction(-(3 * E.a1 * E.a1 + 12 * E.a2), 36)
    s = Fraction(-E.a1, 2)
    t = s * r - Fraction(E.a3, 2)
    tr = Transform(u, r, s, t)
    Es = tr.apply_curve(E)
    assert Es.a1 == 0 and Es.a2 == 0 and Es.a3 == 0
    assert Es.disc == 6**12 * E.disc
    return Es, tr


# ---------------------------------------------------------------------------
# Height identities under isogeny
# ---------------------------------------------------------------------------


def isogeny_height_identity_check(sigma: Isogeny, P: Point, bits: int | None = None):
    """Residual of log|psi_sigma(P)| against the archimedean height identity."""
    _require_affine(sigma.domain, P)
    psi2 = sigma.psi_sq.eval_fraction(P.x)
    if psi2 == 0:
        raise KernelPoint("psi_sigma vanishes at P")
    bits = default_precision() if bits is None else bits
    Q = isogeny_apply(sigma, P)
    with precision(bits):
        lhs = log_abs(psi2, bits) / 2
        d = sigma.degree
        rhs = d * arch_canonical_height(sigma.domain, P, bits)
        rhs -= arch_canonical_height(sigma.codomain, Q, bits)
        rhs += (d * log_abs(sigma.domain.disc, bits) - log_abs(sigma.codomain.disc, bits)) / 12
        return abs(lhs - rhs)


def pellarin_check(sigma: Isogeny, bits: int | None = None) -> bool:
    """Naive-height comparison of isogenous minimal curves:
    h(domain) <= alpha h(codomain) + log(deg) + 15.8, alpha by h(j(codomain))."""
    h_dom = curve_height(sigma.domain, bits)
    h_cod = curve_height(sigma.codomain, bits)
    with precision(bits):
        j = sigma.codomain.j
        hj = gmpy2.log(gmpy2.mpfr(max(abs(j.numerator), j.denominator, 1)))
        alpha = 5 if hj > 4 else 16
        bound = alpha * h_cod + gmpy2.log(gmpy2.mpfr(sigma.degree)) + gmpy2.mpfr("15.8")
        return bool(h_dom <= bound)
