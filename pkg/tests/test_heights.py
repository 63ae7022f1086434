from fractions import Fraction

import gmpy2
import pytest

from edslab.bigfloat import log_abs, precision
from edslab.curve_core import Curve, Transform, point, point_mul
from edslab.division_polynomials import mult_isogeny, psi_value
from edslab.errors import BoundedComponent, KernelPoint, UnboundedComponent
from edslab.heights import (
    arch_canonical_height,
    bounded_component_height_bound,
    canonical_height,
    canonical_height_value,
    curve_height,
    elliptic_log,
    is_torsion,
    isogeny_height_identity_check,
    local_height_nonarch,
    naive_arch_height,
    naive_height,
    on_bounded_component,
    pellarin_check,
    short_model,
    two_division_real_roots,
)

BITS = 192


def _f(x):
    return float(x)


def test_curve_height_37a():
    # (1/12) max(log|j|, log|Delta|) with j = 110592/37, Delta = 37
    E = Curve(0, 0, 1, -1, 0)
    with precision(BITS):
        expect = gmpy2.log(gmpy2.mpfr(110592)) / 12
        assert abs(curve_height(E, BITS) - expect) < 1e-30


def test_naive_height_conventions():
    assert _f(naive_height(point(0, 0))) == 0.0
    P = point(Fraction(1, 4), Fraction(-5, 8))
    with precision(BITS):
        # x = 1/4 = A/B^2 with A = 1, B = 2: max(|A|, B^2) = 4
        assert abs(naive_height(P, BITS) - gmpy2.log(gmpy2.mpfr(4)) / 2) < 1e-30
        assert _f(naive_arch_height(P, BITS)) == 0.0
        Q = point(Fraction(9, 4), Fraction(123, 8))
        assert abs(naive_arch_height(Q, BITS) - gmpy2.log(gmpy2.mpfr(Fraction(9, 4))) / 2) < 1e-30


def test_canonical_height_anchor_37a():
    # frozen external anchor for y^2 + y = x^3 - x, P = (0, 0)
    h = canonical_height_value(Curve(0, 0, 1, -1, 0), point(0, 0), BITS)
    assert abs(_f(h) - 0.025555704119984420) < 1e-15


def test_canonical_height_anchor_e25(e25):
    E, P = e25
    h = canonical_height_value(E, P, BITS)
    assert abs(_f(h) - 0.949741086265897795) < 1e-14


def test_torsion_returns_zero():
    E = Curve(0, 0, 0, -25, 0)
    T = point(0, 0)
    assert is_torsion(E, T)
    rep = canonical_height(E, T, BITS)
    assert rep.canonical_h == 0
    assert rep.arch_canonical is None and rep.local_canonical == {}


def test_decomposition_sums(curve_point):
    E, P = curve_point
    rep = canonical_height(E, P, BITS)
    with precision(BITS):
        total = rep.arch_canonical + sum(rep.local_canonical.values(), gmpy2.mpfr(0))
        assert abs(rep.canonical_h - total) < 1e-30


def test_arch_height_model_invariance(e25):
    E, P = e25
    tr = Transform(u=Fraction(1, 2), r=3, s=0, t=0)
    E2 = tr.apply_curve(E)
    P2 = tr.apply_point(P)
    with precision(BITS):
        a1 = arch_canonical_height(E, P, BITS)
        a2 = arch_canonical_height(E2, P2, BITS)
        assert abs(a1 - a2) < 1e-30


def test_arch_height_limit_definition(e25):
    # h_inf = lim log|psi_n(P)| / n^2 - (1/12) log|Delta|
    E, P = e25
    n = 64
    with precision(BITS):
        psi = psi_value(E, n, P)
        approx = log_abs(abs(psi), BITS) / (n * n) - log_abs(E.disc, BITS) / 12
        exact = arch_canonical_height(E, P, BITS)
        assert abs(approx - exact) < 0.01


def test_good_reduction_local_formula():
    # p inert of good reduction with p | B: h_p = (ord_p B) log p exactly
    E = Curve(0, 0, 1, -1, 0)
    P5 = point_mul(E, 5, P := point(0, 0))
    assert P5.triple[1] == 2
    with precision(BITS):
        assert abs(local_height_nonarch(E, P5, 2, BITS) - gmpy2.log(gmpy2.mpfr(2))) < 1e-30
        # good prime not dividing B: (1/12) ord_p(Delta) log p = 0
        assert local_height_nonarch(E, P, 5, BITS) == 0


def test_singular_reduction_window():
    # A = 60 fixture: P reduces to a singular point at 2; the local height
    # stays inside (1/24)min(0, v(j)) <= h_2 - (1/2)max(0,-v(x))log 2
    # <= (1/12) v(Delta) log 2
    E = Curve(0, 0, 0, -60, 0)
    P = point(-6, 12)
    with precision(BITS):
        h2 = local_height_nonarch(E, P, 2, BITS)
        l2 = gmpy2.log(gmpy2.mpfr(2))
        v_disc = 9  # ord_2(64 * 60^3)
        v_j = None  # j = 1728 has ord_2 = 6 >= 0, lower bound is 0
        assert 0 <= h2 <= Fraction(v_disc, 12) * l2


def test_quadraticity_small(curve_point):
    E, P = curve_point
    h1 = canonical_height_value(E, P, BITS)
    for n in (2, 3, 5):
        hn = canonical_height_value(E, point_mul(E, n, P), BITS)
        assert abs(_f(hn - n * n * h1)) < 1e-10


def test_two_division_roots_and_components():
    E = Curve(0, 0, 0, -25, 0)  # roots -5, 0, 5
    roots, cpair = two_division_real_roots(E, BITS)
    assert cpair is None
    assert [round(_f(r)) for r in roots] == [5, 0, -5]
    assert on_bounded_component(E, point(-4, 6), BITS)
    assert not on_bounded_component(E, point_mul(E, 2, point(-4, 6)), BITS)


def test_bounded_component_height_bound(e25):
    E, P = e25
    bound, ok = bounded_component_height_bound(E, P, BITS)
    assert ok
    Q = point_mul(E, 2, P)
    with pytest.raises(UnboundedComponent):
        bounded_component_height_bound(E, Q, BITS)


def test_elliptic_log_basics(e25):
    E, P = e25
    Es, tr = short_model(E)
    Q2 = tr.apply_point(point_mul(E, 2, P))
    phi, phiT = elliptic_log(Es, Q2, BITS)
    assert _f(abs(phi)) < _f(abs(phiT))
    # bounded-component points are rejected
    with pytest.raises(BoundedComponent):
        elliptic_log(Es, tr.apply_point(P), BITS)


def test_short_model_disc_scaling(curve_point):
    E, _ = curve_point
    Es, _ = short_model(E)
    assert Es.a1 == Es.a2 == Es.a3 == 0
    assert Es.disc == 6**12 * E.disc


def test_isogeny_height_identity(e25, e25_sigma):
    E, P = e25
    assert _f(isogeny_height_identity_check(e25_sigma, P, BITS)) < 1e-8
    sig2 = mult_isogeny(E, 2)
    assert _f(isogeny_height_identity_check(sig2, P, BITS)) < 1e-8
    with pytest.raises(KernelPoint):
        isogeny_height_identity_check(e25_sigma, point(0, 0), BITS)


def test_pellarin(e25_sigma):
    assert pellarin_check(e25_sigma, BITS)
    from edslab.division_polynomials import dual_isogeny

    assert pellarin_check(dual_isogeny(e25_sigma), BITS)
