from fractions import Fraction

import pytest

from edslab.curve_core import Curve, point, point_mul
from edslab.division_polynomials import (
    ayad_criterion,
    compose_check,
    composite_isogeny,
    dual_isogeny,
    identity_isogeny,
    isogeny_apply,
    mult_isogeny,
    phi_n,
    psi_n_squared,
    pullback_divisibility_check,
    pullback_kernel,
    two_torsion_poly,
    velu,
)
from edslab.errors import InvalidKernel
from edslab.polynomial import ONE, X


def test_psi_small_37a():
    E = Curve(0, 0, 1, -1, 0)
    assert psi_n_squared(E, 1) == ONE
    # psi_2^2 = 4x^3 + b2 x^2 + 2 b4 x + b6
    p2 = psi_n_squared(E, 2)
    assert p2.degree == 3 and p2.lc == 4
    # leading coefficient of psi_n^2 is n^2
    for n in range(1, 9):
        pn = psi_n_squared(E, n)
        assert pn.degree == n * n - 1
        assert pn.lc == n * n


def test_x_multiplication_identity(curve_point):
    E, P = curve_point
    for n in range(2, 8):
        Q = point_mul(E, n, P)
        if Q.is_infinity:
            continue
        num = phi_n(E, n).eval_fraction(P.x)
        den = psi_n_squared(E, n).eval_fraction(P.x)
        assert den != 0
        assert Q.x == num / den


def test_mult_isogeny_structure():
    E = Curve(0, 0, 1, -1, 0)
    for m in (2, 3, 5):
        sig = mult_isogeny(E, m)
        assert sig.degree == m * m
        assert sig.codomain == E
        assert sig.psi_sq == psi_n_squared(E, m)
        P = point(0, 0)
        assert isogeny_apply(sig, P) == point_mul(E, m, P)


def test_velu_e25(e25_sigma):
    sig = e25_sigma
    assert sig.degree == 2
    assert sig.codomain.ainvs() == (0, 0, 0, 100, 0)
    assert sig.phi == X * X - 25
    assert sig.psi_sq == X
    Q = isogeny_apply(sig, point(-4, 6))
    assert (Q.x, Q.y) == (Fraction(9, 4), Fraction(123, 8))


def test_velu_kernel_point_maps_to_identity(e25_sigma):
    T = point(0, 0)  # kernel generator, x = 0
    assert isogeny_apply(e25_sigma, T).is_infinity


def test_velu_rejects_non_kernel():
    E = Curve(0, 0, 0, -25, 0)
    with pytest.raises(InvalidKernel):
        velu(E, X - 1)  # x = 1 is not the x-poly of a finite subgroup


def test_compose_chain_rule(e25_sigma):
    E = Curve(0, 0, 1, -1, 0)
    assert compose_check(mult_isogeny(E, 2), mult_isogeny(E, 3))
    tau = mult_isogeny(e25_sigma.codomain, 3)
    assert compose_check(e25_sigma, tau)
    comp = composite_isogeny(e25_sigma, tau)
    assert comp.degree == 18


def test_pullback_divisibility(e25_sigma):
    tau = mult_isogeny(e25_sigma.codomain, 3)
    assert pullback_divisibility_check(e25_sigma, tau)
    tau_pulled = pullback_kernel(e25_sigma, tau)
    assert tau_pulled.domain == e25_sigma.domain


def test_dual_composes_to_multiplication(e25_sigma):
    dual = dual_isogeny(e25_sigma)
    assert dual.domain == e25_sigma.codomain
    comp = composite_isogeny(e25_sigma, dual)
    assert comp.degree == 4
    # composition is multiplication by deg up to the sign automorphism
    P = point(-4, 6)
    image = isogeny_apply(comp, P)
    assert image in (
        point_mul(e25_sigma.domain, 2, P),
        point_mul(e25_sigma.domain, -2, P),
    )


def test_identity_isogeny():
    E = Curve(0, 0, 1, -1, 0)
    sig = identity_isogeny(E)
    assert sig.degree == 1
    P = point(0, 0)
    assert isogeny_apply(sig, P) == P


def test_two_torsion_poly():
    E = Curve(0, 0, 0, -25, 0)
    t = two_torsion_poly(E)
    assert t.eval_fraction(Fraction(0)) == 0
    assert t.eval_fraction(Fraction(5)) == 0
    assert t.eval_fraction(Fraction(-5)) == 0


def test_ayad_criterion_values():
    # A60 fixture reduces to a singular point at 2
    E = Curve(0, 0, 0, -60, 0)
    assert ayad_criterion(E, point(-6, 12), 2) == "Singular"
    # 37a point (0,0) at 37: nonsingular reduction
    assert ayad_criterion(Curve(0, 0, 1, -1, 0), point(0, 0), 37) != "Singular"
