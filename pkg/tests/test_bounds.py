import gmpy2
import pytest

from edslab.bounds import (
    BoundInputs,
    BoundMeaning,
    bounded_component_bounds,
    david_arch_bound,
    doubly_magnified_degree_bounds,
    gap_principle,
    lll_gap_threshold,
    magnified_siegel_bound,
    nonuniform_bounds,
    report,
    siegel_bounds,
    solve_n2_log,
    szpiro_constant,
    theorem12_bounds,
)
from edslab.errors import HypothesisViolated, PreconditionViolated

BITS = 96


def _inp(**kw):
    base = dict(h_P=1.0, h_sigmaP=1.0, hE=1.0, hEprime=1.0, d=2, eps=0.0)
    base.update(kw)
    return BoundInputs(**base)


def test_siegel_simple_value():
    b1, b2 = siegel_bounds(_inp(Mprime=0, M=0), BITS)
    # b1 = 2 + sqrt(2) at unit heights
    assert abs(float(b1) - (2 + 2**0.5)) < 1e-12


def test_siegel_hypothesis_violated():
    with pytest.raises(HypothesisViolated):
        siegel_bounds(_inp(d=1, eps=0.0), BITS)
    with pytest.raises(HypothesisViolated):
        siegel_bounds(_inp(d=2, eps=0.5), BITS)


def test_david_bound_monotone_in_n():
    prev = None
    for n in (2, 4, 8, 64, 4096):
        val = david_arch_bound(1.0, 1.0, n, BITS)
        if prev is not None:
            assert val >= prev
        prev = val
    with pytest.raises(PreconditionViolated):
        david_arch_bound(1.0, 1.0, 1, BITS)


def test_szpiro_constant_floor():
    assert float(szpiro_constant(0.0, BITS)) == 1.0
    assert float(szpiro_constant(1.0, BITS)) > 1e14


def test_theorem12_shape():
    comp, n1, n3 = theorem12_bounds(1.0, 1.0, BITS)
    assert float(comp) > 0 and float(n1) > 0 and float(n3) == 77.0


def test_gap_principle_flags_bad_hypotheses():
    inp = _inp()
    # not pairwise coprime
    _, _, ok = gap_principle(9, 12, 15, inp, BITS)
    assert not ok
    # wrong ordering
    _, _, ok = gap_principle(13, 11, 9, inp, BITS)
    assert not ok
    # large pairwise-coprime indices pass
    a, b, ok = gap_principle(101, 103, 107, inp, BITS)
    assert ok and float(a) > 0 and float(b) > 0
    with pytest.raises(PreconditionViolated):
        gap_principle(101, 103, 107, _inp(h_P=0.0), BITS)


def test_lll_threshold_floor():
    assert float(lll_gap_threshold(_inp(), BITS)) >= 8.0


def test_bounded_component_positive():
    assert float(bounded_component_bounds(1.0, 1.0, BITS)) > 0


def test_doubly_magnified_floor():
    assert float(doubly_magnified_degree_bounds(1.0, 1.0, BITS)) >= 1.0


def test_magnified_siegel():
    v1 = magnified_siegel_bound(1.0, 1, BITS)
    v2 = magnified_siegel_bound(1.0, 8, BITS)
    assert float(v2) > float(v1)
    with pytest.raises(PreconditionViolated):
        magnified_siegel_bound(1.0, 0, BITS)


def test_solve_n2_log_basic():
    # with a = b = 0 any n >= 1 violates n^2 <= 0, so any bound is sound;
    # the formula still returns a positive number
    assert float(solve_n2_log(0.0, 0.0, 1, 1.0, BITS)) >= 0
    val = solve_n2_log(100.0, 100.0, 2, 1.0, BITS)
    # brute check: no n above the returned bound satisfies the inequality
    import math

    bound = float(val)
    for n in range(max(2, int(bound) + 1), int(bound) + 2000):
        assert not (n * n <= 100.0 * (math.log(n) + 1) ** 2 + 100.0)


def test_report_validation():
    rep = report("siegel", _inp(), gmpy2.mpfr(3.0), BoundMeaning.UpperBoundOnIndex)
    assert rep.value == 3.0
    with pytest.raises(ValueError):
        report("siegel", _inp(), gmpy2.mpfr(-1), BoundMeaning.UpperBoundOnIndex)
