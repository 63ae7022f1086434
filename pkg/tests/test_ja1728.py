import pytest

from edslab.curve_core import point, point_mul
from edslab.errors import (
    BoundedComponent,
    EvenM,
    InvalidA,
    NotOnBoundedComponent,
    PointNotOnCurve,
    TorsionPoint,
)
from edslab.ja1728 import (
    EAParams,
    ea_doubles_good_everywhere,
    ea_even_index_composite,
    ea_height_difference_check,
    ea_height_lower_bound,
    ea_odd_multiple_composite,
    ea_reduction_crosscheck,
    ea_reduction_table,
)


def test_invalid_a():
    with pytest.raises(InvalidA):
        EAParams.from_A(0)
    with pytest.raises(InvalidA):
        EAParams.from_A(16)  # ord_2 = 4
    with pytest.raises(InvalidA):
        EAParams.from_A(3**4)


def test_congruence_classes():
    assert EAParams.from_A(3).class2 == "A=-1 mod 4"
    assert EAParams.from_A(25).class2 == "A=1 mod 4"
    assert EAParams.from_A(2).class2 == "ord2(A)=1"
    assert EAParams.from_A(4).class2 == "A=4 mod 16"
    assert EAParams.from_A(12).class2 == "A=12 mod 16"
    assert EAParams.from_A(8).class2 == "ord2(A)=3"


def test_disc():
    assert EAParams.from_A(25).disc == 64 * 25**3


def test_reduction_table_values():
    assert ea_reduction_table(25) == [(2, "III"), (5, "I0*")]
    assert ea_reduction_table(12) == [(2, "I3*"), (3, "III")]
    assert ea_reduction_table(8) == [(2, "III*")]


def test_reduction_crosscheck_sample():
    for A in (2, 3, 4, 5, 8, 12, 25, 60, 98, 108):
        assert ea_reduction_crosscheck(A)


def test_height_lower_bound_unbounded_point():
    # 2 * (-4, 6) lies on the unbounded component of y^2 = x^3 - 25x
    E = EAParams.from_A(25).curve
    Q = point_mul(E, 2, point(-4, 6))
    bound, ok = ea_height_lower_bound(25, Q, 128)
    assert ok and float(bound) > 0


def test_height_lower_bound_rejections():
    with pytest.raises(BoundedComponent):
        ea_height_lower_bound(25, point(-4, 6), 128)
    with pytest.raises(TorsionPoint):
        ea_height_lower_bound(25, point(0, 0), 128)
    with pytest.raises(PointNotOnCurve):
        ea_height_lower_bound(25, point(1, 1), 128)


def test_height_difference_window(corpus):
    for label, E, P in corpus:
        if label == "37a":
            continue
        A = -int(E.a4)
        assert ea_height_difference_check(A, P, 128)


def test_even_index_verdicts():
    P = point(-4, 6)
    below = ea_even_index_composite(25, P, 9)
    assert below.verdict == "OutsideRange"
    v = ea_even_index_composite(25, P, 10)
    assert v.verdict == "CompositeProven"
    assert v.B is not None and v.B > 1
    assert v.criteria_fired  # at least one sufficient criterion fires


def test_odd_multiple_composite():
    P = point(-4, 6)
    v = ea_odd_multiple_composite(25, P, 3, 4)
    assert v.verdict == "CompositeProven"
    assert ea_odd_multiple_composite(25, P, 3, 3).verdict == "OutsideRange"
    with pytest.raises(EvenM):
        ea_odd_multiple_composite(25, P, 2, 5)
    with pytest.raises(EvenM):
        ea_odd_multiple_composite(25, P, 1, 5)


def test_odd_multiple_component_check():
    # odd multiples of an unbounded-component point stay unbounded
    E = EAParams.from_A(25).curve
    Q = point_mul(E, 2, point(-4, 6))
    with pytest.raises(NotOnBoundedComponent):
        ea_odd_multiple_composite(25, Q, 3, 8)


def test_doubles_good_everywhere():
    assert ea_doubles_good_everywhere(25, point(-4, 6)) in (True, False)
    # A = 60 base point itself has singular reduction, but the function
    # asks about the double
    assert isinstance(ea_doubles_good_everywhere(60, point(-6, 12)), bool)
