import pytest

from edslab.curve_core import Curve, point
from edslab.division_polynomials import velu
from edslab.polynomial import X

from fixture_corpus import CURVE_POINT_FIXTURES, LABELS


@pytest.fixture(scope="session")
def corpus():
    return CURVE_POINT_FIXTURES


@pytest.fixture(scope="session", params=CURVE_POINT_FIXTURES, ids=LABELS)
def curve_point(request):
    _, E, P = request.param
    return E, P


@pytest.fixture(scope="session")
def e25():
    return Curve(0, 0, 0, -25, 0), point(-4, 6)


@pytest.fixture(scope="session")
def e25_sigma():
    # rational 2-isogeny with kernel x = 0 on y^2 = x^3 - 25x
    return velu(Curve(0, 0, 0, -25, 0), X)
