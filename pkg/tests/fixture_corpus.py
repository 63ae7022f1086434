"""Shared fixture corpus: minimal curves with a nontorsion rational point.

Each entry is (label, Curve, Point).  The y^2 = x^3 - A x entries all have
the given point on the compact real component (x < 0), which several
tests rely on; multiples then reach the unbounded component.
"""

from edslab.curve_core import Curve, point

CURVE_POINT_FIXTURES = [
    ("37a", Curve(0, 0, 1, -1, 0), point(0, 0)),
    ("A25", Curve(0, 0, 0, -25, 0), point(-4, 6)),
    ("A12", Curve(0, 0, 0, -12, 0), point(-3, 3)),
    ("A60", Curve(0, 0, 0, -60, 0), point(-6, 12)),
    ("A2", Curve(0, 0, 0, -2, 0), point(-1, 1)),
    ("A5", Curve(0, 0, 0, -5, 0), point(-1, 2)),
]

LABELS = [label for label, _, _ in CURVE_POINT_FIXTURES]
