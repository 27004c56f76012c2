import random
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planeprover import geometry as geo
from planeprover import kernel as K
from planeprover.errors import DegenerateError, DegenerateIntersectionError, ShapeError
from planeprover.geometry import Geometry, NumericAlgebra
from planeprover.kernel import R3, X as x, Y as y, substitute

g = Geometry()
m, n, t, R = K.var("m"), K.var("n"), K.var("t"), K.var("R")
A, B, C, P = g.point("A"), g.point("B"), g.point("C"), g.point("P")


def at(form, point):
    return substitute(form, {"x": point[0], "y": point[1]})


def proportional(a, b):
    q = a / b
    return q.is_constant()


# -- examples ------------------------------------------------------------------


def test_area():
    assert geo.area((0, 0), (1, 0), (0, 1)) == F(1, 2)
    assert geo.area(A, B, B) == 0
    assert geo.area((0, 0), (2, 0), (0, 3)) == 3


def test_distances():
    assert geo.de_sq((0, 0), (3, 4)) == 25
    assert geo.de_sq(A, A) == 0
    assert geo.de_sq_g((0, 0, 0), (1, 2, 2), 3) == 9
    with pytest.raises(ShapeError):
        geo.de_sq_g((0, 0), (1, 2, 2), 3)


def test_lines_and_midpoints():
    assert geo.line_through((0, 0), (1, 1)) == (y - x) / 2
    assert tuple(geo.midpoint((0, 0), (2, 4))) == (1, 2)
    assert geo.slope((0, 0), (2, 1)) == F(1, 2)
    with pytest.raises(DegenerateError):
        geo.line_through(A, A)


def test_feet_and_altitudes():
    L = x + y - 1
    assert tuple(geo.foot((0, 0), L)) == (F(1, 2), F(1, 2))
    assert proportional(geo.altitude((0, 0), L), y - x)
    assert at(L, geo.foot(P, L)) == 0


def test_mirrors():
    assert tuple(geo.mirror_origin((1, 0), (1, 1))) == (2, 0)
    assert tuple(geo.mirror_origin((0, 1), (1, 0))) == (1, 1)
    L = geo.line_through(A, B)
    assert geo.mirror_pt_line((0, 0), L) == geo.mirror_origin(A, B)


def test_intersections():
    assert tuple(geo.intersect(y - x, x + y - 1)) == (F(1, 2), F(1, 2))
    assert geo.concurrent(x, y, x + y)
    assert not geo.concurrent(x, x - 1)
    assert geo.colinear((0, 0), (1, 1), (2, 2))
    with pytest.raises(DegenerateIntersectionError):
        geo.intersect(x, x - 1)


def test_circles():
    circ = geo.circle_through((0, 0), (1, 0), (0, 1))
    assert circ == x**2 + y**2 - x - y
    assert tuple(geo.center(circ)) == (F(1, 2), F(1, 2))
    assert geo.radius_sq(circ) == F(1, 2)
    pts = [geo.param_circle((0, 0), R, K.var(f"pc{k}")) for k in range(4)]
    assert geo.concyclic(*pts)
    assert not geo.concyclic((0, 0), (1, 0), (0, 1), (2, 2))


def test_triangle_centers():
    assert tuple(geo.centroid((0, 0), (1, 0), (0, 1))) == (F(1, 3), F(1, 3))
    assert tuple(geo.orthocenter((0, 0), (1, 0), (0, 1))) == (0, 0)
    assert tuple(geo.cet((0, 0), (1, 0))) == (F(1, 2), -R3 / 6)


def test_parametrizations():
    Q = geo.param_circle((0, 0), R, t)
    assert Q.x**2 + Q.y**2 - R**2 == 0
    assert tuple(geo.param_line(2, 1, t)) == (t, 2 * t + 1)
    assert geo.param_ellipse((0, 0), (R, R), t) == geo.param_circle((0, 0), R, t)


def test_tangents():
    assert proportional(geo.tangent(x**2 + y**2 - 1, (1, 0)), x - 1)
    assert proportional(geo.tangent(x**2 + y**2 - 1, (0, 1)), y - 1)
    line = geo.tangent_to_ellipse((0, 0), (1, 1), t)
    assert at(line, geo.param_ellipse((0, 0), (1, 1), t)) == 0


def test_touching():
    assert geo.tc_ces_out((0, 0), 1, (3, 0), 2) == 0
    assert geo.touch_circles(x**2 + y**2 - 1, x**2 + (y - 2) ** 2 - 1)
    assert not geo.touch_circles(x**2 + y**2 - 1, x**2 + (y - 1) ** 2 - 1)
    assert geo.touch_circle_line(x**2 + y**2 - 1, y - 1)
    assert not geo.touch_circle_line(x**2 + y**2 - 1, y - F(1, 2))


def test_tan_sum():
    assert geo.tan_sum(m) == m
    assert geo.tan_sum(m, n) == (m + n) / (1 - m * n)
    assert geo.tan_sum(t, -t) == 0


def test_standard_triangle():
    apex = geo.standard_triangle(F(1, 2), F(1, 2))[2]
    assert tuple(apex) == (F(1, 2), F(2, 3))
    assert tuple(geo.incenter(m, m)) == (F(1, 2), m / 2)
    assert geo.inradius_sq(m, n) == m**2 * n**2 / (m + n) ** 2
    O = geo.incenter(m, n)
    r2 = geo.inradius_sq(m, n)
    T = geo.standard_triangle(m, n)
    for i, j in ((0, 1), (1, 2), (2, 0)):
        assert geo.de_pt_line_sq(O, geo.line_through(T[i], T[j])) == r2


def test_predicates():
    assert geo.is_equilateral((0, 0), (1, 0), (F(1, 2), R3 / 2))
    assert geo.sqrt_sum(9, 16, 49)
    assert not geo.sqrt_sum(1, 1, 1)
    assert geo.de_pt_line_sq((0, 0), x + y - 1) == F(1, 2)


# -- symbolic invariants ----------------------------------------------------------


def test_incidence():
    L = geo.line_through(A, B)
    assert at(L, A) == 0 and at(L, B) == 0


def test_perpendicularity():
    L = geo.line_through(A, B)
    H = geo.altitude(P, L)
    dot = K.coeff(L, x, 1) * K.coeff(H, x, 1) + K.coeff(L, y, 1) * K.coeff(H, y, 1)
    assert dot == 0


def test_ellipse_parametrization():
    d1, d2 = K.var("d1"), K.var("d2")
    c = (K.var("c1"), K.var("c2"))
    E = geo.param_ellipse(c, (d1, d2), t)
    assert ((E.x - c[0]) / d1) ** 2 + ((E.y - c[1]) / d2) ** 2 == 1


def test_circle_through_and_roundtrip():
    circ = geo.circle_through(A, B, C)
    for Q in (A, B, C):
        assert at(circ, Q) == 0
    q, rho = geo.center(circ), geo.radius_sq(circ)
    assert (x - q.x) ** 2 + (y - q.y) ** 2 - rho == circ


def test_concurrent_and_colinear_invariances():
    L1, L2 = geo.line_through(A, B), geo.line_through(B, C)
    L3 = geo.line_through(C, A)
    assert not geo.concurrent(L1, L2, L3)
    M = geo.altitude(A, L2), geo.altitude(B, L3), geo.altitude(C, L1)
    assert geo.concurrent(*M)
    assert geo.concurrent(3 * M[0], F(-1, 2) * M[1], 7 * M[2])
    pts = [geo.orthocenter(A, B, C), geo.circumcenter(A, B, C), geo.centroid(A, B, C)]
    for perm in ((0, 1, 2), (2, 0, 1), (1, 2, 0), (2, 1, 0)):
        assert geo.colinear(*(pts[k] for k in perm))


def test_tan_sum_associative():
    a, b, c = K.var("ta"), K.var("tb"), K.var("tc")
    assert geo.tan_sum(a, b, c) == geo.tan_sum(geo.tan_sum(a, b), c)


# -- numeric cross-check of the boolean predicates ---------------------------------


def _predicates(G: Geometry):
    A, B, C, P = G.point("A"), G.point("B"), G.point("C"), G.point("P")
    L1, L2, L3 = G.line_through(A, B), G.line_through(B, C), G.line_through(C, A)
    circ = G.circle_through(A, B, C)
    return {
        "altitudes": G.concurrent(G.altitude(A, L2), G.altitude(B, L3), G.altitude(C, L1)),
        "sides": G.concurrent(L1, L2, L3),
        "euler": G.colinear(G.orthocenter(A, B, C), G.circumcenter(A, B, C), G.centroid(A, B, C)),
        "random": G.colinear(A, B, P),
        "napoleon": G.is_equilateral(G.cet(A, B), G.cet(B, C), G.cet(C, A)),
        "midpoints": G.is_equilateral(G.midpoint(A, B), G.midpoint(B, C), G.midpoint(C, A)),
        "nine": G.concyclic(G.midpoint(A, B), G.midpoint(B, C), G.midpoint(C, A), G.foot(A, L2)),
        "cyclic": G.concyclic(A, B, C, P),
        "tangent": G.touch_circle_line(circ, G.tangent(circ, A)),
        "secant": G.touch_circle_line(circ, L1),
    }


SYMBOLIC_VERDICTS = _predicates(Geometry())


def test_symbolic_predicate_verdicts():
    expect = {"altitudes", "euler", "napoleon", "nine", "tangent"}
    assert {k for k, v in SYMBOLIC_VERDICTS.items() if v} == expect


@settings(max_examples=10)
@given(st.integers(0, 2**32))
def test_numeric_predicates_agree(seed):
    rng = random.Random(seed)
    assert _predicates(Geometry(NumericAlgebra(rng))) == SYMBOLIC_VERDICTS
