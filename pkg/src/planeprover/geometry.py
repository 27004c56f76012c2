"""Construction primitives of plane geometry.

Points are coordinate pairs; lines and conics are expressions in the global
variables ``x`` and ``y``.  Every primitive is written once against a small
algebra adaptor so the same construction runs symbolically (kernel Scalars,
the proof path) or on random rational instances (the numeric oracle path).

The module-level functions are bound to the symbolic algebra::

    >>> from planeprover.geometry import area
    >>> area((0, 0), (1, 0), (0, 1))
    Scalar(1/2)
"""

from __future__ import annotations

import functools
import random
from fractions import Fraction
from typing import Callable, NamedTuple, Sequence

import mpmath

from . import kernel, numeric
from .errors import (
    DegenerateCircleError,
    DegenerateError,
    DegenerateIntersectionError,
    InternalInconsistencyError,
    NoCommonPointError,
    NotIncidentError,
    PoleError,
    ShapeError,
    UnsupportedOrientationError,
)
from .numeric import NumPoly, QI3


class Point(NamedTuple):
    x: object
    y: object


# ---------------------------------------------------------------------------
# algebra adaptors


class SymbolicAlgebra:
    """Exact symbolic values: kernel Scalars."""

    name = "symbolic"

    def __init__(self):
        self.x, self.y = kernel.X, kernel.Y
        self.i, self.r3 = kernel.I, kernel.R3

    def coerce(self, v):
        return kernel._coerce(v)

    def param(self, name: str):
        return kernel.var(name)

    def unknowns(self, *names: str):
        return tuple(kernel.var(f"_{n}") for n in names)

    def coeff(self, f, v, k: int):
        return kernel.coeff(f, v, k)

    def subs(self, f, mapping: dict):
        return kernel.substitute(f, mapping)

    def solve(self, eqs, unknowns):
        sol = kernel.solve_linear(eqs, unknowns)
        if sol.status == "inconsistent":
            return sol.status, None
        inds = [kernel._as_indeterminate(u) for u in unknowns]
        return sol.status, [sol.bindings.get(u) for u in inds]

    def is_zero(self, v) -> bool:
        return kernel.is_zero(v)

    def numer(self, v):
        return kernel.numer(v)

    def sqrt(self, v):
        return kernel.sqrt(v)

    def det(self, M):
        return kernel.determinant(M)

    def same(self, a, b) -> bool:
        return kernel._coerce(a) == kernel._coerce(b)

    def text(self, v) -> str:
        return kernel.to_text(kernel._coerce(v))


class NumericAlgebra:
    """Random rational instance of every parameter, independent arithmetic.

    Exact in Q(i, sqrt3) unless ``approximate`` is set, in which case all
    values are 100-digit ``mpmath`` complex numbers.  ``fixed`` pins named
    parameters to given rationals.
    """

    name = "numeric"

    def __init__(
        self,
        rng: random.Random,
        approximate: bool = False,
        bound: int = 100,
        fixed: dict | None = None,
        sampler: Callable[[random.Random], Fraction] | None = None,
    ):
        self.rng = rng
        self.approximate = approximate
        self.bound = bound
        self.sampler = sampler
        self.values: dict[str, NumPoly] = {}
        self.x, self.y = NumPoly.var("x"), NumPoly.var("y")
        self.i = self.coerce(QI3.I)
        self.r3 = self.coerce(QI3.R3)
        for k, v in (fixed or {}).items():
            self.values[k] = self.coerce(Fraction(v))

    def coerce(self, v):
        if isinstance(v, NumPoly):
            return v
        if self.approximate and not isinstance(v, (mpmath.mpc, mpmath.mpf)):
            return NumPoly({(): numeric.to_approx(v if not isinstance(v, int) else Fraction(v))})
        return NumPoly.const(v)

    def sample(self) -> Fraction:
        if self.sampler is not None:
            return self.sampler(self.rng)
        b = self.bound
        num = 0
        while num == 0:
            num = self.rng.randint(-b, b)
        return Fraction(num, self.rng.randint(1, b))

    def param(self, name: str):
        if name not in self.values:
            self.values[name] = self.coerce(self.sample())
        return self.values[name]

    def unknowns(self, *names: str):
        return tuple(NumPoly.var(f"_{n}") for n in names)

    @staticmethod
    def _name(v) -> str:
        (mono,) = v.terms
        ((name, _),) = mono
        return name

    def coeff(self, f, v, k: int):
        return self.coerce(f).coeff(self._name(v), k)

    def subs(self, f, mapping: dict):
        return self.coerce(f).subs({self._name(k): self.coerce(v) for k, v in mapping.items()})

    def solve(self, eqs, unknowns):
        names = [self._name(u) for u in unknowns]
        zero = {n: 0 for n in names}
        rows = []
        for e in eqs:
            e = self.coerce(e)
            coeffs = [e.coeff(n, 1) for n in names]
            c0 = e.subs(zero)
            resid = e - c0
            for a, u in zip(coeffs, unknowns):
                resid = resid - a * u
            if not resid.is_zero():
                raise ValueError("nonlinear numeric system")
            rows.append([a.constant_value() for a in coeffs] + [-c0.constant_value()])
        n = len(names)
        pivots = []
        r = 0
        for col in range(n):
            cand = [i for i in range(r, len(rows)) if not numeric.is_zero_value(rows[i][col])]
            if not cand:
                continue
            i = max(cand, key=lambda j: numeric.magnitude(rows[j][col])) if self.approximate else cand[0]
            rows[r], rows[i] = rows[i], rows[r]
            piv = rows[r][col]
            rows[r] = [v / piv for v in rows[r]]
            for j in range(len(rows)):
                if j != r and not numeric.is_zero_value(rows[j][col]):
                    f = rows[j][col]
                    rows[j] = [a - f * b for a, b in zip(rows[j], rows[r])]
            pivots.append(col)
            r += 1
        for row in rows[r:]:
            if not numeric.is_zero_value(row[n]):
                return "inconsistent", None
        if len(pivots) < n:
            return "underdetermined", None
        return "unique", [self.coerce(rows[k][n]) for k in range(n)]

    def is_zero(self, v) -> bool:
        return self.coerce(v).is_zero()

    def numer(self, v):
        return self.coerce(v)

    def sqrt(self, v):
        c = self.coerce(v).constant_value()
        return self.coerce(numeric.sqrt_value(c, exact=not self.approximate))

    def det(self, M):
        # plain Gaussian elimination on numbers (deliberately not Bareiss)
        A = [[self.coerce(v).constant_value() for v in row] for row in M]
        n = len(A)
        if any(len(row) != n for row in A):
            raise ShapeError("determinant of a non-square matrix")
        d = QI3.ONE if not self.approximate else numeric.to_approx(1)
        for k in range(n):
            i = next((j for j in range(k, n) if not numeric.is_zero_value(A[j][k])), None)
            if i is None:
                return self.coerce(0)
            if i != k:
                A[k], A[i] = A[i], A[k]
                d = -d
            d = d * A[k][k]
            for j in range(k + 1, n):
                f = A[j][k] / A[k][k]
                A[j] = [a - f * b for a, b in zip(A[j], A[k])]
        return self.coerce(d)

    def same(self, a, b) -> bool:
        return self.is_zero(self.coerce(a) - self.coerce(b))

    def text(self, v) -> str:
        return repr(v)


# ---------------------------------------------------------------------------
# primitives


def _traced(fn):
    @functools.wraps(fn)
    def wrapper(self, *args, **kwargs):
        if self.trace is None:
            return fn(self, *args, **kwargs)
        self._depth += 1
        try:
            out = fn(self, *args, **kwargs)
        finally:
            self._depth -= 1
        if self._depth == 0:
            self.trace.append((fn.__name__, self.describe(out)))
        return out

    return wrapper


class Geometry:
    """All construction primitives over one algebra."""

    def __init__(self, algebra=None, trace: list | None = None):
        self.K = algebra if algebra is not None else SymbolicAlgebra()
        self.x, self.y = self.K.x, self.K.y
        self.trace = trace
        self._depth = 0

    # helpers --------------------------------------------------------------
    def describe(self, obj) -> str:
        if isinstance(obj, tuple):
            return "[" + ", ".join(self.describe(o) for o in obj) + "]"
        if isinstance(obj, bool):
            return str(obj).lower()
        return self.K.text(obj)

    def _pt(self, P) -> Point:
        if len(P) != 2:
            raise ShapeError("a planar point has two coordinates")
        return Point(self.K.coerce(P[0]), self.K.coerce(P[1]))

    def param(self, name: str):
        return self.K.param(name)

    def point(self, name: str) -> Point:
        """Generic point: a pair of fresh parameters ``name_x``, ``name_y``."""
        return Point(self.K.param(f"{name}_x"), self.K.param(f"{name}_y"))

    def is_zero(self, s) -> bool:
        return self.K.is_zero(s)

    def numer(self, s):
        return self.K.numer(s)

    def _div(self, a, b):
        if self.K.is_zero(b):
            raise PoleError("identically zero denominator")
        return self.K.coerce(a) / b

    # distances and areas --------------------------------------------------
    def area(self, A, B, C):
        A, B, C = self._pt(A), self._pt(B), self._pt(C)
        return (B.x * C.y - B.y * C.x - A.x * C.y + A.y * C.x - B.x * A.y + B.y * A.x) / 2

    def de_sq(self, A, B):
        A, B = self._pt(A), self._pt(B)
        return (A.x - B.x) ** 2 + (A.y - B.y) ** 2

    def de_sq_g(self, A, B, dim: int):
        if len(A) != dim or len(B) != dim:
            raise ShapeError(f"points must have {dim} coordinates")
        total = self.K.coerce(0)
        for a, b in zip(A, B):
            total = total + (self.K.coerce(a) - b) ** 2
        return total

    # lines ----------------------------------------------------------------
    @_traced
    def line_through(self, A, B):
        form = self.area(A, B, (self.x, self.y))
        if self.K.is_zero(form):
            raise DegenerateError("line through two identical points")
        return form

    def slope(self, A, B):
        A, B = self._pt(A), self._pt(B)
        return self._div(B.y - A.y, B.x - A.x)

    @_traced
    def midpoint(self, A, B) -> Point:
        A, B = self._pt(A), self._pt(B)
        return Point((A.x + B.x) / 2, (A.y + B.y) / 2)

    @_traced
    def altitude(self, P, L):
        P = self._pt(P)
        a = self.K.coeff(L, self.x, 1)
        b = self.K.coeff(L, self.y, 1)
        return a * (self.y - P.y) - b * (self.x - P.x)

    @_traced
    def intersect(self, L1, L2) -> Point:
        status, vals = self.K.solve([self.K.numer(L1), self.K.numer(L2)], [self.x, self.y])
        if status != "unique":
            raise DegenerateIntersectionError(f"lines do not meet in a single point ({status})")
        return Point(*vals)

    @_traced
    def foot(self, P, L) -> Point:
        return self.intersect(self.altitude(P, L), L)

    @_traced
    def perp_pq(self, P, Q):
        P, Q = self._pt(P), self._pt(Q)
        return (self.y - Q.y) * (P.y - Q.y) + (self.x - Q.x) * (P.x - Q.x)

    @_traced
    def perp_mid(self, P, Q):
        return self.perp_pq(P, self.midpoint(P, Q))

    @_traced
    def mirror_origin(self, A, B) -> Point:
        q = self.foot((0, 0), self.line_through(A, B))
        return Point(2 * q.x, 2 * q.y)

    @_traced
    def mirror_pt_line(self, P, L) -> Point:
        P = self._pt(P)
        shifted = self.K.subs(L, {self.x: self.x + P.x, self.y: self.y + P.y})
        q = self.foot((0, 0), shifted)
        return Point(2 * q.x + P.x, 2 * q.y + P.y)

    @_traced
    def quad(self, L1, L2, L3, L4) -> tuple:
        return (
            self.intersect(L1, L2),
            self.intersect(L2, L3),
            self.intersect(L3, L4),
            self.intersect(L4, L1),
        )

    def _line_system(self, lines):
        if len(lines) < 2:
            raise ShapeError("need at least two lines")
        return self.K.solve([self.K.coerce(L) for L in lines], [self.x, self.y])

    @_traced
    def concurrency_point(self, *lines) -> Point:
        status, vals = self._line_system(lines)
        if status == "inconsistent":
            raise NoCommonPointError("the lines have no common point")
        if status != "unique":
            raise DegenerateError("the lines do not determine a single point")
        P = Point(*vals)
        for L in lines:
            if not self.K.is_zero(self.K.subs(L, {self.x: P.x, self.y: P.y})):
                raise InternalInconsistencyError("solution does not satisfy every line")
        return P

    def concurrent(self, *lines) -> bool:
        status, _ = self._line_system(lines)
        return status != "inconsistent"

    def colinear(self, *points) -> bool:
        if len(points) < 2:
            raise ShapeError("Need at least two Pts")
        P1, P2 = points[0], points[1]
        return all(self.K.is_zero(self.area(P1, P2, P)) for P in points[2:])

    # circles and conics ---------------------------------------------------
    @_traced
    def circle_through(self, *points):
        if len(points) < 3:
            raise ShapeError("a circle needs at least three points")
        a, b, c = self.K.unknowns("a", "b", "c")
        x, y = self.x, self.y
        template = x**2 + y**2 + a * x + b * y + c
        eqs = []
        for P in points:
            P = self._pt(P)
            eqs.append(P.x**2 + P.y**2 + a * P.x + b * P.y + c)
        status, vals = self.K.solve(eqs, [a, b, c])
        if status != "unique":
            raise DegenerateCircleError(f"no unique circle through the points ({status})")
        return self.K.subs(template, {a: vals[0], b: vals[1], c: vals[2]})

    @_traced
    def center(self, C) -> Point:
        return Point(-self.K.coeff(C, self.x, 1) / 2, -self.K.coeff(C, self.y, 1) / 2)

    def radius_sq(self, C):
        q = self.center(C)
        return self.K.subs(-self.K.coerce(C), {self.x: q.x, self.y: q.y})

    def concyclic(self, *points) -> bool:
        C1 = self.circle_through(points[0], points[1], points[2])
        for P in points[3:]:
            if not self.K.is_zero(C1 - self.circle_through(points[0], points[1], P)):
                return False
        return True

    @_traced
    def circumcenter(self, A, B, C) -> Point:
        return self.center(self.circle_through(A, B, C))

    def circumradius_sq(self, A, B, C):
        return self.radius_sq(self.circle_through(A, B, C))

    @_traced
    def nine_point_circle(self, A, B, C):
        return self.circle_through(self.midpoint(A, B), self.midpoint(A, C), self.midpoint(B, C))

    @_traced
    def centroid(self, A, B, C) -> Point:
        return self.concurrency_point(
            self.line_through(self.midpoint(A, B), C),
            self.line_through(self.midpoint(A, C), B),
            self.line_through(self.midpoint(B, C), A),
        )

    @_traced
    def orthocenter(self, A, B, C) -> Point:
        return self.concurrency_point(
            self.altitude(A, self.line_through(B, C)),
            self.altitude(B, self.line_through(A, C)),
            self.altitude(C, self.line_through(A, B)),
        )

    @_traced
    def euler_line(self, A, B, C):
        return self.line_through(self.orthocenter(A, B, C), self.circumcenter(A, B, C))

    @_traced
    def cet(self, A, B) -> Point:
        """Center of the equilateral triangle erected on AB."""
        A, B = self._pt(A), self._pt(B)
        r3 = self.K.r3
        V = Point(
            (B.x + A.x) / 2 - (A.y - B.y) * r3 / 2,
            B.y / 2 + (A.x - B.x) * r3 / 2 + A.y / 2,
        )
        return self.circumcenter(A, B, V)

    @_traced
    def param_circle(self, c, R, t) -> Point:
        return self.param_ellipse(c, (R, R), t)

    @_traced
    def param_ellipse(self, c, d, t) -> Point:
        c = self._pt(c)
        d1, d2 = self.K.coerce(d[0]), self.K.coerce(d[1])
        t = self.K.coerce(t)
        inv = self._div(1, t)
        return Point(c.x + d1 * (t + inv) / 2, c.y + d2 * (t - inv) / 2 / self.K.i)

    @_traced
    def param_line(self, m, b, t) -> Point:
        t = self.K.coerce(t)
        return Point(t, self.K.coerce(m) * t + b)

    @_traced
    def tangent(self, C, P):
        P = self._pt(P)
        if not self.K.is_zero(self.K.subs(C, {self.x: P.x, self.y: P.y})):
            raise NotIncidentError("the point is not on the conic")
        A = self.K.coeff(C, self.x, 2)
        x, y = self.x, self.y
        form = (y - P.y) * (2 * A * P.y + self.K.coeff(C, y, 1)) + (x - P.x) * (
            2 * A * P.x + self.K.coeff(C, x, 1)
        )
        return self.K.numer(form)

    @_traced
    def tangent_to_ellipse(self, c, d, t):
        P = self.param_ellipse(c, d, t)
        d1, d2 = self.K.coerce(d[0]), self.K.coerce(d[1])
        t = self.K.coerce(t)
        inv2 = self._div(1, t * t)
        # derivatives of the parametrization in t
        dx = d1 * (1 - inv2) / 2
        dy = d2 * (1 + inv2) / 2 / self.K.i
        return dx * (self.y - P.y) - (self.x - P.x) * dy

    # tangency -------------------------------------------------------------
    def tc_ces_out(self, c1, r1, c2, r2):
        c1, c2 = self._pt(c1), self._pt(c2)
        return (self.K.coerce(r1) + r2) ** 2 - (c1.x - c2.x) ** 2 - (c1.y - c2.y) ** 2

    def _linear_parts(self, L):
        x, y = self.x, self.y
        a = self.K.coeff(L, x, 1)
        b = self.K.coeff(L, y, 1)
        c = self.K.subs(L, {x: 0, y: 0})
        if not self.K.is_zero(L - a * x - b * y - c):
            raise DegenerateError("expected a linear form in x and y")
        return a, b, c

    def _tangency_discriminant(self, C, L):
        a, b, c = self._linear_parts(L)
        x, y = self.x, self.y
        if not self.K.is_zero(b):
            gu = self.K.subs(C, {y: -(a * x + c) / b})
            v = x
        elif not self.K.is_zero(a):
            # extension: radical line independent of y, solve for x instead
            gu = self.K.subs(C, {x: -(b * y + c) / a})
            v = y
        else:
            raise UnsupportedOrientationError("radical line is degenerate")
        q2, q1, q0 = (self.K.coeff(gu, v, k) for k in (2, 1, 0))
        return 4 * q2 * q0 - q1**2

    def touch_circles_expr(self, C1, C2):
        return self.K.numer(self._tangency_discriminant(C1, self.K.coerce(C1) - C2))

    def touch_circles(self, C1, C2) -> bool:
        return self.K.is_zero(self._tangency_discriminant(C1, self.K.coerce(C1) - C2))

    def touch_circle_line_expr(self, C, L):
        return self.K.numer(self._tangency_discriminant(C, L))

    def touch_circle_line(self, C, L) -> bool:
        return self.K.is_zero(self._tangency_discriminant(C, L))

    # angles and the standard triangle -------------------------------------
    def tan_sum(self, *args):
        if not args:
            raise ShapeError("tan_sum needs at least one argument")
        t = self.K.coerce(args[-1])
        for a in reversed(args[:-1]):
            a = self.K.coerce(a)
            t = self._div(a + t, 1 - t * a)
        return t

    @_traced
    def standard_triangle(self, m, n) -> tuple:
        x, y = self.x, self.y
        C = self.intersect(y - self.tan_sum(m, m) * x, y + self.tan_sum(n, n) * (x - 1))
        return (self._pt((0, 0)), self._pt((1, 0)), C)

    @_traced
    def incenter(self, m, n) -> Point:
        if self.K.same(m, n):
            return self._pt((Fraction(1, 2), self.K.coerce(m) / 2))
        C = self.standard_triangle(m, n)[2]
        x, y = self.x, self.y
        return self.concurrency_point(
            y - m * x,
            y + n * x - n,
            y - C.y - (x - C.x) * self.tan_sum(m, self._div(1, n)),
        )

    def inradius_sq(self, m, n):
        A, B, C = self.standard_triangle(m, n)
        O = self.incenter(m, n)
        d1 = self.de_pt_line_sq(O, self.line_through(A, B))
        d2 = self.de_pt_line_sq(O, self.line_through(A, C))
        d3 = self.de_pt_line_sq(O, self.line_through(B, C))
        if not (self.K.is_zero(d1 - d2) and self.K.is_zero(d1 - d3)):
            raise InternalInconsistencyError("incenter is not equidistant from the sides")
        return d1

    @_traced
    def incircle(self, m, n):
        r2 = self.inradius_sq(m, n)
        O = self.incenter(m, n)
        return (self.x - O.x) ** 2 + (self.y - O.y) ** 2 - r2

    # predicates -----------------------------------------------------------
    def is_equilateral(self, A, B, C) -> bool:
        return self.K.is_zero(self.de_sq(A, B) - self.de_sq(A, C)) and self.K.is_zero(
            self.de_sq(B, C) - self.de_sq(C, A)
        )

    def sqrt_sum(self, a, b, c) -> bool:
        a, b, c = self.K.coerce(a), self.K.coerce(b), self.K.coerce(c)
        return self.K.is_zero((c - a - b) ** 2 - 4 * a * b)

    def de_pt_line_sq(self, P, L):
        return self.de_sq(self.intersect(self.altitude(P, L), L), P)

    def sqrt(self, v):
        return self.K.sqrt(v)

    def det(self, M):
        return self.K.det(M)


SYMBOLIC = Geometry()

# module-level symbolic API
area = SYMBOLIC.area
de_sq = SYMBOLIC.de_sq
de_sq_g = SYMBOLIC.de_sq_g
line_through = SYMBOLIC.line_through
slope = SYMBOLIC.slope
midpoint = SYMBOLIC.midpoint
altitude = SYMBOLIC.altitude
foot = SYMBOLIC.foot
perp_pq = SYMBOLIC.perp_pq
perp_mid = SYMBOLIC.perp_mid
mirror_origin = SYMBOLIC.mirror_origin
mirror_pt_line = SYMBOLIC.mirror_pt_line
intersect = SYMBOLIC.intersect
quad = SYMBOLIC.quad
concurrency_point = SYMBOLIC.concurrency_point
concurrent = SYMBOLIC.concurrent
colinear = SYMBOLIC.colinear
circle_through = SYMBOLIC.circle_through
center = SYMBOLIC.center
radius_sq = SYMBOLIC.radius_sq
concyclic = SYMBOLIC.concyclic
circumcenter = SYMBOLIC.circumcenter
circumradius_sq = SYMBOLIC.circumradius_sq
nine_point_circle = SYMBOLIC.nine_point_circle
euler_line = SYMBOLIC.euler_line
centroid = SYMBOLIC.centroid
orthocenter = SYMBOLIC.orthocenter
cet = SYMBOLIC.cet
param_circle = SYMBOLIC.param_circle
param_ellipse = SYMBOLIC.param_ellipse
param_line = SYMBOLIC.param_line
tangent = SYMBOLIC.tangent
tangent_to_ellipse = SYMBOLIC.tangent_to_ellipse
tc_ces_out = SYMBOLIC.tc_ces_out
touch_circles = SYMBOLIC.touch_circles
touch_circles_expr = SYMBOLIC.touch_circles_expr
touch_circle_line = SYMBOLIC.touch_circle_line
touch_circle_line_expr = SYMBOLIC.touch_circle_line_expr
tan_sum = SYMBOLIC.tan_sum
standard_triangle = SYMBOLIC.standard_triangle
incenter = SYMBOLIC.incenter
inradius_sq = SYMBOLIC.inradius_sq
incircle = SYMBOLIC.incircle
is_equilateral = SYMBOLIC.is_equilateral
is_zero = SYMBOLIC.is_zero
sqrt_sum = SYMBOLIC.sqrt_sum
de_pt_line_sq = SYMBOLIC.de_pt_line_sq

x = kernel.X
y = kernel.Y

# Names as they appear in the DSL (snake_case primitive vocabulary).
PRIMITIVES: dict[str, str] = {
    name: name
    for name in (
        "area de_sq de_sq_g line_through slope midpoint altitude foot perp_pq perp_mid "
        "mirror_origin mirror_pt_line intersect quad concurrency_point circle_through center "
        "radius_sq circumcenter circumradius_sq nine_point_circle euler_line centroid "
        "orthocenter cet param_circle param_ellipse param_line tangent tangent_to_ellipse "
        "tc_ces_out touch_circles_expr touch_circle_line_expr tan_sum standard_triangle "
        "incenter inradius_sq incircle de_pt_line_sq"
    ).split()
}
PREDICATES = (
    "is_equilateral",
    "is_zero",
    "colinear",
    "concurrent",
    "concyclic",
    "sqrt_sum",
    "touch_circles",
    "touch_circle_line",
)
