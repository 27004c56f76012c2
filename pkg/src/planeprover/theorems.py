"""The theorem catalog, the symbolic prover and the numeric spot-check oracle.

Each theorem is a parameter-free construction written against
:class:`~planeprover.geometry.Geometry`.  Run over the symbolic algebra it
yields a proof; run over :class:`~planeprover.geometry.NumericAlgebra` it is
an independent evaluation at a random rational instance.
"""

from __future__ import annotations

import multiprocessing
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from . import groebner, kernel, numeric
from .errors import (
    DegenerateError,
    EvaluationError,
    NotDivisibleError,
    PlaneProverError,
    ProofTimeoutError,
    UnableToSampleError,
    UnknownTheoremError,
)
from .geometry import Geometry, NumericAlgebra

CLAIM_KINDS = (
    "zero-identity",
    "colinearity",
    "concurrency",
    "concyclicity",
    "equilaterality",
    "tangency",
    "groebner-zero",
    "certificate",
)

MAX_RESAMPLES = 20


@dataclass(frozen=True)
class Claim:
    """Outcome of running one construction."""

    kind: str
    holds: bool
    witnesses: tuple = ()
    certificate: dict | None = None


@dataclass(frozen=True)
class TheoremRecord:
    id: str
    title: str
    claim_kind: str
    prover: Callable[[Geometry], Claim] = field(repr=False, compare=False)
    expected: str = "proved"
    oracle: Callable[[Geometry], Claim] | None = field(default=None, repr=False, compare=False)

    def oracle_builder(self) -> Callable[[Geometry], Claim]:
        return self.oracle if self.oracle is not None else self.prover


@dataclass
class ProofResult:
    id: str
    verdict: str  # proved | refuted | certificate | error
    elapsed: float
    degree: int = 0
    nterms: int = 0
    certificate: dict | None = None
    error: str | None = None

    @property
    def millis(self) -> int:
        return int(round(self.elapsed * 1000))

    def to_json(self) -> dict:
        out = {
            "id": self.id,
            "verdict": self.verdict,
            "millis": self.millis,
            "degree": self.degree,
            "nterms": self.nterms,
        }
        if self.certificate is not None:
            out["certificate"] = self.certificate
        if self.error is not None:
            out["error"] = self.error
        return out


# ---------------------------------------------------------------------------
# claim helpers


def _zero(g: Geometry, expr, *operands) -> Claim:
    return Claim("zero-identity", g.is_zero(expr), operands or (expr,))


def _coords(points) -> tuple:
    return tuple(c for P in points for c in P)


def _te(g: Geometry):
    m, n = g.param("m"), g.param("n")
    return m, n, g.standard_triangle(m, n)


# ---------------------------------------------------------------------------
# constructions


def area_formula(g: Geometry) -> Claim:
    A, B, C = g.point("A"), g.point("B"), g.point("C")
    lhs = g.de_sq(A, B) * g.de_sq(C, g.foot(C, g.line_through(A, B))) / 4
    rhs = g.area(A, B, C) ** 2
    return _zero(g, lhs - rhs, lhs, rhs)


def brianchon(g: Geometry) -> Claim:
    c = g.point("c")
    d = (g.param("d1"), g.param("d2"))
    Li = [g.tangent_to_ellipse(c, d, g.param(f"t{i}")) for i in range(6)]
    P = [g.intersect(Li[i], Li[(i + 1) % 6]) for i in range(6)]
    lines = (g.line_through(P[0], P[3]), g.line_through(P[1], P[4]), g.line_through(P[2], P[5]))
    return Claim("concurrency", g.concurrent(*lines), lines)


def butterfly(g: Geometry) -> Claim:
    R = g.param("R")
    P = {i: g.param_circle((0, 0), R, g.param(f"t{i}")) for i in range(1, 5)}
    M = g.intersect(g.line_through(P[1], P[3]), g.line_through(P[2], P[4]))
    Li = g.perp_pq((0, 0), M)
    X = g.intersect(g.line_through(P[1], P[4]), Li)
    Y = g.intersect(g.line_through(P[2], P[3]), Li)
    lhs, rhs = g.de_sq(M, X), g.de_sq(M, Y)
    return _zero(g, lhs - rhs, lhs, rhs)


def centroid_exists(g: Geometry) -> Claim:
    A, B, C = g.point("A"), g.point("B"), g.point("C")
    lines = (
        g.line_through(g.midpoint(A, B), C),
        g.line_through(g.midpoint(A, C), B),
        g.line_through(g.midpoint(B, C), A),
    )
    return Claim("concurrency", g.concurrent(*lines), lines)


def ceva(g: Geometry) -> Claim:
    A, B = (0, 0), (1, 0)
    C, O = g.point("C"), g.point("O")
    D = g.intersect(g.line_through(B, C), g.line_through(A, O))
    E = g.intersect(g.line_through(A, C), g.line_through(B, O))
    F = g.intersect(g.line_through(A, B), g.line_through(C, O))
    lhs = g.de_sq(B, D) * g.de_sq(C, E) * g.de_sq(A, F)
    rhs = g.de_sq(D, C) * g.de_sq(E, A) * g.de_sq(F, B)
    return _zero(g, lhs - rhs, lhs, rhs)


def _perspective_points(g: Geometry, A, B):
    return (
        g.intersect(g.line_through(A[1], A[2]), g.line_through(B[1], B[2])),
        g.intersect(g.line_through(A[1], A[3]), g.line_through(B[1], B[3])),
        g.intersect(g.line_through(A[2], A[3]), g.line_through(B[2], B[3])),
    )


def desargues(g: Geometry) -> Claim:
    A, B = {}, {}
    for i in range(1, 4):
        m = g.param(f"m{i}")
        A[i] = g.param_line(m, 0, g.param(f"t{i}"))
        B[i] = g.param_line(m, 0, g.param(f"s{i}"))
    pts = _perspective_points(g, A, B)
    return Claim("colinearity", g.colinear(*pts), _coords(pts))


def euler_line_exists(g: Geometry) -> Claim:
    A, B, C = g.point("A"), g.point("B"), g.point("C")
    pts = (g.orthocenter(A, B, C), g.circumcenter(A, B, C), g.centroid(A, B, C))
    return Claim("colinearity", g.colinear(*pts), _coords(pts))


def _tetrahedron_ratio(g: Geometry, scale: int = 288):
    p31, p32 = g.param("p31"), g.param("p32")
    p41, p42, p43 = g.param("p41"), g.param("p42"), g.param("p43")
    P1, P2, P3, P4 = (0, 0, 0), (1, 0, 0), (p31, p32, 0), (p41, p42, p43)
    P = g.de_sq_g(P1, P4, 3)
    Q = g.de_sq_g(P2, P4, 3)
    R = g.de_sq_g(P3, P4, 3)
    A = g.de_sq_g(P2, P3, 3)
    B = g.de_sq_g(P3, P1, 3)
    C = g.de_sq_g(P1, P2, 3)
    vol = g.area((p31, p32), (1, 0), (0, 0)) * p43 / 3
    M = [
        [0, P, Q, R, 1],
        [P, 0, C, B, 1],
        [Q, C, 0, A, 1],
        [R, B, A, 0, 1],
        [1, 1, 1, 1, 0],
    ]
    det = g.det(M)
    return det, vol, det / vol**2 / scale


def euler_tetrahedron(g: Geometry) -> Claim:
    det, vol, ratio = _tetrahedron_ratio(g)
    return _zero(g, ratio - 1, det, vol)


def euler_triangle_formula(g: Geometry) -> Claim:
    m, n, (A, B, C) = _te(g)
    O = g.incenter(m, n)
    I1 = g.circumcenter(A, B, C)
    r2 = g.inradius_sq(m, n)
    R2 = g.circumradius_sq(A, B, C)
    d2 = g.de_sq(O, I1)
    return _zero(g, (d2 - R2) ** 2 - 4 * r2 * R2, d2, R2, r2)


def feuerbach(g: Geometry) -> Claim:
    m, n, T = _te(g)
    C1 = g.nine_point_circle(*T)
    C2 = g.incircle(m, n)
    return Claim("tangency", g.touch_circles(C1, C2), (C1, C2))


def _fox_talbot_lines(g: Geometry):
    L = {1: g.x}
    for i in range(2, 6):
        L[i] = g.param(f"a{i}") * g.x + g.param(f"b{i}") * g.y + g.param(f"c{i}")
    M = []
    for i in range(1, 6):
        q = g.quad(*(L[j] for j in range(1, 6) if j != i))
        M.append(g.line_through(g.midpoint(q[0], q[2]), g.midpoint(q[1], q[3])))
    return M


def fox_talbot(g: Geometry) -> Claim:
    M = _fox_talbot_lines(g)
    return Claim("concurrency", g.concurrent(*M), tuple(M))


def _herron_sides(g: Geometry, denom: int = 2):
    b1, a2, b2 = g.param("b1"), g.param("a2"), g.param("b2")
    A, B, C = (0, 0), (0, b1), (a2, b2)
    a = g.sqrt(g.de_sq(B, C))
    b = g.sqrt(g.de_sq(A, C))
    c = g.sqrt(g.de_sq(A, B))
    s = (a + b + c) / denom
    return g.area(A, B, C) ** 2, s * (s - a) * (s - b) * (s - c)


def herron(g: Geometry) -> Claim:
    lhs, rhs = _herron_sides(g)
    return _zero(g, lhs - rhs, lhs, rhs)


def incenter_exists(g: Geometry) -> Claim:
    m, n, (_, _, C) = _te(g)
    x, y = g.x, g.y
    lines = (y - m * x, y + n * x - n, y - C.y - (x - C.x) * g.tan_sum(m, 1 / n))
    return Claim("concurrency", g.concurrent(*lines), lines)


def johnson(g: Geometry) -> Claim:
    R = g.param("R")
    C = [g.param_circle((0, 0), R, g.param(f"t{i}")) for i in range(3)]
    P = [g.mirror_origin(C[i], C[(i + 1) % 3]) for i in range(3)]
    r2 = g.radius_sq(g.circle_through(*P))
    return _zero(g, r2 - R**2, r2)


def _lehmus_difference(g: Geometry, m, n, variant: str | None = None):
    x, y, ts = g.x, g.y, g.tan_sum
    k = 2 if variant == "steep" else 1
    N = g.intersect(y - (ts(m, m, m) if variant == "trisector" else ts(m, m)) * x, y + k * n * (x - 1))
    M = g.intersect(y - m * x, y + ts(n, n) * (x - 1))
    start = (0, 0) if variant == "wrong-vertex" else (1, 0)
    return g.de_sq(start, N) - g.de_sq((0, 0), M)


def lehmus(g: Geometry, variant: str | None = None) -> Claim:
    """Equal bisectors: the length difference is divisible by m - n."""
    m, n = g.param("m"), g.param("n")
    diff = _lehmus_difference(g, m, n, variant)
    return lehmus_certificate(diff, m, n)


def lehmus_oracle(g: Geometry, variant: str | None = None) -> Claim:
    # the slice n = m (isosceles triangle) must make the bisectors equal
    m = g.param("m")
    diff = _lehmus_difference(g, m, m, variant)
    return Claim("certificate", g.is_zero(diff), (diff,))


def lehmus_certificate(diff, m, n, samples: int = 24, seed: int = 0) -> Claim:
    N = kernel.numer(diff)
    divisor = kernel._coerce(m) - n
    try:
        Q = kernel.divide_exact(N, divisor)
    except NotDivisibleError:
        return Claim("certificate", False, (N,), {"divisor": kernel.to_text(divisor), "divides": False})
    rng = random.Random(seed)
    values = []
    while len(values) < samples:
        pt = {"m": Fraction(rng.randint(1, 999), 1000), "n": Fraction(rng.randint(1, 999), 1000)}
        try:
            v = kernel.eval_at(Q, pt)
        except EvaluationError:
            continue
        values.append(v.a)
    nonzero = all(v != 0 for v in values)
    cert = {
        "divisor": kernel.to_text(divisor),
        "divides": True,
        "numerator_degree": N.total_degree(),
        "cofactor": kernel.to_text(Q),
        "cofactor_samples": len(values),
        "cofactor_nonzero": nonzero,
        "cofactor_positive": all(v > 0 for v in values),
        "cofactor_negative": all(v < 0 for v in values),
        "rigor": "semi-rigorous: exact divisibility, cofactor nonvanishing checked at sample points in (0,1)^2",
    }
    return Claim("certificate", nonzero, (N, Q), cert)


def menelaus(g: Geometry) -> Claim:
    A, B, C = g.point("A"), g.point("B"), g.point("C")
    L = g.y - g.param("m") * g.x - g.param("b")
    X = g.intersect(g.line_through(B, C), L)
    Y = g.intersect(g.line_through(A, C), L)
    Z = g.intersect(g.line_through(A, B), L)
    lhs = g.de_sq(B, X) * g.de_sq(C, Y) * g.de_sq(A, Z)
    rhs = g.de_sq(C, X) * g.de_sq(A, Y) * g.de_sq(B, Z)
    return _zero(g, lhs - rhs, lhs, rhs)


def _morley_points(g: Geometry, B=(1, 0), r3=None, d_slope=1):
    m, n = g.param("m"), g.param("n")
    x, y, ts = g.x, g.y, g.tan_sum
    if r3 is None:
        r3 = g.sqrt(3)
    Bx, By = g._pt(B)
    C = g.intersect(y - ts(m, m, m) * x, y - By + ts(n, n, n) * (x - Bx))
    D = g.intersect(y - d_slope * m * x, y - By + n * (x - Bx))
    E = g.intersect(y - ts(m, m) * x, y - C.y - (x - C.x) * ts(m, m, -n, r3))
    F = g.intersect(y - By + ts(n, n) * (x - Bx), y - C.y + (x - C.x) * ts(n, n, -m, r3))
    return D, E, F


def morley(g: Geometry) -> Claim:
    D, E, F = _morley_points(g)
    return Claim("equilaterality", g.is_equilateral(D, E, F), _coords((D, E, F)))


def napoleon(g: Geometry) -> Claim:
    A, B, C = g.point("A"), g.point("B"), g.point("C")
    pts = (g.cet(A, B), g.cet(B, C), g.cet(C, A))
    return Claim("equilaterality", g.is_equilateral(*pts), _coords(pts))


def _nine_points(g: Geometry, A, B, C, O=None):
    D = g.foot(A, g.line_through(B, C))
    E = g.foot(B, g.line_through(A, C))
    F = g.foot(C, g.line_through(A, B))
    G, H, I = g.midpoint(A, B), g.midpoint(A, C), g.midpoint(B, C)
    if O is None:
        O = g.orthocenter(A, B, C)
    K, L, M = g.midpoint(O, A), g.midpoint(O, B), g.midpoint(O, C)
    return (D, E, F, G, H, I, K, L, M)


def nine_point_circle_exists(g: Geometry) -> Claim:
    A, B, C = g.point("A"), g.point("B"), g.point("C")
    pts = _nine_points(g, A, B, C)
    return Claim("concyclicity", g.concyclic(*pts), _coords(pts))


def orthocenter_exists(g: Geometry) -> Claim:
    A, B, C = g.point("A"), g.point("B"), g.point("C")
    lines = (
        g.altitude(A, g.line_through(B, C)),
        g.altitude(B, g.line_through(A, C)),
        g.altitude(C, g.line_through(A, B)),
    )
    return Claim("concurrency", g.concurrent(*lines), lines)


def _hexagon_points(g: Geometry, P, Q):
    return (
        g.intersect(g.line_through(P[1], Q[2]), g.line_through(P[2], Q[1])),
        g.intersect(g.line_through(P[1], Q[3]), g.line_through(P[3], Q[1])),
        g.intersect(g.line_through(P[2], Q[3]), g.line_through(P[3], Q[2])),
    )


def pappus(g: Geometry) -> Claim:
    m, b, m1, b1 = g.param("m"), g.param("b"), g.param("m1"), g.param("b1")
    P = {i: g.param_line(m, b, g.param(f"t{i}")) for i in range(1, 4)}
    Q = {i: g.param_line(m1, b1, g.param(f"s{i}")) for i in range(1, 4)}
    pts = _hexagon_points(g, P, Q)
    return Claim("colinearity", g.colinear(*pts), _coords(pts))


def pascal(g: Geometry) -> Claim:
    c = g.point("c")
    d = (g.param("d1"), g.param("d2"))
    P = {i: g.param_ellipse(c, d, g.param(f"t{i}")) for i in range(1, 4)}
    Q = {i: g.param_ellipse(c, d, g.param(f"s{i}")) for i in range(1, 4)}
    pts = _hexagon_points(g, P, Q)
    return Claim("colinearity", g.colinear(*pts), _coords(pts))


def _ptolemy_products(g: Geometry, last_radius_scale=1):
    R = g.param("R")
    P = {i: g.param_circle((0, 0), R, g.param(f"t{i}")) for i in range(1, 4)}
    P[4] = g.param_circle((0, 0), R * last_radius_scale, g.param("t4"))
    return (
        g.de_sq(P[1], P[2]) * g.de_sq(P[3], P[4]),
        g.de_sq(P[2], P[3]) * g.de_sq(P[4], P[1]),
        g.de_sq(P[1], P[3]) * g.de_sq(P[2], P[4]),
    )


def ptolemy(g: Geometry) -> Claim:
    a, b, c = _ptolemy_products(g)
    return Claim("zero-identity", g.sqrt_sum(a, b, c), (a, b, c))


def _simson_feet(g: Geometry, radius_scale=1):
    R = g.param("R")
    P = {i: g.param_circle((0, 0), R, g.param(f"t{i}")) for i in range(1, 4)}
    P[4] = g.param_circle((0, 0), R * radius_scale, g.param("t4"))
    return (
        g.foot(P[4], g.line_through(P[1], P[2])),
        g.foot(P[4], g.line_through(P[2], P[3])),
        g.foot(P[4], g.line_through(P[3], P[1])),
    )


def simson(g: Geometry) -> Claim:
    pts = _simson_feet(g)
    return Claim("colinearity", g.colinear(*pts), _coords(pts))


SODDY_ORDER = groebner.MonomialOrder(("d1", "e1", "d2", "e2", "r", "s", "t"))


def _descartes(r, s, t, e4=1, two=2):
    e1, e2, e3 = 1 / r, 1 / s, 1 / t
    return -two * (e1**2 + e2**2 + e3**2 + e4**2) + (e1 + e2 + e3 + e4) ** 2


def _soddy_system(g: Geometry):
    R = 1
    r, s, t = g.param("r"), g.param("s"), g.param("t")
    d = (g.param("d1"), g.param("d2"))
    e = (g.param("e1"), g.param("e2"))
    c = (r + R, 0)
    TC = g.tc_ces_out
    return [
        TC(c, r, d, s),
        TC(c, r, e, t),
        TC(d, s, e, t),
        TC((0, 0), R, c, r),
        TC((0, 0), R, d, s),
        TC((0, 0), R, e, t),
    ], (r, s, t)


def soddy(g: Geometry, two: int = 2, e4=1, third: str = "t") -> Claim:
    gens, (r, s, t) = _soddy_system(g)
    gb = groebner.buchberger(groebner.PolyIdeal(tuple(gens), SODDY_ORDER))
    p = kernel.numer(_descartes(r, s, t if third == "t" else s, e4=e4, two=two))
    nf = groebner.normal_form(p, gb)
    members = all(kernel.is_zero(groebner.normal_form(q, gb)) for q in gens)
    return Claim(
        "groebner-zero",
        kernel.is_zero(nf) and members,
        (p,),
        {"basis_size": len(gb.basis)},
    )


def soddy_oracle(g: Geometry, two: int = 2, e4=1, third: str = "t") -> Claim:
    """Solve an actual tangent-circle configuration and test the relation."""
    K = g.K
    if not getattr(K, "approximate", False):
        raise numeric.NeedsApproximation
    val = lambda v: K.coerce(v).constant_value()  # noqa: E731
    with numeric.approx_context():
        r, s = val(g.param("r")), val(g.param("s"))
        # d: radius s, tangent to the unit circle at 0 and to circle (c, r)
        cx = r + 1
        d1 = ((1 + s) ** 2 - (r + s) ** 2 + cx**2) / (2 * cx)
        d2 = mpmath.sqrt((1 + s) ** 2 - d1**2)
        if numeric.is_zero_value(d2):
            raise DegenerateError("collinear centres")
        # e = (a1 + b1 t, a2 + b2 t) from the two linear equations, then |e| = 1 + t
        a1 = (1 - r**2 + cx**2) / (2 * cx)
        b1 = (2 - 2 * r) / (2 * cx)
        dd = d1**2 + d2**2
        a2 = (dd + 1 - s**2 - 2 * a1 * d1) / (2 * d2)
        b2 = (2 - 2 * s - 2 * b1 * d1) / (2 * d2)
        qa = b1**2 + b2**2 - 1
        qb = 2 * (a1 * b1 + a2 * b2) - 2
        qc = a1**2 + a2**2 - 1
        if numeric.is_zero_value(qa):
            raise DegenerateError("degenerate quadratic")
        disc = mpmath.sqrt(qb**2 - 4 * qa * qc)
        t = (-qb + disc) / (2 * qa)
        if numeric.is_zero_value(t):
            raise DegenerateError("zero radius")
        e = (a1 + b1 * t, a2 + b2 * t)
        d = (d1, d2)
        res = [
            (r + s) ** 2 - (cx - d[0]) ** 2 - d[1] ** 2,
            (r + t) ** 2 - (cx - e[0]) ** 2 - e[1] ** 2,
            (s + t) ** 2 - (d[0] - e[0]) ** 2 - (d[1] - e[1]) ** 2,
            (1 + s) ** 2 - d[0] ** 2 - d[1] ** 2,
            (1 + t) ** 2 - e[0] ** 2 - e[1] ** 2,
        ]
        if not all(numeric.is_zero_value(v) for v in res):
            raise DegenerateError("configuration solve failed")
        p = _descartes(r, s, t if third == "t" else s, e4=e4, two=two) * (r * s * t) ** 2
        return Claim("groebner-zero", numeric.is_zero_value(p), (p,))


# ---------------------------------------------------------------------------
# catalog


_CATALOG: tuple[TheoremRecord, ...] = (
    TheoremRecord("AreaFormula", "area from base and height", "zero-identity", area_formula),
    TheoremRecord("Brianchon", "diagonals of a circumscribed hexagon", "concurrency", brianchon),
    TheoremRecord("Butterfly", "butterfly theorem", "zero-identity", butterfly),
    TheoremRecord("CentroidExists", "medians are concurrent", "concurrency", centroid_exists),
    TheoremRecord("Ceva", "Ceva's theorem", "zero-identity", ceva),
    TheoremRecord("Desargues", "Desargues' theorem", "colinearity", desargues),
    TheoremRecord("EulerLineExists", "orthocenter, circumcenter, centroid colinear", "colinearity", euler_line_exists),
    TheoremRecord(
        "EulerTetrahedronVolumeFormula", "tetrahedron volume from edge lengths", "zero-identity", euler_tetrahedron
    ),
    TheoremRecord("EulerTriangleFormula", "distance between incenter and circumcenter", "zero-identity", euler_triangle_formula),
    TheoremRecord("Feuerbach", "nine-point circle touches the incircle", "tangency", feuerbach),
    TheoremRecord("FoxTalbot", "Newton lines of a complete pentalateral", "concurrency", fox_talbot),
    TheoremRecord("Herron", "Heron's formula", "zero-identity", herron),
    TheoremRecord("IncenterExists", "angle bisectors are concurrent", "concurrency", incenter_exists),
    TheoremRecord("Johnson", "Johnson's circles", "zero-identity", johnson),
    TheoremRecord(
        "Lehmus", "Steiner-Lehmus theorem", "certificate", lehmus, expected="certificate", oracle=lehmus_oracle
    ),
    TheoremRecord("Menelaus", "Menelaus' theorem", "zero-identity", menelaus),
    TheoremRecord("Morley", "Morley's trisector theorem", "equilaterality", morley),
    TheoremRecord("Napoleon", "Napoleon's theorem", "equilaterality", napoleon),
    TheoremRecord("NinePointCircleExists", "nine-point circle", "concyclicity", nine_point_circle_exists),
    TheoremRecord("OrthocenterExists", "altitudes are concurrent", "concurrency", orthocenter_exists),
    TheoremRecord("Pappus", "Pappus' hexagon theorem", "colinearity", pappus),
    TheoremRecord("Pascal", "Pascal's hexagon theorem", "colinearity", pascal),
    TheoremRecord("Ptolemy", "Ptolemy's theorem", "zero-identity", ptolemy),
    TheoremRecord("Simson", "Simson line", "colinearity", simson),
    TheoremRecord("Soddy", "Descartes circle theorem", "groebner-zero", soddy, oracle=soddy_oracle),
)

_BY_ID = {rec.id: rec for rec in _CATALOG}


# ---------------------------------------------------------------------------
# deliberately false variants, used to show the checks are not vacuous


def _m_area_half(g: Geometry) -> Claim:
    A, B, C = g.point("A"), g.point("B"), g.point("C")
    lhs = g.de_sq(A, B) * g.de_sq(C, g.foot(C, g.line_through(A, B))) / 2
    return _zero(g, lhs - g.area(A, B, C) ** 2, lhs)


def _m_ceva_swapped(g: Geometry) -> Claim:
    A, B = (0, 0), (1, 0)
    C, O = g.point("C"), g.point("O")
    D = g.intersect(g.line_through(B, C), g.line_through(A, O))
    E = g.intersect(g.line_through(A, C), g.line_through(B, O))
    F = g.intersect(g.line_through(A, B), g.line_through(C, O))
    lhs = g.de_sq(B, D) * g.de_sq(C, E) * g.de_sq(A, F)
    rhs = g.de_sq(D, C) * g.de_sq(E, A) * g.de_sq(F, A)
    return _zero(g, lhs - rhs, lhs, rhs)


def _m_herron_third(g: Geometry) -> Claim:
    lhs, rhs = _herron_sides(g, denom=3)
    return _zero(g, lhs - rhs, lhs, rhs)


def _m_ptolemy_off_circle(g: Geometry) -> Claim:
    a, b, c = _ptolemy_products(g, last_radius_scale=2)
    return Claim("zero-identity", g.sqrt_sum(a, b, c), (a, b, c))


def _m_tetrahedron_144(g: Geometry) -> Claim:
    det, vol, ratio = _tetrahedron_ratio(g, scale=144)
    return _zero(g, ratio - 1, det, vol)


def _m_simson_off_circle(g: Geometry) -> Claim:
    pts = _simson_feet(g, radius_scale=2)
    return Claim("colinearity", g.colinear(*pts), _coords(pts))


def _m_pappus_third_line(g: Geometry) -> Claim:
    m, b, m1, b1 = g.param("m"), g.param("b"), g.param("m1"), g.param("b1")
    P = {i: g.param_line(m, b, g.param(f"t{i}")) for i in range(1, 4)}
    Q = {i: g.param_line(m1, b1, g.param(f"s{i}")) for i in range(1, 3)}
    Q[3] = g.param_line(g.param("m2"), g.param("b2"), g.param("s3"))
    pts = _hexagon_points(g, P, Q)
    return Claim("colinearity", g.colinear(*pts), _coords(pts))


def _m_euler_line_midpoint(g: Geometry) -> Claim:
    A, B, C = g.point("A"), g.point("B"), g.point("C")
    pts = (g.orthocenter(A, B, C), g.circumcenter(A, B, C), g.midpoint(A, B))
    return Claim("colinearity", g.colinear(*pts), _coords(pts))


def _m_desargues_unperspective(g: Geometry) -> Claim:
    A, B = {}, {}
    for i in range(1, 4):
        A[i] = g.param_line(g.param(f"m{i}"), 0, g.param(f"t{i}"))
        B[i] = g.param_line(g.param(f"m{i}"), 0, g.param(f"s{i}"))
    B[3] = g.param_line(g.param("m4"), 0, g.param("s3"))
    pts = _perspective_points(g, A, B)
    return Claim("colinearity", g.colinear(*pts), _coords(pts))


def _m_orthocenter_median(g: Geometry) -> Claim:
    A, B, C = g.point("A"), g.point("B"), g.point("C")
    lines = (
        g.altitude(A, g.line_through(B, C)),
        g.altitude(B, g.line_through(A, C)),
        g.line_through(g.midpoint(A, B), C),
    )
    return Claim("concurrency", g.concurrent(*lines), lines)


def _m_centroid_side(g: Geometry) -> Claim:
    A, B, C = g.point("A"), g.point("B"), g.point("C")
    lines = (
        g.line_through(g.midpoint(A, B), C),
        g.line_through(g.midpoint(A, C), B),
        g.line_through(g.midpoint(B, C), B),
    )
    return Claim("concurrency", g.concurrent(*lines), lines)


def _m_incenter_bisector(g: Geometry) -> Claim:
    m, n, (_, _, C) = _te(g)
    x, y = g.x, g.y
    lines = (y - m * x, y + n * x - n, y - C.y - (x - C.x) * g.tan_sum(m, n))
    return Claim("concurrency", g.concurrent(*lines), lines)


def _m_nine_point_centroid(g: Geometry) -> Claim:
    A, B, C = g.point("A"), g.point("B"), g.point("C")
    pts = _nine_points(g, A, B, C, O=g.centroid(A, B, C))
    return Claim("concyclicity", g.concyclic(*pts), _coords(pts))


def _m_nine_point_vertex(g: Geometry) -> Claim:
    A, B, C = g.point("A"), g.point("B"), g.point("C")
    pts = _nine_points(g, A, B, C) + (A,)
    return Claim("concyclicity", g.concyclic(*pts), _coords(pts))


def _m_concyclic_two_radii(g: Geometry) -> Claim:
    R = g.param("R")
    P = [g.param_circle((0, 0), R, g.param(f"t{i}")) for i in range(1, 4)]
    P.append(g.param_circle((0, 0), 2 * R, g.param("t4")))
    return Claim("concyclicity", g.concyclic(*P), _coords(P))


def _m_napoleon_flipped(g: Geometry) -> Claim:
    A, B, C = g.point("A"), g.point("B"), g.point("C")
    pts = (g.cet(A, B), g.cet(B, C), g.cet(A, C))
    return Claim("equilaterality", g.is_equilateral(*pts), _coords(pts))


def _m_napoleon_perturbed(g: Geometry) -> Claim:
    A, B, C = g.point("A"), g.point("B"), g.point("C")
    V = g.cet(C, A)
    pts = (g.cet(A, B), g.cet(B, C), (V[0] + g.param("eps"), V[1]))
    return Claim("equilaterality", g.is_equilateral(*pts), _coords(pts))


def _m_morley_tilted(g: Geometry) -> Claim:
    D, E, F = _morley_points(g, B=(1, g.param("eps")))
    return Claim("equilaterality", g.is_equilateral(D, E, F), _coords((D, E, F)))


def _m_morley_steep(g: Geometry) -> Claim:
    D, E, F = _morley_points(g, d_slope=2)
    return Claim("equilaterality", g.is_equilateral(D, E, F), _coords((D, E, F)))


def _m_feuerbach_circumcircle(g: Geometry) -> Claim:
    m, n, T = _te(g)
    C1 = g.circle_through(*T)
    C2 = g.incircle(m, n)
    return Claim("tangency", g.touch_circles(C1, C2), (C1, C2))


def _m_feuerbach_big_incircle(g: Geometry) -> Claim:
    m, n, T = _te(g)
    O = g.incenter(m, n)
    C1 = g.nine_point_circle(*T)
    C2 = (g.x - O.x) ** 2 + (g.y - O.y) ** 2 - 4 * g.inradius_sq(m, n)
    return Claim("tangency", g.touch_circles(C1, C2), (C1, C2))


def _m_feuerbach_through_vertex(g: Geometry) -> Claim:
    m, n, T = _te(g)
    O = g.incenter(m, n)
    C1 = g.nine_point_circle(*T)
    C2 = (g.x - O.x) ** 2 + (g.y - O.y) ** 2 - g.de_sq(O, T[0])
    return Claim("tangency", g.touch_circles(C1, C2), (C1, C2))


def _variant(fn, **kw):
    def build(g: Geometry) -> Claim:
        return fn(g, **kw)

    build.__name__ = f"{fn.__name__}_variant"
    return build


_MUTANTS: tuple[TheoremRecord, ...] = (
    TheoremRecord("AreaFormula~half", "base times height over two", "zero-identity", _m_area_half, "refuted"),
    TheoremRecord("Ceva~swapped", "Ceva with a wrong segment", "zero-identity", _m_ceva_swapped, "refuted"),
    TheoremRecord("Herron~third", "semi-perimeter replaced by a third", "zero-identity", _m_herron_third, "refuted"),
    TheoremRecord("Ptolemy~off-circle", "fourth point off the circle", "zero-identity", _m_ptolemy_off_circle, "refuted"),
    TheoremRecord(
        "EulerTetrahedronVolumeFormula~144", "wrong volume constant", "zero-identity", _m_tetrahedron_144, "refuted"
    ),
    TheoremRecord("Simson~off-circle", "fourth point off the circle", "colinearity", _m_simson_off_circle, "refuted"),
    TheoremRecord("Pappus~third-line", "points on three lines", "colinearity", _m_pappus_third_line, "refuted"),
    TheoremRecord("EulerLineExists~midpoint", "side midpoint for centroid", "colinearity", _m_euler_line_midpoint, "refuted"),
    TheoremRecord("Desargues~unperspective", "triangles not in perspective", "colinearity", _m_desargues_unperspective, "refuted"),
    TheoremRecord("OrthocenterExists~median", "median for an altitude", "concurrency", _m_orthocenter_median, "refuted"),
    TheoremRecord("CentroidExists~side", "side for a median", "concurrency", _m_centroid_side, "refuted"),
    TheoremRecord("IncenterExists~bisector", "wrong bisector slope", "concurrency", _m_incenter_bisector, "refuted"),
    TheoremRecord("NinePointCircleExists~centroid", "centroid for orthocenter", "concyclicity", _m_nine_point_centroid, "refuted"),
    TheoremRecord("NinePointCircleExists~vertex", "a vertex added", "concyclicity", _m_nine_point_vertex, "refuted"),
    TheoremRecord("Concyclic~two-radii", "points on two circles", "concyclicity", _m_concyclic_two_radii, "refuted"),
    TheoremRecord("Napoleon~flipped", "one triangle erected inward", "equilaterality", _m_napoleon_flipped, "refuted"),
    TheoremRecord("Napoleon~perturbed", "one center shifted", "equilaterality", _m_napoleon_perturbed, "refuted"),
    TheoremRecord("Morley~tilted", "base vertex moved off the axis", "equilaterality", _m_morley_tilted, "refuted"),
    TheoremRecord("Morley~steep", "one trisector slope doubled", "equilaterality", _m_morley_steep, "refuted"),
    TheoremRecord("Feuerbach~circumcircle", "circumcircle for nine-point circle", "tangency", _m_feuerbach_circumcircle, "refuted"),
    TheoremRecord("Feuerbach~big-incircle", "incircle radius doubled", "tangency", _m_feuerbach_big_incircle, "refuted"),
    TheoremRecord(
        "Feuerbach~through-vertex", "incentric circle through a vertex", "tangency", _m_feuerbach_through_vertex, "refuted"
    ),
    TheoremRecord(
        "Soddy~three", "wrong Descartes coefficient", "groebner-zero",
        _variant(soddy, two=3), "refuted", _variant(soddy_oracle, two=3),
    ),
    TheoremRecord(
        "Soddy~curvature", "wrong outer curvature", "groebner-zero",
        _variant(soddy, e4=2), "refuted", _variant(soddy_oracle, e4=2),
    ),
    TheoremRecord(
        "Soddy~repeated", "one curvature repeated", "groebner-zero",
        _variant(soddy, third="s"), "refuted", _variant(soddy_oracle, third="s"),
    ),
    TheoremRecord(
        "Lehmus~trisector", "trisector for bisector", "certificate",
        _variant(lehmus, variant="trisector"), "refuted", _variant(lehmus_oracle, variant="trisector"),
    ),
    TheoremRecord(
        "Lehmus~wrong-vertex", "length measured from the wrong vertex", "certificate",
        _variant(lehmus, variant="wrong-vertex"), "refuted", _variant(lehmus_oracle, variant="wrong-vertex"),
    ),
    TheoremRecord(
        "Lehmus~steep", "bisector slope doubled", "certificate",
        _variant(lehmus, variant="steep"), "refuted", _variant(lehmus_oracle, variant="steep"),
    ),
)

_BY_ID.update({rec.id: rec for rec in _MUTANTS})


def mutants() -> tuple[TheoremRecord, ...]:
    """False variants of catalog theorems, at least three per claim kind."""
    return _MUTANTS


def catalog() -> tuple[TheoremRecord, ...]:
    return _CATALOG


def lookup(theorem_id: str) -> TheoremRecord:
    try:
        return _BY_ID[theorem_id]
    except KeyError:
        raise UnknownTheoremError(theorem_id) from None


# ---------------------------------------------------------------------------
# proving


def claim_size(claim: Claim) -> tuple[int, int]:
    """(max total degree, max term count) over the claim's witness numerators."""
    deg = terms = 0
    for w in claim.witnesses:
        if isinstance(w, kernel.Scalar):
            deg = max(deg, w.total_degree())
            terms = max(terms, w.nterms())
    return deg, terms


def run_claim(rec: TheoremRecord, builder: Callable[[Geometry], Claim] | None = None, trace=None) -> ProofResult:
    builder = builder or rec.prover
    t0 = time.perf_counter()
    try:
        claim = builder(Geometry(trace=trace))
    except PlaneProverError as exc:
        return ProofResult(rec.id, "error", time.perf_counter() - t0, error=f"{type(exc).__name__}: {exc}")
    elapsed = time.perf_counter() - t0
    deg, terms = claim_size(claim)
    if claim.kind == "certificate":
        verdict = "certificate" if claim.holds else "refuted"
    else:
        verdict = "proved" if claim.holds else "refuted"
    return ProofResult(rec.id, verdict, elapsed, deg, terms, claim.certificate)


def _prove_worker(theorem_id: str, max_terms: int | None, conn) -> None:
    if max_terms is not None:
        kernel.set_max_terms(max_terms)
    try:
        conn.send(run_claim(lookup(theorem_id)))
    except BaseException as exc:  # report, never hang the parent
        conn.send(ProofResult(theorem_id, "error", 0.0, error=f"{type(exc).__name__}: {exc}"))
    finally:
        conn.close()


def prove(theorem_id: str, timeout: float | None = None, trace: list | None = None) -> ProofResult:
    """Prove one catalog theorem; with ``timeout`` it runs in a forked child."""
    rec = lookup(theorem_id)
    if timeout is None:
        return run_claim(rec, trace=trace)
    ctx = multiprocessing.get_context("fork")
    parent, child = ctx.Pipe(duplex=False)
    proc = ctx.Process(target=_prove_worker, args=(theorem_id, kernel.get_max_terms(), child))
    t0 = time.perf_counter()
    proc.start()
    child.close()
    try:
        if parent.poll(timeout):
            return parent.recv()
        proc.terminate()
        err = ProofTimeoutError(f"no verdict within {timeout:g} s")
        return ProofResult(theorem_id, "error", time.perf_counter() - t0, error=f"{type(err).__name__}: {err}")
    finally:
        proc.join(1)
        if proc.is_alive():
            proc.kill()
        parent.close()


def _prove_plain(theorem_id: str) -> ProofResult:
    return run_claim(lookup(theorem_id))


def prove_all(parallel: bool = False, timeout: float | None = None, ids=None) -> list[ProofResult]:
    """Prove every catalog entry; results follow catalog order."""
    ids = [rec.id for rec in _CATALOG] if ids is None else list(ids)
    if not parallel:
        return [prove(i, timeout=timeout) for i in ids]
    if timeout is not None:
        with ProcessPoolExecutor(mp_context=multiprocessing.get_context("fork")) as ex:
            return list(ex.map(_prove_timed, ids, [timeout] * len(ids)))
    with ProcessPoolExecutor(mp_context=multiprocessing.get_context("fork")) as ex:
        return list(ex.map(_prove_plain, ids))


def _prove_timed(theorem_id: str, timeout: float) -> ProofResult:
    return prove(theorem_id, timeout=timeout)


# ---------------------------------------------------------------------------
# numeric oracle

_RESAMPLE = (DegenerateError, ZeroDivisionError, EvaluationError, ValueError)


def evaluate_numeric(builder: Callable[[Geometry], Claim], seed: int) -> Claim:
    """Run ``builder`` at a random rational instance, resampling degenerate draws.

    Exact arithmetic in Q(i, sqrt3) is used unless an irrational square root
    shows up, in which case the same draw is repeated at 100 digits.
    """
    rng = random.Random(seed)
    for _ in range(MAX_RESAMPLES):
        state = rng.getstate()
        try:
            return builder(Geometry(NumericAlgebra(rng)))
        except numeric.NeedsApproximation:
            rng.setstate(state)
            try:
                with numeric.approx_context():
                    return builder(Geometry(NumericAlgebra(rng, approximate=True)))
            except _RESAMPLE:
                continue
        except _RESAMPLE:
            continue
    raise UnableToSampleError(f"{MAX_RESAMPLES} consecutive degenerate samples")


def numeric_spot_check(theorem_id: str, seed: int) -> bool:
    rec = lookup(theorem_id)
    return evaluate_numeric(rec.oracle_builder(), seed).holds
