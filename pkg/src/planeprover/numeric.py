"""Independent numeric arithmetic used by the oracles.

Nothing here touches the symbolic kernel.  Exact values live in
``Q(i, sqrt3)`` (:class:`QI3`); as soon as an irrational square root of a
rational is needed the caller switches to 100-digit ``mpmath`` complex
numbers, where "zero" means modulus below ``ZERO_THRESHOLD``.
"""

from __future__ import annotations

import contextlib
import math
from fractions import Fraction

import mpmath

DIGITS = 100
ZERO_THRESHOLD = mpmath.mpf("1e-50")


_MP_TYPES = (mpmath.mpc, mpmath.mpf)


class NeedsApproximation(Exception):
    """Raised by exact arithmetic when an irrational square root appears."""


class _QR3:
    """p + q*sqrt3 with rational p, q (helper for QI3 division)."""

    __slots__ = ("p", "q")

    def __init__(self, p, q):
        self.p, self.q = p, q

    def __mul__(self, o):
        return _QR3(self.p * o.p + 3 * self.q * o.q, self.p * o.q + self.q * o.p)

    def __add__(self, o):
        return _QR3(self.p + o.p, self.q + o.q)

    def inv(self):
        n = self.p * self.p - 3 * self.q * self.q
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(sqrt3)")
        return _QR3(self.p / n, -self.q / n)


class QI3:
    """Exact element ``a + b*i + c*sqrt3 + d*i*sqrt3`` with rational a..d."""

    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a=0, b=0, c=0, d=0):
        self.a, self.b, self.c, self.d = Fraction(a), Fraction(b), Fraction(c), Fraction(d)

    @classmethod
    def from_rational(cls, q) -> "QI3":
        return cls(q)

    @staticmethod
    def _wrap(v):
        if isinstance(v, QI3):
            return v
        if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
            return QI3(v)
        return None

    def is_zero(self) -> bool:
        return not (self.a or self.b or self.c or self.d)

    def is_rational(self) -> bool:
        return not (self.b or self.c or self.d)

    def __eq__(self, other):
        o = QI3._wrap(other)
        if o is None:
            return NotImplemented
        return (self.a, self.b, self.c, self.d) == (o.a, o.b, o.c, o.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self):
        return f"QI3({self.a}, {self.b}, {self.c}, {self.d})"

    def __add__(self, other):
        o = QI3._wrap(other)
        if o is None:
            if isinstance(other, _MP_TYPES):
                return self.to_complex() + other
            return NotImplemented
        return QI3(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)

    __radd__ = __add__

    def __neg__(self):
        return QI3(-self.a, -self.b, -self.c, -self.d)

    def __sub__(self, other):
        o = QI3._wrap(other)
        if o is None:
            if isinstance(other, _MP_TYPES):
                return self.to_complex() - other
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = QI3._wrap(other)
        if o is None:
            if isinstance(other, _MP_TYPES):
                return other - self.to_complex()
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = QI3._wrap(other)
        if o is None:
            if isinstance(other, _MP_TYPES):
                return self.to_complex() * other
            return NotImplemented
        # (u1 + v1 i)(u2 + v2 i) with u, v in Q(sqrt3)
        u1, v1 = _QR3(self.a, self.c), _QR3(self.b, self.d)
        u2, v2 = _QR3(o.a, o.c), _QR3(o.b, o.d)
        re = u1 * u2 + _QR3(-1, 0) * v1 * v2
        im = u1 * v2 + v1 * u2
        return QI3(re.p, im.p, re.q, im.q)

    __rmul__ = __mul__

    def inverse(self) -> "QI3":
        u, v = _QR3(self.a, self.c), _QR3(self.b, self.d)
        norm = u * u + v * v
        if norm.p == 0 and norm.q == 0:
            raise ZeroDivisionError("division by zero in Q(i, sqrt3)")
        ninv = norm.inv()
        re = u * ninv
        im = _QR3(-v.p, -v.q) * ninv
        return QI3(re.p, im.p, re.q, im.q)

    def __truediv__(self, other):
        o = QI3._wrap(other)
        if o is None:
            if isinstance(other, _MP_TYPES):
                return self.to_complex() / other
            return NotImplemented
        return self * o.inverse()

    def __rtruediv__(self, other):
        o = QI3._wrap(other)
        if o is None:
            if isinstance(other, _MP_TYPES):
                return other / self.to_complex()
            return NotImplemented
        return o * self.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out, base = QI3(1), self
        while k:
            if k & 1:
                out = out * base
            k >>= 1
            if k:
                base = base * base
        return out

    def to_complex(self) -> mpmath.mpc:
        r3 = mpmath.sqrt(3)
        return mpmath.mpc(to_approx(self.a) + to_approx(self.c) * r3, to_approx(self.b) + to_approx(self.d) * r3)


QI3.ZERO = QI3(0)
QI3.ONE = QI3(1)
QI3.I = QI3(0, 1)
QI3.R3 = QI3(0, 0, 1)


@contextlib.contextmanager
def approx_context():
    with mpmath.workdps(DIGITS):
        yield


def to_approx(q) -> mpmath.mpc:
    if isinstance(q, QI3):
        return q.to_complex()
    if isinstance(q, Fraction):
        return mpmath.mpc(mpmath.mpf(q.numerator) / q.denominator)
    return mpmath.mpc(q)


def approx_i() -> mpmath.mpc:
    return mpmath.mpc(0, 1)


def approx_sqrt(q) -> mpmath.mpc:
    return mpmath.sqrt(to_approx(q))


def rational_sqrt(q: Fraction) -> Fraction | None:
    if q < 0:
        return None
    n, d = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if n * n == q.numerator and d * d == q.denominator:
        return Fraction(n, d)
    return None


def sqrt_value(v, exact: bool):
    """Square root of an evaluated radicand (principal branch)."""
    if exact:
        if isinstance(v, QI3) and v.is_rational():
            r = rational_sqrt(v.a)
            if r is not None:
                return QI3(r)
            if v.a == 3:
                return QI3.R3
            if v.a == -1:
                return QI3.I
        raise NeedsApproximation
    return mpmath.sqrt(v)


def is_zero_value(v) -> bool:
    if isinstance(v, QI3):
        return v.is_zero()
    if isinstance(v, (int, Fraction)):
        return v == 0
    return abs(v) < ZERO_THRESHOLD


def magnitude(v) -> float:
    if isinstance(v, QI3):
        return float(abs(v.to_complex()))
    return float(abs(v))


# ---------------------------------------------------------------------------
# sparse polynomials with numeric coefficients


class NumPoly:
    """Polynomial in a few named variables with QI3 or mpc coefficients.

    Used for lines and conics in the numeric construction route; the only
    division supported is by a constant.
    """

    __slots__ = ("terms",)

    def __init__(self, terms: dict):
        self.terms = terms

    @classmethod
    def const(cls, v) -> "NumPoly":
        if isinstance(v, NumPoly):
            return v
        if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
            v = QI3(v)
        if isinstance(v, QI3) and v.is_zero():
            return cls({})
        return cls({(): v})

    @classmethod
    def var(cls, name: str) -> "NumPoly":
        return cls({((name, 1),): QI3.ONE})

    @staticmethod
    def _wrap(v):
        if isinstance(v, NumPoly):
            return v
        if isinstance(v, (int, Fraction, QI3, mpmath.mpc, mpmath.mpf)) and not isinstance(v, bool):
            return NumPoly.const(v)
        return None

    def constant_value(self):
        if any(k for k in self.terms):
            raise ValueError("not a constant")
        return self.terms.get((), QI3.ZERO)

    def is_constant(self) -> bool:
        return all(k == () for k in self.terms)

    def is_zero(self) -> bool:
        return all(is_zero_value(c) for c in self.terms.values())

    def degree(self, name: str) -> int:
        return max((dict(k).get(name, 0) for k in self.terms), default=0)

    def coeff(self, name: str, k: int) -> "NumPoly":
        out = {}
        for mono, c in self.terms.items():
            e = dict(mono)
            if e.get(name, 0) == k:
                e.pop(name, None)
                out[tuple(sorted(e.items()))] = c
        return NumPoly(out)

    def __add__(self, other):
        o = NumPoly._wrap(other)
        if o is None:
            return NotImplemented
        out = dict(self.terms)
        for k, c in o.terms.items():
            if k in out:
                s = out[k] + c
                if isinstance(s, QI3) and s.is_zero():
                    del out[k]
                else:
                    out[k] = s
            else:
                out[k] = c
        return NumPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return NumPoly({k: -c for k, c in self.terms.items()})

    def __sub__(self, other):
        o = NumPoly._wrap(other)
        if o is None:
            return NotImplemented
        return self + (-o)

    def __rsub__(self, other):
        o = NumPoly._wrap(other)
        if o is None:
            return NotImplemented
        return o + (-self)

    def __mul__(self, other):
        o = NumPoly._wrap(other)
        if o is None:
            return NotImplemented
        out: dict = {}
        for k1, c1 in self.terms.items():
            for k2, c2 in o.terms.items():
                e = dict(k1)
                for n, p in k2:
                    e[n] = e.get(n, 0) + p
                key = tuple(sorted(e.items()))
                out[key] = out[key] + c1 * c2 if key in out else c1 * c2
        return NumPoly({k: c for k, c in out.items() if not (isinstance(c, QI3) and c.is_zero())})

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = NumPoly._wrap(other)
        if o is None:
            return NotImplemented
        if not o.is_constant():
            raise ValueError("numeric forms only divide by constants")
        d = o.constant_value()
        if is_zero_value(d):
            raise ZeroDivisionError("division by a (numerically) zero constant")
        return NumPoly({k: c / d for k, c in self.terms.items()})

    def __rtruediv__(self, other):
        o = NumPoly._wrap(other)
        if o is None:
            return NotImplemented
        return o / self

    def __pow__(self, k: int):
        if k < 0:
            return NumPoly.const(1) / (self ** (-k))
        out = NumPoly.const(1)
        for _ in range(k):
            out = out * self
        return out

    def subs(self, values: dict) -> "NumPoly":
        out = NumPoly({})
        for mono, c in self.terms.items():
            term = NumPoly.const(c) if not isinstance(c, (QI3,)) else NumPoly({(): c})
            rest = []
            for n, e in mono:
                if n in values:
                    term = term * (NumPoly._wrap(values[n]) ** e)
                else:
                    rest.append((n, e))
            if rest:
                term = term * NumPoly({tuple(rest): QI3.ONE})
            out = out + term
        return out

    def __repr__(self):
        return f"NumPoly({self.terms!r})"
