"""Exact rational functions over Q(i, sqrt3) with adjoinable formal square roots.

Every value is a :class:`Scalar`: a canonical fraction ``num/den`` of
multivariate polynomials with rational coefficients.  Quadratic generators
(``i``, ``r3`` and formal square roots) are ordinary indeterminates of the
underlying polynomial ring whose exponents are kept below 2 by rewriting
``u**2 -> square_rewrite(u)``; denominators never contain a generator.

Polynomials are backed by FLINT (``python-flint``).  Each Scalar lives in a
context spanning only the indeterminates it touches, ordered by creation
index under graded reverse lexicographic order, so the leading term of a
denominator is the same whatever context it is viewed in.
"""

from __future__ import annotations

import math
import os
import threading
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Sequence, Union

import flint
from flint.utils.flint_exceptions import DomainError as _FlintDomainError

from . import numeric
from .errors import (
    EvaluationError,
    MalformedScalarError,
    NonlinearSystemError,
    NotDivisibleError,
    NotPolynomialError,
    PlaneProverError,
    ResourceError,
    ScalarDivisionError,
    ShapeError,
    UnsupportedRadicalDivisionError,
)

GEOMETRIC = "geometric"
PARAMETER = "parameter"
GENERATOR = "generator"

DEFAULT_MAX_TERMS = 5_000_000
_max_terms = int(os.environ.get("PLANEPROVER_MAX_TERMS", DEFAULT_MAX_TERMS))


def set_max_terms(n: int) -> None:
    global _max_terms
    if n < 1:
        raise ValueError("max terms must be positive")
    _max_terms = int(n)


def get_max_terms() -> int:
    return _max_terms


# ---------------------------------------------------------------------------
# indeterminate registry


@dataclass(frozen=True)
class Indeterminate:
    name: str
    kind: str
    index: int = field(compare=False, repr=False)

    def __str__(self) -> str:
        return self.name


@dataclass(frozen=True)
class QuadraticGenerator:
    name: str
    index: int = field(compare=False, repr=False)
    square_rewrite: "Scalar" = field(compare=False, repr=False)

    @property
    def scalar(self) -> "Scalar":
        return _var_scalar(self.index)


class _Registry:
    def __init__(self) -> None:
        self.lock = threading.RLock()
        self.names: list[str] = []
        self.kinds: list[str] = []
        self.by_name: dict[str, int] = {}
        # generator index -> rewrite Scalar (polynomial)
        self.rewrites: dict[int, Scalar] = {}
        self.generators: dict[int, QuadraticGenerator] = {}
        self.radicals: dict[tuple[str, str], QuadraticGenerator] = {}
        # generator index -> indices its rewrite needs (transitively)
        self.closure: dict[int, frozenset[int]] = {}
        self.builtin: set[int] = set()

    def add(self, name: str, kind: str) -> int:
        with self.lock:
            if name in self.by_name:
                idx = self.by_name[name]
                if self.kinds[idx] != kind:
                    raise ValueError(f"{name!r} already registered as {self.kinds[idx]}")
                return idx
            idx = len(self.names)
            self.names.append(name)
            self.kinds.append(kind)
            self.by_name[name] = idx
            return idx


_REG = _Registry()


@lru_cache(maxsize=None)
def _ctx(vars_: tuple[int, ...]):
    return flint.fmpq_mpoly_ctx.get(tuple(_REG.names[i] for i in vars_), "degrevlex")


@lru_cache(maxsize=None)
def _gens(vars_: tuple[int, ...]):
    return _ctx(vars_).gens()


@lru_cache(maxsize=None)
def _gen_positions(vars_: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(p for p, i in enumerate(vars_) if _REG.kinds[i] == GENERATOR)


def _closed(indices: Iterable[int]) -> tuple[int, ...]:
    out = set(indices)
    for i in list(out):
        out |= _REG.closure.get(i, frozenset())
    return tuple(sorted(out))


@lru_cache(maxsize=None)
def _union(a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(sorted(set(a) | set(b)))


@lru_cache(maxsize=None)
def _rewrite_in(idx: int, vars_: tuple[int, ...]):
    return _lift(_REG.rewrites[idx].num, _REG.rewrites[idx]._vars, vars_)


def _lift(p, src: tuple[int, ...], dst: tuple[int, ...]):
    if src == dst:
        return p
    return p.project_to_context(_ctx(dst))


def _check_size(p) -> None:
    if len(p) > _max_terms:
        raise ResourceError(f"expression has {len(p)} terms (limit {_max_terms})")


def _coeffs_in(p, pos: int, name: str) -> list:
    """Coefficients of ``p`` viewed as a univariate polynomial in one variable."""
    n = p.degrees()[pos]
    out = []
    q = p
    fact = 1
    for k in range(n + 1):
        c = q.subs({name: 0})
        out.append(c if fact == 1 else c / fact)
        if k < n:
            q = q.derivative(pos)
            fact *= k + 1
    return out


# ---------------------------------------------------------------------------
# canonical form


def _reduce(p, vars_: tuple[int, ...]):
    """Rewrite every generator power >= 2 using its square rule."""
    for pos in reversed(_gen_positions(vars_)):
        if p.degrees()[pos] < 2:
            continue
        idx = vars_[pos]
        coeffs = _coeffs_in(p, pos, _REG.names[idx])
        a = _rewrite_in(idx, vars_)
        u = _gens(vars_)[pos]
        apow = [None, a]
        for _ in range(2, len(coeffs) // 2 + 1):
            apow.append(apow[-1] * a)
        even = coeffs[0]
        odd = coeffs[1] if len(coeffs) > 1 else None
        for k in range(2, len(coeffs)):
            term = coeffs[k] * apow[k // 2]
            if k % 2 == 0:
                even = even + term
            else:
                odd = odd + term
        p = even if odd is None else even + odd * u
        _check_size(p)
    return p


def _rationalize(vars_, num, den):
    gens = _gens(vars_)
    for pos in reversed(_gen_positions(vars_)):
        if den.degrees()[pos] == 0:
            continue
        idx = vars_[pos]
        name = _REG.names[idx]
        u = gens[pos]
        d1 = den.derivative(pos)
        d0 = den.subs({name: 0})
        if idx in _REG.builtin:
            conj = d0 - d1 * u
        elif d0.is_zero():
            conj = u
        else:
            raise UnsupportedRadicalDivisionError(
                f"cannot divide by an expression that is not a monomial in {name}"
            )
        num = _reduce(num * conj, vars_)
        den = _reduce(den * conj, vars_)
    return num, den


def _canon(vars_: tuple[int, ...], num, den) -> "Scalar":
    if den.is_zero():
        raise MalformedScalarError("zero denominator")
    if num.is_zero():
        return Scalar.const(0)
    gpos = _gen_positions(vars_)
    if gpos:
        num = _reduce(num, vars_)
        den = _reduce(den, vars_)
        if den.is_zero():
            raise MalformedScalarError("denominator vanishes after generator rewriting")
        if num.is_zero():
            return Scalar.const(0)
        degs = den.degrees()
        if any(degs[p] for p in gpos):
            g = num.gcd(den)
            if not g.is_one():
                num, den = num / g, den / g
            num, den = _rationalize(vars_, num, den)
            if num.is_zero():
                return Scalar.const(0)
    if not den.is_constant():
        g = num.gcd(den)
        if not g.is_one():
            num, den = num / g, den / g
    lc = den.leading_coefficient()
    if lc != 1:
        num, den = num / lc, den / lc
    return Scalar(vars_, num, den)


# ---------------------------------------------------------------------------
# Scalar

Number = Union[int, Fraction]


class Scalar:
    """Canonical rational function; immutable."""

    __slots__ = ("_vars", "num", "den")

    def __init__(self, vars_: tuple[int, ...], num, den):
        # trusted constructor: callers pass canonical data
        self._vars = vars_
        self.num = num
        self.den = den

    # construction -----------------------------------------------------
    @classmethod
    def const(cls, q) -> "Scalar":
        if isinstance(q, Scalar):
            return q
        if isinstance(q, float):
            raise TypeError("floats are not exact; use Fraction")
        q = Fraction(q)
        ctx = _ctx(())
        return cls((), ctx.constant(flint.fmpq(q.numerator, q.denominator)), ctx.constant(1))

    # inspection -------------------------------------------------------
    @property
    def variables(self) -> tuple[str, ...]:
        """Names of indeterminates actually occurring."""
        out = []
        nd, dd = self.num.degrees(), self.den.degrees()
        for p, i in enumerate(self._vars):
            if nd[p] > 0 or dd[p] > 0:
                out.append(_REG.names[i])
        return tuple(out)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_polynomial(self) -> bool:
        return self.den.is_one()

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def to_fraction(self) -> Fraction:
        if not self.is_constant():
            raise ValueError("not a rational constant")
        c = self.num.leading_coefficient() if not self.num.is_zero() else flint.fmpq(0)
        d = self.den.leading_coefficient()
        c = c / d
        return Fraction(int(c.p), int(c.q))

    def nterms(self) -> int:
        return len(self.num)

    def total_degree(self) -> int:
        return -1 if self.num.is_zero() else int(self.num.total_degree())

    def numer(self) -> "Scalar":
        return Scalar(self._vars, self.num, _ctx(self._vars).constant(1))

    def denom(self) -> "Scalar":
        return Scalar(self._vars, self.den, _ctx(self._vars).constant(1))

    def __bool__(self) -> bool:
        return not self.num.is_zero()

    def __str__(self) -> str:
        return to_text(self)

    def __repr__(self) -> str:
        return f"Scalar({to_text(self)})"

    def __eq__(self, other) -> bool:
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        vars_, an, ad, bn, bd = _align(self, other)
        return an == bn and ad == bd

    def __ne__(self, other) -> bool:
        r = self.__eq__(other)
        return r if r is NotImplemented else not r

    def __hash__(self) -> int:
        return hash((str(self.num), str(self.den)))

    # arithmetic -------------------------------------------------------
    def __add__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return _add(self, other)

    __radd__ = __add__

    def __neg__(self):
        return Scalar(self._vars, -self.num, self.den)

    def __pos__(self):
        return self

    def __sub__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return _add(self, -other)

    def __rsub__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return _add(other, -self)

    def __mul__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return _mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return _mul(self, _inverse(other))

    def __rtruediv__(self, other):
        try:
            other = _coerce(other)
        except TypeError:
            return NotImplemented
        return _mul(other, _inverse(self))

    def __pow__(self, k: int):
        if not isinstance(k, int):
            return NotImplemented
        if k < 0:
            return _inverse(self) ** (-k)
        if k == 0:
            return Scalar.const(1)
        if not _gen_positions(self._vars):
            num = self.num**k
            _check_size(num)
            return Scalar(self._vars, num, self.den**k)
        result, base = None, self
        while k:
            if k & 1:
                result = base if result is None else _mul(result, base)
            k >>= 1
            if k:
                base = _mul(base, base)
        return result


def _coerce(v) -> Scalar:
    if isinstance(v, Scalar):
        return v
    if isinstance(v, (int, Fraction)) and not isinstance(v, bool):
        return Scalar.const(v)
    if isinstance(v, (Indeterminate, QuadraticGenerator)):
        return _var_scalar(v.index)
    raise TypeError(f"cannot coerce {type(v).__name__} to Scalar")


def _align(a: Scalar, b: Scalar):
    if a._vars == b._vars:
        return a._vars, a.num, a.den, b.num, b.den
    u = _union(a._vars, b._vars)
    return (
        u,
        _lift(a.num, a._vars, u),
        _lift(a.den, a._vars, u),
        _lift(b.num, b._vars, u),
        _lift(b.den, b._vars, u),
    )


def _add(a: Scalar, b: Scalar) -> Scalar:
    if b.num.is_zero():
        return a
    if a.num.is_zero():
        return b
    vars_, an, ad, bn, bd = _align(a, b)
    if ad == bd:
        num = an + bn
        _check_size(num)
        if num.is_zero():
            return Scalar.const(0)
        if ad.is_one() and not _gen_positions(vars_):
            return Scalar(vars_, num, ad)
        return _canon(vars_, num, ad)
    if _gen_positions(vars_):
        num = an * bd + bn * ad
        _check_size(num)
        return _canon(vars_, num, ad * bd)
    g = ad.gcd(bd)
    if g.is_one():
        num = an * bd + bn * ad
        _check_size(num)
        if num.is_zero():
            return Scalar.const(0)
        return Scalar(vars_, num, ad * bd)
    ad1, bd1 = ad / g, bd / g
    num = an * bd1 + bn * ad1
    _check_size(num)
    if num.is_zero():
        return Scalar.const(0)
    den = ad1 * bd
    g2 = num.gcd(g)
    if not g2.is_one():
        num, den = num / g2, den / g2
    lc = den.leading_coefficient()
    if lc != 1:
        num, den = num / lc, den / lc
    return Scalar(vars_, num, den)


def _mul(a: Scalar, b: Scalar) -> Scalar:
    vars_, an, ad, bn, bd = _align(a, b)
    if an.is_zero() or bn.is_zero():
        return Scalar.const(0)
    if _gen_positions(vars_):
        num = an * bn
        _check_size(num)
        return _canon(vars_, num, ad * bd)
    g1 = an.gcd(bd) if not bd.is_one() else None
    g2 = bn.gcd(ad) if not ad.is_one() else None
    if g1 is not None and not g1.is_one():
        an, bd = an / g1, bd / g1
    if g2 is not None and not g2.is_one():
        bn, ad = bn / g2, ad / g2
    num = an * bn
    _check_size(num)
    den = ad * bd
    lc = den.leading_coefficient()
    if lc != 1:
        num, den = num / lc, den / lc
    return Scalar(vars_, num, den)


def _inverse(a: Scalar) -> Scalar:
    if a.num.is_zero():
        raise ScalarDivisionError("division by the zero Scalar")
    if _gen_positions(a._vars):
        return _canon(a._vars, a.den, a.num)
    num, den = a.den, a.num
    lc = den.leading_coefficient()
    if lc != 1:
        num, den = num / lc, den / lc
    return Scalar(a._vars, num, den)


# ---------------------------------------------------------------------------
# public construction helpers


@lru_cache(maxsize=None)
def _var_scalar(idx: int) -> Scalar:
    vars_ = _closed([idx])
    pos = vars_.index(idx)
    ctx = _ctx(vars_)
    return Scalar(vars_, _gens(vars_)[pos], ctx.constant(1))


def indeterminate(name: str, kind: str = PARAMETER) -> Indeterminate:
    """Return the indeterminate called ``name``, creating it on first use."""
    if kind == GENERATOR:
        raise ValueError("use adjoin_sqrt to create generators")
    return Indeterminate(name, kind, _REG.add(name, kind))


def var(name: str) -> Scalar:
    """Parameter indeterminate ``name`` as a Scalar."""
    if name in _REG.by_name:
        return _var_scalar(_REG.by_name[name])
    return _var_scalar(indeterminate(name).index)


def const(q) -> Scalar:
    return Scalar.const(q)


def _builtin_generator(name: str, square: int) -> QuadraticGenerator:
    idx = _REG.add(name, GENERATOR)
    _REG.builtin.add(idx)
    _REG.closure[idx] = frozenset()
    rw = Scalar.const(square)
    _REG.rewrites[idx] = rw
    gen = QuadraticGenerator(name, idx, rw)
    _REG.generators[idx] = gen
    return gen


_X_IND = Indeterminate("x", GEOMETRIC, _REG.add("x", GEOMETRIC))
_Y_IND = Indeterminate("y", GEOMETRIC, _REG.add("y", GEOMETRIC))
GEN_I = _builtin_generator("i", -1)
GEN_R3 = _builtin_generator("r3", 3)

X = _var_scalar(_X_IND.index)
Y = _var_scalar(_Y_IND.index)
I = _var_scalar(GEN_I.index)
R3 = _var_scalar(GEN_R3.index)


def _index_of(v) -> int:
    if isinstance(v, (Indeterminate, QuadraticGenerator)):
        return v.index
    if isinstance(v, str):
        try:
            return _REG.by_name[v]
        except KeyError:
            raise KeyError(f"unknown indeterminate {v!r}") from None
    if isinstance(v, Scalar):
        if v.den.is_one() and len(v.num) == 1 and v.num.total_degree() == 1:
            exps = v.num.monoms()[0]
            if v.num.leading_coefficient() == 1:
                return v._vars[exps.index(1)]
        raise ValueError(f"{v} is not a single indeterminate")
    raise TypeError(f"cannot interpret {v!r} as an indeterminate")


def lookup(name: str) -> Indeterminate | QuadraticGenerator:
    idx = _REG.by_name[name]
    if _REG.kinds[idx] == GENERATOR:
        return _REG.generators[idx]
    return Indeterminate(name, _REG.kinds[idx], idx)


# ---------------------------------------------------------------------------
# operations


def normalize(s: Scalar) -> Scalar:
    """Canonical representative (already maintained; recomputed from scratch)."""
    return _canon(s._vars, s.num, s.den)


def arith(a, b, op: str) -> Scalar:
    a, b = _coerce(a), _coerce(b)
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    if op == "div":
        return a / b
    raise ValueError(f"unknown operation {op!r}")


def is_zero(s) -> bool:
    return _coerce(s).num.is_zero()


def numer(s) -> Scalar:
    return _coerce(s).numer()


def denom(s) -> Scalar:
    return _coerce(s).denom()


def to_text(s: Scalar) -> str:
    """Fully expanded ``numerator/denominator`` in the global term order."""
    n = str(s.num)
    if s.den.is_one():
        return n
    d = str(s.den)
    if len(s.num) > 1:
        n = f"({n})"
    if len(s.den) > 1:
        d = f"({d})"
    return f"{n}/{d}"


def coeff(p, v, k: int) -> Scalar:
    """Coefficient of ``v**k`` in ``p`` viewed as a polynomial in ``v``."""
    p = _coerce(p)
    idx = _index_of(v)
    if idx not in p._vars:
        return p if k == 0 else Scalar.const(0)
    pos = p._vars.index(idx)
    if p.den.degrees()[pos]:
        raise NotPolynomialError(f"denominator of {p} involves {_REG.names[idx]}")
    if k < 0:
        return Scalar.const(0)
    n = p.num.degrees()[pos]
    if k > n:
        return Scalar.const(0)
    name = _REG.names[idx]
    q = p.num
    for _ in range(k):
        q = q.derivative(pos)
    c = q.subs({name: 0})
    if k > 1:
        c = c / math.factorial(k)
    return _canon(p._vars, c, p.den)


def degree_in(p, v) -> int:
    p = _coerce(p)
    idx = _index_of(v)
    if idx not in p._vars or p.num.is_zero():
        return 0 if not p.num.is_zero() else -1
    return p.num.degrees()[p._vars.index(idx)]


def substitute(s, bindings: Mapping) -> Scalar:
    """Simultaneous substitution of indeterminates by Scalars."""
    s = _coerce(s)
    items = [(_index_of(k), _coerce(v)) for k, v in bindings.items()]
    items = [(i, v) for i, v in items if i in s._vars]
    if not items:
        return s
    bound = {i for i, _ in items}
    if any(bound & set(_mentioned(v)) for _, v in items):
        # keep the substitution simultaneous: rename the bound indeterminates first
        temps = {i: var(f"__subs_{_REG.names[i]}") for i, _ in items}
        s = substitute(s, {_REG.names[i]: t for i, t in temps.items()})
        return substitute(s, {temps[i]: v for i, v in items})
    vars_ = s._vars
    for _, v in items:
        vars_ = _union(vars_, v._vars)
    num = _lift(s.num, s._vars, vars_)
    den = _lift(s.den, s._vars, vars_)
    if all(v.den.is_one() for _, v in items):
        images = list(_gens(vars_))
        for i, v in items:
            images[vars_.index(i)] = _lift(v.num, v._vars, vars_)
        num = num.compose(*images)
        den = den.compose(*images)
        _check_size(num)
        return _canon(vars_, num, den)
    for i, v in items:
        pos = vars_.index(i)
        name = _REG.names[i]
        vn = _lift(v.num, v._vars, vars_)
        vd = _lift(v.den, v._vars, vars_)
        pn, en = _homogeneous_subs(num, pos, name, vn, vd)
        pd, ed = _homogeneous_subs(den, pos, name, vn, vd)
        # num/den -> (pn / vd^en) / (pd / vd^ed)
        if ed > en:
            pn = pn * vd ** (ed - en)
        elif en > ed:
            pd = pd * vd ** (en - ed)
        _check_size(pn)
        num, den = pn, pd
        if den.is_zero():
            raise ScalarDivisionError("substitution makes the denominator vanish")
    return _canon(vars_, num, den)


def _homogeneous_subs(p, pos, name, vn, vd):
    coeffs = _coeffs_in(p, pos, name)
    n = len(coeffs) - 1
    if n == 0:
        return p, 0
    dpow = [None, vd]
    for _ in range(2, n + 1):
        dpow.append(dpow[-1] * vd)
    acc = coeffs[n]
    for k in range(n - 1, -1, -1):
        acc = acc * vn + coeffs[k] * dpow[n - k]
    return acc, n


def _mentioned(s: Scalar) -> list[int]:
    nd, dd = s.num.degrees(), s.den.degrees()
    return [i for p, i in enumerate(s._vars) if nd[p] > 0 or dd[p] > 0]


def diff(s, v) -> Scalar:
    """Formal derivative with respect to a parameter."""
    s = _coerce(s)
    idx = _index_of(v)
    if idx not in s._vars:
        return Scalar.const(0)
    for g in _gen_positions(s._vars):
        gi = s._vars[g]
        if gi not in _REG.builtin and idx in _REG.closure.get(gi, ()):
            if s.num.degrees()[g] or s.den.degrees()[g]:
                raise NotPolynomialError("cannot differentiate through a formal radical")
    pos = s._vars.index(idx)
    num = s.num.derivative(pos) * s.den - s.num * s.den.derivative(pos)
    return _canon(s._vars, num, s.den * s.den)


@dataclass(frozen=True)
class LinearSolution:
    status: str  # "unique" | "underdetermined" | "inconsistent"
    bindings: dict = field(default_factory=dict)

    def __getitem__(self, v) -> Scalar:
        return self.bindings[v if isinstance(v, (Indeterminate, QuadraticGenerator)) else lookup(_REG.names[_index_of(v)])]


def _as_indeterminate(v) -> Indeterminate:
    idx = _index_of(v)
    if _REG.kinds[idx] == GENERATOR:
        raise ValueError("cannot solve for a quadratic generator")
    return Indeterminate(_REG.names[idx], _REG.kinds[idx], idx)


def linear_rows(eqs: Sequence, unknowns: Sequence) -> list[list[Scalar]]:
    """Coefficient rows ``[a_1, ..., a_n, rhs]`` of the numerators of ``eqs``."""
    unk = [_as_indeterminate(u) for u in unknowns]
    zero = {u: 0 for u in unk}
    rows = []
    for e in eqs:
        n = _coerce(e).numer()
        coeffs = [coeff(n, u, 1) for u in unk]
        c0 = substitute(n, zero)
        resid = n - c0
        for a, u in zip(coeffs, unk):
            if not a.is_zero():
                resid = resid - a * _var_scalar(u.index)
        if not resid.is_zero():
            raise NonlinearSystemError(f"equation {n} is not linear in the unknowns")
        rows.append(coeffs + [-c0])
    return rows


def solve_linear(eqs: Sequence, unknowns: Sequence) -> LinearSolution:
    """Gauss-Jordan elimination over the rational function field.

    A pivot is usable iff it is not identically zero (generic semantics).
    """
    unk = [_as_indeterminate(u) for u in unknowns]
    rows = linear_rows(eqs, unk)
    n = len(unk)
    pivots: list[int] = []
    r = 0
    for col in range(n):
        best = None
        for i in range(r, len(rows)):
            a = rows[i][col]
            if not a.is_zero() and (best is None or len(a.num) + len(a.den) < best[1]):
                best = (i, len(a.num) + len(a.den))
        if best is None:
            continue
        i = best[0]
        rows[r], rows[i] = rows[i], rows[r]
        piv = rows[r][col]
        rows[r] = [c / piv for c in rows[r]]
        for j in range(len(rows)):
            if j != r and not rows[j][col].is_zero():
                f = rows[j][col]
                rows[j] = [a - f * b for a, b in zip(rows[j], rows[r])]
        pivots.append(col)
        r += 1
    for row in rows[r:]:
        if not row[n].is_zero():
            return LinearSolution("inconsistent")
    bindings = {}
    for k, col in enumerate(pivots):
        val = rows[k][n]
        for j in range(n):
            if j not in pivots and not rows[k][j].is_zero():
                val = val - rows[k][j] * _var_scalar(unk[j].index)
        bindings[unk[col]] = val
    status = "unique" if len(pivots) == n else "underdetermined"
    return LinearSolution(status, bindings)


def determinant(M: Sequence[Sequence]) -> Scalar:
    """Fraction-free (Bareiss) determinant."""
    n = len(M)
    if any(len(row) != n for row in M):
        raise ShapeError("determinant of a non-square matrix")
    if n == 0:
        return Scalar.const(1)
    A = [[_coerce(v) for v in row] for row in M]
    sign = 1
    prev = Scalar.const(1)
    for k in range(n - 1):
        if A[k][k].is_zero():
            for i in range(k + 1, n):
                if not A[i][k].is_zero():
                    A[k], A[i] = A[i], A[k]
                    sign = -sign
                    break
            else:
                return Scalar.const(0)
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                A[i][j] = (A[i][j] * A[k][k] - A[i][k] * A[k][j]) / prev
        prev = A[k][k]
    d = A[n - 1][n - 1]
    return -d if sign < 0 else d


def adjoin_sqrt(radicand) -> QuadraticGenerator:
    """Formal square root of a nonzero polynomial radicand.

    Repeated calls with the same canonical radicand return the same generator.
    For a rational radicand use :func:`sqrt`, which rescales by the denominator.
    """
    r = _coerce(radicand)
    if r.is_zero():
        raise ValueError("square root of zero")
    if not r.is_polynomial():
        raise NotPolynomialError("adjoin_sqrt needs a polynomial radicand; use sqrt()")
    key = (str(r.num), str(r.den))
    with _REG.lock:
        gen = _REG.radicals.get(key)
        if gen is not None:
            return gen
        name = f"sqrt{len(_REG.radicals) + 1}"
        while name in _REG.by_name:
            name += "_"
        idx = _REG.add(name, GENERATOR)
        _REG.rewrites[idx] = r
        _REG.closure[idx] = frozenset(_closed(_mentioned(r)))
        gen = QuadraticGenerator(name, idx, r)
        _REG.generators[idx] = gen
        _REG.radicals[key] = gen
        return gen


def sqrt(radicand) -> Scalar:
    """A square root of ``radicand`` as a Scalar (formal unless a rational square)."""
    r = _coerce(radicand)
    if r.is_zero():
        return r
    if r.is_constant():
        q = r.to_fraction()
        if q > 0:
            rn, rd = math.isqrt(q.numerator), math.isqrt(q.denominator)
            if rn * rn == q.numerator and rd * rd == q.denominator:
                return Scalar.const(Fraction(rn, rd))
        if q == 3:
            return R3
        if q == -1:
            return I
    if r.is_polynomial():
        return adjoin_sqrt(r).scalar
    # sqrt(p/q) = sqrt(p*q)/q
    return adjoin_sqrt(r.numer() * r.denom()).scalar / r.denom()


def poly_gcd(p, q) -> Scalar:
    p, q = _coerce(p), _coerce(q)
    if not (p.is_polynomial() and q.is_polynomial()):
        raise NotPolynomialError("gcd of non-polynomials")
    vars_, pn, _, qn, _ = _align(p, q)
    return _canon(vars_, pn.gcd(qn), _ctx(vars_).constant(1))


def divide_exact(p, q) -> Scalar:
    p, q = _coerce(p), _coerce(q)
    if not (p.is_polynomial() and q.is_polynomial()):
        raise NotPolynomialError("divide_exact needs polynomial arguments")
    if q.is_zero():
        raise ScalarDivisionError("division by the zero polynomial")
    vars_, pn, _, qn, _ = _align(p, q)
    try:
        quo = pn / qn
    except _FlintDomainError:
        raise NotDivisibleError(f"{q} does not divide {p}") from None
    return Scalar(vars_, quo, _ctx(vars_).constant(1))


def factor_content(p) -> tuple[Fraction, Scalar]:
    """Split a polynomial into rational content and primitive part."""
    p = _coerce(p)
    if p.is_zero():
        return Fraction(0), p
    c = p.num.leading_coefficient()
    return Fraction(int(c.p), int(c.q)), Scalar(p._vars, p.num / c, p.den)


def poly_terms(p) -> dict[tuple[tuple[str, int], ...], Fraction]:
    """Sparse ``{((name, exp), ...): coefficient}`` view of a polynomial Scalar."""
    p = _coerce(p)
    if not p.is_polynomial():
        raise NotPolynomialError("poly_terms of a non-polynomial")
    names = [_REG.names[i] for i in p._vars]
    out = {}
    for mono, c in p.num.to_dict().items():
        key = tuple((names[j], e) for j, e in enumerate(mono) if e)
        out[key] = Fraction(int(c.p), int(c.q))
    return out


def from_terms(terms: Mapping[tuple[tuple[str, int], ...], Number]) -> Scalar:
    """Inverse of :func:`poly_terms` (names must already be registered)."""
    acc = Scalar.const(0)
    idx = sorted({_REG.by_name[n] for mono in terms for n, _ in mono})
    vars_ = _closed(idx)
    ctx = _ctx(vars_)
    pos = {_REG.names[i]: k for k, i in enumerate(vars_)}
    d = {}
    for mono, c in terms.items():
        if c == 0:
            continue
        e = [0] * len(vars_)
        for n, k in mono:
            e[pos[n]] += k
        c = Fraction(c)
        key = tuple(e)
        d[key] = d.get(key, 0) + c
    fd = {k: flint.fmpq(v.numerator, v.denominator) for k, v in d.items() if v}
    acc = _canon(vars_, ctx.from_dict(fd), ctx.constant(1))
    return acc


def generators_in(s) -> list[str]:
    s = _coerce(s)
    return [n for n in s.variables if _REG.kinds[_REG.by_name[n]] == GENERATOR]


def max_generator_exponent(s) -> int:
    s = _coerce(s)
    nd, dd = s.num.degrees(), s.den.degrees()
    return max([0] + [max(nd[p], dd[p]) for p in _gen_positions(s._vars)])


# ---------------------------------------------------------------------------
# numeric oracle


def eval_at(s, point: Mapping, *, approximate: bool = False):
    """Value of ``s`` at a rational point, computed without the kernel's arithmetic.

    Returns an exact :class:`numeric.QI3` when every formal radical evaluates
    to a rational square (or none occurs), otherwise a 100-digit
    ``mpmath.mpc``.  Raises :class:`EvaluationError` at a pole.
    """
    s = _coerce(s)
    values: dict[int, object] = {}
    for k, v in point.items():
        values[_index_of(k)] = Fraction(v)
    if not approximate:
        try:
            return _eval(s, values, exact=True)
        except numeric.NeedsApproximation:
            pass
    with numeric.approx_context():
        return _eval(s, values, exact=False)


def _eval(s: Scalar, values: dict[int, object], exact: bool):
    env = {}
    for p, idx in enumerate(s._vars):
        if not (s.num.degrees()[p] or s.den.degrees()[p]):
            continue
        env[p] = _eval_var(idx, values, exact)
    num = _eval_poly(s.num, env, exact)
    den = _eval_poly(s.den, env, exact)
    if numeric.is_zero_value(den):
        raise EvaluationError("pole at evaluation point")
    return num / den


def _eval_var(idx: int, values: dict, exact: bool):
    if idx in values:
        v = values[idx]
        return numeric.QI3.from_rational(v) if exact else numeric.to_approx(v)
    if idx == GEN_I.index:
        return numeric.QI3.I if exact else numeric.approx_i()
    if idx == GEN_R3.index:
        return numeric.QI3.R3 if exact else numeric.approx_sqrt(3)
    if _REG.kinds[idx] == GENERATOR:
        rad = _eval(_REG.rewrites[idx], values, exact)
        return numeric.sqrt_value(rad, exact)
    raise EvaluationError(f"no value given for {_REG.names[idx]}")


def _eval_poly(p, env: dict, exact: bool):
    zero = numeric.QI3.ZERO if exact else numeric.to_approx(0)
    acc = zero
    powers: dict[tuple[int, int], object] = {}
    for mono, c in zip(p.monoms(), p.coeffs()):
        term = numeric.QI3.from_rational(Fraction(int(c.p), int(c.q))) if exact else numeric.to_approx(
            Fraction(int(c.p), int(c.q))
        )
        for pos, e in enumerate(map(int, mono)):
            if not e:
                continue
            key = (pos, e)
            pw = powers.get(key)
            if pw is None:
                pw = env[pos] ** e
                powers[key] = pw
            term = term * pw
        acc = acc + term
    return acc


__all__ = [
    "Indeterminate",
    "QuadraticGenerator",
    "Scalar",
    "LinearSolution",
    "X",
    "Y",
    "I",
    "R3",
    "GEN_I",
    "GEN_R3",
    "var",
    "const",
    "indeterminate",
    "lookup",
    "normalize",
    "arith",
    "substitute",
    "coeff",
    "degree_in",
    "solve_linear",
    "linear_rows",
    "determinant",
    "adjoin_sqrt",
    "sqrt",
    "divide_exact",
    "poly_gcd",
    "diff",
    "eval_at",
    "is_zero",
    "numer",
    "denom",
    "to_text",
    "set_max_terms",
    "get_max_terms",
    "PlaneProverError",
]
