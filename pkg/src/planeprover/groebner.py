"""Buchberger's algorithm and normal forms under graded reverse lex order.

Polynomials are handled internally as ``{exponent tuple: coefficient}`` dicts
over the order's variable list.  Inside :func:`buchberger` coefficients are
integers reduced fraction-free with content removal after every step; the
returned basis is monic with rational coefficients.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce as _fold
from math import gcd, lcm
from typing import Iterable, Sequence

from . import kernel
from .errors import NotPolynomialError, ResourceError, ShapeError

Mono = tuple[int, ...]
DictPoly = dict  # Mono -> int | Fraction


@dataclass(frozen=True)
class MonomialOrder:
    variables: tuple[str, ...]
    kind: str = "grevlex"

    def __post_init__(self):
        if self.kind != "grevlex":
            raise ValueError(f"unsupported monomial order {self.kind!r}")
        object.__setattr__(self, "variables", tuple(str(v) for v in self.variables))

    def key(self, e: Mono):
        return grevlex_key(e)


def grevlex_key(e: Mono):
    # bigger key == bigger monomial
    return (sum(e), tuple(-k for k in reversed(e)))


def compare(a: Mono, b: Mono, order: MonomialOrder | None = None) -> int:
    """-1, 0 or 1 as ``a`` is smaller than, equal to or bigger than ``b``."""
    if len(a) != len(b):
        raise ShapeError("exponent vectors of different length")
    if order is not None and len(a) != len(order.variables):
        raise ShapeError("exponent vector does not match the order's variables")
    ka, kb = grevlex_key(a), grevlex_key(b)
    return (ka > kb) - (ka < kb)


# ---------------------------------------------------------------------------
# dict polynomial helpers


def leading(p: DictPoly) -> Mono:
    return max(p, key=grevlex_key)


def _divides(a: Mono, b: Mono) -> bool:
    return all(x <= y for x, y in zip(a, b))


def _mono_lcm(a: Mono, b: Mono) -> Mono:
    return tuple(max(x, y) for x, y in zip(a, b))


def _mono_div(a: Mono, b: Mono) -> Mono:
    return tuple(x - y for x, y in zip(a, b))


def _coprime(a: Mono, b: Mono) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _primitive(p: DictPoly) -> DictPoly:
    if not p:
        return p
    g = _fold(gcd, p.values())
    lc = p[leading(p)]
    if lc < 0:
        g = -g
    if g == 1:
        return p
    return {m: c // g for m, c in p.items()}


def _integral(p: DictPoly) -> DictPoly:
    """Scale rational coefficients to a primitive integer polynomial."""
    if not p:
        return {}
    d = _fold(lcm, (Fraction(c).denominator for c in p.values()))
    return _primitive({m: int(Fraction(c) * d) for m, c in p.items()})


def _monic(p: DictPoly) -> DictPoly:
    if not p:
        return p
    lc = Fraction(p[leading(p)])
    return {m: Fraction(c) / lc for m, c in p.items()}


def _sub_scaled(p: DictPoly, a, q: DictPoly, b, shift: Mono) -> DictPoly:
    """a*p - b*shift*q."""
    out = {m: a * c for m, c in p.items()} if a != 1 else dict(p)
    for m, c in q.items():
        mm = tuple(x + y for x, y in zip(m, shift))
        v = out.get(mm, 0) - b * c
        if v:
            out[mm] = v
        else:
            out.pop(mm, None)
    return out


def _reduce_ff(p: DictPoly, G: Sequence[DictPoly], lms: Sequence[Mono]) -> DictPoly:
    """Fraction-free full reduction; result is a nonzero scalar multiple of the remainder."""
    p = dict(p)
    rem: DictPoly = {}
    while p:
        m = leading(p)
        c = p[m]
        for g, lg in zip(G, lms):
            if _divides(lg, m):
                gc = g[lg]
                k = gcd(c, gc)
                a, b = gc // k, c // k
                p = _sub_scaled(p, a, g, b, _mono_div(m, lg))
                if a != 1:
                    rem = {mm: a * cc for mm, cc in rem.items()}
                if p or rem:
                    h = _fold(gcd, list(p.values()) + list(rem.values()))
                    if h != 1:
                        p = {mm: cc // h for mm, cc in p.items()}
                        rem = {mm: cc // h for mm, cc in rem.items()}
                break
        else:
            rem[m] = c
            del p[m]
    return _primitive(rem)


def _reduce_exact(p: DictPoly, G: Sequence[DictPoly], lms: Sequence[Mono]) -> DictPoly:
    """Division remainder over the rationals (basis assumed monic)."""
    p = {m: Fraction(c) for m, c in p.items()}
    rem: DictPoly = {}
    while p:
        m = leading(p)
        c = p[m]
        for g, lg in zip(G, lms):
            if _divides(lg, m):
                p = _sub_scaled(p, 1, g, c / g[lg], _mono_div(m, lg))
                break
        else:
            rem[m] = c
            del p[m]
    return rem


def _spoly_dict(f: DictPoly, g: DictPoly) -> DictPoly:
    lf, lg = leading(f), leading(g)
    L = _mono_lcm(lf, lg)
    cf, cg = Fraction(f[lf]), Fraction(g[lg])
    out: DictPoly = {}
    for m, c in f.items():
        mm = tuple(x + y for x, y in zip(m, _mono_div(L, lf)))
        out[mm] = out.get(mm, 0) + Fraction(c) / cf
    for m, c in g.items():
        mm = tuple(x + y for x, y in zip(m, _mono_div(L, lg)))
        out[mm] = out.get(mm, 0) - Fraction(c) / cg
    return {m: c for m, c in out.items() if c}


# ---------------------------------------------------------------------------
# conversion to and from kernel Scalars


def to_dict(p, order: MonomialOrder) -> DictPoly:
    s = kernel._coerce(p)
    if not s.is_polynomial():
        raise NotPolynomialError("Groebner computations need polynomials")
    pos = {n: k for k, n in enumerate(order.variables)}
    out: DictPoly = {}
    for mono, c in kernel.poly_terms(s).items():
        e = [0] * len(pos)
        for n, k in mono:
            if n not in pos:
                raise NotPolynomialError(f"{n} is not one of the order's variables")
            e[pos[n]] = k
        out[tuple(e)] = c
    return out


def from_dict(p: DictPoly, order: MonomialOrder) -> kernel.Scalar:
    for v in order.variables:
        kernel.var(v) if v not in kernel._REG.by_name else None
    terms = {
        tuple((order.variables[j], k) for j, k in enumerate(m) if k): Fraction(c) for m, c in p.items()
    }
    return kernel.from_terms(terms)


# ---------------------------------------------------------------------------
# public API


@dataclass(frozen=True)
class PolyIdeal:
    generators: tuple
    order: MonomialOrder

    def __post_init__(self):
        # zero generators contribute nothing to the ideal
        gens = tuple(g for g in (kernel._coerce(g) for g in self.generators) if not g.is_zero())
        object.__setattr__(self, "generators", gens)


@dataclass(frozen=True)
class GroebnerBasis:
    basis: tuple  # kernel Scalars, monic, sorted by leading monomial
    order: MonomialOrder
    polys: tuple = field(repr=False, compare=False, default=())
    stats: dict = field(repr=False, compare=False, default_factory=dict)

    def leading_monomials(self) -> list[Mono]:
        return [leading(p) for p in self.polys]


def s_polynomial(f, g, order: MonomialOrder) -> kernel.Scalar:
    fd, gd = to_dict(f, order), to_dict(g, order)
    if not fd or not gd:
        raise ValueError("S-polynomial of a zero polynomial")
    return from_dict(_spoly_dict(fd, gd), order)


def _update(polys, lms, active: list[int], pairs: dict, h: int):
    """Gebauer-Moeller installation of a new basis element."""
    lh = lms[h]
    C = [g for g in active]
    D: list[int] = []
    lc_h = {g: _mono_lcm(lh, lms[g]) for g in C}
    while C:
        g1 = C.pop(0)
        L1 = lc_h[g1]
        if _coprime(lh, lms[g1]) or not any(_divides(lc_h[g2], L1) for g2 in C + D):
            D.append(g1)
    E = {}
    for g in D:
        if not _coprime(lh, lms[g]):
            E[(g, h)] = lc_h[g]
    kept = {}
    for (a, b), L in pairs.items():
        if _divides(lh, L) and _mono_lcm(lms[a], lh) != L and _mono_lcm(lms[b], lh) != L:
            continue
        kept[(a, b)] = L
    kept.update(E)
    new_active = [g for g in active if not _divides(lh, lms[g])]
    new_active.append(h)
    return new_active, kept


def buchberger(
    ideal: PolyIdeal | Iterable,
    order: MonomialOrder | None = None,
    *,
    max_terms: int | None = None,
    time_limit: float | None = None,
) -> GroebnerBasis:
    """Reduced Groebner basis by Buchberger's algorithm with normal selection."""
    if not isinstance(ideal, PolyIdeal):
        ideal = PolyIdeal(tuple(ideal), order)
    order = ideal.order
    limit = max_terms or kernel.get_max_terms()
    start = time.monotonic()
    polys: list[DictPoly] = []
    lms: list[Mono] = []
    active: list[int] = []
    pairs: dict = {}
    seen = set()
    for g in ideal.generators:
        p = _integral(to_dict(g, order))
        key = tuple(sorted(p.items()))
        if not p or key in seen:
            continue
        seen.add(key)
        if lms:
            p = _reduce_ff(p, [polys[k] for k in active], [lms[k] for k in active])
            if not p:
                continue
        polys.append(p)
        lms.append(leading(p))
        active, pairs = _update(polys, lms, active, pairs, len(polys) - 1)
    reductions = 0
    while pairs:
        if time_limit is not None and time.monotonic() - start > time_limit:
            raise ResourceError("Groebner basis computation exceeded its time budget")
        (a, b), _ = min(pairs.items(), key=lambda kv: (grevlex_key(kv[1]), kv[0]))
        del pairs[(a, b)]
        s = _integral(_spoly_dict(polys[a], polys[b]))
        h = _reduce_ff(s, [polys[k] for k in active], [lms[k] for k in active])
        reductions += 1
        if not h:
            continue
        if len(h) > limit:
            raise ResourceError(f"Groebner intermediate has {len(h)} terms (limit {limit})")
        polys.append(h)
        lms.append(leading(h))
        active, pairs = _update(polys, lms, active, pairs, len(polys) - 1)
    basis = _interreduce([polys[k] for k in active])
    stats = {"pairs_reduced": reductions, "basis_size": len(basis), "seconds": time.monotonic() - start}
    return GroebnerBasis(
        tuple(from_dict(p, order) for p in basis),
        order,
        tuple(basis),
        stats,
    )


def _interreduce(G: list[DictPoly]) -> list[DictPoly]:
    G = [p for p in G if p]
    G.sort(key=lambda p: grevlex_key(leading(p)))
    minimal: list[DictPoly] = []
    for p in G:
        lp = leading(p)
        if not any(_divides(leading(q), lp) for q in minimal):
            minimal = [q for q in minimal if not _divides(lp, leading(q))]
            minimal.append(p)
    out = []
    for k, p in enumerate(minimal):
        others = minimal[:k] + minimal[k + 1 :]
        monic_others = [_monic(q) for q in others]
        r = _reduce_exact(p, monic_others, [leading(q) for q in others])
        out.append(_monic(r))
    out.sort(key=lambda p: grevlex_key(leading(p)))
    return out


def normal_form(p, gb: GroebnerBasis) -> kernel.Scalar:
    """Remainder of ``p`` on division by the (monic) basis."""
    pd = to_dict(p, gb.order)
    polys = list(gb.polys) or [to_dict(g, gb.order) for g in gb.basis]
    return from_dict(normal_form_dict(pd, polys), gb.order)


def normal_form_dict(p: DictPoly, polys: Sequence[DictPoly]) -> DictPoly:
    monic = [_monic(g) for g in polys]
    return _reduce_exact(p, monic, [leading(g) for g in monic])


def reduces_to_zero(p, gb: GroebnerBasis) -> bool:
    return not normal_form_dict(to_dict(p, gb.order), list(gb.polys))


def is_groebner(gb: GroebnerBasis) -> bool:
    """Buchberger criterion: every S-polynomial of basis pairs reduces to 0."""
    polys = list(gb.polys)
    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if normal_form_dict(_spoly_dict(polys[i], polys[j]), polys):
                return False
    return True


def is_reduced(gb: GroebnerBasis) -> bool:
    polys = list(gb.polys)
    lms = [leading(p) for p in polys]
    for k, p in enumerate(polys):
        if Fraction(p[lms[k]]) != 1:
            return False
        for j, lj in enumerate(lms):
            if j != k and any(_divides(lj, m) for m in p):
                return False
    return True
