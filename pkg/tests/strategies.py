"""Hypothesis strategies shared by the test modules."""

from __future__ import annotations

from fractions import Fraction

from hypothesis import strategies as st

from planeprover import kernel as K

NAMES = ("ka", "kb", "kc")
VARS = {n: K.var(n) for n in NAMES}
GENS = (K.const(1), K.I, K.R3, K.I * K.R3)

small_ints = st.integers(-6, 6)
small_fracs = st.builds(Fraction, st.integers(-9, 9), st.integers(1, 5))


@st.composite
def monomials(draw, names=NAMES, max_exp: int = 2):
    m = K.const(1)
    for n in names:
        m = m * VARS[n] ** draw(st.integers(0, max_exp))
    return m


@st.composite
def polys(draw, names=NAMES, max_terms: int = 4, max_exp: int = 2, gens: bool = False):
    p = K.const(0)
    for _ in range(draw(st.integers(1, max_terms))):
        c = K.const(draw(small_fracs))
        if gens:
            c = c * draw(st.sampled_from(GENS))
        p = p + c * draw(monomials(names, max_exp))
    return p


@st.composite
def nonzero_polys(draw, **kw):
    p = draw(polys(**kw))
    if p.is_zero():
        p = p + 1
    return p


@st.composite
def scalars(draw, gens: bool = True):
    """Rational functions over Q(i, sqrt3) with generator-free denominators."""
    num = draw(polys(gens=gens))
    den = draw(nonzero_polys(max_terms=3, max_exp=1))
    return num / den


points = st.fixed_dictionaries({n: small_fracs for n in NAMES})
