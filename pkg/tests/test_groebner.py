import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from planeprover import groebner as G
from planeprover import kernel as K
from planeprover.errors import ResourceError, ShapeError
from planeprover.geometry import Geometry
from planeprover.theorems import SODDY_ORDER, _descartes, _soddy_system

gx, gy, gz = K.var("gx"), K.var("gy"), K.var("gz")
XY = G.MonomialOrder(("gx", "gy"))
XYZ = G.MonomialOrder(("gx", "gy", "gz"))


def test_grevlex_compare():
    # x*z < y^2 on (x, y, z)
    assert G.compare((1, 0, 1), (0, 2, 0), XYZ) == -1
    assert G.compare((3, 0, 0), (1, 1, 0), XYZ) == 1
    assert G.compare((1, 2, 0), (1, 2, 0), XYZ) == 0
    with pytest.raises(ShapeError):
        G.compare((1, 0), (1, 0, 0))


def test_s_polynomial_examples():
    assert G.s_polynomial(gx**2 - 1, gx**2 - gx, XY) == gx - 1
    f = gx**2 * gy - gy + 3
    assert G.s_polynomial(f, f, XY) == 0
    assert G.s_polynomial(gx, gy, XY) == 0


def test_worked_example():
    gb = G.buchberger([gx**2 - 1, gx * gy - 1], XY)
    assert set(gb.basis) == {gx - gy, gy**2 - 1}
    assert G.is_groebner(gb) and G.is_reduced(gb)
    assert G.normal_form(gx**2, gb) == 1
    assert G.reduces_to_zero(gx**2 - 1, gb) and G.reduces_to_zero(gx * gy - 1, gb)


def test_trivial_bases():
    gb = G.buchberger([gx], XY)
    assert gb.basis == (gx,)
    assert G.normal_form(1, gb) == 1
    unit = G.buchberger([gx, gx - 1], XY)
    assert unit.basis == (K.const(1),)


def test_term_guardrail():
    with pytest.raises(ResourceError):
        G.buchberger([gx**3 * gy + gy**4 - 1, gx**4 - gx * gy**2 + 2, gx * gy**3 - gx**2 + gy], XY, max_terms=2)


# -- random ideals -------------------------------------------------------------

VARS = (gx, gy, gz)


def _random_poly(rng: random.Random, nvars: int, max_deg: int = 3):
    p = K.const(0)
    for _ in range(rng.randint(1, 4)):
        mono = K.const(rng.choice([c for c in range(-5, 6) if c]))
        budget = rng.randint(0, max_deg)
        for _ in range(budget):
            mono = mono * VARS[rng.randrange(nvars)]
        p = p + mono
    return p if not p.is_zero() else VARS[0] + 1


def _random_ideal(seed: int):
    rng = random.Random(seed)
    nvars = rng.randint(1, 3)
    gens = [_random_poly(rng, nvars) for _ in range(rng.randint(1, 3))]
    return gens, G.MonomialOrder(("gx", "gy", "gz")[:nvars])


RANDOM_IDEALS = 60


@pytest.mark.parametrize("seed", range(RANDOM_IDEALS))
def test_random_ideal_basis(seed):
    gens, order = _random_ideal(seed)
    gb = G.buchberger(gens, order)
    assert G.is_groebner(gb)
    assert G.is_reduced(gb)
    for g in gens:
        assert G.reduces_to_zero(g, gb)
    # the reduced basis does not depend on the input order
    again = G.buchberger(list(reversed(gens)), order)
    assert set(again.basis) == set(gb.basis)


@settings(max_examples=100)
@given(st.integers(0, 10**6), st.integers(0, 10**6))
def test_normal_form_properties(seed, seed2):
    gens, order = _random_ideal(seed)
    gb = G.buchberger(gens, order)
    rng = random.Random(seed2)
    nv = len(order.variables)
    p, q = _random_poly(rng, nv), _random_poly(rng, nv)
    member = _random_poly(rng, nv) * gens[0]
    nf = G.normal_form(p * q, gb)
    assert G.normal_form(nf, gb) == nf
    assert G.normal_form(p * q + member, gb) == nf
    # p - nf(p) lies in the ideal
    assert G.reduces_to_zero(p * q - nf, gb)


# -- Soddy -------------------------------------------------------------------


@pytest.fixture(scope="module")
def soddy_basis():
    gens, rst = _soddy_system(Geometry())
    return gens, rst, G.buchberger(G.PolyIdeal(tuple(gens), SODDY_ORDER))


def test_soddy_basis_is_groebner(soddy_basis):
    gens, _, gb = soddy_basis
    assert G.is_groebner(gb) and G.is_reduced(gb)
    for g in gens:
        assert G.reduces_to_zero(g, gb)


def test_soddy_relation_in_ideal(soddy_basis):
    _, (r, s, t), gb = soddy_basis
    p = K.numer(_descartes(r, s, t))
    assert G.normal_form(p, gb) == 0
    assert G.normal_form(K.numer(_descartes(r, s, s)), gb) != 0


def test_soddy_basis_is_deterministic(soddy_basis):
    gens, _, gb = soddy_basis
    again = G.buchberger(G.PolyIdeal(tuple(gens), SODDY_ORDER))
    assert again.basis == gb.basis
