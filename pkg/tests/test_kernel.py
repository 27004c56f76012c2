from fractions import Fraction

import pytest
from hypothesis import assume, given, settings
from hypothesis import strategies as st

from planeprover import kernel as K
from planeprover.errors import (
    EvaluationError,
    NonlinearSystemError,
    NotDivisibleError,
    NotPolynomialError,
    ResourceError,
    ScalarDivisionError,
    ShapeError,
)
from planeprover.numeric import QI3
from strategies import nonzero_polys, points, polys, scalars, small_fracs

x, y = K.X, K.Y
m, n = K.var("m"), K.var("n")
PROPERTY_CASES = 1000


# -- examples --------------------------------------------------------------


def test_normalize_cancels_common_factor():
    assert (x**2 - 1) / (x - 1) == x + 1
    assert (m - n) / (m - n) == 1
    assert K.normalize((x**2 - 1) / (x - 1)) == x + 1


def test_generator_rewrites():
    assert K.I * K.I == -1
    assert K.R3 * K.R3 == 3


def test_arith_examples():
    assert K.arith(Fraction(1, 2), Fraction(1, 3), "add") == Fraction(5, 6)
    assert K.arith(m + n, m - n, "mul") == m**2 - n**2
    with pytest.raises(ValueError):
        K.arith(m, n, "pow")


def test_radicals_multiply_out():
    a_, b_ = K.var("rad_a"), K.var("rad_b")
    u, v = K.sqrt(a_), K.sqrt(b_)
    assert (u + v) * (u - v) == a_ - b_
    assert (u + v) ** 2 == a_ + b_ + 2 * u * v
    two = K.adjoin_sqrt(2)
    assert two.scalar * two.scalar == 2
    assert K.adjoin_sqrt(2) is two


def test_herron_radicals_cancel():
    A, B, C = K.var("hA"), K.var("hB"), K.var("hC")
    a, b, c = K.sqrt(A), K.sqrt(B), K.sqrt(C)
    s = (a + b + c) / 2
    area = s * (s - a) * (s - b) * (s - c)
    assert area == (2 * A * B + 2 * B * C + 2 * C * A - A**2 - B**2 - C**2) / 16
    assert K.generators_in(area) == []


def test_division_errors():
    with pytest.raises(ScalarDivisionError):
        m / K.const(0)
    with pytest.raises(ScalarDivisionError):
        m / (n - n)


def test_substitute_examples():
    assert K.substitute(x**2 + y**2, {"x": 3, "y": 4}) == 25
    assert K.substitute(x**2 + y**2 - x - y, {x: Fraction(1, 2), y: Fraction(1, 2)}) == Fraction(-1, 2)
    assert K.substitute(m, {}) == m


def test_substitute_is_simultaneous():
    assert K.substitute(x - y, {x: y, y: x}) == y - x
    assert K.substitute(x**2, {x: x + 1}) == x**2 + 2 * x + 1


def test_coeff_examples():
    a, b, c = K.var("ca"), K.var("cb"), K.var("cc")
    assert K.coeff(a * x + b * y + c, x, 1) == a
    assert K.coeff(x**2 + y**2 - x - y, y, 1) == -1
    assert K.coeff(4 * x**2 * m + x * n, x, 2) == 4 * m
    with pytest.raises(NotPolynomialError):
        K.coeff(1 / x, x, 1)


def test_solve_linear_examples():
    sol = K.solve_linear([x + y - 1, x - y], [x, y])
    assert sol.status == "unique"
    assert sol[x] == Fraction(1, 2) and sol[y] == Fraction(1, 2)
    assert K.solve_linear([x, x - 1], [x, y]).status == "inconsistent"
    a, b, c = K.var("la"), K.var("lb"), K.var("lc")
    # circle x^2+y^2+a x+b y+c through (0,0), (1,0), (0,1)
    eqs = [c, 1 + a + c, 1 + b + c]
    sol = K.solve_linear(eqs, [a, b, c])
    assert sol.status == "unique"
    assert (sol[a], sol[b], sol[c]) == (-1, -1, 0)
    with pytest.raises(NonlinearSystemError):
        K.solve_linear([x * y - 1], [x, y])


def test_determinant_examples():
    eye = [[int(i == j) for j in range(5)] for i in range(5)]
    assert K.determinant(eye) == 1
    assert K.determinant([[0, 1], [1, 0]]) == -1
    with pytest.raises(ShapeError):
        K.determinant([[1, 2, 3], [4, 5, 6]])


def test_divide_exact_examples():
    assert K.divide_exact(m**2 - n**2, m - n) == m + n
    with pytest.raises(NotDivisibleError):
        K.divide_exact(x**2 + 1, x)


def test_eval_at_examples():
    assert K.eval_at((m + n) / (1 - m * n), {m: 1, n: 2}) == QI3.from_rational(-3)
    with pytest.raises(EvaluationError):
        K.eval_at(1 / (m - n), {m: 2, n: 2})
    t, R = K.var("t"), K.var("R")
    px = R * (1 - t**2) / (1 + t**2)
    py = 2 * R * t / (1 + t**2)
    assert K.eval_at(px**2 + py**2 - R**2, {t: Fraction(7, 3), R: 5}).is_zero()


def test_eval_at_irrational_radical_goes_approximate():
    v = K.sqrt(K.var("ev_a"))
    val = K.eval_at(v * v - K.var("ev_a"), {"ev_a": 2})
    assert val.is_zero()
    approx = K.eval_at(v, {"ev_a": 2})
    assert abs(complex(approx) - 2**0.5) < 1e-12


def test_zero_has_no_variables():
    z = (m + n) - (n + m)
    assert z.is_zero() and z.variables == () and z == 0


def test_text_form_is_expanded():
    assert K.to_text((x + 1) ** 2 / (m + 1)) == "(x^2 + 2*x + 1)/(m + 1)"


def test_max_terms_guardrail():
    old = K.get_max_terms()
    K.set_max_terms(50)
    try:
        vs = [K.var(f"g{i}") for i in range(8)]
        with pytest.raises(ResourceError):
            p = sum(vs, K.const(0)) + 1
            p**6
    finally:
        K.set_max_terms(old)


# -- properties --------------------------------------------------------------


def _canonical_data(s):
    return (s.variables, K.to_text(s))


@settings(max_examples=PROPERTY_CASES)
@given(scalars())
def test_normalize_idempotent(s):
    once = K.normalize(s)
    twice = K.normalize(once)
    assert _canonical_data(once) == _canonical_data(twice) == _canonical_data(s)
    assert once == s


@settings(max_examples=PROPERTY_CASES)
@given(scalars(), scalars(), st.sampled_from(["add", "sub", "mul", "div"]), points)
def test_eval_is_a_ring_homomorphism(a, b, op, pt):
    try:
        va, vb = K.eval_at(a, pt), K.eval_at(b, pt)
    except EvaluationError:
        assume(False)
    if op == "div":
        assume(not b.is_zero() and not vb.is_zero())
    r = K.arith(a, b, op)
    try:
        vr = K.eval_at(r, pt)
    except EvaluationError:
        # a pole of the reduced form is a pole of an input
        assume(False)
    ops = {"add": lambda: va + vb, "sub": lambda: va - vb, "mul": lambda: va * vb, "div": lambda: va / vb}
    assert vr == ops[op]()


@settings(max_examples=PROPERTY_CASES)
@given(polys(), polys(), nonzero_polys(max_terms=3))
def test_gcd_divides_both(p, q, h):
    P, Q = p * h, q * h
    assume(not (P.is_zero() and Q.is_zero()))
    g = K.poly_gcd(P, Q)
    assert P == g * K.divide_exact(P, g)
    assert Q == g * K.divide_exact(Q, g)
    K.divide_exact(g, h)  # the planted common factor survives
    if not q.is_zero():
        assert K.normalize((p * q) / q) == p


def _cofactor(M):
    if len(M) == 1:
        return K.const(M[0][0])
    total = K.const(0)
    for j, a in enumerate(M[0]):
        minor = [row[:j] + row[j + 1 :] for row in M[1:]]
        total = total + (-1) ** j * K.const(a) * _cofactor(minor)
    return total


entries = st.one_of(small_fracs.map(K.const), polys(names=("ka", "kb"), max_terms=2, max_exp=1, gens=True))


@st.composite
def square_matrices(draw):
    k = draw(st.integers(1, 4))
    return [[draw(entries) for _ in range(k)] for _ in range(k)]


@settings(max_examples=PROPERTY_CASES)
@given(square_matrices())
def test_bareiss_matches_cofactor_expansion(M):
    assert K.determinant(M) == _cofactor(M)


UNKNOWNS = [K.var(f"u{k}") for k in range(3)]
coeffs = st.one_of(small_fracs.map(K.const), polys(names=("ka", "kb"), max_terms=2, max_exp=1))


@st.composite
def linear_systems(draw):
    k = draw(st.integers(1, 3))
    rows = draw(st.integers(1, 3))
    eqs = []
    for _ in range(rows):
        e = draw(coeffs)
        for u in UNKNOWNS[:k]:
            e = e + draw(coeffs) * u
        eqs.append(e)
    return eqs, UNKNOWNS[:k]


@settings(max_examples=PROPERTY_CASES)
@given(linear_systems())
def test_solve_linear_bindings_satisfy_equations(system):
    eqs, unk = system
    try:
        sol = K.solve_linear(eqs, unk)
    except NonlinearSystemError:
        # every coefficient of an unknown vanished and the constant mentions none
        assume(False)
    if sol.status == "inconsistent":
        return
    bindings = {u: v for u, v in sol.bindings.items()}
    for e in eqs:
        assert K.substitute(e, bindings).is_zero()


RADICANDS = [K.var("ka"), K.var("kb") + 1, K.const(2), K.var("ka") * K.var("kc") - 3]


@settings(max_examples=PROPERTY_CASES)
@given(st.lists(st.tuples(scalars(), st.sampled_from(range(len(RADICANDS)))), min_size=1, max_size=4))
def test_generator_exponents_stay_below_two(factors):
    acc = K.const(1)
    for s, k in factors:
        acc = acc * (s.numer() + K.sqrt(RADICANDS[k])) * K.sqrt(RADICANDS[k])
    assert K.max_generator_exponent(acc) < 2
    assert K.max_generator_exponent(acc * acc) < 2
