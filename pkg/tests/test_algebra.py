import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from orbiram.algebra import (
    GF, FiniteField, Polynomial, RationalFunction, as_reduce, format_expression, is_irreducible_mod_p,
    kernel, mat_inverse, mat_mul, identity_matrix, parse_rational_function, partial_fractions, prime_power,
    rank, wp,
)
from orbiram.errors import OrbiramError, UnsupportedPole

FIELD_SIZES = [2, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25, 27]


def rf(F, text):
    return parse_rational_function(F, text)


@pytest.mark.parametrize("q", FIELD_SIZES)
def test_field_axioms_exhaustive_small(q):
    F = GF(q)
    els = list(F.elements())
    sample = els if q <= 9 else els[:9]
    for a, b, c in itertools.product(sample, repeat=3):
        assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
        assert F.add(F.add(a, b), c) == F.add(a, F.add(b, c))
        assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    for a in els:
        assert F.add(a, F.neg(a)) == 0
        if a:
            assert F.mul(a, F.inv(a)) == 1


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9, 16, 25, 27, 49, 81])
def test_pth_root_exhaustive(q):
    F = GF(q)
    roots = [F.pth_root(a) for a in F.elements()]
    assert sorted(roots) == list(F.elements())  # Frobenius is a bijection
    for a, r in zip(F.elements(), roots):
        assert F.pow(r, F.p) == a


def test_pth_root_examples():
    assert GF(2).pth_root(1) == 1
    F9 = GF(9)
    g = F9.generator
    assert F9.pth_root(0) == 0
    assert F9.pth_root(g) == F9.pow(g, 3)
    assert [a for a in F9.elements() if F9.pow(a, 3) == g] == [F9.pow(g, 3)]


@pytest.mark.parametrize("p,d", [(2, 2), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2), (7, 2)])
def test_modulus_irreducible_against_sympy(p, d):
    F = FiniteField(p, d)
    x = sympy.symbols("x")
    poly = sympy.Poly(list(reversed(F.modulus)), x, modulus=p)
    assert poly.is_irreducible


def test_irreducibility_test_against_sympy():
    x = sympy.symbols("x")
    for p in (2, 3, 5):
        for d in (2, 3, 4):
            for tail in itertools.product(range(p), repeat=d):
                coeffs = list(tail) + [1]
                ours = is_irreducible_mod_p(coeffs, p)
                theirs = sympy.Poly(list(reversed(coeffs)), x, modulus=p).is_irreducible
                assert ours == theirs, coeffs


def test_reducible_modulus_rejected():
    with pytest.raises(OrbiramError):
        FiniteField(2, 2, modulus=(1, 0, 1))


def test_prime_power():
    assert prime_power(27) == (3, 3)
    with pytest.raises(OrbiramError):
        prime_power(12)


def test_element_serialization_roundtrip():
    F = GF(27)
    for a in F.elements():
        assert F.parse_element(F.format_element(a)) == a
    assert F.format_element(F.from_vector([1, 0, 2])) == "[1,0,2]"


@st.composite
def polys(draw, F, max_deg=6):
    return Polynomial(F, draw(st.lists(st.integers(0, F.q - 1), max_size=max_deg + 1)))


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([3, 4, 8, 9]), st.data())
def test_polynomial_division(q, data):
    F = GF(q)
    a = data.draw(polys(F))
    b = data.draw(polys(F))
    if not b:
        b = Polynomial.constant(F, 1)
    quot, rem = divmod(a, b)
    assert quot * b + rem == a
    assert not rem or rem.degree < b.degree


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([5, 8, 9]), st.data())
def test_rational_function_field_axioms(q, data):
    F = GF(q)

    def draw_rf():
        num = data.draw(polys(F, 3))
        den = data.draw(polys(F, 3))
        return RationalFunction(num, den if den else Polynomial.constant(F, 1))

    a, b, c = draw_rf(), draw_rf(), draw_rf()
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a - a == RationalFunction.constant(F, 0)
    if a.num:
        assert a * a.inverse() == RationalFunction.constant(F, 1)
    assert a.den.lead == 1 and a.num.gcd(a.den).degree == 0


def test_canonical_form_unique():
    F = GF(5)
    assert rf(F, "(x^2-1)/(2*x-2)") == rf(F, "(x+1)/2")


def test_partial_fractions_reconstruct():
    F = GF(7)
    f = rf(F, "(x^5 + 3*x + 1)/((x-1)^3*(x-2)*x^2)")
    pf = partial_fractions(f)
    assert pf.to_rational() == f
    assert set(pf.principal) == {0, 1, 2}
    assert [len(pf.principal[c]) for c in (0, 1, 2)] == [2, 3, 1]


def test_unsupported_pole():
    F = GF(3)
    with pytest.raises(UnsupportedPole):
        rf(F, "1/(x^2+1)").poles()
    with pytest.raises(UnsupportedPole):
        as_reduce(rf(F, "1/(x^2+1)"))


def test_as_reduce_examples():
    F2 = GF(2)
    r = as_reduce(rf(F2, "x^2"), 2)
    assert r.reduced == rf(F2, "x") and r.poles == {"inf": 1}
    assert rf(F2, "x^2") - wp(rf(F2, "x")) == rf(F2, "x")
    r = as_reduce(rf(F2, "x^3"))
    assert r.reduced == rf(F2, "x^3") and r.poles == {"inf": 3}
    r = as_reduce(rf(F2, "1/x^4"))
    assert r.reduced == rf(F2, "1/x") and r.poles == {"0": 1}
    assert rf(F2, "1/x^4") - rf(F2, "1/x") == wp(rf(F2, "1/x^2 + 1/x"))
    assert r.witness == rf(F2, "1/x^2 + 1/x")


def test_as_reduce_characteristic_mismatch():
    with pytest.raises(OrbiramError):
        as_reduce(rf(GF(3), "x"), 2)


@st.composite
def principal_parts(draw, F):
    X = RationalFunction.x(F)
    f = RationalFunction.constant(F, draw(st.integers(0, F.q - 1)))
    pts = draw(st.lists(st.integers(0, F.q - 1), max_size=3, unique=True))
    for c in pts:
        t = (X - RationalFunction.constant(F, c)).inverse()
        for k, a in enumerate(draw(st.lists(st.integers(0, F.q - 1), max_size=7)), start=1):
            f = f + RationalFunction.constant(F, a) * t ** k
    for k, a in enumerate(draw(st.lists(st.integers(0, F.q - 1), max_size=9)), start=1):
        f = f + RationalFunction.constant(F, a) * X ** k
    return f


@settings(max_examples=80, deadline=None)
@given(st.sampled_from([2, 3, 4, 5, 8, 9, 27]), st.data())
def test_as_reduce_properties(q, data):
    F = GF(q)
    f = data.draw(principal_parts(F))
    r = as_reduce(f)
    assert all(m % F.p for m in r.poles.values())
    assert f - r.reduced == wp(r.witness)
    again = as_reduce(r.reduced)
    assert again.reduced == r.reduced and again.witness == RationalFunction.constant(F, 0)
    assert r.reduced.poles() == r.poles


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([4, 7, 9, 27]), st.data())
def test_format_expression_roundtrip(q, data):
    F = GF(q)
    f = data.draw(principal_parts(F))
    assert parse_rational_function(F, format_expression(f)) == f


def test_parser_rejects_garbage():
    F = GF(5)
    for bad in ("x^(1/2)", "y + 1", "import os", "x +", "a"):
        with pytest.raises(OrbiramError):
            parse_rational_function(F, bad)


@settings(max_examples=40, deadline=None)
@given(st.sampled_from([2, 3, 4, 9]), st.integers(1, 4), st.integers(1, 5), st.data())
def test_linear_algebra(q, m, n, data):
    F = GF(q)
    A = tuple(tuple(data.draw(st.integers(0, q - 1)) for _ in range(n)) for _ in range(m))
    basis = kernel(F, A)
    assert rank(F, A) + len(basis) == n
    for v in basis:
        assert all(x == 0 for (x,) in mat_mul(F, A, tuple((c,) for c in v)))
    if m == n and rank(F, A) == n:
        assert mat_mul(F, A, mat_inverse(F, A)) == identity_matrix(F, n)
