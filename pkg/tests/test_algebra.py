from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from nrs2bench.algebra import (
    ONE, U1, U2, U3, ZERO, Monomial3, Poly3, ZeroPolynomialError,
    add, convolve, deg_u3, evaluate, format_rational, lead_u3, mul,
    scale_by_monomial, substitute_u3,
)
from nrs2bench.recurrences import orr_initial

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=9)
monomials = st.tuples(*(st.integers(0, 4),) * 3)
term_maps = st.dictionaries(monomials, rationals, max_size=5)
points = st.tuples(rationals, rationals, rationals)


def as_dict(p: Poly3) -> dict:
    return {tuple(m): c for m, c in p.terms().items()}


# -- examples ---------------------------------------------------------------


def test_add_examples():
    p = U1 * U2 + 3
    assert p + ZERO == p
    assert add(U1 + U2, U2) == U1 + 2 * U2
    e = orr_initial()
    assert (e.e0 + e.e1).eval((1, 1, 1)) == 9


def test_mul_examples():
    p = U1 - U3
    assert p * ONE == p
    assert mul(U1 + U2, U1 * U2) == Poly3.parse("u1^2*u2 + u1*u2^2")
    e = orr_initial()
    brute = O.pprod(
        O.padd(O.U1, O.U2), O.U3, O.padd(O.U1, O.U2, O.U3),
        O.U1, O.U2,
        O.padd(O.pmul(O.U1, O.U2), O.pmul(O.U1, O.U3), O.pmul(O.U2, O.U3)),
    )
    assert as_dict(e.e1 * e.em1) == brute


def test_eval_examples():
    assert evaluate(U1 * U2 * U3, (2, 3, 5)) == 30
    assert orr_initial().em1.eval((1, 1, 1)) == 3
    assert ZERO.eval((Fraction(1, 3), 7, -2)) == 0
    assert isinstance(ZERO.eval((1, 2, 3)), Fraction)


def test_degree_and_lead():
    assert deg_u3(U1 * U1) == 0
    p = Poly3.parse("1 + u3*(u1 + u2)")
    assert lead_u3(p) == U1 + U2
    assert p.deg_u3() == 1
    with pytest.raises(ZeroPolynomialError):
        ZERO.deg_u3()
    with pytest.raises(ZeroPolynomialError):
        ZERO.lead_u3()


def test_substitute_and_scale():
    assert substitute_u3(U3) == U1 * U2 * U3
    assert substitute_u3(U1) == U1
    assert substitute_u3(U3 * U3 + U2) == U1**2 * U2**2 * U3**2 + U2
    assert scale_by_monomial(U1 + U3, Monomial3(1, 0, 2)) == U1**2 * U3**2 + U1 * U3**3


def test_canonical_text():
    assert str(U1**2 + U1 * U2 + U2**2) == "u1^2 + u1*u2 + u2^2"
    assert str(U2 - U1 + Fraction(3, 4)) == "-u1 + u2 + 3/4"
    assert str(ZERO) == "0"
    assert str(Fraction(-2, 3) * U3**2) == "-2/3*u3^2"
    assert format_rational(Fraction(-6, 4)) == "-3/2"
    assert format_rational(Fraction(5)) == "5"


def test_rationals_are_lowest_terms():
    p = Poly3({(1, 0, 0): Fraction(6, 4)})
    (c,) = p.terms().values()
    assert (c.numerator, c.denominator) == (3, 2)
    assert Poly3({(0, 0, 0): Fraction(0, 5)}).is_zero()


def test_no_zero_terms_stored():
    assert len((U1 + U2) - U2) == 1
    assert (U1 - U1).is_zero()


def test_divides_into():
    s = U1 + U2 + U3
    assert s.divides_into(s * (U1 - U2)) == U1 - U2
    assert s.divides_into(U1 * U2) is None


def test_u3_slices():
    p = Poly3.parse("u3^3*u1 + 2*u3^2 + u2*u3 + 7")
    assert p.u3_slice(2) == Poly3.constant(2)
    assert p.top_u3(1) == Poly3.parse("u3^3*u1 + 2*u3^2")
    assert p.truncate_below_u3(2) == p.top_u3(1)


def test_parse_rejects_garbage():
    with pytest.raises(ValueError):
        Poly3.parse("u4 + 1")
    with pytest.raises(ValueError):
        Poly3.parse("__import__('os')")


def test_homogeneity():
    assert (U1**2 + U1 * U2).is_homogeneous()
    assert not (U1**2 + U2).is_homogeneous()
    assert (U1**2 * U2).total_degree() == 3


# -- properties ---------------------------------------------------------------


@settings(max_examples=300, deadline=None)
@given(term_maps, term_maps, term_maps)
def test_ring_axioms(a, b, c):
    a, b, c = Poly3(a), Poly3(b), Poly3(c)
    assert a * (b * c) == (a * b) * c
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    assert a + b == b + a
    assert a - a == ZERO


@settings(max_examples=300, deadline=None)
@given(term_maps, term_maps)
def test_mul_matches_dict_oracle(a, b):
    assert as_dict(Poly3(a) * Poly3(b)) == O.pmul(O.padd(a), O.padd(b))


@settings(max_examples=300, deadline=None)
@given(term_maps, term_maps, points)
def test_eval_is_homomorphism(a, b, pt):
    p, q = Poly3(a), Poly3(b)
    assert (p * q).eval(pt) == p.eval(pt) * q.eval(pt)
    assert (p + q).eval(pt) == p.eval(pt) + q.eval(pt)
    assert p.eval(pt) == O.peval(O.padd(a), pt)


@settings(max_examples=300, deadline=None)
@given(term_maps)
def test_lead_lowers_degree(a):
    p = Poly3(a)
    if p.is_zero():
        return
    rest = p.lead_u3() * Poly3.monomial((0, 0, p.deg_u3())) - p
    assert rest.is_zero() or rest.deg_u3() < p.deg_u3()


@settings(max_examples=200, deadline=None)
@given(term_maps)
def test_text_round_trip(a):
    p = Poly3(a)
    assert Poly3.parse(str(p)) == p


@settings(max_examples=200, deadline=None)
@given(term_maps, points)
def test_substitution_commutes_with_eval(a, pt):
    p = Poly3(a)
    u1, u2, u3 = pt
    assert p.substitute_u3().eval(pt) == p.eval((u1, u2, u1 * u2 * u3))


def _naive_convolve(a, b):
    out = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


@settings(max_examples=200, deadline=None)
@given(
    st.lists(st.integers(-(10**30), 10**30), min_size=1, max_size=80),
    st.lists(st.integers(-(10**30), 10**30), min_size=1, max_size=80),
)
def test_convolve_matches_naive(a, b):
    assert convolve(a, b) == _naive_convolve(a, b)


def test_convolve_large_packed_path():
    a = [(-1) ** i * (i + 1) ** 40 for i in range(300)]
    b = [3**i - 2**i for i in range(257)]
    assert convolve(a, b) == _naive_convolve(a, b)
