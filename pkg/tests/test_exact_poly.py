from __future__ import annotations

from fractions import Fraction

import pytest
import sympy as sp
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import from_sympy, ratfn_to_sympy, to_sympy
from qeuler.parser import ParseError, UndeclaredIdentifier, parse_poly
from qeuler.poly import MPoly, VariableMismatch, demote, poly_arith, poly_diff, promote
from qeuler.qfield import LAMBDA, QQ, RatFnQ, laurent_unit_test, ratfn_normalize

VARS = ("x", "y", "z")

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=7)


@st.composite
def polys(draw, variables=VARS, max_terms=5, max_exp=3):
    n = draw(st.integers(0, max_terms))
    terms = {}
    for _ in range(n):
        e = tuple(draw(st.integers(0, max_exp)) for _ in variables)
        terms[e] = draw(rationals)
    return MPoly(variables, terms)


@st.composite
def ratfns(draw):
    num = draw(st.lists(rationals, max_size=4))
    den = draw(st.lists(rationals, min_size=1, max_size=3).filter(lambda d: any(d)))
    return ratfn_normalize(num, den)


# -- rationals and q-functions --------------------------------------------------

def test_fraction_canonical_form():
    assert Fraction(6, -4) == Fraction(-3, 2)
    assert Fraction(-3, 2).denominator > 0
    assert Fraction(0, 5).denominator == 1


@pytest.mark.parametrize("num,den,expected", [
    ((0, -1, 1), (0, 1), RatFnQ((-1, 1))),
    ((0, 2), (4,), RatFnQ((0, Fraction(1, 2)))),
    ((1, 1), (1, 1), RatFnQ((1,))),
])
def test_ratfn_normalize_examples(num, den, expected):
    assert ratfn_normalize(num, den) == expected


def test_ratfn_normalize_rejects_zero_denominator():
    with pytest.raises(ZeroDivisionError):
        ratfn_normalize((1,), (0,))


def test_ratfn_denominator_is_monic_and_reduced():
    v = ratfn_normalize((2, 2), (3, 3, 0))  # (2+2q)/(3+3q) = 2/3
    assert v == RatFnQ((Fraction(2, 3),))
    w = ratfn_normalize((1,), (4, 2))
    assert w.den[-1] == 1


@pytest.mark.parametrize("value,kind,coeff,shift", [
    (RatFnQ((0, 0, 0, -4)), "unit", -4, 3),
    (RatFnQ((-1, 0, 1)), "nonunit", None, None),
    (RatFnQ(()), "zero", None, None),
    (RatFnQ((5,), (0, 0, 1)), "unit", 5, -2),
    (RatFnQ((1,), (1, 1)), "nonunit", None, None),
])
def test_laurent_unit_test_examples(value, kind, coeff, shift):
    v = laurent_unit_test(value)
    assert v.kind == kind
    if kind == "unit":
        assert (v.coeff, v.shift) == (coeff, shift)


@given(ratfns(), ratfns(), ratfns())
def test_ratfn_field_axioms_against_sympy(a, b, c):
    assert (a + b) * c == a * c + b * c
    assert (a * b) * c == a * (b * c)
    if a != 0:
        assert a * a.inverse() == RatFnQ((1,))
    assert sp.simplify(ratfn_to_sympy(a * b + c) - (ratfn_to_sympy(a) * ratfn_to_sympy(b)
                                                    + ratfn_to_sympy(c))) == 0


@given(ratfns(), ratfns(), st.sampled_from([Fraction(1), Fraction(-2), Fraction(1, 3), Fraction(5)]))
def test_evaluation_is_a_homomorphism(a, b, r):
    qs = sp.Symbol("q")
    defined = all(sp.denom(sp.together(ratfn_to_sympy(v))).subs(qs, r) != 0 for v in (a, b))
    if defined:
        assert (a * b).evaluate(r) == a.evaluate(r) * b.evaluate(r)
        assert (a + b).evaluate(r) == a.evaluate(r) + b.evaluate(r)


def test_ground_conversion():
    assert QQ.convert(3) == Fraction(3)
    assert LAMBDA.convert(Fraction(1, 2)) == RatFnQ((Fraction(1, 2),))
    assert QQ.convert(RatFnQ((3,))) == 3
    with pytest.raises(ValueError):
        QQ.convert(RatFnQ((0, 1)))
    with pytest.raises(TypeError):
        QQ.convert("1")


# -- polynomials -------------------------------------------------------------

def test_poly_arith_examples():
    V = ("x",)
    x = MPoly.var("x", V)
    one = MPoly.constant(1, V)
    assert poly_arith(x + one, x - one, "mul") == x ** 2 - one
    V2 = ("x1", "x2")
    x1, x2 = MPoly.var("x1", V2), MPoly.var("x2", V2)
    p = poly_arith(x1 ** 5, MPoly.constant(Fraction(1, 5), V2), "mul")
    assert p.terms == {(5, 0): Fraction(1, 5)}
    assert poly_arith(x1 ** 2 - x2 * 2, x2 * 2, "add") == x1 ** 2


def test_poly_arith_rejects_variable_mismatch():
    with pytest.raises(VariableMismatch):
        poly_arith(MPoly.var("x", ("x",)), MPoly.var("y", ("y",)), "add")


def test_poly_diff_examples():
    V = ("x", "q")
    x, q = MPoly.var("x", V), MPoly.var("q", V)
    assert poly_diff(x ** 3 * Fraction(1, 3) - q * x, "x") == x ** 2 - q
    V2 = ("x1", "x2")
    x1, x2 = MPoly.var("x1", V2), MPoly.var("x2", V2)
    p5 = (x1 ** 5 - x1 ** 3 * x2 * 5 + x1 * x2 ** 2 * 5) * Fraction(1, 5)
    assert poly_diff(p5, "x2") == -x1 ** 3 + x1 * x2 * 2
    assert poly_diff(MPoly.constant(7, V), "x").is_zero()
    with pytest.raises(KeyError):
        poly_diff(x, "w")


def test_no_zero_terms_stored():
    p = MPoly(("x",), {(1,): 0, (0,): 2})
    assert dict(p.terms) == {(0,): Fraction(2)}


@given(polys(), polys(), polys())
def test_ring_axioms(a, b, c):
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a + b == b + a
    assert a * b == b * a
    assert (a - a).is_zero()


@settings(max_examples=40)
@given(polys(), polys())
def test_product_matches_sympy(a, b):
    assert from_sympy(to_sympy(a) * to_sympy(b), VARS) == a * b


@given(polys())
def test_parse_of_print_is_identity(p):
    assert parse_poly(str(p), VARS) == p


@given(st.integers(0, 3), st.integers(0, 3), st.integers(0, 3), st.integers(0, 3),
       rationals.filter(bool), rationals.filter(bool))
def test_weighted_degree_is_additive(a1, a2, b1, b2, c1, c2):
    W = (2, 4)
    V = ("x1", "x2")
    a = MPoly(V, {(a1, a2): c1}, W)
    b = MPoly(V, {(b1, b2): c2}, W)
    assert (a * b).weighted_degree() == a.weighted_degree() + b.weighted_degree()
    assert (a * b).is_weighted_homogeneous()


def test_weights_must_be_even_positive():
    with pytest.raises(ValueError):
        MPoly(("x",), {(1,): 1}, (3,))


def test_promote_demote_round_trip():
    V = ("x", "q")
    p = parse_poly("x^2*q - 3*q^2 + x", V)
    lifted = promote(p)
    assert lifted.variables == ("x",)
    assert lifted.terms[(2,)] == RatFnQ((0, 1))
    assert demote(lifted, V) == p


def test_demote_rejects_true_denominators():
    p = MPoly(("x",), {(1,): RatFnQ((1,), (1, 1))})
    with pytest.raises(ValueError):
        demote(p)


def test_canonical_printing():
    V = ("x1", "x2")
    p = parse_poly("x2^2 + x1^4 - 3*x1^2*x2 + 1/2", V)
    assert str(p) == "x1^4 - 3*x1^2*x2 + x2^2 + 1/2"


# -- parser ------------------------------------------------------------------

def test_parse_examples():
    V = ("x1", "x2", "q")
    p = parse_poly("x1^4 - 3*x1^2*x2 + x2^2 + q", V)
    assert len(p.terms) == 4
    assert p.terms[(2, 1, 0)] == -3
    assert parse_poly("(x1 - x2)^2", V) == parse_poly("x1^2 - 2*x1*x2 + x2^2", V)
    assert parse_poly("-1/2*x1 + 3/4", V).terms[(1, 0, 0)] == Fraction(-1, 2)


def test_parse_undeclared_identifier():
    with pytest.raises(UndeclaredIdentifier) as exc:
        parse_poly("x3", ("x1", "x2"))
    assert exc.value.position == 0


@pytest.mark.parametrize("text,position", [("x1 + * 2", 5), ("2x1", 1), ("(x1", 3), ("x1^-1", 3)])
def test_parse_syntax_errors_carry_position(text, position):
    with pytest.raises(ParseError) as exc:
        parse_poly(text, ("x1",))
    assert exc.value.position == position
