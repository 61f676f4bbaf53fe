import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from merogerm.algebra import MPoly, SPoly
from merogerm.dmodule import (
    DifferentialOperator,
    TwistedElement,
    act_dt,
    act_t,
    apply_derivation,
    apply_operator,
    check_negative_one,
    iter_monomial_exponents,
    monomial_bs,
    monomial_bs_operator,
    monomial_germ,
    shift,
    specialize,
    verify_functional_equation,
)
from merogerm.parser import MeromorphicGerm, parse_germ, parse_operator, parse_poly, parse_spoly

R = ("x", "y", "s")


def H(text):
    return parse_poly(text, R)


def elem(text, germ, a=0, b=0, alpha=0):
    return TwistedElement.make(H(text), germ, a, b, alpha)


def germ(text):
    return parse_germ(text, local=False)


def test_derivation_examples():
    x_ = germ("x")
    assert apply_derivation(0, elem("1", x_)) == elem("s", x_, a=1)
    xy = germ("x/y")
    assert apply_derivation(0, elem("1", xy)) == elem("s", xy, a=1)
    g = germ("x/(y^2+1)")
    alpha = Fraction(1, 3)
    e = apply_derivation(1, elem("1", g, alpha=alpha))
    assert e == elem("-(s+1/3)*2*y", g, b=1, alpha=alpha)


def test_operator_examples():
    sq = germ("x^2")
    e = elem("x^2", sq)
    assert apply_operator(DifferentialOperator.identity(sq.vars), e) == e
    assert apply_operator(parse_operator("(1/4)*dx^2"), e) == elem("(s+1)*(s+1/2)", sq)
    xy = germ("x*y")
    assert apply_operator(parse_operator("dx*dy"), elem("x*y", xy)) == elem("(s+1)^2", xy)


def test_act_t_example():
    xy = germ("x/y")
    assert act_t(elem("1", xy)) == elem("x", xy)


def test_verify_examples():
    assert verify_functional_equation(parse_operator("dx"), parse_spoly("s+1"), germ("x"))
    one_over_g = MeromorphicGerm(parse_poly("1"), parse_poly("x^2+y^3"))
    for alpha in (0, Fraction(1, 2), 3):
        assert verify_functional_equation(
            DifferentialOperator.identity(("x", "y")), SPoly([1]), one_over_g, alpha
        )
    assert verify_functional_equation(parse_operator("dx"), parse_spoly("s+1"), germ("x/y"))


def test_verify_reports_witness():
    ver = verify_functional_equation(parse_operator("dx"), parse_spoly("s+2"), germ("x"))
    assert not ver and ver.witness is not None


def test_quotient_mode():
    # (f/g) F with f = x, g = y: dx acts only on the x part
    ver = verify_functional_equation(
        parse_operator("dx"), parse_spoly("s+1"), germ("x/y"), 0, "quotient"
    )
    assert not ver
    ver = verify_functional_equation(
        parse_operator("y*dx"), parse_spoly("s+1"), germ("x/y"), 0, "quotient"
    )
    assert ver


def test_monomial_bs_examples():
    assert monomial_bs([2], [3]) == parse_spoly("(s+1/2)*(s+1)")
    assert monomial_bs([], [5]) == SPoly([1])
    assert monomial_bs([1, 1], [1]) == parse_spoly("(s+1)^2")
    assert str(monomial_bs_operator([2])) == "(1/4)*d1^2"
    assert str(monomial_bs_operator([1, 1])) == "d1*d2"
    assert monomial_bs_operator([], [3]).is_scalar()


@pytest.mark.parametrize("alpha", [0, Fraction(1, 2), 1])
def test_monomial_equations_small(alpha):
    for num, den in iter_monomial_exponents(5):
        G = monomial_germ(num, den)
        assert verify_functional_equation(
            monomial_bs_operator(num, den), monomial_bs(num, den), G, alpha
        ), (num, den)


def test_specialize_examples():
    x_ = germ("x")
    assert check_negative_one(parse_operator("dx"), parse_spoly("s+1"), x_).b_at_minus_one == 0
    assert specialize(elem("s^2+s", x_), 0).u.is_zero()
    sq = germ("x^2")
    b = monomial_bs([2])
    assert b(Fraction(-1, 2)) == 0
    ver = verify_functional_equation(parse_operator("(1/4)*dx^2"), b, sq)
    assert specialize(ver.rhs, Fraction(-1, 2)).u.is_zero()


def test_negative_one_is_a_root():
    for text, op, b in [("x/y", "dx", "s+1"), ("x^2/y", "(1/4)*dx^2", "(s+1)*(s+1/2)")]:
        chk = check_negative_one(parse_operator(op), parse_spoly(b), germ(text))
        assert chk.equation_holds and chk.consistent and chk.minus_one_is_root


def test_shift_examples():
    g = germ("(x^2+y^3)/(x*y)")
    e = elem("s", g, b=1)
    sh = shift(e, 1)
    assert (sh.a, sh.b) == (1, 0) and sh.h == H("s-1")


# -- random elements -------------------------------------------------------

GERMS = [germ(t) for t in ["(y^3+x^5)/x", "(x^2+y^3)/(x-y^2)", "x*y", "1/(x^2+y^2)"]]


@st.composite
def twisted(draw):
    g = draw(st.sampled_from(GERMS))
    terms = draw(
        st.dictionaries(
            st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)),
            st.integers(-3, 3),
            max_size=4,
        )
    )
    alpha = draw(st.sampled_from([Fraction(0), Fraction(1, 2), Fraction(2, 3)]))
    return TwistedElement.make(MPoly(R, terms), g, draw(st.integers(0, 2)), draw(st.integers(0, 2)), alpha)


S = MPoly.var("s", R)


@given(twisted())
@settings(max_examples=60, deadline=None)
def test_t_dt_relations(e):
    assert act_dt(act_t(e)) - act_t(act_dt(e)) == e
    assert -act_dt(act_t(e)) == e.times(S)


@given(twisted(), st.integers(0, 1), st.integers(0, 1))
@settings(max_examples=40, deadline=None)
def test_leibniz(e, i, j):
    xj = MPoly.var(R[j], R)
    lhs = apply_derivation(i, e.times(xj))
    rhs = apply_derivation(i, e).times(xj)
    if i == j:
        rhs = rhs + e
    assert lhs == rhs


@given(twisted())
@settings(max_examples=40, deadline=None)
def test_partials_commute(e):
    assert apply_derivation(0, apply_derivation(1, e)) == apply_derivation(1, apply_derivation(0, e))


@given(twisted(), st.integers(-2, 2))
@settings(max_examples=40, deadline=None)
def test_shift_is_invertible_and_commutes(e, m):
    assert shift(shift(e, m), -m) == e
    assert shift(apply_derivation(0, e), m) == apply_derivation(0, shift(e, m))


def test_g_one_reduces_to_classical():
    x_ = germ("x")
    assert apply_derivation(0, elem("x", x_)) == elem("s+1", x_)
