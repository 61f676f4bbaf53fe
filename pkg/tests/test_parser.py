import pytest
from hypothesis import given, settings, strategies as st

from merogerm.algebra import MPoly
from merogerm.parser import (
    ParseError,
    parse_equation_data,
    parse_germ,
    parse_operator,
    parse_poly,
    parse_rational,
)


def test_germ_examples():
    g = parse_germ("(y^3 + x^5)/x")
    assert g.f == parse_poly("y^3+x^5") and g.g == parse_poly("x")
    g = parse_germ("x^2*y^3")
    assert g.f == parse_poly("x^2*y^3") and g.g == 1
    g = parse_germ("(x*y)/(x)")
    assert g.f == parse_poly("y") and g.g == 1


def test_units_are_dropped_locally():
    g = parse_germ("(2*x*(1+y))/(3*y)")
    assert (g.f, g.g) == (parse_poly("x"), parse_poly("y"))
    g = parse_germ("x*(1+y)", local=False)
    assert g.f == parse_poly("x + x*y")


def test_indexed_variables():
    g = parse_germ("x1^2*x3")
    assert g.vars == ("x1", "x2", "x3")
    with pytest.raises(ParseError):
        parse_germ("x1*y")


@pytest.mark.parametrize(
    "text, offset",
    [("x^2+", 4), ("x^^2", 2), ("(x+y", 4), ("x+z", 2), ("x^2.5", 3), ("1/0", 1), ("0/x", 0)],
)
def test_positioned_errors(text, offset):
    with pytest.raises(ParseError) as info:
        parse_germ(text)
    assert info.value.offset == offset


def test_constant_germ_flagged():
    with pytest.raises(ParseError):
        parse_germ("(x+1)/(x+1)", require_nonconstant=True)


def test_operator_examples():
    assert str(parse_operator("dx")) == "dx"
    assert str(parse_operator("(1/4)*dx^2")) == "(1/4)*dx^2"
    assert str(parse_operator("s*x*dx + 1")) == "s*x*dx + 1"


def test_operator_rejects_unordered_and_undeclared():
    with pytest.raises(ParseError):
        parse_operator("dx*x")
    with pytest.raises(ParseError):
        parse_operator("dy", ("x",))


def test_operator_round_trip():
    for text in ["(s+1)*dx*dy - x*dx + 3", "x^2*dx^2 + s^2", "-(1/3)*d1*d2^2 + x1*d1"]:
        op = parse_operator(text)
        assert parse_operator(str(op)) == op
        assert str(parse_operator(str(op))) == str(op)


def test_equation_data_shares_variables():
    germ, op = parse_equation_data("x1^2", "1", "d3")
    assert germ.vars == ("x1", "x2", "x3") and op.vars == germ.vars


def test_rational():
    assert parse_rational("-3/4") == parse_rational("(-6)/8")


def test_print_parse_identity_on_germs():
    for t in ["(y^3+x^5)/x", "(y^2+x^4)/(x^2+y^4)", "x/y", "2*x^2 - y^2"]:
        g = parse_germ(t)
        assert parse_germ(str(g)) == g


@given(st.binary(max_size=40))
@settings(max_examples=400, deadline=None)
def test_fuzz_bytes_never_crash(data):
    for fn in (parse_germ, parse_operator, parse_poly):
        try:
            fn(data)
        except ParseError as exc:
            assert 0 <= exc.offset <= len(data)


@given(st.text(alphabet="xy0123456789+-*/^() sd.", max_size=30))
@settings(max_examples=400, deadline=None)
def test_fuzz_text_never_crash(text):
    for fn in (parse_germ, parse_operator):
        try:
            fn(text)
        except ParseError as exc:
            assert 0 <= exc.offset <= len(text.encode())


def test_deep_nesting_is_an_error_not_a_crash():
    with pytest.raises(ParseError):
        parse_germ("(" * 5000 + "x" + ")" * 5000)
    with pytest.raises(ParseError):
        parse_poly("x^100000")
