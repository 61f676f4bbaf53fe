import json

import pytest
from hypothesis import given, settings, strategies as st

from merogerm.algebra import MPoly
from merogerm.parser import parse_germ, parse_poly
from merogerm.resolution import (
    IterationCap,
    UnsupportedExtension,
    classify,
    from_json,
    jacobian_order,
    log_resolution,
    mixed_sign_edges,
    ord_along,
    resolve_pair,
    separate_dicritical,
    to_json,
)

from conftest import G1, G2, resolved


def table(res):
    return (
        tuple(d.Nf for d in res.divisors),
        tuple(d.Ng for d in res.divisors),
        tuple(d.k for d in res.divisors),
    )


def test_first_table(g1):
    _, res = g1
    assert table(res) == ((3, 5, 9, 15, 1, 0, 3, 3), (1, 1, 2, 3, 0, 1, 2, 3), (1, 2, 4, 7, 0, 0, 2, 3))
    assert set(res.edges) == {(1, 3), (3, 4), (2, 4), (1, 7), (7, 8), (6, 8), (4, 5)}


def test_second_table(g2):
    _, res = g2
    assert table(res) == (
        (3, 5, 9, 15, 1, 0, 5, 5, 5),
        (1, 2, 3, 5, 0, 1, 3, 4, 5),
        (1, 2, 4, 7, 0, 0, 3, 4, 5),
    )
    assert set(res.edges) == {(1, 3), (3, 4), (2, 4), (2, 7), (7, 8), (8, 9), (6, 9), (4, 5)}


def test_smooth_germ_needs_nothing():
    res = resolve_pair(parse_germ("x"))
    assert [(d.kind, d.Nf, d.Ng, d.k) for d in res.divisors] == [("strict_f", 1, 0, 0)]
    assert res.edges == () and res.history == ()


def test_before_separation_g1():
    res = resolve_pair(parse_germ(G1))
    assert len(res.divisors) == 6
    assert mixed_sign_edges(res) == [(1, 6)]
    sep = separate_dicritical(res)
    assert mixed_sign_edges(sep) == []
    assert [(d.Nfg, d.k) for d in sep.divisors[6:]] == [(1, 2), (0, 3)]


def test_separation_is_identity_without_poles():
    res = resolve_pair(parse_germ("y^3+x^5"))
    assert separate_dicritical(res).divisors == res.divisors


def test_single_separating_blowup():
    res = log_resolution(parse_germ("x/y"))
    new = res.divisors[-1]
    assert (new.kind, new.Nfg, new.k) == ("exceptional", 0, 1)
    assert classify(res) == ((1,), (2,), (3,))


def test_ord_along_examples(g1):
    _, res = g1
    assert ord_along(res, 4, parse_poly("x")) == 3
    assert ord_along(res, 4, parse_poly("y")) == 5
    assert ord_along(res, 4, parse_poly("y^3+x^5")) == 15
    for d in res.divisors:
        assert ord_along(res, d.id, parse_poly("1")) == 0
    with pytest.raises(ValueError):
        ord_along(res, 1, MPoly.zero(("x", "y")))


def test_classify_g1(g1):
    _, res = g1
    assert classify(res) == ((1, 2, 3, 4, 5, 7), (6,), (8,))
    assert classify(log_resolution(parse_germ("y^3+x^5")))[1:] == ((), ())


GERMS = [
    G1,
    G2,
    "x/y",
    "(y^2+x^4)/(x^2+y^4)",
    "(x^2-y^3)/(x^3-y^2)",
    "(y^2-x^3)*(y^2-2*x^3)",
    "(x^2-y^2)*(x-2*y)/(y^2-x^3)",
    "y^2-2*x^2",
    "(y^2-x^5)/(y-x^2)",
]


@pytest.mark.parametrize("text", GERMS)
def test_self_consistency(text):
    germ, res = resolved(text)
    for d in res.divisors:
        assert ord_along(res, d.id, germ.f) == d.Nf
        assert ord_along(res, d.id, germ.g) == d.Ng
        assert jacobian_order(res, d.id) == d.k
        assert d.Nfg == d.Nf - d.Ng
    assert mixed_sign_edges(res) == []


@pytest.mark.parametrize("text", GERMS)
def test_additive_recursion(text):
    _, res = resolved(text)
    for h in res.history:
        d = res.divisor(h["divisor"])
        centre = [res.divisor(c) for c in h["center"]]
        exc = [c for c in centre if c.kind == "exceptional"]
        assert d.k == sum(c.k for c in exc) + 1


@given(
    st.sampled_from(GERMS[:5]),
    st.sampled_from(["x", "y", "x+y", "y^2-x^3", "x*y+y^3"]),
    st.sampled_from(["x", "y^2+x", "1+x", "x^2-y"]),
)
@settings(max_examples=40, deadline=None)
def test_ord_along_is_additive(text, a, b):
    _, res = resolved(text)
    p, q = parse_poly(a), parse_poly(b)
    for d in res.divisors:
        assert ord_along(res, d.id, p * q) == ord_along(res, d.id, p) + ord_along(res, d.id, q)


def test_json_round_trip(g2):
    _, res = g2
    data = json.loads(json.dumps(to_json(res)))
    back = from_json(data)
    assert back.divisors == res.divisors and back.edges == res.edges
    assert to_json(back) == to_json(res)
    assert all(isinstance(d["Nf"], int) for d in data["divisors"])


def test_irrational_tangents_are_fine_when_transversal():
    res = log_resolution(parse_germ("y^2-2*x^2"))
    assert [(d.Nf, d.k) for d in res.divisors] == [(2, 1), (1, 0)]
    assert res.edges == ((1, 2),)


def test_irrational_centre_is_reported():
    # two branches with the same irrational tangent need a blow-up off Q
    with pytest.raises(UnsupportedExtension):
        resolve_pair(parse_germ("(y^2-2*x^2)^2 + x^5"))
    with pytest.raises(UnsupportedExtension):
        log_resolution(parse_germ("(y^2-2*x^2)/(y^2-2*x^2+x^3)"))


def test_iteration_cap():
    with pytest.raises(IterationCap):
        resolve_pair(parse_germ("y^3+x^5"), cap=2)
