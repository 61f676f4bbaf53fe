import random
import warnings
from fractions import Fraction as Fr

import pytest
from hypothesis import given, settings, strategies as st

from merogerm.algebra import MPoly
from merogerm.multiplier import (
    StabilityWarning,
    check_colon_relation,
    check_integer_power,
    check_skoda,
    colon_space,
    constancy_regions,
    constraint_vector,
    full_ideal,
    ideal_from_generators,
    jumping_numbers,
    membership,
    mixed_multiplier_ideal,
    monomials,
    multiplier_ideal,
    periodicity_witness,
    times,
)
from merogerm.parser import parse_poly

from conftest import F, G1, G2, QUARTIC, XY, resolved

V = ("x", "y")


def P(text):
    return parse_poly(text, V)


def ideal(*gens, D=8):
    return ideal_from_generators([P(g) for g in gens], V, D)


def test_monomials_order():
    assert monomials(2, 2) == ((0, 0), (0, 1), (1, 0), (0, 2), (1, 1), (2, 0))
    assert len(monomials(3, 4)) == 35


def test_constraint_vectors(g1):
    _, res = g1
    assert dict(constraint_vector(res, Fr(8, 12)).bounds) == {4: 1}
    assert not constraint_vector(res, Fr(7, 12)).bounds
    assert not constraint_vector(res, 0).bounds


def test_known_ideals(g1, g2, cusp):
    _, r1 = g1
    assert multiplier_ideal(r1, Fr(8, 12), 8).same_as(ideal("x", "y"))
    assert multiplier_ideal(r1, Fr(11, 12), 8).same_as(ideal("x^2", "y"))
    assert multiplier_ideal(g2[1], Fr(1, 2), 8).is_unit()
    _, rc = cusp
    assert mixed_multiplier_ideal(rc, Fr(8, 15), 0, 8).same_as(ideal("x", "y"))
    assert mixed_multiplier_ideal(rc, Fr(14, 15), 0, 8).same_as(ideal("x^3", "x*y", "y^2"))
    assert mixed_multiplier_ideal(rc, 0, 0, 4).is_unit()


def test_generators_printed(g1):
    J = multiplier_ideal(g1[1], Fr(11, 12), 8)
    assert str(J) == "(x^2, y)"
    assert str(full_ideal(V, 3)) == "(1)"


def test_jumping_numbers():
    got = [l for l, _ in jumping_numbers(resolved(G1)[1], 4)]
    assert got == [Fr(8, 12), Fr(11, 12), 1, Fr(23, 12), 2, 3, 4]
    got = [l for l, _ in jumping_numbers(resolved(G2)[1], 3)]
    assert got == [Fr(8, 10), 1, 2, 3]
    got = [l for l, _ in jumping_numbers(resolved(F)[1], 1)]
    assert got == [Fr(8, 15), Fr(11, 15), Fr(13, 15), Fr(14, 15), 1]


def test_regions_chain(g2):
    germ, res = g2
    regs = constancy_regions(res, 2, 10)
    assert regs[0].ideal.is_unit() and regs[0].hi == Fr(4, 5)
    assert regs[1].ideal.same_as(ideal("x", "y", D=10))
    assert regs[2].ideal.same_as(ideal_from_generators([germ.f], V, 10))
    assert regs[-1].hi is None


@pytest.mark.parametrize("text", [G1, G2, XY])
def test_monotone_in_lambda(text):
    _, res = resolved(text)
    lams = [Fr(i, 6) for i in range(0, 15)]
    ideals = [multiplier_ideal(res, l, 9, check_stability=False) for l in lams]
    for a, b in zip(ideals, ideals[1:]):
        assert all(a.contains(p) for p in b.basis)


@pytest.mark.parametrize("text", [G1, G2])
def test_smaller_than_pole_free(text):
    # J(f^lam) sits inside J((f/g)^lam)
    _, res = resolved(text)
    _, rf = resolved(F)
    for lam in (Fr(2, 3), Fr(1), Fr(7, 4)):
        big = multiplier_ideal(res, lam, 9, check_stability=False)
        small = mixed_multiplier_ideal(rf, lam, 0, 9, check_stability=False)
        assert all(big.contains(p) for p in small.basis)


def test_membership_reduction():
    J = ideal("x^2", "y")
    assert P("x^3+x*y") in J
    assert P("x") not in J
    assert J.normal_form(P("x+y")) == P("x")
    with pytest.raises(ValueError):
        J.normal_form(P("x^9"))


@given(st.lists(st.tuples(st.integers(0, 5), st.integers(0, 5), st.integers(-3, 3)), max_size=6))
@settings(max_examples=60, deadline=None)
def test_oracle_matches_staircase(terms):
    _, res = resolved(G1)
    h = MPoly(V, {})
    for i, j, c in terms:
        h = h + MPoly.monomial((i, j), V, c)
    for lam in (Fr(8, 12), Fr(11, 12), Fr(23, 12)):
        J = multiplier_ideal(res, lam, 10, check_stability=False)
        assert J.contains(h) == membership(res, h, lam)


def test_colon_and_times():
    J = ideal("x^2", "y", D=6)
    C = colon_space(J, P("x"), 5)
    assert C.same_as(ideal("x", "y", D=5))
    T = times(ideal("x", "y", D=5), P("x"), 6)
    assert T.same_as(ideal("x^2", "x*y", D=6))
    with pytest.raises(ValueError):
        colon_space(J, P("x^2"), 5)


@pytest.mark.parametrize("text", [G1, G2, XY, QUARTIC])
def test_structure_checks(text):
    germ, res = resolved(text)
    assert check_integer_power(germ, res, 1)
    assert check_skoda(germ, res, Fr(1, 2))
    assert check_colon_relation(germ, res, Fr(1, 2), 1)


def test_periodicity_fails(g1):
    germ, res = g1
    w = periodicity_witness(germ, res, Fr(8, 12))
    assert not w.periodic
    assert w.shifted.same_as(ideal_from_generators([germ.f], V, w.shifted.degree))


def test_stability_warning(g1):
    _, res = g1
    with warnings.catch_warnings(record=True) as caught:
        warnings.simplefilter("always")
        multiplier_ideal(res, Fr(11, 12), 1)
    assert any(issubclass(w.category, StabilityWarning) for w in caught)


def test_default_degree_is_quiet(g1):
    _, res = g1
    with warnings.catch_warnings():
        warnings.simplefilter("error", StabilityWarning)
        J = multiplier_ideal(res, Fr(23, 12))
    assert J.stable and J.degree >= J.certified


def test_bad_arguments(g1):
    _, res = g1
    with pytest.raises(ValueError):
        multiplier_ideal(res, -1)
    with pytest.raises(ValueError):
        jumping_numbers(res, 0)
    with pytest.raises(ValueError):
        check_integer_power(None, res, 0)
