from fractions import Fraction as Fr

import pytest
from hypothesis import given, strategies as st

from merogerm.invariants import (
    InvariantError,
    candidate_bs_roots,
    candidate_jumping_numbers,
    candidate_zeta_poles,
    convergence_strip,
    lct,
)
from merogerm.parser import parse_germ

from conftest import F, G1, G2, QUARTIC, resolved


def test_lct_values():
    assert lct(parse_germ(F)) == Fr(8, 15)
    assert lct(parse_germ("y^2+x^4")) == Fr(3, 4)
    assert lct(parse_germ("x^2+y^4")) == Fr(3, 4)
    assert lct(parse_germ("x*y")) == 1
    _, res = resolved(QUARTIC)
    assert lct(res, "f") == lct(res, "g") == Fr(3, 4)


def test_lct_of_unit():
    with pytest.raises(InvariantError):
        lct(parse_germ(F), "g")
    with pytest.raises(ValueError):
        lct(parse_germ(F), "h")


def test_strip():
    s = convergence_strip(resolved(QUARTIC)[1])
    assert (s.lo, s.hi) == (Fr(-3, 4), Fr(3, 4))
    assert 0 in s and Fr(3, 4) not in s and Fr(-3, 4) not in s
    assert str(s) == "(-3/4, 3/4)"
    s = convergence_strip(parse_germ(F))
    assert s.hi is None and str(s) == "(-8/15, +inf)"


def test_jn_candidates_contain_lct():
    _, res = resolved(F)
    c = candidate_jumping_numbers(res, 1)
    assert c[0].value == Fr(8, 15)
    assert {t.value for t in c} >= {Fr(8, 15), Fr(11, 15), Fr(13, 15), Fr(14, 15), Fr(1)}


def test_jn_candidates_tagged(g1):
    _, res = g1
    c = {t.value: t.divisors for t in candidate_jumping_numbers(res, 1)}
    assert c[Fr(8, 12)] == (4,)
    assert all(res.divisor(i).Nfg > 0 for ds in c.values() for i in ds)


def test_bs_candidates(g1):
    _, res = g1
    c = candidate_bs_roots(res, 2)
    assert Fr(-8, 12) in c and Fr(-1) in c
    assert Fr(1, 2) not in c and 0 not in c
    assert c.enumerated[0] == max(c.enumerated)
    assert len(c.enumerated) == len(set(c.enumerated))
    assert candidate_bs_roots(res, 0).enumerated == tuple(
        sorted({-Fr(d.k + 1, d.Nfg) for d in res.divisors if d.Nfg > 0}, reverse=True)
    )
    with pytest.raises(ValueError):
        candidate_bs_roots(res, -1)


@given(st.integers(0, 6), st.integers(0, 40))
def test_membership_matches_enumeration(L, seed):
    _, res = resolved(G2)
    c = candidate_bs_roots(res, L)
    for r in c.enumerated:
        assert r in c
    r = -Fr(seed, 7)
    if r in c and r not in c.enumerated:
        # only beyond the enumerated depth
        assert -r > min(-v for v in c.enumerated)


def test_zeta_report():
    rep = candidate_zeta_poles(resolved(QUARTIC)[1], K=2, L=1)
    assert rep.alpha == Fr(3, 4)
    assert not rep.zeta.is_empty() and not rep.xi.is_empty()
    for z in rep.zeta.enumerated:
        assert z in rep.left and z - rep.alpha in rep.left
    for x in rep.xi.enumerated:
        assert -x in rep.right and 2 * rep.alpha - x in rep.right
    assert "candidate" in rep.note
    assert rep.to_json()["lattice_depth"] == 2


def test_zeta_needs_nonunit_g():
    with pytest.raises(InvariantError):
        candidate_zeta_poles(parse_germ(F))


def test_zeta_of_reciprocal_swaps_sides():
    a = candidate_zeta_poles(parse_germ("x/y"), K=1, L=1)
    b = candidate_zeta_poles(parse_germ("y/x"), K=1, L=1)
    assert a.zeta.enumerated == b.xi.enumerated
    assert a.xi.enumerated == b.zeta.enumerated


def test_zeta_monomial_lattice():
    rep = candidate_zeta_poles(parse_germ("x/y"), K=2, L=0)
    assert rep.alpha == 1
    assert rep.zeta.enumerated == (Fr(-1),)
    assert rep.left == (-1, -2, -3)
    assert rep.right == (1, 2, 3)


def test_zeta_first_germ():
    rep = candidate_zeta_poles(resolved(G1)[1], K=1, L=0)
    assert rep.alpha == 1
    assert Fr(-8, 12) in rep.left and Fr(-8, 12) - 1 in rep.left


def test_zeta_without_zeros():
    # no zero divisors: nothing on the left, but the pole divisor of g still
    # feeds xi, so the right-hand lattice is not empty
    rep = candidate_zeta_poles(parse_germ("1/x"), K=1, L=0)
    assert rep.zeta.is_empty() and rep.left == ()
    assert rep.right == (1, 2)
