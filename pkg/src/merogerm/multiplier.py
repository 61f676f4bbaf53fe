"""Multiplier ideals of meromorphic plane germs through the valuative criterion.

An ideal is represented by its intersection with the space ``V_D`` of
polynomials of degree at most ``D``, stored as the reduced echelon basis
for the graded-lex order (every basis element has a distinct leading
monomial, with coefficient 1, and no other basis element uses it).

Constraints ``ord_E(h) >= c_E`` are linear in the coefficients of ``h``.
Strict-transform constraints say ``q^c | h``; they are peeled off first by
writing ``h = Q r`` with ``Q`` the product of the required factors, and the
exceptional constraints become coefficient conditions on ``r`` pulled back
through the divisor's chart modulo ``u^c``.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import MPoly, as_rat, fmt_rat, format_poly, grlex_key
from .invariants import candidate_bs_roots, candidate_jumping_numbers, lct, InvariantError
from .linalg import nullspace, rref
from .parser import MeromorphicGerm
from .resolution import ResolutionData, ord_along

Exp = Tuple[int, ...]


class StabilityWarning(UserWarning):
    """Generators found at truncation D changed when recomputed at D + 2."""


# ---------------------------------------------------------------------------
# monomial spaces


@lru_cache(maxsize=64)
def monomials(n: int, D: int) -> Tuple[Exp, ...]:
    """Exponents of total degree <= D in ``n`` variables, ascending grlex."""
    out: List[Exp] = []

    def rec(prefix, left, rest):
        if rest == 1:
            out.append(prefix + (left,))
            return
        for i in range(left, -1, -1):
            rec(prefix + (i,), left - i, rest - 1)

    for d in range(D + 1):
        if n == 0:
            break
        rec((), d, n)
    out.sort(key=grlex_key)
    return tuple(out)


def _reduced_basis(polys: Iterable[MPoly], vars, D: int) -> Tuple[MPoly, ...]:
    """Reduced echelon basis of the span (leading monomial = largest)."""
    cols = list(reversed(monomials(len(vars), D)))
    index = {e: i for i, e in enumerate(cols)}
    rows = []
    for p in polys:
        if p.is_zero():
            continue
        if p.degree() > D:
            raise ValueError(f"polynomial of degree {p.degree()} exceeds truncation {D}")
        row = [Fraction(0)] * len(cols)
        for e, c in p.terms.items():
            row[index[e]] = c
        rows.append(row)
    if not rows:
        return ()
    red, piv = rref(rows, len(cols))
    out = []
    for r, pc in zip(red, piv):
        lead = r[pc]
        out.append(MPoly(vars, {cols[j]: Fraction(v, lead) for j, v in enumerate(r) if v}))
    out.sort(key=lambda p: grlex_key(p.leading()[0]))
    return tuple(out)


class IdealBasis:
    """``J ∩ V_D`` in reduced echelon form."""

    def __init__(self, vars, degree: int, basis: Sequence[MPoly], certified: Optional[int] = None,
                 stable: bool = True):
        self.vars = tuple(vars)
        self.degree = degree
        self.basis = tuple(basis)
        self.certified = certified
        self.stable = stable
        self._lead = {p.leading()[0]: p for p in self.basis}
        self._gens = None

    # -- structure ----------------------------------------------------
    @property
    def leads(self) -> List[Exp]:
        return sorted(self._lead, key=grlex_key)

    def staircase(self) -> List[Exp]:
        """Monomials of degree <= D outside the leading-monomial set."""
        return [e for e in monomials(len(self.vars), self.degree) if e not in self._lead]

    def is_unit(self) -> bool:
        return (0,) * len(self.vars) in self._lead

    def is_zero(self) -> bool:
        return not self.basis

    def dimension(self) -> int:
        return len(self.basis)

    def restrict(self, d: int) -> "IdealBasis":
        if d > self.degree:
            raise ValueError("cannot restrict to a larger truncation")
        return IdealBasis(
            self.vars, d, [p for p in self.basis if p.degree() <= d], self.certified, self.stable
        )

    def same_as(self, other: "IdealBasis", upto: Optional[int] = None) -> bool:
        d = min(self.degree, other.degree) if upto is None else upto
        a = self if self.degree == d else self.restrict(d)
        b = other if other.degree == d else other.restrict(d)
        return a.basis == b.basis

    # -- membership ---------------------------------------------------
    def normal_form(self, h: MPoly) -> MPoly:
        if h.vars != self.vars:
            h = h.with_vars(self.vars)
        if not h.is_zero() and h.degree() > self.degree:
            raise ValueError(f"degree {h.degree()} exceeds truncation {self.degree}")
        out = h
        for e, c in h.terms.items():
            b = self._lead.get(e)
            if b is not None:
                out = out - b.scale(c)
        return out

    def contains(self, h: MPoly) -> bool:
        return self.normal_form(h).is_zero()

    __contains__ = contains

    # -- generators ---------------------------------------------------
    @property
    def generators(self) -> Tuple[MPoly, ...]:
        if self._gens is None:
            self._gens = extract_generators(self)
        return self._gens

    def to_json(self):
        return {
            "truncation": self.degree,
            "generators": [format_poly(g) for g in self.generators],
            "stable": self.stable,
            "certified_degree": self.certified,
        }

    def __str__(self):
        if self.is_unit():
            return "(1)"
        if self.is_zero():
            return "(0)"
        return "(" + ", ".join(format_poly(g) for g in self.generators) + ")"

    def __repr__(self):
        return f"IdealBasis(D={self.degree}, {self})"


class _SparseEchelon:
    """Top-reduced sparse rows keyed by leading monomial."""

    def __init__(self):
        self.rows: Dict[Exp, Dict[Exp, Fraction]] = {}

    def reduce(self, terms: Dict[Exp, Fraction]) -> Dict[Exp, Fraction]:
        v = dict(terms)
        while v:
            top = max(v, key=grlex_key)
            row = self.rows.get(top)
            if row is None:
                return v
            c = v[top]
            for e, rc in row.items():
                nv = v.get(e, 0) - c * rc
                if nv:
                    v[e] = nv
                else:
                    v.pop(e, None)
        return v

    def add(self, terms) -> bool:
        v = self.reduce(terms)
        if not v:
            return False
        top = max(v, key=grlex_key)
        inv = 1 / v[top]
        self.rows[top] = {e: c * inv for e, c in v.items()}
        return True


def _span_of_multiples(gens: Sequence[MPoly], D: int, skip: Optional[int] = None) -> _SparseEchelon:
    ech = _SparseEchelon()
    for i, g in enumerate(gens):
        if i == skip:
            continue
        _add_multiples(ech, g, D)
    return ech


def _add_multiples(ech: _SparseEchelon, g: MPoly, D: int):
    n = len(g.vars)
    for m in monomials(n, D - g.degree()):
        ech.add({tuple(a + b for a, b in zip(e, m)): c for e, c in g.terms.items()})


def extract_generators(J: IdealBasis) -> Tuple[MPoly, ...]:
    """Generators of the ideal spanned by ``J``'s basis, minimal up to degree ``D``."""
    if J.is_unit():
        return (MPoly.const(1, J.vars),)
    gens: List[MPoly] = []
    ech = _SparseEchelon()
    for b in J.basis:
        if ech.reduce(b.terms):
            gens.append(b)
            _add_multiples(ech, b, J.degree)
    if 2 < len(gens) <= 12:
        i = 0
        while i < len(gens):
            rest = _span_of_multiples(gens, J.degree, skip=i)
            if not rest.reduce(gens[i].terms):
                gens.pop(i)
            else:
                i += 1
    gens.sort(key=lambda g: grlex_key(g.leading()[0]), reverse=True)
    return tuple(gens)


def ideal_from_generators(gens: Sequence[MPoly], vars, D: int) -> IdealBasis:
    """``(gens) ∩ V_D``."""
    vars = tuple(vars)
    polys = []
    for g in gens:
        if g.vars != vars:
            g = g.with_vars(vars)
        if g.is_zero() or g.degree() > D:
            continue
        for m in monomials(len(vars), D - g.degree()):
            polys.append(g.mul_monomial(m))
    return IdealBasis(vars, D, _reduced_basis(polys, vars, D))


def full_ideal(vars, D: int) -> IdealBasis:
    vars = tuple(vars)
    return IdealBasis(vars, D, [MPoly.monomial(e, vars) for e in monomials(len(vars), D)], 0)


# ---------------------------------------------------------------------------
# constraints


@dataclass(frozen=True)
class ConstraintVector:
    """Positive lower bounds ``ord_E(h) >= c_E``."""

    bounds: Tuple[Tuple[int, int], ...]

    def as_dict(self) -> Dict[int, int]:
        return dict(self.bounds)

    def __bool__(self):
        return bool(self.bounds)

    def to_json(self):
        return {f"E{i}": c for i, c in self.bounds}


def constraint_vector(res: ResolutionData, lam) -> ConstraintVector:
    """``[lam * N_fg,i] - k_i`` over zero divisors, positive entries only."""
    lam = as_rat(lam)
    if lam < 0:
        raise ValueError("lambda must be non-negative")
    out = []
    for d in res.divisors:
        if d.Nfg > 0:
            c = floor(lam * d.Nfg) - d.k
            if c > 0:
                out.append((d.id, c))
    return ConstraintVector(tuple(out))


def mixed_constraint_vector(res: ResolutionData, lam1, lam2) -> ConstraintVector:
    """``[lam1 N_f,i + lam2 N_g,i] - k_i`` over all divisors."""
    lam1, lam2 = as_rat(lam1), as_rat(lam2)
    if lam1 < 0 or lam2 < 0:
        raise ValueError("exponents must be non-negative")
    out = []
    for d in res.divisors:
        c = floor(lam1 * d.Nf + lam2 * d.Ng) - d.k
        if c > 0:
            out.append((d.id, c))
    return ConstraintVector(tuple(out))


def satisfies(res: ResolutionData, h: MPoly, cv: ConstraintVector) -> bool:
    if h.is_zero():
        return True
    return all(ord_along(res, i, h) >= c for i, c in cv.bounds)


def membership(res: ResolutionData, h: MPoly, lam) -> bool:
    """Untruncated test ``h in J((f/g)^lam)`` straight from the valuations."""
    return satisfies(res, h, constraint_vector(res, lam))


def _split(res: ResolutionData, cv: ConstraintVector):
    """``Q`` and the reduced exceptional bounds ``c - ord_E(Q)``."""
    vars = res.germ.vars
    Q = MPoly.const(1, vars)
    for i, c in cv.bounds:
        d = res.divisor(i)
        if d.kind != "exceptional":
            Q = Q * d.factor ** c
    exc = []
    for i, c in cv.bounds:
        d = res.divisor(i)
        if d.kind == "exceptional":
            c2 = c - ord_along(res, i, Q)
            if c2 > 0:
                exc.append((d, c2))
    return Q, exc


def certified_degree(res: ResolutionData, cv: ConstraintVector) -> int:
    """A degree bound for generators of the ideal cut out by ``cv``.

    Every monomial of degree ``m`` has ``ord_E >= m * min(ord_E x, ord_E y)``,
    so the quotient ideal of ``r`` contains a power of the maximal ideal and
    is generated in degree at most that power.
    """
    Q, exc = _split(res, cv)
    vars = res.germ.vars
    M = 0
    for d, c in exc:
        low = min(ord_along(res, d.id, MPoly.var(v, vars)) for v in vars)
        M = max(M, -(-c // low))
    return Q.degree() + M


def default_degree(res: ResolutionData, cv: ConstraintVector, lam=0) -> int:
    base = certified_degree(res, cv) + 2
    f = res.germ.f
    floor_bound = 0 if f.is_constant() else f.degree() * ceil(as_rat(lam))
    return max(base, floor_bound, 1)


def _truncated_powers(p: MPoly, n: int, bound: int) -> List[MPoly]:
    out = [MPoly.const(1, p.vars)]
    for _ in range(n):
        out.append((out[-1] * p).truncate("u", bound))
    return out


def _kernel_ideal(res: ResolutionData, cv: ConstraintVector, D: int) -> IdealBasis:
    vars = res.germ.vars
    n = len(vars)
    if not cv:
        return full_ideal(vars, D)
    Q, exc = _split(res, cv)
    certified = certified_degree(res, cv)
    dq = Q.degree()
    if dq > D:
        return IdealBasis(vars, D, (), certified)
    Dr = D - dq
    cols = monomials(n, Dr)
    rows: Dict[Tuple[int, int, int], Dict[int, Fraction]] = {}
    for d, c in exc:
        ch = d.chart
        xs = _truncated_powers(ch.X, Dr, c)
        ys = _truncated_powers(ch.Y, Dr, c)
        for j, (a, b) in enumerate(cols):
            p = (xs[a] * ys[b]).truncate("u", c)
            for (iu, iv), coef in p.terms.items():
                rows.setdefault((d.id, iu, iv), {})[j] = coef
    if rows:
        dense = []
        for key in sorted(rows):
            r = [Fraction(0)] * len(cols)
            for j, v in rows[key].items():
                r[j] = v
            dense.append(r)
        kernel = nullspace(dense, len(cols))
        rs = [MPoly(vars, {cols[j]: v for j, v in enumerate(vec) if v}) for vec in kernel]
    else:
        rs = [MPoly.monomial(e, vars) for e in cols]
    if dq == 0:
        rs.sort(key=lambda p: grlex_key(p.leading()[0]))
        return IdealBasis(vars, D, rs, certified)
    return IdealBasis(vars, D, _reduced_basis([Q * r for r in rs], vars, D), certified)


_CACHE: Dict[Tuple[int, ConstraintVector, int], IdealBasis] = {}


def ideal_for_constraints(res: ResolutionData, cv: ConstraintVector, D: int,
                          check_stability: bool = True) -> IdealBasis:
    key = (id(res), cv, D)
    hit = _CACHE.get(key)
    if hit is not None and hit._res is res:
        J = hit
    else:
        J = _kernel_ideal(res, cv, D)
        J._res = res
        if len(_CACHE) > 512:
            _CACHE.clear()
        _CACHE[key] = J
    if check_stability and J.certified is not None and D < J.certified:
        wider = _kernel_ideal(res, cv, D + 2)
        if len(wider.generators) != len(J.generators) or any(
            g.degree() > D for g in wider.generators
        ):
            J.stable = False
            warnings.warn(
                f"generators changed between truncation {D} and {D + 2}; raise --degree",
                StabilityWarning,
                stacklevel=3,
            )
    return J


def multiplier_ideal(res: ResolutionData, lam, D: Optional[int] = None,
                     check_stability: bool = True) -> IdealBasis:
    """``J((f/g)^lam) ∩ V_D``."""
    lam = as_rat(lam)
    cv = constraint_vector(res, lam)
    if D is None:
        D = default_degree(res, cv, lam)
    if D < 1:
        raise ValueError("truncation degree must be at least 1")
    return ideal_for_constraints(res, cv, D, check_stability)


def mixed_multiplier_ideal(res: ResolutionData, lam1, lam2, D: Optional[int] = None,
                           check_stability: bool = True) -> IdealBasis:
    """``J(f^lam1 g^lam2) ∩ V_D``."""
    cv = mixed_constraint_vector(res, lam1, lam2)
    if D is None:
        D = default_degree(res, cv, as_rat(lam1))
    if D < 1:
        raise ValueError("truncation degree must be at least 1")
    return ideal_for_constraints(res, cv, D, check_stability)


# ---------------------------------------------------------------------------
# jumping numbers


@dataclass(frozen=True)
class Region:
    lo: Fraction
    hi: Optional[Fraction]  # None: open ended
    ideal: IdealBasis

    def to_json(self):
        d = {"lambda": fmt_rat(self.lo),
             "interval": [fmt_rat(self.lo), None if self.hi is None else fmt_rat(self.hi)]}
        d.update(self.ideal.to_json())
        return d


def _pair_degree(res, lams, D):
    if D is not None:
        return D
    return max(default_degree(res, constraint_vector(res, l), l) for l in lams)


def jumping_numbers(res: ResolutionData, lam_max, D: Optional[int] = None) -> List[Tuple[Fraction, IdealBasis]]:
    """Jumping numbers in ``(0, lam_max]`` with the ideal starting at each."""
    lam_max = as_rat(lam_max)
    if lam_max <= 0:
        raise ValueError("lambda_max must be positive")
    out = []
    prev = Fraction(0)
    for cand in candidate_jumping_numbers(res, lam_max):
        lam = cand.value
        mid = (prev + lam) / 2
        d = _pair_degree(res, (mid, lam), D)
        before = multiplier_ideal(res, mid, d, check_stability=D is not None)
        at = multiplier_ideal(res, lam, d, check_stability=D is not None)
        if not before.same_as(at):
            out.append((lam, at))
        prev = lam
    return out


def constancy_regions(res: ResolutionData, lam_max, D: Optional[int] = None) -> List[Region]:
    """``[0, j1), [j1, j2), ...`` up to ``lam_max`` with the ideal on each."""
    jumps = jumping_numbers(res, lam_max, D)
    starts = [Fraction(0)] + [l for l, _ in jumps]
    regions = []
    for i, lo in enumerate(starts):
        hi = starts[i + 1] if i + 1 < len(starts) else None
        J = jumps[i - 1][1] if i else multiplier_ideal(res, 0, D or 1)
        regions.append(Region(lo, hi, J))
    return regions


# ---------------------------------------------------------------------------
# structural checks


def colon_space(J: IdealBasis, p: MPoly, d: int) -> IdealBasis:
    """``{s in V_d : p s in J}`` by staircase reduction; needs ``J.degree >= d + deg p``."""
    vars = J.vars
    if p.vars != vars:
        p = p.with_vars(vars)
    if J.degree < d + p.degree():
        raise ValueError("truncation too small for the colon computation")
    cols = monomials(len(vars), d)
    target = monomials(len(vars), J.degree)
    tindex = {e: i for i, e in enumerate(target)}
    dense = [[Fraction(0)] * len(cols) for _ in target]
    for j, m in enumerate(cols):
        nf = J.normal_form(p.mul_monomial(m))
        for e, c in nf.terms.items():
            dense[tindex[e]][j] = c
    dense = [r for r in dense if any(r)]
    if not dense:
        return full_ideal(vars, d)
    kernel = nullspace(dense, len(cols))
    basis = [MPoly(vars, {cols[j]: v for j, v in enumerate(vec) if v}) for vec in kernel]
    basis.sort(key=lambda q: grlex_key(q.leading()[0]))
    return IdealBasis(vars, d, basis)


def times(J: IdealBasis, p: MPoly, D: int) -> IdealBasis:
    """``p * J`` truncated at ``D``; needs ``J.degree >= D - deg p``."""
    if p.vars != J.vars:
        p = p.with_vars(J.vars)
    d = D - p.degree()
    if d < 0:
        return IdealBasis(J.vars, D, ())
    src = J if J.degree == d else J.restrict(d)
    return IdealBasis(J.vars, D, _reduced_basis([p * b for b in src.basis], J.vars, D))


def check_integer_power(germ: MeromorphicGerm, res: ResolutionData, n: int, D: Optional[int] = None) -> bool:
    """``J((f/g)^n) = (f^n)`` at truncation ``D``."""
    if n < 1:
        raise ValueError("n must be positive")
    J = multiplier_ideal(res, n, D, check_stability=D is not None)
    return J.same_as(ideal_from_generators([germ.f ** n], germ.vars, J.degree))


def check_skoda(germ: MeromorphicGerm, res: ResolutionData, lam, ell: int = 1,
                D: Optional[int] = None) -> bool:
    """``J((f/g)^(lam+l)) = (f^l/g^l J((f/g)^lam)) ∩ R`` at truncation ``D``."""
    lam = as_rat(lam)
    if ell < 1 or lam < 0:
        raise ValueError("need lam >= 0 and l >= 1")
    left = multiplier_ideal(res, lam + ell, D, check_stability=D is not None)
    D = left.degree
    fl, gl = germ.f ** ell, germ.g ** ell
    d = D - fl.degree()
    if d < 0:
        return left.is_zero()
    inner = multiplier_ideal(res, lam, d + gl.degree(), check_stability=False)
    right = times(colon_space(inner, gl, d), fl, D)
    return left.same_as(right)


def check_colon_relation(germ: MeromorphicGerm, res: ResolutionData, lam, t: int,
                         D: Optional[int] = None) -> bool:
    """``J(f^lam g^(t-lam)) : g^t = J((f/g)^lam)`` at truncation ``D``."""
    lam = as_rat(lam)
    if not 0 <= lam <= t:
        raise ValueError("need 0 <= lam <= t")
    right = multiplier_ideal(res, lam, D, check_stability=D is not None)
    D = right.degree
    gt = germ.g ** t
    mixed = mixed_multiplier_ideal(res, lam, t - lam, D + gt.degree(), check_stability=False)
    return colon_space(mixed, gt, D).same_as(right)


@dataclass(frozen=True)
class PeriodicityWitness:
    lam: Fraction
    shifted: IdealBasis  # J((f/g)^(lam+1))
    product: IdealBasis  # f * J((f/g)^lam)

    @property
    def periodic(self) -> bool:
        return self.shifted.same_as(self.product)


def periodicity_witness(germ: MeromorphicGerm, res: ResolutionData, lam, D: Optional[int] = None) -> PeriodicityWitness:
    lam = as_rat(lam)
    shifted = multiplier_ideal(res, lam + 1, D, check_stability=D is not None)
    D = shifted.degree
    base = multiplier_ideal(res, lam, max(D - germ.f.degree(), 1), check_stability=False)
    return PeriodicityWitness(lam, shifted, times(base, germ.f, D))


@dataclass(frozen=True)
class CrosscheckEntry:
    lam: Fraction
    prediction: Fraction
    in_candidates: bool
    divisors: Tuple[int, ...]

    def to_json(self):
        return {
            "lambda": fmt_rat(self.lam),
            "prediction": f"{fmt_rat(self.prediction)} is a root of b_(f/g)",
            "in_candidates": self.in_candidates,
            "divisors": list(self.divisors),
        }


@dataclass(frozen=True)
class CrosscheckReport:
    window: Tuple[Fraction, Fraction]
    entries: Tuple[CrosscheckEntry, ...]

    @property
    def ok(self) -> bool:
        return all(e.in_candidates for e in self.entries)

    def to_json(self):
        return {
            "window": [fmt_rat(self.window[0]), fmt_rat(self.window[1])],
            "entries": [e.to_json() for e in self.entries],
            "all_in_candidates": self.ok,
        }


def jn_bs_crosscheck(germ: MeromorphicGerm, res: ResolutionData, D: Optional[int] = None) -> CrosscheckReport:
    """Jumping numbers in ``(1 - lct(g), 1]`` whose negatives should be roots of ``b_(f/g)``."""
    try:
        lo = max(Fraction(0), 1 - lct(res, "g"))
    except InvariantError:
        lo = Fraction(0)
    cands = candidate_bs_roots(res, 0)
    entries = []
    if cands.generators:
        for lam, _ in jumping_numbers(res, 1, D):
            if lam <= lo:
                continue
            hits = tuple(
                i for i, base, step in cands.generators
                if (lam - base) / step >= 0 and ((lam - base) / step).denominator == 1
            )
            entries.append(CrosscheckEntry(lam, -lam, bool(hits), hits))
    return CrosscheckReport((lo, Fraction(1)), tuple(entries))
