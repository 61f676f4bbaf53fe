"""Numerical invariants read off a log resolution."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Tuple, Union

from .algebra import as_rat, fmt_rat
from .parser import MeromorphicGerm
from .resolution import ResolutionData, log_resolution

DEFAULT_L = 8
DEFAULT_K = 8


class InvariantError(ValueError):
    pass


def _as_resolution(obj) -> ResolutionData:
    if isinstance(obj, ResolutionData):
        return obj
    if isinstance(obj, MeromorphicGerm):
        return log_resolution(obj)
    raise TypeError(f"expected a germ or a resolution, got {type(obj).__name__}")


def lct(obj, side: str = "f") -> Fraction:
    """Log-canonical threshold of ``f`` or ``g`` at the origin: ``min (k+1)/N``."""
    res = _as_resolution(obj)
    if side not in ("f", "g"):
        raise ValueError("side must be 'f' or 'g'")
    vals = [
        Fraction(d.k + 1, d.Nf if side == "f" else d.Ng)
        for d in res.divisors
        if (d.Nf if side == "f" else d.Ng) > 0
    ]
    if not vals:
        raise InvariantError(f"{side} is a unit at the origin; its lct is infinite")
    return min(vals)


class Tagged(NamedTuple):
    value: Fraction
    divisors: Tuple[int, ...]


@dataclass(frozen=True)
class CandidateRootSet:
    generators: Tuple[Tuple[int, Fraction, Fraction], ...]  # (divisor, base, step)
    enumerated: Tuple[Fraction, ...]  # closest to zero first
    L: int

    def __contains__(self, r) -> bool:
        r = as_rat(r)
        if r >= 0:
            return False
        for _, base, step in self.generators:
            ell = (-r - base) / step
            if ell >= 0 and ell.denominator == 1:
                return True
        return False

    def is_empty(self) -> bool:
        return not self.generators

    def to_json(self):
        return {
            "generators": [
                {"divisor": i, "base": fmt_rat(b), "step": fmt_rat(s)} for i, b, s in self.generators
            ],
            "ell_max": self.L,
            "candidates": [fmt_rat(r) for r in self.enumerated],
        }


def _root_generators(res: ResolutionData, sign: int = 1):
    """``(id, (k+1)/N, 1/N)`` over divisors where ``sign * N_fg > 0``."""
    out = []
    for d in res.divisors:
        n = sign * d.Nfg
        if n > 0:
            out.append((d.id, Fraction(d.k + 1, n), Fraction(1, n)))
    return tuple(out)


def _enumerate(gens, L: int) -> Tuple[Fraction, ...]:
    vals = {-(base + ell * step) for _, base, step in gens for ell in range(L + 1)}
    return tuple(sorted(vals, reverse=True))


def candidate_bs_roots(obj, L: int = DEFAULT_L) -> CandidateRootSet:
    """Candidates ``-(k_i + 1 + l)/N_fg,i`` over the zero divisors, ``l <= L``."""
    if L < 0:
        raise ValueError("L must be non-negative")
    gens = _root_generators(_as_resolution(obj))
    return CandidateRootSet(gens, _enumerate(gens, L), L)


def candidate_jumping_numbers(obj, lam_max) -> List[Tagged]:
    res = _as_resolution(obj)
    lam_max = as_rat(lam_max)
    found: Dict[Fraction, List[int]] = {}
    for d in res.divisors:
        n = d.Nfg
        if n <= 0:
            continue
        ell = 0
        while True:
            v = Fraction(d.k + 1 + ell, n)
            if v > lam_max:
                break
            found.setdefault(v, []).append(d.id)
            ell += 1
    return [Tagged(v, tuple(sorted(found[v]))) for v in sorted(found)]


@dataclass(frozen=True)
class Strip:
    """Open interval; ``None`` stands for an infinite endpoint."""

    lo: Optional[Fraction]
    hi: Optional[Fraction]

    def __contains__(self, s) -> bool:
        s = as_rat(s)
        return (self.lo is None or s > self.lo) and (self.hi is None or s < self.hi)

    def __str__(self):
        lo = "-inf" if self.lo is None else fmt_rat(self.lo)
        hi = "+inf" if self.hi is None else fmt_rat(self.hi)
        return f"({lo}, {hi})"

    def to_json(self):
        return [None if self.lo is None else fmt_rat(self.lo), None if self.hi is None else fmt_rat(self.hi)]


def _lct_or_none(res, side):
    try:
        return lct(res, side)
    except InvariantError:
        return None


def convergence_strip(obj) -> Strip:
    """``(-lct(f), lct(g))``."""
    res = _as_resolution(obj)
    lf, lg = _lct_or_none(res, "f"), _lct_or_none(res, "g")
    return Strip(None if lf is None else -lf, lg)


@dataclass(frozen=True)
class ZetaReport:
    alpha: Fraction
    strip: Strip
    zeta: CandidateRootSet
    xi: CandidateRootSet
    K: int
    left: Tuple[Fraction, ...]
    right: Tuple[Fraction, ...]
    note: str = (
        "candidate supersets: built from candidate roots, not from the true "
        "Bernstein-Sato roots"
    )

    def to_json(self):
        return {
            "alpha": fmt_rat(self.alpha),
            "strip": self.strip.to_json(),
            "lattice_depth": self.K,
            "zeta": self.zeta.to_json(),
            "xi": self.xi.to_json(),
            "left_candidates": [fmt_rat(v) for v in self.left],
            "right_candidates": [fmt_rat(v) for v in self.right],
            "note": self.note,
        }


def candidate_zeta_poles(obj, K: int = DEFAULT_K, L: int = DEFAULT_L) -> ZetaReport:
    """Candidate poles ``{zeta - k alpha}`` and ``{k alpha - xi}``, ``alpha = lct(g)``.

    ``zeta`` runs over candidate roots for ``f/g`` and ``xi`` over candidate
    roots for ``g/f``; the latter come from the pole divisors of the same
    resolution.
    """
    if K < 0 or L < 0:
        raise ValueError("K and L must be non-negative")
    res = _as_resolution(obj)
    if res.germ.g.is_constant():
        raise InvariantError(
            "g is a unit: alpha = lct(g) is undefined; this is the classical zeta function of f"
        )
    alpha = lct(res, "g")
    zg = _root_generators(res, 1)
    xg = _root_generators(res, -1)
    zeta = CandidateRootSet(zg, _enumerate(zg, L), L)
    xi = CandidateRootSet(xg, _enumerate(xg, L), L)
    left = sorted({z - k * alpha for z in zeta.enumerated for k in range(K + 1)}, reverse=True)
    right = sorted({k * alpha - x for x in xi.enumerated for k in range(K + 1)})
    return ZetaReport(alpha, convergence_strip(res), zeta, xi, K, tuple(left), tuple(right))
