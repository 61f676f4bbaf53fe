"""Elements of the twisted module ``R_fg[s] * f^s / g^(s+alpha)`` and D[s]-actions on them.

An element is stored as ``h(s) / (f^a g^b)`` times the formal symbol
``f^s / g^(s+alpha)``.  ``alpha`` is a rational tag that only ever enters
through the coefficient ``(s + alpha)`` of the derivation rule; ``g`` is
never raised to a fractional power.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Dict, Iterable, Optional, Sequence, Tuple

from .algebra import MPoly, SPoly, DivisionError, as_rat, exact_div, format_poly, grlex_key
from .parser import MeromorphicGerm

S = "s"


def ring_vars(vars: Sequence[str]) -> Tuple[str, ...]:
    return tuple(vars) + (S,)


# ---------------------------------------------------------------------------
# operators


class DifferentialOperator:
    """Normally ordered operator ``sum c_B(x, s) * d^B``."""

    __slots__ = ("vars", "terms")

    def __init__(self, vars: Sequence[str], terms: Optional[Dict[Tuple[int, ...], MPoly]] = None):
        self.vars = tuple(vars)
        rv = ring_vars(self.vars)
        clean = {}
        for b, c in (terms or {}).items():
            if c.vars != rv:
                c = c.with_vars(rv)
            if not c.is_zero():
                clean[tuple(b)] = c
        self.terms = clean

    @classmethod
    def scalar(cls, c, vars) -> "DifferentialOperator":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): MPoly.const(c, ring_vars(vars))})

    identity = classmethod(lambda cls, vars: cls.scalar(1, vars))

    @classmethod
    def coefficient(cls, c: MPoly, vars) -> "DifferentialOperator":
        vars = tuple(vars)
        return cls(vars, {(0,) * len(vars): c})

    @classmethod
    def partial(cls, i: int, vars, power: int = 1) -> "DifferentialOperator":
        vars = tuple(vars)
        b = [0] * len(vars)
        b[i] = power
        return cls(vars, {tuple(b): MPoly.const(1, ring_vars(vars))})

    def has_derivatives(self) -> bool:
        return any(any(b) for b in self.terms)

    def coefficients_x_free(self) -> bool:
        n = len(self.vars)
        return all(not any(e[:n]) for c in self.terms.values() for e in c.terms)

    def is_scalar(self) -> bool:
        return not self.has_derivatives() and all(c.is_constant() for c in self.terms.values())

    def scalar_value(self) -> Fraction:
        c = self.terms.get((0,) * len(self.vars))
        return c.constant_term() if c is not None else Fraction(0)

    def order(self) -> int:
        return max((sum(b) for b in self.terms), default=-1)

    def __add__(self, other: "DifferentialOperator") -> "DifferentialOperator":
        out = dict(self.terms)
        for b, c in other.terms.items():
            out[b] = out[b] + c if b in out else c
        return DifferentialOperator(self.vars, out)

    def __neg__(self):
        return DifferentialOperator(self.vars, {b: -c for b, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c) -> "DifferentialOperator":
        c = as_rat(c)
        return DifferentialOperator(self.vars, {b: p.scale(c) for b, p in self.terms.items()})

    def compose_commuting(self, other: "DifferentialOperator") -> "DifferentialOperator":
        """Product when no commutation is needed (left factor derivative-free or right coefficients x-free)."""
        out: Dict[Tuple[int, ...], MPoly] = {}
        for b1, c1 in self.terms.items():
            for b2, c2 in other.terms.items():
                b = tuple(i + j for i, j in zip(b1, b2))
                c = c1 * c2
                out[b] = out[b] + c if b in out else c
        return DifferentialOperator(self.vars, out)

    def at_s(self, s0) -> "DifferentialOperator":
        s0 = as_rat(s0)
        rv = ring_vars(self.vars)
        return DifferentialOperator(
            self.vars, {b: c.evaluate({S: s0}).with_vars(rv) for b, c in self.terms.items()}
        )

    def __eq__(self, other):
        if not isinstance(other, DifferentialOperator):
            return NotImplemented
        return self.vars == other.vars and self.terms == other.terms

    def __hash__(self):
        return hash((self.vars, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        pieces = []
        zero = (0,) * len(self.vars)
        shown = (S,) + self.vars  # print s before the coordinates
        for b in sorted(self.terms, key=grlex_key, reverse=True):
            c = self.terms[b].with_vars(shown)
            if b == zero:
                pieces.append(format_poly(c))
                continue
            dpart = "*".join(
                (f"{self._dname(i)}^{k}" if k > 1 else self._dname(i))
                for i, k in enumerate(b)
                if k
            )
            if c == 1:
                pieces.append(dpart)
            elif c == -1:
                pieces.append("-" + dpart)
            elif len(c.terms) == 1:
                pieces.append(f"{format_poly(c)}*{dpart}")
            else:
                pieces.append(f"({format_poly(c)})*{dpart}")
        out = pieces[0]
        for p in pieces[1:]:
            out += f" - {p[1:]}" if p.startswith("-") else f" + {p}"
        return out

    def _dname(self, i: int) -> str:
        v = self.vars[i]
        return f"d{v}" if v in ("x", "y") else f"d{v[1:]}"

    def __repr__(self):
        return f"DifferentialOperator({str(self)!r})"


# ---------------------------------------------------------------------------
# twisted elements


@lru_cache(maxsize=64)
def _germ_data(germ: MeromorphicGerm):
    rv = ring_vars(germ.vars)
    f = germ.f.with_vars(rv)
    g = germ.g.with_vars(rv)
    df = tuple(f.derivative(v) for v in germ.vars)
    dg = tuple(g.derivative(v) for v in germ.vars)
    return rv, f, g, df, dg


@dataclass(frozen=True, eq=False)
class TwistedElement:
    """``h(s) / (f^a g^b) * f^s / g^(s+alpha)``."""

    h: MPoly
    a: int
    b: int
    germ: MeromorphicGerm
    alpha: Fraction = Fraction(0)

    @classmethod
    def make(cls, h, germ: MeromorphicGerm, a: int = 0, b: int = 0, alpha=0) -> "TwistedElement":
        rv = ring_vars(germ.vars)
        if isinstance(h, (int, Fraction)):
            h = MPoly.const(h, rv)
        elif h.vars != rv:
            h = h.with_vars(rv)
        return cls(h, a, b, germ, as_rat(alpha)).canonical()

    @classmethod
    def symbol(cls, germ: MeromorphicGerm, alpha=0) -> "TwistedElement":
        return cls.make(1, germ, alpha=alpha)

    def canonical(self) -> "TwistedElement":
        _, f, g, _, _ = _germ_data(self.germ)
        h, a, b = self.h, self.a, self.b
        if h.is_zero():
            return TwistedElement(h, 0, 0, self.germ, self.alpha)
        if f.is_constant():
            h, a = h.scale(f.constant_term() ** -a), 0
        if g.is_constant():
            h, b = h.scale(g.constant_term() ** -b), 0
        while a > 0:
            try:
                h = exact_div(h, f)
            except DivisionError:
                break
            a -= 1
        while b > 0:
            try:
                h = exact_div(h, g)
            except DivisionError:
                break
            b -= 1
        return TwistedElement(h, a, b, self.germ, self.alpha)

    def _check(self, other: "TwistedElement"):
        if self.germ != other.germ or self.alpha != other.alpha:
            raise ValueError("elements live in different twisted modules")

    def is_zero(self) -> bool:
        return self.h.is_zero()

    def __eq__(self, other):
        if not isinstance(other, TwistedElement):
            return NotImplemented
        if self.germ != other.germ or self.alpha != other.alpha:
            return False
        return not cross_difference(self, other)

    __hash__ = None

    def __add__(self, other: "TwistedElement") -> "TwistedElement":
        self._check(other)
        _, f, g, _, _ = _germ_data(self.germ)
        a, b = max(self.a, other.a), max(self.b, other.b)
        h = self.h * f ** (a - self.a) * g ** (b - self.b) + other.h * f ** (a - other.a) * g ** (
            b - other.b
        )
        return TwistedElement(h, a, b, self.germ, self.alpha).canonical()

    def __neg__(self):
        return TwistedElement(-self.h, self.a, self.b, self.germ, self.alpha)

    def __sub__(self, other):
        return self + (-other)

    def times(self, c) -> "TwistedElement":
        """Multiply by a polynomial in the coordinates and ``s``."""
        rv = ring_vars(self.germ.vars)
        if isinstance(c, (int, Fraction)):
            c = MPoly.const(c, rv)
        elif c.vars != rv:
            c = c.with_vars(rv)
        return TwistedElement(self.h * c, self.a, self.b, self.germ, self.alpha).canonical()

    def __str__(self):
        den = []
        if self.a:
            den.append("f" if self.a == 1 else f"f^{self.a}")
        if self.b:
            den.append("g" if self.b == 1 else f"g^{self.b}")
        alpha = "" if self.alpha == 0 else f"+{self.alpha}"
        d = f"/({'*'.join(den)})" if den else ""
        return f"({format_poly(self.h)}){d} * f^s/g^(s{alpha})"


def cross_difference(e1: TwistedElement, e2: TwistedElement) -> MPoly:
    """``h1 f^a2 g^b2 - h2 f^a1 g^b1``: zero iff the elements are equal."""
    _, f, g, _, _ = _germ_data(e1.germ)
    a, b = max(e1.a, e2.a), max(e1.b, e2.b)
    return e1.h * f ** (a - e1.a) * g ** (b - e1.b) - e2.h * f ** (a - e2.a) * g ** (b - e2.b)


def _shift_s(h: MPoly, c) -> MPoly:
    """``h(s) -> h(s + c)``."""
    c = as_rat(c)
    if c == 0:
        return h
    i = h.vars.index(S)
    out: Dict[Tuple[int, ...], Fraction] = {}
    for e, coef in h.terms.items():
        k = e[i]
        base = list(e)
        # expand (s + c)^k
        binom = 1
        for j in range(k + 1):
            base[i] = j
            t = tuple(base)
            out[t] = out.get(t, 0) + coef * binom * c ** (k - j)
            binom = binom * (k - j) // (j + 1)
    return MPoly(h.vars, out)


def apply_derivation(i: int, e: TwistedElement) -> TwistedElement:
    """Action of the i-th partial derivative on a twisted element."""
    rv, f, g, df, dg = _germ_data(e.germ)
    h, a, b = e.h, e.a, e.b
    s = MPoly.var(S, rv)
    dh = h.derivative(rv[i])
    num = dh * f * g
    if a:
        num = num - (h * df[i] * g).scale(a)
    if b:
        num = num - (h * f * dg[i]).scale(b)
    if not df[i].is_zero():
        num = num + s * df[i] * h * g
    if not dg[i].is_zero():
        num = num - (s + e.alpha) * h * dg[i] * f
    return TwistedElement(num, a + 1, b + 1, e.germ, e.alpha).canonical()


def apply_operator(op: DifferentialOperator, e: TwistedElement) -> TwistedElement:
    if tuple(op.vars) != tuple(e.germ.vars):
        missing = set(op.vars) - set(e.germ.vars)
        if missing:
            raise ValueError(f"operator variables {sorted(missing)} not in the germ")
        op = DifferentialOperator(
            e.germ.vars,
            {
                tuple(b[op.vars.index(v)] if v in op.vars else 0 for v in e.germ.vars): c.with_vars(
                    ring_vars(e.germ.vars)
                )
                for b, c in op.terms.items()
            },
        )
    cache: Dict[Tuple[int, ...], TwistedElement] = {(0,) * len(e.germ.vars): e}

    def d(beta: Tuple[int, ...]) -> TwistedElement:
        if beta in cache:
            return cache[beta]
        i = next(k for k, v in enumerate(beta) if v)
        prev = list(beta)
        prev[i] -= 1
        res = apply_derivation(i, d(tuple(prev)))
        cache[beta] = res
        return res

    total = TwistedElement.make(0, e.germ, alpha=e.alpha)
    for beta in sorted(op.terms, key=grlex_key):
        total = total + d(beta).times(op.terms[beta])
    return total


def act_t(e: TwistedElement) -> TwistedElement:
    """``t``: shift ``s -> s + 1`` and multiply by ``f``."""
    _, f, _, _, _ = _germ_data(e.germ)
    return TwistedElement(_shift_s(e.h, 1) * f, e.a, e.b, e.germ, e.alpha).canonical()


def act_dt(e: TwistedElement) -> TwistedElement:
    """``d/dt``: ``h(s) -> -s h(s - 1)`` and divide by ``f``."""
    rv = ring_vars(e.germ.vars)
    h = -MPoly.var(S, rv) * _shift_s(e.h, -1)
    return TwistedElement(h, e.a + 1, e.b, e.germ, e.alpha).canonical()


def shift(e: TwistedElement, m: int) -> TwistedElement:
    """``p(s) h / (f^a g^b) -> p(s - m) h / (f^(a+m) g^(b-m))``."""
    _, f, g, _, _ = _germ_data(e.germ)
    h = _shift_s(e.h, -m)
    a, b = e.a + m, e.b - m
    if b < 0:
        h, b = h * g ** (-b), 0
    if a < 0:
        h, a = h * f ** (-a), 0
    return TwistedElement(h, a, b, e.germ, e.alpha).canonical()


@dataclass(frozen=True)
class Specialized:
    """``u / (f^a g^b) * f^s0 / g^(s0 + alpha)`` with ``s0`` substituted."""

    u: MPoly
    a: int
    b: int
    s0: Fraction
    alpha: Fraction


def specialize(e: TwistedElement, s0) -> Specialized:
    s0 = as_rat(s0)
    u = e.h.evaluate({S: s0}).with_vars(e.germ.vars)
    return Specialized(u, e.a, e.b, s0, e.alpha)


@dataclass(frozen=True)
class Verification:
    holds: bool
    witness: Optional[MPoly]
    lhs: TwistedElement
    rhs: TwistedElement

    def __bool__(self):
        return self.holds


def verify_functional_equation(
    op: DifferentialOperator, b: SPoly, germ: MeromorphicGerm, alpha=0, mode: str = "numerator"
) -> Verification:
    """Check ``op * f F = b(s) F`` (numerator) or ``op * (f/g) F = b(s) F`` (quotient)."""
    if mode not in ("numerator", "quotient"):
        raise ValueError(f"unknown mode {mode!r}")
    rv = ring_vars(germ.vars)
    start = TwistedElement.make(germ.f, germ, b=1 if mode == "quotient" else 0, alpha=alpha)
    lhs = apply_operator(op, start)
    rhs = TwistedElement.make(b.to_mpoly(rv), germ, alpha=alpha)
    diff = cross_difference(lhs, rhs)
    return Verification(diff.is_zero(), None if diff.is_zero() else diff, lhs, rhs)


@dataclass(frozen=True)
class NegativeOneCheck:
    equation_holds: bool
    b_at_minus_one: Fraction
    lhs: Specialized
    consistent: bool

    @property
    def minus_one_is_root(self) -> bool:
        return self.b_at_minus_one == 0


def check_negative_one(
    op: DifferentialOperator, b: SPoly, germ: MeromorphicGerm, alpha=0
) -> NegativeOneCheck:
    """Specialize a functional equation at ``s = -1``.

    After specialization the left side is ``u / (f^a g^b)`` and the right side
    is ``b(-1)``; ``consistent`` records that the two agree, which for ``f``
    a non-unit coprime to ``g`` forces ``b(-1) = 0``.
    """
    ver = verify_functional_equation(op, b, germ, alpha)
    lhs = specialize(ver.lhs, -1)
    bm1 = b(-1)
    f, g = germ.f, germ.g
    cross = lhs.u - (f ** lhs.a * g ** lhs.b).scale(bm1)
    return NegativeOneCheck(ver.holds, bm1, lhs, cross.is_zero())


# ---------------------------------------------------------------------------
# monomial germs


def monomial_germ(num: Sequence[int], den: Sequence[int]) -> MeromorphicGerm:
    n = len(num) + len(den)
    if n == 0:
        raise ValueError("a monomial germ needs at least one variable")
    if any(m <= 0 for m in list(num) + list(den)):
        raise ValueError("exponents must be positive")
    vars = tuple(f"x{i}" for i in range(1, n + 1))
    f = MPoly.monomial(tuple(num) + (0,) * len(den), vars)
    g = MPoly.monomial((0,) * len(num) + tuple(den), vars)
    return MeromorphicGerm(f, g)


def monomial_bs(num: Sequence[int], den: Sequence[int] = ()) -> SPoly:
    """``prod_i prod_{j=1..m_i} (s + j/m_i)`` over the numerator exponents."""
    if any(m <= 0 for m in list(num) + list(den)):
        raise ValueError("exponents must be positive")
    roots = [-Fraction(j, m) for m in num for j in range(1, m + 1)]
    return SPoly.from_roots(roots)


def monomial_bs_operator(num: Sequence[int], den: Sequence[int] = ()) -> DifferentialOperator:
    """``prod_i m_i^(-m_i) d_i^(m_i)`` acting on the numerator variables."""
    n = len(num) + len(den)
    vars = tuple(f"x{i}" for i in range(1, n + 1))
    op = DifferentialOperator.identity(vars)
    for i, m in enumerate(num):
        op = op.compose_commuting(DifferentialOperator.partial(i, vars, m).scale(Fraction(1, m**m)))
    return op


def iter_monomial_exponents(total: int) -> Iterable[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """All (numerator, denominator) exponent multisets with combined sum in 1..total."""

    def partitions(n, largest):
        if n == 0:
            yield ()
            return
        for k in range(min(n, largest), 0, -1):
            for rest in partitions(n - k, k):
                yield (k,) + rest

    for t in range(1, total + 1):
        for nsum in range(t + 1):
            for p in partitions(nsum, nsum):
                for q in partitions(t - nsum, t - nsum):
                    yield p, q
