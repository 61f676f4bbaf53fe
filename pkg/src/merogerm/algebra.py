"""Exact arithmetic substrate: sparse multivariate polynomials over Q.

Coefficients are :class:`fractions.Fraction` throughout; nothing in here ever
touches floating point.  Monomials are exponent tuples aligned with the
polynomial's variable tuple, and the canonical term order is graded
lexicographic with earlier variables ranking higher (``x > y``).
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as igcd
from typing import Dict, Iterable, List, Mapping, Sequence, Tuple

Rat = Fraction
Exp = Tuple[int, ...]


class AlgebraError(ArithmeticError):
    pass


class DivisionError(AlgebraError):
    """Raised when an exact division is requested and the divisor does not divide."""


def as_rat(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    if isinstance(c, str):
        return Fraction(c)
    raise TypeError(f"cannot coerce {type(c).__name__} to an exact rational")


def fmt_rat(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


def grlex_key(e: Exp):
    return (sum(e), e)


class MPoly:
    """Immutable sparse polynomial ``{exponent tuple: Fraction}``."""

    __slots__ = ("vars", "terms", "_hash")

    def __init__(self, vars: Sequence[str], terms: Mapping[Exp, object] | None = None):
        self.vars = tuple(vars)
        n = len(self.vars)
        clean: Dict[Exp, Fraction] = {}
        if terms:
            for e, c in terms.items():
                c = as_rat(c)
                if c == 0:
                    continue
                e = tuple(e)
                if len(e) != n:
                    raise ValueError(f"exponent {e} does not match variables {self.vars}")
                clean[e] = c
        self.terms = clean
        self._hash = None

    # -- construction -------------------------------------------------
    @classmethod
    def _raw(cls, vars: Tuple[str, ...], terms: Dict[Exp, Fraction]) -> "MPoly":
        p = object.__new__(cls)
        p.vars = vars
        p.terms = terms
        p._hash = None
        return p

    @classmethod
    def zero(cls, vars: Sequence[str]) -> "MPoly":
        return cls._raw(tuple(vars), {})

    @classmethod
    def const(cls, c, vars: Sequence[str]) -> "MPoly":
        vars = tuple(vars)
        c = as_rat(c)
        return cls._raw(vars, {(0,) * len(vars): c} if c else {})

    @classmethod
    def var(cls, name: str, vars: Sequence[str]) -> "MPoly":
        vars = tuple(vars)
        e = tuple(1 if v == name else 0 for v in vars)
        if sum(e) != 1:
            raise ValueError(f"unknown variable {name!r}")
        return cls._raw(vars, {e: Fraction(1)})

    @classmethod
    def monomial(cls, exp: Sequence[int], vars: Sequence[str], coeff=1) -> "MPoly":
        return cls(vars, {tuple(exp): coeff})

    def gens(self) -> List["MPoly"]:
        return [MPoly.var(v, self.vars) for v in self.vars]

    def with_vars(self, vars: Sequence[str]) -> "MPoly":
        """Re-express in a different variable tuple (must cover all used variables)."""
        vars = tuple(vars)
        if vars == self.vars:
            return self
        idx = []
        for v in self.vars:
            idx.append(vars.index(v) if v in vars else -1)
        out: Dict[Exp, Fraction] = {}
        for e, c in self.terms.items():
            ne = [0] * len(vars)
            for i, k in enumerate(e):
                if k:
                    if idx[i] < 0:
                        raise ValueError(f"variable {self.vars[i]!r} missing from {vars}")
                    ne[idx[i]] = k
            out[tuple(ne)] = c
        return MPoly._raw(vars, out)

    # -- predicates ---------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def is_constant(self) -> bool:
        return all(not any(e) for e in self.terms)

    def constant_term(self) -> Fraction:
        return self.terms.get((0,) * len(self.vars), Fraction(0))

    def used_vars(self) -> List[str]:
        used = [False] * len(self.vars)
        for e in self.terms:
            for i, k in enumerate(e):
                if k:
                    used[i] = True
        return [v for v, u in zip(self.vars, used) if u]

    def __bool__(self):
        return bool(self.terms)

    def __eq__(self, other):
        if isinstance(other, MPoly):
            if self.vars != other.vars:
                try:
                    other = other.with_vars(self.vars)
                except ValueError:
                    return False
            return self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self.terms == MPoly.const(other, self.vars).terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.vars, frozenset(self.terms.items())))
        return self._hash

    # -- degrees ------------------------------------------------------
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self.terms), default=-1)

    def order(self) -> int:
        """Lowest total degree of a term (multiplicity at the origin)."""
        if not self.terms:
            raise AlgebraError("order of the zero polynomial")
        return min(sum(e) for e in self.terms)

    def degree_in(self, v) -> int:
        i = self._index(v)
        return max((e[i] for e in self.terms), default=-1)

    def _index(self, v) -> int:
        if isinstance(v, int):
            return v
        return self.vars.index(v)

    def homogeneous_part(self, d: int) -> "MPoly":
        return MPoly._raw(self.vars, {e: c for e, c in self.terms.items() if sum(e) == d})

    def leading(self) -> Tuple[Exp, Fraction]:
        e = max(self.terms, key=grlex_key)
        return e, self.terms[e]

    def sorted_terms(self) -> List[Tuple[Exp, Fraction]]:
        return sorted(self.terms.items(), key=lambda t: grlex_key(t[0]), reverse=True)

    # -- ring operations ----------------------------------------------
    def _coerce(self, other) -> "MPoly":
        if isinstance(other, MPoly):
            if other.vars != self.vars:
                raise ValueError(f"variable mismatch {self.vars} vs {other.vars}")
            return other
        if isinstance(other, (int, Fraction)):
            return MPoly.const(other, self.vars)
        raise TypeError(f"unsupported operand {type(other).__name__}")

    def __add__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        out = dict(self.terms)
        for e, c in other.terms.items():
            v = out.get(e)
            if v is None:
                out[e] = c
            else:
                v += c
                if v:
                    out[e] = v
                else:
                    del out[e]
        return MPoly._raw(self.vars, out)

    __radd__ = __add__

    def __neg__(self):
        return MPoly._raw(self.vars, {e: -c for e, c in self.terms.items()})

    def __sub__(self, other):
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c) -> "MPoly":
        c = as_rat(c)
        if not c:
            return MPoly.zero(self.vars)
        return MPoly._raw(self.vars, {e: v * c for e, v in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        try:
            other = self._coerce(other)
        except TypeError:
            return NotImplemented
        if len(self.terms) > len(other.terms):
            a, b = self.terms, other.terms
        else:
            a, b = other.terms, self.terms
        out: Dict[Exp, Fraction] = {}
        get = out.get
        for e2, c2 in b.items():
            for e1, c1 in a.items():
                e = tuple(i + j for i, j in zip(e1, e2))
                v = get(e)
                out[e] = c1 * c2 if v is None else v + c1 * c2
        return MPoly._raw(self.vars, {e: c for e, c in out.items() if c})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a non-negative integer")
        result = MPoly.const(1, self.vars)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def mul_monomial(self, exp: Exp, c=1) -> "MPoly":
        c = as_rat(c)
        return MPoly._raw(
            self.vars,
            {tuple(i + j for i, j in zip(e, exp)): v * c for e, v in self.terms.items()},
        )

    # -- calculus -----------------------------------------------------
    def derivative(self, v) -> "MPoly":
        i = self._index(v)
        out = {}
        for e, c in self.terms.items():
            k = e[i]
            if k:
                ne = list(e)
                ne[i] = k - 1
                out[tuple(ne)] = c * k
        return MPoly._raw(self.vars, out)

    # -- substitution -------------------------------------------------
    def substitute(self, assignment: Mapping[str, "MPoly"]) -> "MPoly":
        return substitute(self, assignment)

    def evaluate(self, point: Mapping[str, object]) -> "MPoly":
        """Partially evaluate at rational values; remaining variables are kept."""
        idx = {self._index(v): as_rat(c) for v, c in point.items()}
        out: Dict[Exp, Fraction] = {}
        for e, c in self.terms.items():
            ne = list(e)
            for i, val in idx.items():
                if ne[i]:
                    c = c * val ** ne[i]
                    ne[i] = 0
            if c:
                t = tuple(ne)
                out[t] = out.get(t, 0) + c
        return MPoly(self.vars, out)

    def truncate(self, v, bound: int) -> "MPoly":
        """Drop every term whose exponent in ``v`` is >= bound."""
        i = self._index(v)
        return MPoly._raw(self.vars, {e: c for e, c in self.terms.items() if e[i] < bound})

    # -- univariate views ---------------------------------------------
    def coefficients_in(self, v) -> Dict[int, "MPoly"]:
        """Coefficients with respect to ``v`` (as polynomials free of ``v``)."""
        i = self._index(v)
        buckets: Dict[int, Dict[Exp, Fraction]] = {}
        for e, c in self.terms.items():
            ne = list(e)
            k = ne[i]
            ne[i] = 0
            buckets.setdefault(k, {})[tuple(ne)] = c
        return {k: MPoly._raw(self.vars, t) for k, t in buckets.items()}

    def univariate_coeffs(self) -> List[Fraction]:
        """Dense coefficient list (low to high) of a polynomial in at most one variable."""
        used = self.used_vars()
        if len(used) > 1:
            raise AlgebraError(f"not univariate: uses {used}")
        if not self.terms:
            return []
        i = self.vars.index(used[0]) if used else 0
        d = max(e[i] for e in self.terms) if self.vars else 0
        out = [Fraction(0)] * (d + 1)
        for e, c in self.terms.items():
            out[e[i] if self.vars else 0] = c
        return out

    # -- division -----------------------------------------------------
    def exact_div(self, q: "MPoly") -> "MPoly":
        return exact_div(self, q)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            other = as_rat(other)
            if not other:
                raise ZeroDivisionError("division by zero")
            return self.scale(1 / other)
        if isinstance(other, MPoly):
            return exact_div(self, other)
        return NotImplemented

    def monic(self) -> "MPoly":
        if not self.terms:
            return self
        _, c = self.leading()
        return self.scale(1 / c)

    # -- display ------------------------------------------------------
    def __str__(self):
        return format_poly(self)

    def __repr__(self):
        return f"MPoly({self.vars}, {format_poly(self)!r})"


def format_monomial(e: Exp, vars: Sequence[str]) -> str:
    parts = []
    for v, k in zip(vars, e):
        if k == 1:
            parts.append(v)
        elif k > 1:
            parts.append(f"{v}^{k}")
    return "*".join(parts)


def format_coeff(c: Fraction) -> str:
    s = fmt_rat(abs(c))
    return f"({s})" if c.denominator != 1 else s


def format_poly(p: MPoly) -> str:
    if not p.terms:
        return "0"
    out = []
    for idx, (e, c) in enumerate(p.sorted_terms()):
        mono = format_monomial(e, p.vars)
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if not mono:
            body = format_coeff(a)
        elif a == 1:
            body = mono
        else:
            body = f"{format_coeff(a)}*{mono}"
        if idx == 0:
            out.append(("-" if sign == "-" else "") + body)
        else:
            out.append(f" {sign} {body}")
    return "".join(out)


# ---------------------------------------------------------------------------
# substitution, valuation


def substitute(p: MPoly, assignment: Mapping[str, MPoly]) -> MPoly:
    """Compose ``p`` with the polynomial map given by ``assignment``."""
    missing = [v for v in p.used_vars() if v not in assignment]
    if missing:
        raise ValueError(f"no assignment for variables {missing}")
    target = None
    for q in assignment.values():
        if target is None:
            target = q.vars
        elif q.vars != target:
            raise ValueError("assignment polynomials must share a variable tuple")
    if target is None:
        target = ()
    cache: Dict[Tuple[int, int], MPoly] = {}

    def power(i: int, k: int) -> MPoly:
        key = (i, k)
        if key not in cache:
            if k == 1:
                cache[key] = assignment[p.vars[i]]
            else:
                half = power(i, k // 2)
                sq = half * half
                cache[key] = sq * assignment[p.vars[i]] if k % 2 else sq
        return cache[key]

    acc: Dict[Exp, Fraction] = {}
    one = MPoly.const(1, target)
    for e, c in p.terms.items():
        term = one
        for i, k in enumerate(e):
            if k:
                term = term * power(i, k)
        for te, tc in term.terms.items():
            acc[te] = acc.get(te, 0) + c * tc
    return MPoly(target, acc)


def valuation(p: MPoly, v) -> int:
    """Largest ``k`` with ``v^k | p``; the zero polynomial is an error."""
    if p.is_zero():
        raise AlgebraError("valuation of the zero polynomial is infinite")
    i = p._index(v)
    return min(e[i] for e in p.terms)


# ---------------------------------------------------------------------------
# exact division and gcd


def exact_div(p: MPoly, q: MPoly) -> MPoly:
    """Return ``p / q``; raise :class:`DivisionError` unless ``q`` divides ``p``."""
    if q.vars != p.vars:
        q = q.with_vars(p.vars)
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if len(q.terms) == 1:
        (qe, qc), = q.terms.items()
        out = {}
        for e, c in p.terms.items():
            ne = tuple(i - j for i, j in zip(e, qe))
            if min(ne, default=0) < 0:
                raise DivisionError(f"{q} does not divide {p}")
            out[ne] = c / qc
        return MPoly._raw(p.vars, out)
    lq, lc = q.leading()
    qterms = list(q.terms.items())
    rem = dict(p.terms)
    quot: Dict[Exp, Fraction] = {}
    while rem:
        le = max(rem, key=grlex_key)
        ne = tuple(i - j for i, j in zip(le, lq))
        if min(ne) < 0:
            raise DivisionError(f"{q} does not divide {p}")
        c = rem[le] / lc
        quot[ne] = c
        for e, qc in qterms:
            t = tuple(i + j for i, j in zip(e, ne))
            v = rem.get(t, 0) - c * qc
            if v:
                rem[t] = v
            else:
                rem.pop(t, None)
    return MPoly._raw(p.vars, quot)


def divides(q: MPoly, p: MPoly) -> bool:
    try:
        exact_div(p, q)
    except DivisionError:
        return False
    return True


def divide_out(p: MPoly, q: MPoly) -> Tuple[MPoly, int]:
    """Maximal ``e`` with ``q^e | p`` and the cofactor ``p / q^e``."""
    if p.is_zero():
        raise AlgebraError("divide_out of the zero polynomial")
    if q.is_constant():
        raise AlgebraError("divide_out by a constant never terminates")
    if len(q.terms) == 1 and q.constant_term() == 0:
        (qe, qc), = q.terms.items()
        k = min(min((e[i] // qe[i]) for i in range(len(qe)) if qe[i]) for e in p.terms)
        if k == 0:
            return p, 0
        shift = tuple(k * i for i in qe)
        return exact_div(p, MPoly._raw(p.vars, {shift: qc ** k})), k
    e = 0
    while True:
        try:
            nxt = exact_div(p, q)
        except DivisionError:
            return p, e
        p = nxt
        e += 1


def _content_in(p: MPoly, i: int) -> MPoly:
    g = None
    for c in p.coefficients_in(i).values():
        g = c if g is None else gcd(g, c)
        if g.is_constant():
            return MPoly.const(1, p.vars)
    return g


def _prem(a: MPoly, b: MPoly, i: int) -> MPoly:
    db = b.degree_in(i)
    cb = b.coefficients_in(i)
    lcb = cb[db]
    unit = [0] * len(a.vars)
    while not a.is_zero() and a.degree_in(i) >= db:
        da = a.degree_in(i)
        lca = a.coefficients_in(i)[da]
        unit[i] = da - db
        a = a * lcb - (b * lca).mul_monomial(tuple(unit))
    return a


def gcd(p: MPoly, q: MPoly) -> MPoly:
    """Monic (grlex) greatest common divisor over Q."""
    if q.vars != p.vars:
        q = q.with_vars(p.vars)
    if p.is_zero():
        return q.monic()
    if q.is_zero():
        return p.monic()
    if p.is_constant() or q.is_constant():
        return MPoly.const(1, p.vars)
    n = len(p.vars)
    i = next(k for k in range(n) if p.degree_in(k) > 0 or q.degree_in(k) > 0)
    if p.degree_in(i) <= 0:
        return gcd(p, _content_in(q, i))
    if q.degree_in(i) <= 0:
        return gcd(_content_in(p, i), q)
    cp, cq = _content_in(p, i), _content_in(q, i)
    a, b = exact_div(p, cp), exact_div(q, cq)
    if a.degree_in(i) < b.degree_in(i):
        a, b = b, a
    while True:
        r = _prem(a, b, i)
        if r.is_zero():
            break
        if r.degree_in(i) == 0:
            b = MPoly.const(1, p.vars)
            break
        a, b = b, exact_div(r, _content_in(r, i))
    return (gcd(cp, cq) * b).monic()


def squarefree_part(p: MPoly) -> MPoly:
    if p.is_zero():
        raise AlgebraError("squarefree part of zero")
    g = p
    for v in p.vars:
        d = p.derivative(v)
        if not d.is_zero():
            g = gcd(g, d)
    return exact_div(p, g).monic()


# ---------------------------------------------------------------------------
# univariate helpers (dense coefficient lists, low to high)


def _trim(c: List[Fraction]) -> List[Fraction]:
    while c and c[-1] == 0:
        c.pop()
    return c


def uni_divmod(a: Sequence[Fraction], b: Sequence[Fraction]):
    a = _trim([as_rat(x) for x in a])
    b = _trim([as_rat(x) for x in b])
    if not b:
        raise ZeroDivisionError("univariate division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 0)
    lb = b[-1]
    while len(a) >= len(b):
        k = len(a) - len(b)
        c = a[-1] / lb
        q[k] = c
        for j, bj in enumerate(b):
            a[j + k] -= c * bj
        _trim(a)
    return _trim(q), a


def uni_gcd(a, b) -> List[Fraction]:
    a = _trim([as_rat(x) for x in a])
    b = _trim([as_rat(x) for x in b])
    while b:
        _, r = uni_divmod(a, b)
        a, b = b, r
    if not a:
        return []
    return [x / a[-1] for x in a]


def uni_derivative(a) -> List[Fraction]:
    return [a[k] * k for k in range(1, len(a))]


def uni_is_squarefree(a) -> bool:
    return len(uni_gcd(a, uni_derivative(a))) <= 1


def _divisors(n: int) -> List[int]:
    n = abs(n)
    primes: Dict[int, int] = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            primes[p] = primes.get(p, 0) + 1
            n //= p
        p += 1 if p == 2 else 2
    if n > 1:
        primes[n] = primes.get(n, 0) + 1
    divs = [1]
    for p, k in primes.items():
        divs = [d * p ** j for d in divs for j in range(k + 1)]
    return sorted(divs)


def _uni_eval(a: Sequence[Fraction], x: Fraction) -> Fraction:
    acc = Fraction(0)
    for c in reversed(a):
        acc = acc * x + c
    return acc


def rational_root_split(coeffs: Sequence) -> Tuple[List[Tuple[Fraction, int]], List[Fraction]]:
    """Rational roots with multiplicities and the rootless residual factor."""
    a = _trim([as_rat(c) for c in coeffs])
    if not a:
        raise AlgebraError("rational roots of the zero polynomial")
    roots: List[Tuple[Fraction, int]] = []
    k = 0
    while a[0] == 0:
        a.pop(0)
        k += 1
    if k:
        roots.append((Fraction(0), k))
    if len(a) > 1:
        den = 1
        for c in a:
            den = den * c.denominator // igcd(den, c.denominator)
        ints = [int(c * den) for c in a]
        for p in _divisors(ints[0]):
            for q in _divisors(ints[-1]):
                if igcd(p, q) != 1:
                    continue
                for r in (Fraction(p, q), Fraction(-p, q)):
                    m = 0
                    while len(a) > 1 and _uni_eval(a, r) == 0:
                        a, _ = uni_divmod(a, [-r, Fraction(1)])
                        m += 1
                    if m:
                        roots.append((r, m))
    roots.sort()
    return roots, a


def rational_roots(u: MPoly) -> Tuple[List[Tuple[Fraction, int]], int]:
    """All rational roots of a univariate polynomial plus the residual degree."""
    roots, residual = rational_root_split(u.univariate_coeffs())
    return roots, len(residual) - 1


# ---------------------------------------------------------------------------
# factorization (delegated)


def factor(p: MPoly) -> Tuple[Fraction, List[Tuple[MPoly, int]]]:
    """Irreducible factorization over Q: ``p = c * prod(q_i^m_i)`` with monic ``q_i``."""
    import sympy

    if p.is_zero():
        raise AlgebraError("factorization of zero")
    if p.is_constant():
        return p.constant_term(), []
    gens = sympy.symbols(" ".join(f"_v{i}" for i in range(len(p.vars))) + " ", seq=True)
    sp = sympy.Poly.from_dict(
        {e: sympy.Rational(c.numerator, c.denominator) for e, c in p.terms.items()},
        *gens,
        domain="QQ",
    )
    lead, facs = sp.factor_list()
    out: List[Tuple[MPoly, int]] = []
    c = Fraction(int(sympy.numer(lead)), int(sympy.denom(lead)))
    for fp, m in facs:
        q = MPoly(p.vars, {e: Fraction(int(v.p), int(v.q)) for e, v in fp.as_dict().items()})
        lc = q.leading()[1]
        c *= lc ** m
        out.append((q.scale(1 / lc), m))
    out.sort(key=lambda t: (t[0].degree(), str(t[0])))
    return c, out


def primitive(p: MPoly) -> MPoly:
    """Integer coefficients with gcd 1 and a positive leading coefficient."""
    if p.is_zero():
        return p
    den = 1
    for c in p.terms.values():
        den = den * c.denominator // igcd(den, c.denominator)
    num = 0
    for c in p.terms.values():
        num = igcd(num, int(c * den))
    scale = Fraction(den, num)
    if p.leading()[1] < 0:
        scale = -scale
    return p.scale(scale)


def product(polys: Iterable[MPoly], vars: Sequence[str]) -> MPoly:
    acc = MPoly.const(1, vars)
    for q in polys:
        acc = acc * q
    return acc


# ---------------------------------------------------------------------------
# polynomials in s


class SPoly:
    """Univariate polynomial in the formal parameter ``s`` (coefficients low to high)."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        self.coeffs = tuple(_trim([as_rat(c) for c in coeffs]))

    @classmethod
    def from_roots(cls, roots: Iterable) -> "SPoly":
        """Monic product of ``(s - r)``."""
        p = cls([1])
        for r in roots:
            p = p * cls([-as_rat(r), 1])
        return p

    @classmethod
    def from_mpoly(cls, p: MPoly) -> "SPoly":
        used = p.used_vars()
        if used and used != ["s"]:
            raise ValueError(f"expected a polynomial in s, got variables {used}")
        return cls(p.univariate_coeffs())

    def to_mpoly(self, vars: Sequence[str], name: str = "s") -> MPoly:
        i = list(vars).index(name)
        terms = {}
        for k, c in enumerate(self.coeffs):
            e = [0] * len(vars)
            e[i] = k
            terms[tuple(e)] = c
        return MPoly(vars, terms)

    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, s) -> Fraction:
        return _uni_eval(self.coeffs, as_rat(s))

    def __eq__(self, other):
        if isinstance(other, SPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: "SPoly") -> "SPoly":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [Fraction(0)] * (n - len(self.coeffs))
        for k, c in enumerate(other.coeffs):
            a[k] += c
        return SPoly(a)

    def __sub__(self, other: "SPoly") -> "SPoly":
        return self + SPoly([-c for c in other.coeffs])

    def __mul__(self, other) -> "SPoly":
        if isinstance(other, (int, Fraction)):
            return SPoly([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return SPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return SPoly(out)

    def monic(self) -> "SPoly":
        if not self.coeffs:
            return self
        return SPoly([c / self.coeffs[-1] for c in self.coeffs])

    def roots(self) -> List[Tuple[Fraction, int]]:
        if not self.coeffs:
            raise AlgebraError("roots of the zero polynomial")
        return rational_root_split(self.coeffs)[0]

    def __str__(self):
        return format_poly(MPoly(("s",), {(k,): c for k, c in enumerate(self.coeffs)}))

    def __repr__(self):
        return f"SPoly({str(self)!r})"
