"""Text input: meromorphic germs, plain polynomials and differential operators.

Grammar (shared by all three entry points)::

    expr   := term (("+" | "-") term)*
    term   := unary (("*" | "/") unary)*
    unary  := ("+" | "-") unary | power
    power  := atom (("^" | "**") INT)?
    atom   := INT | IDENT | "(" expr ")"

Rational constants are written as quotients (``(1/4)*x``).  In a germ any
``/`` is allowed and the whole expression is evaluated as a rational
function; in plain polynomials and operators only constant divisors are
accepted.  Operator identifiers ``dx``, ``dy``, ``d1`` ... ``dn`` are partial
derivatives and ``s`` is the formal parameter.
"""

from __future__ import annotations

import functools
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

from .algebra import MPoly, SPoly, factor, gcd, exact_div, format_poly, primitive, product

MAX_EXPONENT = 512
MAX_DEPTH = 200


class ParseError(ValueError):
    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (at offset {offset})")
        self.message = message
        self.offset = offset


class GermError(ValueError):
    pass


# ---------------------------------------------------------------------------
# tokenizer / AST

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\*\*|[-+*/^()]))")


@dataclass
class _Tok:
    kind: str  # num | id | op | end
    text: str
    pos: int


def _tokenize(text: str) -> List[_Tok]:
    toks: List[_Tok] = []
    pos = 0
    n = len(text)
    while True:
        while pos < n and text[pos].isspace():
            pos += 1
        if pos >= n:
            break
        m = _TOKEN.match(text, pos)
        if not m:
            ch = text[pos]
            if ch == ".":
                raise ParseError("floating-point literals are not supported", pos)
            raise ParseError(f"unexpected character {ch!r}", pos)
        start = m.start(m.lastindex)
        if m.group(1) is not None:
            end = m.end()
            if end < n and text[end] == ".":
                raise ParseError("floating-point literals are not supported", end)
            toks.append(_Tok("num", m.group(1), start))
        elif m.group(2) is not None:
            toks.append(_Tok("id", m.group(2), start))
        else:
            toks.append(_Tok("op", m.group(3), start))
        pos = m.end()
    toks.append(_Tok("end", "", len(text)))
    return toks


class _Parser:
    def __init__(self, text: str):
        self.toks = _tokenize(text)
        self.i = 0
        self.depth = 0

    def peek(self) -> _Tok:
        return self.toks[self.i]

    def take(self) -> _Tok:
        t = self.toks[self.i]
        self.i += 1
        return t

    def parse(self):
        if self.peek().kind == "end":
            raise ParseError("empty expression", self.peek().pos)
        node = self.expr()
        t = self.peek()
        if t.kind != "end":
            raise ParseError(f"unexpected token {t.text!r}", t.pos)
        return node

    def expr(self):
        node = self.term()
        while self.peek().kind == "op" and self.peek().text in "+-":
            t = self.take()
            rhs = self.term()
            node = ("add" if t.text == "+" else "sub", node, rhs, t.pos)
        return node

    def term(self):
        node = self.unary()
        while self.peek().kind == "op" and self.peek().text in ("*", "/"):
            t = self.take()
            rhs = self.unary()
            node = ("mul" if t.text == "*" else "div", node, rhs, t.pos)
        return node

    def unary(self):
        t = self.peek()
        if t.kind == "op" and t.text in "+-":
            self.take()
            self.depth += 1
            if self.depth > MAX_DEPTH:
                raise ParseError("expression nested too deeply", t.pos)
            inner = self.unary()
            self.depth -= 1
            return ("neg", inner, t.pos) if t.text == "-" else inner
        return self.power()

    def power(self):
        base = self.atom()
        t = self.peek()
        if t.kind == "op" and t.text in ("^", "**"):
            self.take()
            e = self.take()
            if e.kind != "num":
                raise ParseError("exponent must be a non-negative integer literal", e.pos)
            k = int(e.text)
            if k > MAX_EXPONENT:
                raise ParseError(f"exponent {k} exceeds the limit {MAX_EXPONENT}", e.pos)
            nxt = self.peek()
            if nxt.kind == "op" and nxt.text in ("^", "**"):
                raise ParseError("chained exponents are ambiguous; use parentheses", nxt.pos)
            return ("pow", base, k, t.pos)
        return base

    def atom(self):
        t = self.take()
        if t.kind == "num":
            return ("num", Fraction(int(t.text)), t.pos)
        if t.kind == "id":
            return ("id", t.text, t.pos)
        if t.kind == "op" and t.text == "(":
            self.depth += 1
            if self.depth > MAX_DEPTH:
                raise ParseError("expression nested too deeply", t.pos)
            node = self.expr()
            self.depth -= 1
            close = self.take()
            if close.kind != "op" or close.text != ")":
                raise ParseError("expected ')'", close.pos)
            return node
        if t.kind == "end":
            raise ParseError("unexpected end of input", t.pos)
        raise ParseError(f"unexpected token {t.text!r}", t.pos)


def _parse_ast(text) :
    if isinstance(text, (bytes, bytearray)):
        try:
            text = bytes(text).decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError("input is not valid UTF-8", exc.start) from None
    if not isinstance(text, str):
        raise TypeError("expected text input")
    try:
        return _Parser(text).parse()
    except ParseError as exc:
        # report byte offsets, as for the encoded input
        raise ParseError(exc.message, len(text[: exc.offset].encode("utf-8"))) from None


def _guarded(fn):
    """Turn pathological recursion on huge inputs into a positioned error."""

    @functools.wraps(fn)
    def wrapper(text, *args, **kwargs):
        try:
            return fn(text, *args, **kwargs)
        except RecursionError:
            raise ParseError("expression too large to evaluate", 0) from None

    return wrapper


def _identifiers(node, out: List[Tuple[str, int]]):
    kind = node[0]
    if kind == "id":
        out.append((node[1], node[2]))
    elif kind == "num":
        return
    elif kind in ("neg",):
        _identifiers(node[1], out)
    elif kind == "pow":
        _identifiers(node[1], out)
    else:
        _identifiers(node[1], out)
        _identifiers(node[2], out)


_INDEXED = re.compile(r"x([1-9][0-9]*)$")
_DERIV = re.compile(r"d(x|y|[1-9][0-9]*)$")


def infer_variables(names: Sequence[Tuple[str, int]]) -> Tuple[str, ...]:
    plain = [(n, p) for n, p in names if n in ("x", "y")]
    indexed = [(n, p) for n, p in names if _INDEXED.match(n)]
    for n, p in names:
        if n not in ("x", "y") and not _INDEXED.match(n):
            raise ParseError(f"unknown identifier {n!r}", p)
    if plain and indexed:
        raise ParseError("cannot mix x, y with indexed variables x1..xn", indexed[0][1])
    if indexed:
        top = max(int(_INDEXED.match(n).group(1)) for n, _ in indexed)
        if top > 64:
            raise ParseError("too many variables", indexed[0][1])
        return tuple(f"x{i}" for i in range(1, top + 1))
    return ("x", "y")


# ---------------------------------------------------------------------------
# evaluation: polynomials and rational functions


def _eval_poly(node, vars: Tuple[str, ...]) -> MPoly:
    kind = node[0]
    if kind == "num":
        return MPoly.const(node[1], vars)
    if kind == "id":
        if node[1] not in vars:
            raise ParseError(f"unknown identifier {node[1]!r}", node[2])
        return MPoly.var(node[1], vars)
    if kind == "neg":
        return -_eval_poly(node[1], vars)
    if kind == "pow":
        return _eval_poly(node[1], vars) ** node[2]
    a = _eval_poly(node[1], vars)
    b = _eval_poly(node[2], vars)
    if kind == "add":
        return a + b
    if kind == "sub":
        return a - b
    if kind == "mul":
        return a * b
    if not b.is_constant():
        raise ParseError("only constant divisors are allowed here", node[3])
    if b.is_zero():
        raise ParseError("division by zero", node[3])
    return a.scale(1 / b.constant_term())


def _eval_rational(node, vars) -> Tuple[MPoly, MPoly]:
    kind = node[0]
    one = MPoly.const(1, vars)
    if kind in ("num", "id"):
        return _eval_poly(node, vars), one
    if kind == "neg":
        n, d = _eval_rational(node[1], vars)
        return -n, d
    if kind == "pow":
        n, d = _eval_rational(node[1], vars)
        if n.is_zero() and node[2] == 0:
            return one, one
        return n ** node[2], d ** node[2]
    an, ad = _eval_rational(node[1], vars)
    bn, bd = _eval_rational(node[2], vars)
    if kind == "add":
        return an * bd + bn * ad, ad * bd
    if kind == "sub":
        return an * bd - bn * ad, ad * bd
    if kind == "mul":
        return an * bn, ad * bd
    if bn.is_zero():
        raise ParseError("division by zero", node[3])
    if bd.is_constant() and ad.is_constant() and bn.is_constant():
        return an.scale(bd.constant_term() / (ad.constant_term() * bn.constant_term())), one
    return an * bd, ad * bn


@_guarded
def parse_poly(text, variables: Optional[Sequence[str]] = None) -> MPoly:
    """Parse a polynomial; variables are inferred (x, y or x1..xn) unless given."""
    ast = _parse_ast(text)
    if variables is None:
        names: List[Tuple[str, int]] = []
        _identifiers(ast, names)
        variables = infer_variables(names)
    return _eval_poly(ast, tuple(variables))


def parse_spoly(text) -> SPoly:
    return SPoly.from_mpoly(parse_poly(text, ("s",)))


def parse_rational(text) -> Fraction:
    p = parse_poly(text, ())
    return p.constant_term()


# ---------------------------------------------------------------------------
# germs


@dataclass(frozen=True)
class MeromorphicGerm:
    """The germ ``f/g`` at the origin, with ``f`` and ``g`` coprime."""

    f: MPoly
    g: MPoly

    @property
    def vars(self) -> Tuple[str, ...]:
        return self.f.vars

    @classmethod
    def from_pair(cls, f: MPoly, g: MPoly, local: bool = True) -> "MeromorphicGerm":
        if f.is_zero():
            raise GermError("numerator is zero")
        if g.is_zero():
            raise GermError("denominator is zero")
        if g.vars != f.vars:
            g = g.with_vars(f.vars)
        common = gcd(f, g)
        if not common.is_constant():
            f, g = exact_div(f, common), exact_div(g, common)
        if local:
            f, g = _strip_units(f, g)
        else:
            lc = g.leading()[1]
            f, g = f.scale(1 / lc), g.scale(1 / lc)
        return cls(f, g)

    def is_constant(self) -> bool:
        return self.f.is_constant() and self.g.is_constant()

    def swapped(self) -> "MeromorphicGerm":
        return MeromorphicGerm(self.g, self.f)

    def __str__(self):
        return format_germ(self)


def _strip_units(f: MPoly, g: MPoly) -> Tuple[MPoly, MPoly]:
    """Drop polynomial factors that do not vanish at the origin."""
    _, ff = factor(f)
    _, fg = factor(g)
    keep_f = [q ** m for q, m in ff if q.constant_term() == 0]
    keep_g = [q ** m for q, m in fg if q.constant_term() == 0]
    return primitive(product(keep_f, f.vars)), primitive(product(keep_g, f.vars))


def format_germ(germ: MeromorphicGerm) -> str:
    if germ.g == 1:
        return format_poly(germ.f)
    return f"({format_poly(germ.f)})/({format_poly(germ.g)})"


@_guarded
def parse_germ(text, local: bool = True, require_nonconstant: bool = False) -> MeromorphicGerm:
    """Parse ``f/g`` text into a reduced germ.

    With ``local`` (the default) factors that are units at the origin,
    constants included, are dropped: the result is a monic representative
    of the germ up to a unit.
    """
    ast = _parse_ast(text)
    names: List[Tuple[str, int]] = []
    _identifiers(ast, names)
    vars = infer_variables(names)
    num, den = _eval_rational(ast, vars)
    if num.is_zero():
        raise ParseError("numerator is zero", 0)
    try:
        germ = MeromorphicGerm.from_pair(num, den, local=local)
    except GermError as exc:
        raise ParseError(str(exc), 0) from None
    if require_nonconstant and germ.f.is_constant() and germ.g.is_constant():
        raise ParseError("germ is constant (a unit at the origin)", 0)
    return germ


def _coordinate_names(ast) -> List[Tuple[str, int]]:
    names: List[Tuple[str, int]] = []
    _identifiers(ast, names)
    out = []
    for n, p in names:
        if n == "s":
            continue
        m = _DERIV.match(n)
        if m:
            t = m.group(1)
            out.append((t if t in ("x", "y") else f"x{t}", p))
        else:
            out.append((n, p))
    return out


@_guarded
def parse_equation_data(f_text, g_text, op_text):
    """Parse ``f``, ``g`` and an operator over one shared set of coordinates.

    Nothing is cancelled or normalized: a functional equation is checked for
    exactly the ``f`` and ``g`` that were written.
    """
    from .dmodule import DifferentialOperator  # noqa: F401  (parse_operator needs it)

    asts = [_parse_ast(t) for t in (f_text, g_text, op_text)]
    names: List[Tuple[str, int]] = []
    for a in asts[:2]:
        _identifiers(a, names)
    names += _coordinate_names(asts[2])
    vars = infer_variables(names)
    f = _eval_poly(asts[0], vars)
    g = _eval_poly(asts[1], vars)
    if f.is_zero() or g.is_zero():
        raise ParseError("f and g must be nonzero", 0)
    return MeromorphicGerm(f, g), parse_operator(op_text, vars)


# ---------------------------------------------------------------------------
# operators


def _deriv_index(name: str, vars: Tuple[str, ...]) -> Optional[int]:
    m = _DERIV.match(name)
    if not m:
        return None
    target = m.group(1)
    target = target if target in ("x", "y") else f"x{target}"
    if target not in vars:
        return -1
    return vars.index(target)


@_guarded
def parse_operator(text, variables: Optional[Sequence[str]] = None):
    """Parse a normally ordered differential operator in ``D[s]``.

    ``variables`` declares the coordinate names; if omitted they are inferred
    from the coefficient variables and the derivative symbols.
    """
    from .dmodule import DifferentialOperator

    ast = _parse_ast(text)
    if variables is None:
        variables = infer_variables(_coordinate_names(ast))
    vars = tuple(variables)

    def ev(node) -> "DifferentialOperator":
        kind = node[0]
        if kind == "num":
            return DifferentialOperator.scalar(node[1], vars)
        if kind == "id":
            name = node[1]
            if name == "s":
                return DifferentialOperator.coefficient(MPoly.var("s", vars + ("s",)), vars)
            if name in vars:
                return DifferentialOperator.coefficient(MPoly.var(name, vars + ("s",)), vars)
            k = _deriv_index(name, vars)
            if k is None:
                raise ParseError(f"unknown identifier {name!r}", node[2])
            if k < 0:
                raise ParseError(f"derivative {name!r} refers to an undeclared variable", node[2])
            return DifferentialOperator.partial(k, vars)
        if kind == "neg":
            return -ev(node[1])
        if kind == "pow":
            base = ev(node[1])
            out = DifferentialOperator.scalar(1, vars)
            for _ in range(node[2]):
                out = _ordered_product(out, base, node[3])
            return out
        a, b = ev(node[1]), ev(node[2])
        if kind == "add":
            return a + b
        if kind == "sub":
            return a - b
        if kind == "mul":
            return _ordered_product(a, b, node[3])
        if not b.is_scalar():
            raise ParseError("only constant divisors are allowed in operators", node[3])
        c = b.scalar_value()
        if c == 0:
            raise ParseError("division by zero", node[3])
        return a.scale(1 / c)

    return ev(ast)


def _ordered_product(a, b, pos: int):
    if a.has_derivatives() and not b.coefficients_x_free():
        raise ParseError(
            "operator terms must be normally ordered (coefficients left of derivatives)", pos
        )
    return a.compose_commuting(b)
