"""Embedded resolution of plane-curve pairs by point blow-ups over Q.

Every point still under consideration is kept in local coordinates ``(u, v)``
centred at the origin, together with

* the composite pullback ``(X, Y)`` of the original coordinates,
* the exceptional divisors through it, stored by axis
  (0 is ``{u = 0}``, 1 is ``{v = 0}``),
* the local strict transforms of the irreducible factors of ``f`` and ``g``
  that pass through it.

Blowing up the origin uses the two standard charts

* ``A(c)``: ``u -> u, v -> u (v + c)``, new divisor ``{u = 0}``,
* ``B``:    ``u -> u v, v -> v``,      new divisor ``{v = 0}``,

so every centre on the new divisor is again the origin of some chart.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .algebra import (
    MPoly,
    as_rat,
    divide_out,
    exact_div,
    factor,
    fmt_rat,
    format_poly,
    rational_root_split,
    substitute,
    uni_is_squarefree,
    valuation,
)
from .parser import MeromorphicGerm, parse_germ, parse_poly

SCHEMA_VERSION = 1
LOCAL = ("u", "v")
DEFAULT_CAP = 64


class ResolutionError(Exception):
    pass


class UnsupportedExtension(ResolutionError):
    """A blow-up centre is not defined over Q."""


class IterationCap(ResolutionError):
    """Too many blow-ups; almost certainly a bug or a hostile input."""


# ---------------------------------------------------------------------------
# charts


@dataclass(frozen=True)
class Step:
    kind: str  # "A" or "B"
    c: Fraction = Fraction(0)

    def __str__(self):
        return f"A({fmt_rat(self.c)})" if self.kind == "A" else "B"


_U = MPoly.var("u", LOCAL)
_V = MPoly.var("v", LOCAL)


def _elementary(kind: str, c: Fraction) -> Dict[str, MPoly]:
    if kind == "A":
        return {"u": _U, "v": _U * (_V + c)}
    return {"u": _U * _V, "v": _V}


def _pull(p: MPoly, kind: str, c: Fraction = Fraction(0)) -> MPoly:
    return substitute(p, _elementary(kind, c))


@dataclass(frozen=True)
class Chart:
    """A chart of the final model: ``x = X(u, v)``, ``y = Y(u, v)``."""

    steps: Tuple[Step, ...]
    X: MPoly
    Y: MPoly
    exceptional: str = "u"

    def pullback(self, h: MPoly) -> MPoly:
        if len(h.vars) != 2:
            raise ValueError("charts pull back polynomials in two variables")
        return substitute(h, {h.vars[0]: self.X, h.vars[1]: self.Y})

    def to_json(self):
        return {
            "steps": [str(s) for s in self.steps],
            "x": format_poly(self.X),
            "y": format_poly(self.Y),
            "exceptional": self.exceptional,
        }

    @classmethod
    def from_json(cls, d) -> "Chart":
        steps = []
        for s in d["steps"]:
            if s == "B":
                steps.append(Step("B"))
            else:
                steps.append(Step("A", Fraction(s[2:-1])))
        return cls(
            tuple(steps), parse_poly(d["x"], LOCAL), parse_poly(d["y"], LOCAL), d["exceptional"]
        )


# ---------------------------------------------------------------------------
# divisors and points


@dataclass(frozen=True)
class DivisorData:
    id: int
    kind: str  # exceptional | strict_f | strict_g
    Nf: int
    Ng: int
    k: int
    chart: Optional[Chart] = None
    factor: Optional[MPoly] = None  # strict transforms only
    stage: str = "resolve"

    @property
    def Nfg(self) -> int:
        return self.Nf - self.Ng

    @property
    def cls(self) -> str:
        n = self.Nfg
        return "zero" if n > 0 else "pole" if n < 0 else "dicritical"

    def sign(self) -> int:
        return (self.Nfg > 0) - (self.Nfg < 0)

    def to_json(self):
        return {
            "id": self.id,
            "kind": self.kind,
            "Nf": self.Nf,
            "Ng": self.Ng,
            "Nfg": self.Nfg,
            "k": self.k,
            "class": self.cls,
            "stage": self.stage,
            "chart": self.chart.to_json() if self.chart else None,
            "factor": format_poly(self.factor) if self.factor is not None else None,
        }


@dataclass(frozen=True)
class Point:
    """A point of the current model, centred at the local origin."""

    steps: Tuple[Step, ...]
    X: MPoly
    Y: MPoly
    axes: Tuple[Tuple[int, int], ...]  # (axis, divisor id)
    sources: Tuple[Tuple[int, MPoly], ...]  # (strict divisor id, local equation)
    residual: Optional[Tuple[Fraction, ...]] = None  # irrational points only
    on: Tuple[int, ...] = ()  # components through an irrational point

    @property
    def irrational(self) -> bool:
        return self.residual is not None

    def components(self) -> Tuple[int, ...]:
        if self.irrational:
            return self.on
        return tuple(d for _, d in self.axes) + tuple(s for s, _ in self.sources)

    def to_json(self):
        if self.irrational:
            return {"irrational": True, "on": list(self.on), "residual": [fmt_rat(c) for c in self.residual]}
        return {
            "steps": [str(s) for s in self.steps],
            "x": format_poly(self.X),
            "y": format_poly(self.Y),
            "axes": [[a, d] for a, d in self.axes],
            "sources": [[s, format_poly(p)] for s, p in self.sources],
        }

    @classmethod
    def from_json(cls, d) -> "Point":
        if d.get("irrational"):
            return cls((), MPoly.zero(LOCAL), MPoly.zero(LOCAL), (), (),
                       tuple(Fraction(c) for c in d["residual"]), tuple(d["on"]))
        ch = Chart.from_json({"steps": d["steps"], "x": d["x"], "y": d["y"], "exceptional": "u"})
        return cls(
            ch.steps,
            ch.X,
            ch.Y,
            tuple((a, dd) for a, dd in d["axes"]),
            tuple((s, parse_poly(p, LOCAL)) for s, p in d["sources"]),
        )


@dataclass(frozen=True)
class ResolutionData:
    germ: MeromorphicGerm
    divisors: Tuple[DivisorData, ...]
    edges: Tuple[Tuple[int, int], ...]
    history: Tuple[dict, ...]
    points: Tuple[Point, ...]
    separated: bool = False

    def divisor(self, i: int) -> DivisorData:
        for d in self.divisors:
            if d.id == i:
                return d
        raise KeyError(f"no divisor E{i}")

    @property
    def ids(self) -> List[int]:
        return [d.id for d in self.divisors]

    def neighbours(self, i: int) -> List[int]:
        return sorted({b for a, b in self.edges if a == i} | {a for a, b in self.edges if b == i})

    def by_triple(self) -> Dict[Tuple[int, int, int], List[int]]:
        out: Dict[Tuple[int, int, int], List[int]] = {}
        for d in self.divisors:
            out.setdefault((d.Nf, d.Ng, d.k), []).append(d.id)
        return out


# ---------------------------------------------------------------------------
# local geometry


def _orders(pt: Point) -> List[Tuple[int, MPoly, int]]:
    return [(s, p, p.order()) for s, p in pt.sources]


def _is_snc(pt: Point) -> bool:
    if pt.irrational:
        return True
    ms = _orders(pt)
    total = sum(m for _, _, m in ms)
    n_exc = len(pt.axes)
    if n_exc == 2:
        return total == 0
    if n_exc == 1:
        if total == 0:
            return True
        if total > 1:
            return False
        (_, p, _), = ms
        axis = pt.axes[0][0]
        lin = p.terms.get((0, 1) if axis == 0 else (1, 0), 0)
        return lin != 0
    if any(m > 1 for _, _, m in ms) or len(ms) > 2:
        return False
    if len(ms) == 2:
        (_, p, _), (_, q, _) = ms
        det = p.terms.get((1, 0), 0) * q.terms.get((0, 1), 0) - p.terms.get((0, 1), 0) * q.terms.get((1, 0), 0)
        return det != 0
    return True


def _mixed_signs(pt: Point, table: Dict[int, DivisorData]) -> bool:
    signs = {table[c].sign() for c in pt.components()}
    return 1 in signs and -1 in signs


def _tangent_directions(p: MPoly, m: int):
    """Rational slopes (with multiplicities), vertical multiplicity, residual coefficients."""
    h = p.homogeneous_part(m)
    coeffs = [h.terms.get((m - j, j), Fraction(0)) for j in range(m + 1)]
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    vertical = m - (len(coeffs) - 1)
    roots, residual = rational_root_split(coeffs)
    return roots, vertical, residual


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> List[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _blow_up(pt: Point, new_id: int, table: Dict[int, DivisorData], stage: str):
    """Blow up the origin of ``pt``; return the new divisor, child points and history entry."""
    ms = _orders(pt)
    Nf = sum(table[d].Nf for _, d in pt.axes) + sum(table[s].Nf * m for s, _, m in ms)
    Ng = sum(table[d].Ng for _, d in pt.axes) + sum(table[s].Ng * m for s, _, m in ms)
    k = sum(table[d].k for _, d in pt.axes) + 1
    chart = Chart(pt.steps + (Step("A"),), _pull(pt.X, "A"), _pull(pt.Y, "A"), "u")
    div = DivisorData(new_id, "exceptional", Nf, Ng, k, chart, None, stage)

    slopes: Dict[Fraction, None] = {}
    vertical = False
    residual: List[Fraction] = [Fraction(1)]
    irrational: List[Tuple[int, Tuple[Fraction, ...]]] = []
    for s, p, m in ms:
        if m == 0:
            continue
        roots, vert, res = _tangent_directions(p, m)
        for r, _ in roots:
            slopes[r] = None
        vertical = vertical or vert > 0
        if len(res) > 1:
            residual = _poly_mul(residual, res)
            irrational.append((s, tuple(res)))
    if len(residual) > 1 and not uni_is_squarefree(residual):
        raise UnsupportedExtension(
            "tangent directions at an irrational centre are not separated over Q"
        )
    axes = dict(pt.axes)
    if 1 in axes:
        slopes[Fraction(0)] = None
    if 0 in axes:
        vertical = True

    children: List[Point] = []
    targets = [("A", c) for c in sorted(slopes)] + ([("B", Fraction(0))] if vertical else [])
    for kind, c in targets:
        srcs = []
        for s, p, m in ms:
            q = _pull(p, kind, c)
            if m:
                q = exact_div(q, MPoly.monomial((m, 0) if kind == "A" else (0, m), LOCAL))
            if q.constant_term() == 0:
                srcs.append((s, q))
        if kind == "A":
            new_axes = [(0, new_id)] + ([(1, axes[1])] if c == 0 and 1 in axes else [])
        else:
            new_axes = ([(0, axes[0])] if 0 in axes else []) + [(1, new_id)]
        children.append(
            Point(
                pt.steps + (Step(kind, c),),
                _pull(pt.X, kind, c),
                _pull(pt.Y, kind, c),
                tuple(sorted(new_axes)),
                tuple(srcs),
            )
        )
    for s, res in irrational:
        children.append(Point((), MPoly.zero(LOCAL), MPoly.zero(LOCAL), (), (), res, (new_id, s)))

    entry = {
        "divisor": new_id,
        "center": sorted(pt.components()),
        "chart": [str(st) for st in pt.steps],
        "stage": stage,
    }
    return div, children, entry


def _run(points: Iterable[Point], table: Dict[int, DivisorData], next_id: int, cap: int,
         separate: bool, count: int = 0):
    queue = deque(points)
    final: List[Point] = []
    history: List[dict] = []
    created: List[DivisorData] = []
    stage = "separate" if separate else "resolve"
    while queue:
        pt = queue.popleft()
        need = not _is_snc(pt)
        if not need and separate and _mixed_signs(pt, table):
            if pt.irrational:
                raise UnsupportedExtension("a zero and a pole meet at a point not defined over Q")
            need = True
        if not need:
            final.append(pt)
            continue
        count += 1
        if count > cap:
            raise IterationCap(f"more than {cap} blow-ups")
        div, children, entry = _blow_up(pt, next_id, table, stage)
        table[div.id] = div
        created.append(div)
        history.append(entry)
        next_id += 1
        queue.extend(children)
    return final, created, history, count


def _edges(points: Iterable[Point]) -> Tuple[Tuple[int, int], ...]:
    out = set()
    for pt in points:
        comps = pt.components()
        if len(comps) == 2:
            a, b = sorted(comps)
            out.add((a, b))
        elif len(comps) > 2:  # pragma: no cover - excluded by the SNC test
            raise ResolutionError("more than two components through a final point")
    return tuple(sorted(out))


# ---------------------------------------------------------------------------
# public operations


def _sources(germ: MeromorphicGerm):
    out = []
    for kind, poly in (("strict_f", germ.f), ("strict_g", germ.g)):
        if poly.is_constant():
            continue
        _, facs = factor(poly)
        for q, m in facs:
            if q.constant_term() == 0:
                out.append((kind, q, m))
    return out


def resolve_pair(germ: MeromorphicGerm, cap: int = DEFAULT_CAP) -> ResolutionData:
    """Log resolution of ``f g`` (strict transforms of both included as divisors)."""
    if len(germ.vars) != 2:
        raise ValueError("resolution is implemented for plane germs only")
    srcs = _sources(germ)
    if not srcs:
        raise ValueError("f*g is a unit: nothing to resolve")
    table: Dict[int, DivisorData] = {}
    local = []
    for i, (kind, q, m) in enumerate(srcs):
        sid = -(i + 1)
        w = (m, 0) if kind == "strict_f" else (0, m)
        table[sid] = DivisorData(sid, kind, w[0], w[1], 0, None, q)
        local.append((sid, MPoly(LOCAL, q.terms)))
    root = Point((), _U, _V, (), tuple(local))
    final, created, history, _ = _run([root], table, 1, cap, separate=False)

    n_exc = len(created)
    remap = {d.id: d.id for d in created}
    for i in range(len(srcs)):
        remap[-(i + 1)] = n_exc + i + 1

    def rp(pt: Point) -> Point:
        return Point(pt.steps, pt.X, pt.Y, pt.axes,
                     tuple((remap[s], p) for s, p in pt.sources), pt.residual,
                     tuple(remap[c] for c in pt.on))

    divisors = list(created)
    for i in range(len(srcs)):
        d = table[-(i + 1)]
        divisors.append(DivisorData(remap[d.id], d.kind, d.Nf, d.Ng, 0, None, d.factor))
    for h in history:
        h["center"] = sorted(remap[c] for c in h["center"])
    points = tuple(rp(p) for p in final)
    return ResolutionData(germ, tuple(divisors), _edges(points), tuple(history), points)


def separate_dicritical(res: ResolutionData, cap: int = DEFAULT_CAP) -> ResolutionData:
    """Blow up every point where a zero divisor meets a pole divisor, until none is left."""
    table = {d.id: d for d in res.divisors}
    used = sum(1 for h in res.history)
    final, created, history, _ = _run(
        res.points, table, max(table) + 1, cap + used, separate=True, count=used
    )
    points = tuple(final)
    return ResolutionData(
        res.germ,
        res.divisors + tuple(created),
        _edges(points),
        res.history + tuple(history),
        points,
        True,
    )


def log_resolution(germ: MeromorphicGerm, cap: int = DEFAULT_CAP) -> ResolutionData:
    return separate_dicritical(resolve_pair(germ, cap), cap)


def ord_along(res: ResolutionData, divisor_id: int, h: MPoly) -> int:
    """Order of vanishing of the pullback of ``h`` along a divisor."""
    if h.is_zero():
        raise ValueError("ord_along of the zero polynomial")
    d = res.divisor(divisor_id)
    if h.vars != res.germ.vars:
        h = h.with_vars(res.germ.vars)
    if d.kind == "exceptional":
        return valuation(d.chart.pullback(h), d.chart.exceptional)
    if h.is_constant():
        return 0
    return divide_out(h, d.factor)[1]


def jacobian_order(res: ResolutionData, divisor_id: int) -> int:
    """Order along the divisor of the Jacobian determinant of its chart."""
    d = res.divisor(divisor_id)
    if d.kind != "exceptional":
        return 0
    X, Y = d.chart.X, d.chart.Y
    jac = X.derivative("u") * Y.derivative("v") - X.derivative("v") * Y.derivative("u")
    return valuation(jac, "u")


def classify(res: ResolutionData) -> Tuple[Tuple[int, ...], Tuple[int, ...], Tuple[int, ...]]:
    z = tuple(d.id for d in res.divisors if d.Nfg > 0)
    p = tuple(d.id for d in res.divisors if d.Nfg < 0)
    di = tuple(d.id for d in res.divisors if d.Nfg == 0)
    return z, p, di


def mixed_sign_edges(res: ResolutionData) -> List[Tuple[int, int]]:
    return [
        (a, b)
        for a, b in res.edges
        if res.divisor(a).sign() * res.divisor(b).sign() < 0
    ]


# ---------------------------------------------------------------------------
# serialization


def to_json(res: ResolutionData) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "germ": str(res.germ),
        "separated": res.separated,
        "divisors": [d.to_json() for d in res.divisors],
        "edges": [list(e) for e in res.edges],
        "history": [dict(h) for h in res.history],
        "points": [p.to_json() for p in res.points],
    }


def from_json(data: dict) -> ResolutionData:
    if data.get("schema_version") != SCHEMA_VERSION:
        raise ValueError(f"unsupported schema version {data.get('schema_version')!r}")
    germ = parse_germ(data["germ"])
    divs = []
    for d in data["divisors"]:
        divs.append(
            DivisorData(
                d["id"],
                d["kind"],
                d["Nf"],
                d["Ng"],
                d["k"],
                Chart.from_json(d["chart"]) if d["chart"] else None,
                parse_poly(d["factor"], germ.vars) if d["factor"] else None,
                d.get("stage", "resolve"),
            )
        )
    return ResolutionData(
        germ,
        tuple(divs),
        tuple(tuple(e) for e in data["edges"]),
        tuple(data["history"]),
        tuple(Point.from_json(p) for p in data["points"]),
        data.get("separated", False),
    )


def format_table(res: ResolutionData) -> str:
    rows = [("E", "kind", "N_f", "N_g", "N_fg", "k", "class", "neighbours")]
    for d in res.divisors:
        nb = ",".join(f"E{j}" for j in res.neighbours(d.id)) or "-"
        rows.append((f"E{d.id}", d.kind, str(d.Nf), str(d.Ng), str(d.Nfg), str(d.k), d.cls, nb))
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows)
