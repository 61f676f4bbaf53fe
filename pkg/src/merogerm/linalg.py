"""Exact linear algebra over Q on top of an integer row-reduction kernel.

The compiled kernel (``_rref_c``) is used when it was built and
``MEROGERM_PURE`` is not set; otherwise the pure Python one is used.  The
compiled kernel works in int64 and the big-integer kernel takes over on
overflow, so results never depend on which one ran.
"""

from __future__ import annotations

import os
from fractions import Fraction
from math import lcm
from typing import List, Sequence, Tuple

from . import _rref_py

BACKEND = "python"
_fast = None
if not os.environ.get("MEROGERM_PURE"):
    try:
        from . import _rref_c as _fast_mod

        _fast = _fast_mod.rref_int
        BACKEND = "cython"
    except ImportError:  # extension not built
        _fast = None


def rref_int(rows: Sequence[Sequence[int]], ncols: int, backend: str | None = None):
    backend = backend or BACKEND
    if backend == "cython":
        if _fast is None:
            raise RuntimeError("compiled kernel not available")
        try:
            return _fast(rows, ncols)
        except OverflowError:
            pass
    return _rref_py.rref_int(rows, ncols)


def integer_rows(rows: Sequence[Sequence[Fraction]]) -> List[List[int]]:
    out = []
    for r in rows:
        d = 1
        for v in r:
            if not isinstance(v, int):
                d = lcm(d, v.denominator)
        out.append([int(v * d) for v in r])
    return out


def rref(rows: Sequence[Sequence[Fraction]], ncols: int) -> Tuple[List[List[int]], List[int]]:
    return rref_int(integer_rows(rows), ncols)


def rank(rows, ncols: int) -> int:
    return len(rref(rows, ncols)[1])


def nullspace(rows: Sequence[Sequence[Fraction]], ncols: int) -> List[List[Fraction]]:
    """Basis of ``{v : A v = 0}``, one vector per free column, in column order."""
    red, piv = rref(rows, ncols)
    pivset = set(piv)
    basis = []
    for free in range(ncols):
        if free in pivset:
            continue
        v = [Fraction(0)] * ncols
        v[free] = Fraction(1)
        for r, pc in enumerate(piv):
            c = red[r][free]
            if c:
                v[pc] = Fraction(-c, red[r][pc])
        basis.append(v)
    return basis


class SpanTester:
    """Incremental membership test for a growing span of rational vectors."""

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: List[List[Fraction]] = []  # reduced, with pivot entry 1
        self.pivots: List[int] = []

    def _reduce(self, v: Sequence[Fraction]) -> List[Fraction]:
        v = list(v)
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c:
                v = [x - c * y for x, y in zip(v, row)]
        return v

    def contains(self, v) -> bool:
        return not any(self._reduce(v))

    def add(self, v) -> bool:
        """Add ``v``; return False if it was already in the span."""
        w = self._reduce(v)
        pc = next((i for i, x in enumerate(w) if x), None)
        if pc is None:
            return False
        inv = 1 / w[pc]
        w = [x * inv for x in w]
        self.rows = [[x - r[pc] * y for x, y in zip(r, w)] if r[pc] else r for r in self.rows]
        self.rows.append(w)
        self.pivots.append(pc)
        return True
