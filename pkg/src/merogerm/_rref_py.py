"""Fraction-free row reduction over the integers (pure Python kernel)."""

from math import gcd


def _normalize(row):
    g = 0
    for v in row:
        if v:
            g = gcd(g, v)
            if g == 1:
                return row
    if g > 1:
        return [v // g for v in row]
    return row


def rref_int(rows, ncols):
    """Reduce integer ``rows`` to reduced echelon form with integer pivots.

    Returns ``(rows, pivots)`` where ``rows[r]`` has its pivot in column
    ``pivots[r]`` and every other row is zero there.  Rows are divided by
    their content after each update, so entries stay small.
    """
    a = [list(r) for r in rows]
    pivots = []
    rank = 0
    nrows = len(a)
    for col in range(ncols):
        if rank == nrows:
            break
        best = -1
        for i in range(rank, nrows):
            v = a[i][col]
            if v and (best < 0 or abs(v) < abs(a[best][col])):
                best = i
        if best < 0:
            continue
        a[rank], a[best] = a[best], a[rank]
        prow = a[rank]
        p = prow[col]
        for i in range(nrows):
            if i == rank:
                continue
            row = a[i]
            c = row[col]
            if not c:
                continue
            g = gcd(p, c)
            mp, mc = p // g, c // g
            a[i] = _normalize([mp * x - mc * y for x, y in zip(row, prow)])
        pivots.append(col)
        rank += 1
    out = [_normalize(r) for r in a[:rank]]
    for r, col in enumerate(pivots):
        if out[r][col] < 0:
            out[r] = [-v for v in out[r]]
    return out, pivots
