# cython: language_level=3, boundscheck=False, wraparound=False
"""Fraction-free row reduction on 64-bit integers.

Raises OverflowError as soon as an intermediate leaves the int64 range; the
caller then retries with the arbitrary precision kernel.
"""

from libc.stdlib cimport malloc, free

cdef extern from *:
    """
    static int mr_mul(long long a, long long b, long long *r) { return __builtin_mul_overflow(a, b, r); }
    static int mr_sub(long long a, long long b, long long *r) { return __builtin_sub_overflow(a, b, r); }
    """
    int mr_mul(long long a, long long b, long long *r) nogil
    int mr_sub(long long a, long long b, long long *r) nogil


cdef inline long long _gcd(long long a, long long b) nogil:
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        a, b = b, a % b
    return a


cdef inline long long _llabs(long long a) nogil:
    return -a if a < 0 else a


cdef void _normalize(long long *row, Py_ssize_t n) nogil:
    cdef long long g = 0
    cdef Py_ssize_t j
    for j in range(n):
        if row[j]:
            g = _gcd(g, row[j])
            if g == 1:
                return
    if g > 1:
        for j in range(n):
            row[j] //= g


cdef int _reduce(long long *a, Py_ssize_t nrows, Py_ssize_t ncols, Py_ssize_t *piv) nogil:
    """Returns the rank, or -1 on overflow."""
    cdef Py_ssize_t rank = 0, col, i, j, best
    cdef long long p, c, g, mp, mc, t1, t2, v
    cdef long long *prow
    cdef long long *row
    for col in range(ncols):
        if rank == nrows:
            break
        best = -1
        for i in range(rank, nrows):
            v = a[i * ncols + col]
            if v and (best < 0 or _llabs(v) < _llabs(a[best * ncols + col])):
                best = i
        if best < 0:
            continue
        if best != rank:
            for j in range(ncols):
                v = a[rank * ncols + j]
                a[rank * ncols + j] = a[best * ncols + j]
                a[best * ncols + j] = v
        prow = a + rank * ncols
        p = prow[col]
        for i in range(nrows):
            if i == rank:
                continue
            row = a + i * ncols
            c = row[col]
            if not c:
                continue
            g = _gcd(p, c)
            mp = p // g
            mc = c // g
            for j in range(ncols):
                if mr_mul(mp, row[j], &t1) or mr_mul(mc, prow[j], &t2) or mr_sub(t1, t2, &row[j]):
                    return -1
            _normalize(row, ncols)
        piv[rank] = col
        rank += 1
    return rank


def rref_int(rows, Py_ssize_t ncols):
    cdef Py_ssize_t nrows = len(rows), i, j, rank
    if nrows == 0 or ncols == 0:
        return [], []
    cdef long long *a = <long long *> malloc(nrows * ncols * sizeof(long long))
    cdef Py_ssize_t *piv = <Py_ssize_t *> malloc(nrows * sizeof(Py_ssize_t))
    if a == NULL or piv == NULL:
        free(a)
        free(piv)
        raise MemoryError()
    try:
        for i in range(nrows):
            r = rows[i]
            for j in range(ncols):
                a[i * ncols + j] = r[j]
        with nogil:
            rank = _reduce(a, nrows, ncols, piv)
        if rank < 0:
            raise OverflowError("int64 overflow in row reduction")
        out = []
        pivots = []
        for i in range(rank):
            _normalize(a + i * ncols, ncols)
            sign = -1 if a[i * ncols + piv[i]] < 0 else 1
            out.append([sign * a[i * ncols + j] for j in range(ncols)])
            pivots.append(piv[i])
        return out, pivots
    finally:
        free(a)
        free(piv)
