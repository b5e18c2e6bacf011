# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled Gauss-Jordan elimination on dense int64 matrices.

Same canonical output as the pure-Python kernel: primitive rows with positive
pivots, fully reduced.  Any intermediate overflow raises OverflowError so the
caller can retry with arbitrary-precision integers.
"""

from libc.stdlib cimport malloc, free, calloc

cdef extern from *:
    """
    static inline int cybiv_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int cybiv_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    bint cybiv_mul_ovf(long long a, long long b, long long *r) nogil
    bint cybiv_sub_ovf(long long a, long long b, long long *r) nogil


cdef inline long long _gcd(long long a, long long b) noexcept nogil:
    cdef long long t
    if a < 0:
        a = -a
    if b < 0:
        b = -b
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef void _normalize(long long *row, Py_ssize_t ncols, Py_ssize_t pivot) noexcept nogil:
    cdef long long g = 0
    cdef Py_ssize_t j
    for j in range(ncols):
        if row[j] != 0:
            g = _gcd(g, row[j])
            if g == 1:
                break
    if g == 0:
        return
    if pivot >= 0 and row[pivot] < 0:
        g = -g
    if g != 1:
        for j in range(ncols):
            row[j] = row[j] // g


cdef Py_ssize_t _eliminate(long long *A, Py_ssize_t nrows, Py_ssize_t ncols,
                           Py_ssize_t *pivcols, Py_ssize_t *nz) noexcept nogil:
    # returns the rank, or -1 on overflow
    cdef Py_ssize_t r = 0, c, i, j, best, k, nnz
    cdef long long p, a, g, mp, ma, x, y, bestabs, v
    cdef long long *prow
    cdef long long *row
    for c in range(ncols):
        if r >= nrows:
            break
        best = -1
        bestabs = 0
        for i in range(r, nrows):
            v = A[i * ncols + c]
            if v != 0:
                if v < 0:
                    v = -v
                if best < 0 or v < bestabs:
                    best = i
                    bestabs = v
                    if v == 1:
                        break
        if best < 0:
            continue
        if best != r:
            for j in range(ncols):
                x = A[r * ncols + j]
                A[r * ncols + j] = A[best * ncols + j]
                A[best * ncols + j] = x
        prow = A + r * ncols
        _normalize(prow, ncols, c)
        p = prow[c]
        nnz = 0
        for j in range(c, ncols):
            if prow[j] != 0:
                nz[nnz] = j
                nnz += 1
        for i in range(nrows):
            if i == r:
                continue
            row = A + i * ncols
            a = row[c]
            if a == 0:
                continue
            g = _gcd(p, a)
            mp = p // g
            ma = a // g
            if mp != 1:
                for j in range(ncols):
                    if row[j] != 0:
                        if cybiv_mul_ovf(row[j], mp, &x):
                            return -1
                        row[j] = x
            for k in range(nnz):
                j = nz[k]
                if cybiv_mul_ovf(ma, prow[j], &y):
                    return -1
                if cybiv_sub_ovf(row[j], y, &x):
                    return -1
                row[j] = x
            if mp != 1:
                _normalize(row, ncols, -1)
        pivcols[r] = c
        r += 1
    return r


def rref_int64(rows, Py_ssize_t ncols):
    """Reduce sparse integer rows; returns (rows, pivots) like the Python kernel.

    Entries must fit in a signed 64-bit integer; OverflowError is raised when
    they do not or when elimination would overflow.
    """
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, rank, piv
    cdef long long *A
    cdef Py_ssize_t *pivcols
    cdef Py_ssize_t *nz
    cdef long long *row
    if nrows == 0 or ncols == 0:
        return [], []
    A = <long long *> calloc(nrows * ncols, sizeof(long long))
    pivcols = <Py_ssize_t *> malloc((nrows if nrows < ncols else ncols) * sizeof(Py_ssize_t))
    nz = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    if A == NULL or pivcols == NULL or nz == NULL:
        free(A)
        free(pivcols)
        free(nz)
        raise MemoryError()
    try:
        for i in range(nrows):
            for j, v in rows[i].items():
                A[i * ncols + j] = v
        with nogil:
            rank = _eliminate(A, nrows, ncols, pivcols, nz)
        if rank < 0:
            raise OverflowError("int64 overflow during elimination")
        out = []
        pivots = []
        for i in range(rank):
            row = A + i * ncols
            piv = pivcols[i]
            _normalize(row, ncols, piv)
            d = {}
            for j in range(piv, ncols):
                if row[j] != 0:
                    d[j] = row[j]
            out.append(d)
            pivots.append(piv)
        return out, pivots
    finally:
        free(A)
        free(pivcols)
        free(nz)
