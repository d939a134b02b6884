# cython: boundscheck=False, wraparound=False, cdivision=True, language_level=3
"""Compiled lattice-point enumeration kernel (Fincke-Pohst).

Mirrors ``_enumpy.enumerate_half``; same contract, same output order.
"""

from libc.math cimport sqrt, floor, ceil
from libc.stdlib cimport malloc, realloc, free

import numpy as np
cimport numpy as cnp

from .errors import EnumerationBudgetExceeded

cnp.import_array()

DEF MAX_DIM = 16


cdef struct Buf:
    cnp.int64_t* data
    long count
    long cap


cdef int _push(Buf* buf, long* k, int n) except -1:
    cdef long j
    if buf.count == buf.cap:
        buf.cap *= 2
        buf.data = <cnp.int64_t*>realloc(buf.data,
                                         buf.cap * n * sizeof(cnp.int64_t))
        if buf.data == NULL:
            raise MemoryError()
    for j in range(n):
        buf.data[buf.count * n + j] = k[j]
    buf.count += 1
    return 0


cdef int _descend(double[:, ::1] A, int n, int i, double partial,
                  double* shift, bint all_zero, double radius2,
                  long budget, long* visited, long* k, Buf* buf) except -1:
    cdef double d = A[i, i]
    cdef double c = shift[i]
    cdef double rem = radius2 - partial
    cdef double s, y, p2
    cdef long lo, hi, ki
    cdef int j
    cdef double new_shift[MAX_DIM]
    if rem < 0.0:
        return 0
    s = sqrt(rem)
    lo = <long>ceil((-c - s) / d)
    hi = <long>floor((-c + s) / d)
    if all_zero and lo < 0:
        lo = 0
    for ki in range(lo, hi + 1):
        visited[0] += 1
        if visited[0] > budget:
            raise EnumerationBudgetExceeded(
                "enumeration exceeded budget of %d candidates" % budget
            )
        y = c + ki * d
        p2 = partial + y * y
        if p2 > radius2:
            continue
        k[i] = ki
        if i == 0:
            if not (all_zero and ki == 0):
                _push(buf, k, n)
        else:
            for j in range(i):
                new_shift[j] = shift[j] + ki * A[i, j]
            _descend(A, n, i - 1, p2, new_shift,
                     all_zero and ki == 0, radius2, budget, visited, k, buf)
    k[i] = 0
    return 0


def enumerate_half(chol_lower, double radius2, long budget):
    """See ``foamlat._enumpy.enumerate_half``."""
    cdef double[:, ::1] A = np.ascontiguousarray(chol_lower, dtype=np.float64)
    cdef int n = A.shape[0]
    cdef double shift[MAX_DIM]
    cdef long k[MAX_DIM]
    cdef long visited = 0
    cdef long i
    cdef int j
    cdef Buf buf
    cdef cnp.int64_t[:, ::1] view
    if n > MAX_DIM:
        raise ValueError("dimension exceeds compiled kernel limit")
    for j in range(n):
        shift[j] = 0.0
        k[j] = 0
    buf.cap = 64
    buf.count = 0
    buf.data = <cnp.int64_t*>malloc(buf.cap * n * sizeof(cnp.int64_t))
    if buf.data == NULL:
        raise MemoryError()
    try:
        _descend(A, n, n - 1, 0.0, shift, True, radius2, budget,
                 &visited, k, &buf)
        out = np.empty((buf.count, n), dtype=np.int64)
        view = out
        for i in range(buf.count):
            for j in range(n):
                view[i, j] = buf.data[i * n + j]
        return out
    finally:
        free(buf.data)
