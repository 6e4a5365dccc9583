# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled row reduction over F_p (p < 2^31) on int64 matrices."""
import numpy as np
cimport numpy as cnp
from libc.stdint cimport int64_t

cnp.import_array()


cdef inline int64_t _inv(int64_t a, int64_t p):
    cdef int64_t t = 0, newt = 1, r = p, newr = a % p, q, tmp
    while newr != 0:
        q = r // newr
        tmp = t - q * newt
        t = newt
        newt = tmp
        tmp = r - q * newr
        r = newr
        newr = tmp
    if t < 0:
        t += p
    return t


def rref_mod_p(A_in, long p):
    """Reduced row echelon form of ``A_in`` mod p. Returns ``(R, pivots)``."""
    cdef cnp.ndarray[int64_t, ndim=2] arr = np.ascontiguousarray(np.mod(A_in, p), dtype=np.int64)
    cdef int64_t[:, ::1] A = arr
    cdef Py_ssize_t rows = A.shape[0], cols = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k, nnz
    cdef int64_t inv, f, tmp, pp = p
    cdef cnp.ndarray[Py_ssize_t, ndim=1] support_arr = np.empty(cols, dtype=np.intp)
    cdef Py_ssize_t[::1] support = support_arr
    pivots = []
    for c in range(cols):
        if r >= rows:
            break
        i = r
        while i < rows and A[i, c] == 0:
            i += 1
        if i == rows:
            continue
        if i != r:
            for j in range(c, cols):
                tmp = A[i, j]
                A[i, j] = A[r, j]
                A[r, j] = tmp
        inv = _inv(A[r, c], pp)
        nnz = 0
        for j in range(c, cols):
            if A[r, j] != 0:
                A[r, j] = (A[r, j] * inv) % pp
                support[nnz] = j
                nnz += 1
        for i in range(rows):
            if i == r:
                continue
            f = A[i, c]
            if f == 0:
                continue
            f = pp - f
            for k in range(nnz):
                j = support[k]
                A[i, j] = (A[i, j] + f * A[r, j]) % pp
        pivots.append(c)
        r += 1
    return arr, pivots


def rank_mod_p(A_in, long p):
    """Rank of ``A_in`` over F_p (forward elimination only)."""
    cdef cnp.ndarray[int64_t, ndim=2] arr = np.ascontiguousarray(np.mod(A_in, p), dtype=np.int64)
    cdef int64_t[:, ::1] A = arr
    cdef Py_ssize_t rows = A.shape[0], cols = A.shape[1]
    cdef Py_ssize_t r = 0, c, i, j, k, nnz
    cdef int64_t inv, f, tmp, pp = p
    cdef cnp.ndarray[Py_ssize_t, ndim=1] support_arr = np.empty(cols, dtype=np.intp)
    cdef Py_ssize_t[::1] support = support_arr
    for c in range(cols):
        if r >= rows:
            break
        i = r
        while i < rows and A[i, c] == 0:
            i += 1
        if i == rows:
            continue
        if i != r:
            for j in range(c, cols):
                tmp = A[i, j]
                A[i, j] = A[r, j]
                A[r, j] = tmp
        inv = _inv(A[r, c], pp)
        nnz = 0
        for j in range(c, cols):
            if A[r, j] != 0:
                A[r, j] = (A[r, j] * inv) % pp
                support[nnz] = j
                nnz += 1
        for i in range(r + 1, rows):
            f = A[i, c]
            if f == 0:
                continue
            f = pp - f
            for k in range(nnz):
                j = support[k]
                A[i, j] = (A[i, j] + f * A[r, j]) % pp
        r += 1
    return r
