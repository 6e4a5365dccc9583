"""Pure-Python (numpy-vectorized) row reduction, used when the compiled kernel is absent.

Works for int64 arrays mod p and for object arrays of Fractions alike.
"""
from __future__ import annotations

import numpy as np


def rref_generic(A, inv, norm):
    A = A.copy()
    rows, cols = A.shape
    r = 0
    pivots = []
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = norm(A[r] * inv(A[r, c]))
        others = np.nonzero(A[:, c])[0]
        others = others[others != r]
        if len(others):
            A[others] = norm(A[others] - np.outer(A[others, c], A[r]))
        pivots.append(c)
        r += 1
    return A, pivots


def rref_mod_p(A_in, p: int):
    A = np.mod(np.asarray(A_in, dtype=np.int64), p)
    return rref_generic(A, lambda a: pow(int(a), -1, p), lambda v: np.mod(v, p))


def rank_mod_p(A_in, p: int) -> int:
    A = np.mod(np.asarray(A_in, dtype=np.int64), p)
    rows, cols = A.shape
    r = 0
    for c in range(cols):
        if r >= rows:
            break
        nz = np.nonzero(A[r:, c])[0]
        if len(nz) == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            A[[r, i]] = A[[i, r]]
        A[r] = np.mod(A[r] * pow(int(A[r, c]), -1, p), p)
        below = r + 1 + np.nonzero(A[r + 1:, c])[0]
        if len(below):
            A[below] = np.mod(A[below] - np.outer(A[below, c], A[r]), p)
        r += 1
    return r
