"""Exact dense linear algebra over F_p and Q.

Matrices are numpy arrays: ``int64`` with entries in ``[0, p)`` over F_p, and
``object`` arrays of :class:`~fractions.Fraction` over Q.  Row reduction over
F_p dispatches to the compiled kernel when it was built, else to the
numpy-vectorized fallback.  Set ``GRADECONE_PURE=1`` to force the fallback.
"""
from __future__ import annotations

import os
from fractions import Fraction

import numpy as np

from . import _kernels_py
from .ring import PrimeField

if os.environ.get("GRADECONE_PURE"):
    _compiled = None
else:
    try:
        from . import _kernels as _compiled
    except ImportError:  # extension not built
        _compiled = None

BACKEND = "compiled" if _compiled is not None else "python"
_fp = _compiled if _compiled is not None else _kernels_py


def use_backend(name: str) -> None:
    """Switch the F_p kernel at runtime (``"compiled"`` or ``"python"``)."""
    global _fp, BACKEND
    if name == "compiled":
        if _compiled is None:
            raise RuntimeError("compiled kernel not available")
        _fp = _compiled
    elif name == "python":
        _fp = _kernels_py
    else:
        raise ValueError(name)
    BACKEND = name


def compiled_available() -> bool:
    return _compiled is not None


def _is_fp(field) -> bool:
    return isinstance(field, PrimeField)


def zeros(rows: int, cols: int, field):
    if _is_fp(field):
        return np.zeros((rows, cols), dtype=np.int64)
    out = np.empty((rows, cols), dtype=object)
    out.fill(Fraction(0))
    return out


def asmatrix(rows, field, ncols: int | None = None):
    rows = list(rows)
    if not rows:
        return zeros(0, ncols or 0, field)
    if _is_fp(field):
        return np.mod(np.array(rows, dtype=np.int64), field.p)
    return np.array([[Fraction(x) for x in r] for r in rows], dtype=object)


def rref(A, field):
    """Reduced row echelon form and pivot columns."""
    if A.shape[0] == 0 or A.shape[1] == 0:
        return A.copy(), []
    if _is_fp(field):
        R, piv = _fp.rref_mod_p(A, field.p)
        return R, list(piv)
    return _kernels_py.rref_generic(A, field.inv, lambda v: v)


def rank(A, field) -> int:
    if A.shape[0] == 0 or A.shape[1] == 0:
        return 0
    if _is_fp(field):
        return int(_fp.rank_mod_p(A, field.p))
    return len(rref(A, field)[1])


def nullspace(A, field):
    """Rows form a basis of ``{v : A v = 0}``."""
    rows, cols = A.shape
    if cols == 0:
        return zeros(0, 0, field)
    R, piv = rref(A, field)
    free = [c for c in range(cols) if c not in set(piv)]
    N = zeros(len(free), cols, field)
    for k, fc in enumerate(free):
        N[k, fc] = 1 if _is_fp(field) else Fraction(1)
        for r, pc in enumerate(piv):
            v = R[r, fc]
            if v:
                N[k, pc] = (-v) % field.p if _is_fp(field) else -v
    return N


def matmul(A, B, field):
    if _is_fp(field):
        if A.shape[1] == 0:
            return np.zeros((A.shape[0], B.shape[1]), dtype=np.int64)
        return np.mod(A @ B, field.p)
    if A.shape[1] == 0:
        return zeros(A.shape[0], B.shape[1], field)
    return A.dot(B)


def is_zero(A) -> bool:
    return not np.any(A != 0)


def complement_rows(V, W, field):
    """Rows of ``V`` (in order) extending a basis of ``span(W)`` to ``span(W) + span(V)``.

    Returns the indices of the selected rows of ``V``.
    """
    chosen = []
    base = W
    r0 = rank(base, field) if base.shape[0] else 0
    for i in range(V.shape[0]):
        trial = np.vstack([base, V[i:i + 1]]) if base.shape[0] else V[i:i + 1]
        r = rank(trial, field)
        if r > r0:
            chosen.append(i)
            base, r0 = trial, r
    return chosen
