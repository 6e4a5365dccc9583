import os
import subprocess
import sys
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, strategies as st
from hypothesis.extra.numpy import arrays

from gradecone import QQ, _kernels_py, linalg
from gradecone.ring import PrimeField

from conftest import P, rank_mod

F = PrimeField(P)
matrices = st.tuples(st.integers(1, 12), st.integers(1, 12)).flatmap(
    lambda s: arrays(np.int64, s, elements=st.integers(0, P - 1)))
sparse = matrices.map(lambda A: np.where(A % 3 == 0, A, 0))


@given(st.one_of(matrices, sparse))
def test_python_kernel_rank_matches_oracle(A):
    assert _kernels_py.rank_mod_p(A, P) == rank_mod(A.tolist())


@pytest.mark.skipif(not linalg.compiled_available(), reason="extension not built")
@given(st.one_of(matrices, sparse))
def test_backends_agree(A):
    from gradecone import _kernels
    R1, p1 = _kernels_py.rref_mod_p(A, P)
    R2, p2 = _kernels.rref_mod_p(A, P)
    assert list(p1) == list(p2)
    assert np.array_equal(np.asarray(R1), np.asarray(R2))
    assert _kernels.rank_mod_p(A, P) == len(p1)


@given(st.one_of(matrices, sparse))
def test_nullspace(A):
    N = linalg.nullspace(A, F)
    assert N.shape[0] == A.shape[1] - linalg.rank(A, F)
    if N.shape[0]:
        assert linalg.is_zero(linalg.matmul(A, N.T, F))


def test_rational_linear_algebra():
    A = linalg.asmatrix([[Fraction(1, 2), 1], [1, 2]], QQ)
    assert linalg.rank(A, QQ) == 1
    N = linalg.nullspace(A, QQ)
    assert N.shape[0] == 1 and linalg.is_zero(linalg.matmul(A, N.T, QQ))


def test_backend_switch():
    before = linalg.BACKEND
    try:
        linalg.use_backend("python")
        assert linalg.BACKEND == "python"
        assert linalg.rank(np.eye(3, dtype=np.int64), F) == 3
        with pytest.raises(ValueError):
            linalg.use_backend("fortran")
    finally:
        linalg.use_backend(before)


def test_fallback_selected_from_environment():
    env = dict(os.environ, GRADECONE_PURE="1")
    code = "from gradecone import linalg; print(linalg.BACKEND)"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True)
    assert out.stdout.strip() == "python"
