"""Degree-by-degree linear algebra on graded modules ``F / N``.

``F = ⊕ R(-shifts[i])`` and ``N`` is a homogeneous submodule given by a
Gröbner basis; the degree-d piece has the standard module monomials of degree
d as basis.  Quotient rings ``A = R/J`` and free A-modules ``A^r`` are the
special case ``N = J·F``.
"""
from __future__ import annotations

from typing import Dict, List, Sequence, Tuple

import numpy as np

from . import linalg
from .groebner import TopOrder, Vector, buchberger_vectors, lead_term, reduce_vector
from .ring import PolynomialRing, mono_divides, mono_mul, monomials_of_degree


class QuotientModule:
    """The graded module ``F/N`` with ``N`` spanned by ``relations`` (vectors in F)."""

    def __init__(self, ring: PolynomialRing, shifts: Sequence[int], relations: Sequence[Vector] = (),
                 gb: Sequence[Vector] | None = None):
        self.ring = ring
        self.field = ring.field
        self.shifts = tuple(shifts)
        self.order = TopOrder(ring.order, self.shifts)
        if gb is None:
            gb = buchberger_vectors([r for r in relations if r], self.order, self.field,
                                    rank_one=len(self.shifts) == 1, shifts=self.shifts)
        self.gb = list(gb)
        self.leads = [lead_term(g, self.order) for g in self.gb]
        self._basis: Dict[int, List[Tuple[int, tuple]]] = {}
        self._index: Dict[int, Dict[Tuple[int, tuple], int]] = {}
        self._nf_cache: Dict[Tuple[int, tuple], Vector] = {}

    @classmethod
    def free_over_quotient(cls, ring, shifts, ideal_gb: Sequence[Vector]):
        """``A^r`` for ``A = R/J``; ``ideal_gb`` is a reduced GB of J as rank-1 vectors."""
        rels = [{(i, e): c for (_, e), c in g.items()} for i in range(len(shifts)) for g in ideal_gb]
        return cls(ring, shifts, gb=rels)

    @property
    def rank(self) -> int:
        return len(self.shifts)

    def is_standard(self, t) -> bool:
        c, e = t
        for lc, le in self.leads:
            if lc == c and mono_divides(le, e):
                return False
        return True

    def basis(self, d: int) -> List[Tuple[int, tuple]]:
        b = self._basis.get(d)
        if b is None:
            b = []
            n = self.ring.nvars
            for i, a in enumerate(self.shifts):
                if d - a < 0:
                    continue
                for e in monomials_of_degree(n, d - a):
                    if self.is_standard((i, e)):
                        b.append((i, e))
            self._basis[d] = b
            self._index[d] = {t: k for k, t in enumerate(b)}
        return b

    def dim(self, d: int) -> int:
        return len(self.basis(d))

    def index(self, d: int):
        self.basis(d)
        return self._index[d]

    def normal_form(self, vec: Vector) -> Vector:
        r, _ = reduce_vector(vec, self.gb, self.leads, self.order, self.field)
        return r

    def nf_term(self, t) -> Vector:
        r = self._nf_cache.get(t)
        if r is None:
            r = self.normal_form({t: self.field.one}) if not self.is_standard(t) else {t: self.field.one}
            self._nf_cache[t] = r
        return r

    def coords(self, vec: Vector, d: int):
        """Coordinate row of a homogeneous degree-d vector (reduced on the fly)."""
        idx = self.index(d)
        row = linalg.zeros(1, len(idx), self.field)
        norm = self.field.norm
        for t, c in vec.items():
            for s, v in self.nf_term(t).items():
                k = idx[s]
                row[0, k] = norm(row[0, k] + c * v)
        return row[0]

    def multiplication_matrix(self, poly: Dict[tuple, object], deg: int, d: int):
        """Matrix (rows = basis of degree d) of multiplication by a form of degree ``deg``
        into degree ``d + deg``; row k holds the image of basis element k."""
        src = self.basis(d)
        tgt_idx = self.index(d + deg)
        M = linalg.zeros(len(src), len(tgt_idx), self.field)
        norm = self.field.norm
        for k, (i, u) in enumerate(src):
            for e, c in poly.items():
                for s, v in self.nf_term((i, mono_mul(u, e))).items():
                    j = tgt_idx[s]
                    M[k, j] = norm(M[k, j] + c * v)
        return M

    def map_matrix(self, columns: Sequence[Vector], source_shifts: Sequence[int], d: int,
                   source: "QuotientModule"):
        """Matrix in degree d of the map ``source -> self`` sending basis element i
        of ``source`` to ``columns[i]``; rows indexed by ``source.basis(d)``."""
        src = source.basis(d)
        tgt_idx = self.index(d)
        M = linalg.zeros(len(src), len(tgt_idx), self.field)
        norm = self.field.norm
        for k, (i, u) in enumerate(src):
            for (r, e), c in columns[i].items():
                for s, v in self.nf_term((r, mono_mul(u, e))).items():
                    j = tgt_idx[s]
                    M[k, j] = norm(M[k, j] + c * v)
        return M

    def vector_from_coords(self, row, d: int) -> Vector:
        b = self.basis(d)
        return {b[k]: int(c) if not hasattr(c, "denominator") else c
                for k, c in enumerate(row) if c}


class RowSpace:
    """Incrementally maintained row-reduced basis of a subspace of k^n."""

    def __init__(self, n: int, field):
        self.n = n
        self.field = field
        self.rows: list = []
        self.pivots: list = []

    def reduce(self, v):
        v = v.copy()
        fp = hasattr(self.field, "p")
        for row, pc in zip(self.rows, self.pivots):
            c = v[pc]
            if c:
                v = v - c * row
                if fp:
                    v %= self.field.p
        return v

    def add(self, v) -> bool:
        """Add ``v``; return True if it enlarged the space."""
        w = self.reduce(v)
        nz = np.nonzero(w)[0]
        if len(nz) == 0:
            return False
        pc = int(nz[0])
        inv = self.field.inv(w[pc])
        w = w * inv
        if hasattr(self.field, "p"):
            w %= self.field.p
        # keep rows fully reduced against the new pivot
        fp = hasattr(self.field, "p")
        for k, row in enumerate(self.rows):
            c = row[pc]
            if c:
                r = row - c * w
                if fp:
                    r %= self.field.p
                self.rows[k] = r
        self.rows.append(w)
        self.pivots.append(pc)
        return True

    @property
    def dim(self) -> int:
        return len(self.rows)


def new_generators(space_rows, generated_rows, n: int, field):
    """Indices of ``space_rows`` completing ``span(generated_rows)`` to the whole space."""
    rs = RowSpace(n, field)
    for r in generated_rows:
        rs.add(r)
    chosen = []
    for k, r in enumerate(space_rows):
        if rs.add(r):
            chosen.append(k)
    return chosen
