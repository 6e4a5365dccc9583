"""Koszul complexes over graded pieces, depth, and homology of ``L(M)`` truncations.

The engine only needs a *graded source*: finite dimensions ``dim(d)`` and, for
each element ``j`` of degree ``e_j``, the matrix of multiplication from degree
``d`` to ``d + e_j`` (rows index the source basis).  Two sources are provided:
graded modules ``F/N`` over the polynomial ring and truncations of
``L(M) = ⊕_n M/m^{n+1}M`` acted on by linear forms in Rees degree 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from . import linalg
from .graded import QuotientModule
from .groebner import TopOrder, lead_term
from .local import LocalInstance, superficial_check
from .ring import Polynomial, PolynomialRing


# --------------------------------------------------------------------------
# graded sources
# --------------------------------------------------------------------------

class GradedModuleSource:
    """A graded module ``F/N`` with homogeneous elements acting by multiplication."""

    def __init__(self, module: QuotientModule, elements: Sequence[Polynomial]):
        self.module = module
        self.field = module.field
        self.elements = [e.as_dict() for e in elements]
        self.degrees = []
        for e in elements:
            if e.is_zero() or not e.is_homogeneous():
                raise ValueError("Koszul elements must be nonzero forms")
            self.degrees.append(e.degree())
        self.min_degree = min(module.shifts) if module.shifts else 0
        self.max_degree = None

    def dim(self, d: int) -> int:
        return self.module.dim(d)

    def mult(self, j: int, d: int):
        return self.module.multiplication_matrix(self.elements[j], self.degrees[j], d)

    def restrict(self, idx: Sequence[int]) -> "GradedModuleSource":
        out = object.__new__(GradedModuleSource)
        out.__dict__.update(self.__dict__)
        out.elements = [self.elements[i] for i in idx]
        out.degrees = [self.degrees[i] for i in idx]
        return out


class TruncatedLM:
    """Pieces ``L_n = k[x]/(I + m^{n+1})`` for ``0 ≤ n ≤ cutoff`` with linear forms acting
    ``L_{n-1} → L_n`` (the Rees action of ``ℓt``)."""

    def __init__(self, inst: LocalInstance, forms: Sequence[Polynomial], cutoff: int = 15):
        for f in forms:
            if f.is_zero() or not f.is_homogeneous() or f.degree() != 1:
                raise ValueError("L(M) elements must be linear forms")
        self.inst = inst
        self.algebra = inst.algebra
        self.field = inst.ring.field
        self.cutoff = cutoff
        self.forms = list(forms)
        self.elements = [f.as_dict() for f in forms]
        self.degrees = [1] * len(forms)
        self.min_degree = 0
        self.max_degree = cutoff
        self._mult: Dict[Tuple[int, int], np.ndarray] = {}

    def dim(self, n: int) -> int:
        if n < 0:
            return 0
        if n > self.cutoff:
            raise ValueError(f"degree {n} beyond the truncation cutoff {self.cutoff}")
        return len(self.algebra.basis(n))

    def piece_dims(self) -> List[int]:
        return [self.dim(n) for n in range(self.cutoff + 1)]

    def mult(self, j: int, d: int):
        if d + 1 > self.cutoff:
            raise ValueError(f"degree {d + 1} beyond the truncation cutoff {self.cutoff}")
        key = (j, d)
        M = self._mult.get(key)
        if M is None:
            if d < 0:
                M = linalg.zeros(0, self.dim(d + 1), self.field)
            else:
                M = self.algebra.multiplication_matrix(self.elements[j], d + 1, self.cutoff)
            self._mult[key] = M
        return M

    def restrict(self, idx: Sequence[int]) -> "TruncatedLM":
        return TruncatedLM(self.inst, [self.forms[i] for i in idx], self.cutoff)

    def maps_commute(self) -> bool:
        f = self.field
        for a in range(len(self.forms)):
            for b in range(a + 1, len(self.forms)):
                for d in range(0, self.cutoff - 1):
                    ab = linalg.matmul(self.mult(a, d), self.mult(b, d + 1), f)
                    ba = linalg.matmul(self.mult(b, d), self.mult(a, d + 1), f)
                    if not np.array_equal(ab, ba):
                        return False
        return True


# --------------------------------------------------------------------------
# Koszul complex
# --------------------------------------------------------------------------

class KoszulComplex:
    """``K(f_1..f_r; M)`` degree by degree; ``K_i(n) = ⊕_{|S|=i} M_{n - deg S}``."""

    def __init__(self, source):
        self.source = source
        self.field = source.field
        self.r = len(source.degrees)
        self.subsets = [list(combinations(range(self.r), i)) for i in range(self.r + 1)]
        self._cache: Dict[Tuple[int, int], np.ndarray] = {}

    def _blocks(self, i: int, n: int):
        offs, pos = {}, 0
        for S in self.subsets[i]:
            offs[S] = pos
            pos += self.source.dim(n - sum(self.source.degrees[j] for j in S))
        return offs, pos

    def rank(self, i: int, n: int) -> int:
        if i < 0 or i > self.r:
            return 0
        return self._blocks(i, n)[1]

    def differential(self, i: int, n: int):
        """``d_i : K_i(n) → K_{i-1}(n)`` with rows indexing ``K_i(n)``."""
        key = (i, n)
        D = self._cache.get(key)
        if D is not None:
            return D
        src_off, src_dim = self._blocks(i, n)
        tgt_off, tgt_dim = self._blocks(i - 1, n)
        D = linalg.zeros(src_dim, tgt_dim, self.field)
        p = getattr(self.field, "p", None)
        degs = self.source.degrees
        for S in self.subsets[i]:
            dS = n - sum(degs[j] for j in S)
            rows = self.source.dim(dS)
            if rows == 0:
                continue
            for k, j in enumerate(S):
                T = S[:k] + S[k + 1:]
                block = self.source.mult(j, dS)
                if block.shape[1] == 0:
                    continue
                r0, c0 = src_off[S], tgt_off[T]
                if k % 2:
                    block = (-block) % p if p else -block
                D[r0:r0 + rows, c0:c0 + block.shape[1]] = block
        self._cache[key] = D
        return D

    def check_square_zero(self, n: int) -> bool:
        for i in range(2, self.r + 1):
            A, B = self.differential(i, n), self.differential(i - 1, n)
            if A.shape[0] and B.shape[1] and not linalg.is_zero(linalg.matmul(A, B, self.field)):
                return False
        return True

    def homology_dim(self, i: int, n: int) -> int:
        if i < 0 or i > self.r:
            return 0
        f = self.field
        dim = self.rank(i, n)
        if dim == 0:
            return 0
        out_rank = linalg.rank(self.differential(i, n), f) if i > 0 else 0
        in_rank = linalg.rank(self.differential(i + 1, n), f) if i < self.r else 0
        return dim - out_rank - in_rank

    def cycles(self, i: int, n: int):
        if i == 0:
            m = self.rank(0, n)
            return _identity(m, self.field)
        D = self.differential(i, n)
        if D.shape[0] == 0:
            return linalg.zeros(0, 0, self.field)
        if D.shape[1] == 0:
            return _identity(D.shape[0], self.field)
        return linalg.nullspace(D.T, self.field)

    def boundaries(self, i: int, n: int):
        if i >= self.r:
            return linalg.zeros(0, self.rank(i, n), self.field)
        return self.differential(i + 1, n)

    def chain_mult(self, g: int, e: int, i: int, n: int, source):
        """Multiplication by element ``g`` of ``source`` (degree e) from ``K_i(n)`` to ``K_i(n + e)``."""
        src_off, src_dim = self._blocks(i, n)
        tgt_off, tgt_dim = self._blocks(i, n + e)
        M = linalg.zeros(src_dim, tgt_dim, self.field)
        degs = self.source.degrees
        for S in self.subsets[i]:
            dS = n - sum(degs[j] for j in S)
            rows = self.source.dim(dS)
            if rows == 0:
                continue
            block = source.mult(g, dS)
            M[src_off[S]:src_off[S] + rows, tgt_off[S]:tgt_off[S] + block.shape[1]] = block
        return M


def _identity(m, field):
    M = linalg.zeros(m, m, field)
    for k in range(m):
        M[k, k] = field.one
    return M


@dataclass
class KoszulHomology:
    """``dims[(i, n)] = dim_k H_i(K)_n`` over the computed degree range."""

    dims: Dict[Tuple[int, int], int]
    degree_range: Tuple[int, int]
    length: int

    def nonzero(self) -> List[Tuple[int, int]]:
        return sorted(k for k, v in self.dims.items() if v)

    def max_index(self) -> int:
        nz = [i for (i, _), v in self.dims.items() if v]
        return max(nz) if nz else -1

    def last_nonzero_degree(self, i: int) -> Optional[int]:
        nz = [n for (j, n), v in self.dims.items() if j == i and v]
        return max(nz) if nz else None

    def to_json(self) -> dict:
        return {"range": list(self.degree_range),
                "dims": [[i, n, v] for (i, n), v in sorted(self.dims.items()) if v]}


def koszul_homology(source, degree_range: Tuple[int, int], check: bool = True) -> KoszulHomology:
    lo, hi = degree_range
    if source.max_degree is not None and hi > source.max_degree:
        raise ValueError(f"range end {hi} exceeds the truncation cutoff {source.max_degree}")
    K = KoszulComplex(source)
    dims = {}
    for n in range(lo, hi + 1):
        if check and not K.check_square_zero(n):
            raise AssertionError(f"d^2 != 0 in degree {n}")
        for i in range(K.r + 1):
            dims[(i, n)] = K.homology_dim(i, n)
    return KoszulHomology(dims, (lo, hi), K.r)


def splitting_discrepancies(source, degree_range: Tuple[int, int]) -> List[Tuple[int, int]]:
    """Degrees where ``dim H_i(x_1..x_m)`` differs from the sum of the ``H_0`` and ``H_1``
    of ``x_m`` acting on ``H_i`` and ``H_{i-1}`` of ``x_1..x_{m-1}`` (empty list = consistent)."""
    m = len(source.degrees)
    if m == 0:
        return []
    lo, hi = degree_range
    e = source.degrees[-1]
    full = koszul_homology(source, degree_range)
    part = KoszulComplex(source.restrict(range(m - 1)))
    f = source.field
    bad = []

    def induced_rank(i, n):
        # rank of x_m : H_i(x')_{n-e} -> H_i(x')_n
        Z = part.cycles(i, n - e)
        if Z.shape[0] == 0:
            return 0
        B = part.boundaries(i, n)
        img = linalg.matmul(Z, part.chain_mult(m - 1, e, i, n - e, source), f)
        if B.shape[0] == 0:
            return linalg.rank(img, f)
        return linalg.rank(np.vstack([img, B]), f) - linalg.rank(B, f)

    for n in range(lo, hi + 1):
        for i in range(m + 1):
            h0 = part.homology_dim(i, n) - induced_rank(i, n) if i <= m - 1 else 0
            h1 = (part.homology_dim(i - 1, n - e) - induced_rank(i - 1, n)) if i >= 1 else 0
            if full.dims[(i, n)] != h0 + h1:
                bad.append((i, n))
    return bad


# --------------------------------------------------------------------------
# depth
# --------------------------------------------------------------------------

def certified_top_degree(module: QuotientModule) -> int:
    """Degree beyond which ``Tor_i(k, F/N)`` vanishes for every i.

    Bounded through the initial module: the lcm of any set of leading monomials
    in one component has degree at most the sum over variables of their
    largest exponents (Taylor resolution), and Betti numbers only grow under
    passage to the initial module.
    """
    top = []
    n = module.ring.nvars
    for c, a in enumerate(module.shifts):
        les = [e for (cc, e) in module.leads if cc == c]
        top.append(a + sum(max((e[v] for e in les), default=0) for v in range(n)))
    return max(top) + n


@dataclass(frozen=True)
class DepthResult:
    depth: int
    max_index: int
    certified: bool
    method: str

    def to_json(self) -> dict:
        return {"depth": self.depth, "max_nonzero_index": self.max_index,
                "certified": self.certified, "method": self.method}


def graded_module(ideal: Sequence[Polynomial], ring: PolynomialRing | None = None) -> QuotientModule:
    gens = [g for g in ideal if not g.is_zero()]
    ring = ring or gens[0].ring
    rels = [{(0, e): c for e, c in g.as_dict().items()} for g in gens]
    return QuotientModule(ring, (0,), rels)


def depth_via_koszul(target) -> DepthResult:
    """Depth from the Koszul homology on all variables.

    ``target`` is a graded :class:`QuotientModule`, a list of homogeneous
    generators (the module ``R/I``) or a :class:`LocalInstance`.  Graded
    homology is computed on a degree range proven to contain all of it.  For a
    non-graded local instance the Koszul homology at the origin is obtained as
    ``Tor(k, M)`` at the origin, which it equals.
    """
    if isinstance(target, LocalInstance):
        if target.is_homogeneous:
            module = graded_module(target.ideal, target.ring) if target.ideal else \
                QuotientModule(target.ring, (0,))
        else:
            tor = target.tor_dims
            top = max(i for i, t in enumerate(tor) if t)
            return DepthResult(target.nvars - top, top, True, "tor-at-origin")
    elif isinstance(target, QuotientModule):
        module = target
    else:
        module = graded_module(target)
    R = module.ring
    source = GradedModuleSource(module, R.gens())
    hi = certified_top_degree(module)
    H = koszul_homology(source, (min(module.shifts), hi))
    top = H.max_index()
    if top < 0:
        raise ValueError("zero module has no depth")
    return DepthResult(R.nvars - top, top, True, "graded-koszul")


# --------------------------------------------------------------------------
# homology of L(M) on truncations
# --------------------------------------------------------------------------

@dataclass
class LMReport:
    verdict: str
    hypotheses: List[dict]
    parts: List[dict] = dc_field(default_factory=list)
    cutoff: int = 15
    notes: List[str] = dc_field(default_factory=list)

    def to_json(self) -> dict:
        return {"verdict": self.verdict, "hypotheses": self.hypotheses, "parts": self.parts,
                "cutoff": self.cutoff, "notes": self.notes}


def _linear_span_rank(forms: Sequence[Polynomial], field) -> int:
    if not forms:
        return 0
    n = forms[0].ring.nvars
    rows = []
    for f in forms:
        d = f.as_dict()
        rows.append([d.get(tuple(1 if k == v else 0 for k in range(n)), 0) for v in range(n)])
    return linalg.rank(linalg.asmatrix(rows, field), field)


def _lm_part(inst, forms, cutoff, first_index, label, tail_start):
    T = TruncatedLM(inst, forms, cutoff)
    margin = len(forms)
    hi = cutoff - margin
    H = koszul_homology(T, (0, hi))
    tail = (min(tail_start, hi), hi)
    per_index = []
    ok = True
    for i in range(first_index, len(forms) + 1):
        last = H.last_nonzero_degree(i)
        vanishes = last is None or last < tail[0]
        ok &= vanishes
        per_index.append({"i": i, "last_nonzero": last, "vanishes_on_tail": vanishes})
    return ok, {"claim": label, "elements": [str(f) for f in forms], "margin": margin,
                "tail_window": list(tail), "indices": per_index,
                "piece_dims": T.piece_dims(), "homology": H.to_json()["dims"]}


def check_LM_homology_vanishing(inst: LocalInstance, superficials: Sequence[Polynomial],
                                extra_gens: Sequence[Polynomial] = (), cutoff: int = 15,
                                window: Tuple[int, int] = (2, 12),
                                tail_start: int | None = None) -> LMReport:
    """Truncated evidence that ``H_i(Xt, L(M))`` (i ≥ 1) and ``H_i(Xt, Yt, L(M))`` (i > s)
    have finite length.

    Verdicts: PASS-ON-WINDOW when no homology in the claimed range survives in
    the tail window ``[tail_start, cutoff - margin]``; FAIL when some does;
    NOT-APPLICABLE when a hypothesis fails.  ``tail_start`` defaults to the
    middle of the computable range.
    """
    R = inst.ring
    hyps = []
    dim, depth = inst.dim, inst.depth
    hyps.append({"name": "M Cohen-Macaulay", "holds": depth == dim,
                 "witness": {"depth": depth, "dim": dim}})
    hyps.append({"name": "dim M >= 1", "holds": dim >= 1, "witness": {"dim": dim}})
    hyps.append({"name": "sequence length equals dim M", "holds": len(superficials) == dim,
                 "witness": {"length": len(superficials)}})
    win = (window[0], min(window[1], cutoff - 1))
    cur, sup_ok, fails = inst, True, []
    for form in superficials:
        chk = superficial_check(cur, form, win) if cur.dim >= 1 else None
        good = chk is not None and chk.holds
        fails.append(None if good else (chk.failing_degree if chk else "dim 0"))
        sup_ok &= good
        cur = cur.with_ideal([form])
    hyps.append({"name": "superficial sequence", "holds": sup_ok,
                 "witness": {"window": list(win), "failing_degrees": fails}})
    if extra_gens:
        span = _linear_span_rank(list(superficials) + list(extra_gens), R.field)
        hyps.append({"name": "elements span m", "holds": span == R.nvars, "witness": {"rank": span}})
    report = LMReport("NOT-APPLICABLE", hyps, cutoff=cutoff)
    if not all(h["holds"] for h in hyps):
        return report
    margin_all = len(superficials) + len(extra_gens)
    ts = tail_start if tail_start is not None else max(win[0], (cutoff - margin_all) // 2)
    ok, part = _lm_part(inst, list(superficials), cutoff, 1, "H_i(Xt, L(M)), i >= 1", ts)
    report.parts.append(part)
    if extra_gens:
        ok2, part2 = _lm_part(inst, list(superficials) + list(extra_gens), cutoff,
                              len(extra_gens) + 1, "H_i(Xt, Yt, L(M)), i > s", ts)
        report.parts.append(part2)
        ok &= ok2
    report.verdict = "PASS-ON-WINDOW" if ok else "FAIL"
    report.notes.append("finite length is not certifiable from a truncation; evidence on the tail window only")
    return report
