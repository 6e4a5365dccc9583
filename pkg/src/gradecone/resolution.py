"""Minimal graded free resolutions, Betti tables and homological invariants.

A resolution is built by iterated Schreyer syzygies (Gröbner basis elements
sorted so leading terms shed one variable per step, keeping the length at most
the number of variables) and then pruned by cancelling unit entries.
"""
from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Dict, List, Sequence, Tuple

from . import linalg
from .graded import QuotientModule, RowSpace
from .groebner import (
    SchreyerOrder,
    TopOrder,
    Vector,
    apply_matrix,
    buchberger_vectors,
    lead_term,
    schreyer_syzygy_vectors,
)
from .ring import FreeModuleElement, Polynomial, PolynomialRing, as_module_element


# --------------------------------------------------------------------------
# resolutions
# --------------------------------------------------------------------------

@dataclass
class GradedFreeResolution:
    """``F_0 <- F_1 <- ... <- F_p``; ``maps[k]`` lists the columns of ``d_{k+1}``.

    ``degrees[k]`` are the basis degrees of ``F_k`` (``F_k = ⊕ R(-degrees[k][i])``).
    """

    ring: PolynomialRing
    degrees: List[List[int]]
    maps: List[List[Vector]]
    minimal: bool
    homogeneous: bool = True

    @property
    def length(self) -> int:
        return len(self.maps)

    def ranks(self) -> List[int]:
        return [len(d) for d in self.degrees]

    def twists(self) -> List[List[int]]:
        """Degree shifts in twist notation: ``R(-2)`` is reported as ``-2``."""
        return [[-a for a in ds] for ds in self.degrees]

    def matrix(self, k: int) -> List[List[Polynomial]]:
        """Entries of ``d_k : F_k -> F_{k-1}`` as rows of polynomials."""
        cols = self.maps[k - 1]
        nrows = len(self.degrees[k - 1])
        out = [[dict() for _ in cols] for _ in range(nrows)]
        for j, col in enumerate(cols):
            for (r, e), c in col.items():
                out[r][j][e] = c
        return [[Polynomial(self.ring, d) for d in row] for row in out]

    def columns(self, k: int) -> List[FreeModuleElement]:
        return [FreeModuleElement.from_terms(self.ring, len(self.degrees[k - 1]), self.degrees[k - 1], col)
                for col in self.maps[k - 1]]

    def composes_to_zero(self) -> bool:
        f = self.ring.field
        for k in range(1, len(self.maps)):
            for col in self.maps[k]:
                if apply_matrix(self.maps[k - 1], col, f):
                    return False
        return True

    def has_unit_entries(self) -> bool:
        for cols in self.maps:
            for col in cols:
                for (_, e), c in col.items():
                    if sum(e) == 0:
                        return True
        return False

    def exactness_certificate(self, max_degree: int | None = None) -> bool:
        """Check ``ker d_k = im d_{k+1}`` degree by degree up to ``max_degree``.

        Every degree in which the free modules carry a generator is covered,
        plus the number of variables, when ``max_degree`` is omitted.
        """
        if not self.homogeneous:
            raise ValueError("exactness certificate needs a graded resolution")
        R = self.ring
        if max_degree is None:
            top = max((max(d) for d in self.degrees if d), default=0)
            max_degree = top + R.nvars
        mods = [QuotientModule(R, ds) for ds in self.degrees]
        field = R.field
        for k in range(1, len(self.degrees)):
            src, tgt = mods[k], mods[k - 1]
            for d in range(0, max_degree + 1):
                A = tgt.map_matrix(self.maps[k - 1], self.degrees[k], d, src)
                ker_dim = A.shape[0] - linalg.rank(A, field)
                if k < len(self.maps):
                    B = src.map_matrix(self.maps[k], self.degrees[k + 1], d, mods[k + 1])
                    im_dim = linalg.rank(B, field)
                else:
                    im_dim = 0
                if ker_dim != im_dim:
                    return False
        return True


def _sorted_for_schreyer(G: List[Vector], order):
    leads = [lead_term(g, order) for g in G]
    perm = sorted(range(len(G)), key=lambda i: (leads[i][0], tuple(-a for a in leads[i][1])))
    return [G[i] for i in perm], [leads[i] for i in perm]


def _element_degree(vec: Vector, shifts) -> int:
    return max(sum(e) + shifts[c] for c, e in vec)


def schreyer_resolution(columns: Sequence[Vector], shifts0: Sequence[int], ring: PolynomialRing,
                        homogeneous: bool = True) -> GradedFreeResolution:
    """Free resolution (generally non-minimal) of ``coker(columns)``."""
    field = ring.field
    shifts0 = list(shifts0)
    order = TopOrder(ring.order, shifts0)
    G = buchberger_vectors([c for c in columns if c], order, field,
                           rank_one=len(shifts0) == 1, shifts=shifts0)
    degrees = [shifts0]
    maps: List[List[Vector]] = []
    while G:
        if len(maps) >= ring.nvars + 1:
            raise AssertionError("Schreyer resolution longer than the number of variables")
        G, leads = _sorted_for_schreyer(G, order)
        degs = [_element_degree(g, degrees[-1]) for g in G]
        maps.append(G)
        degrees.append(degs)
        nxt = SchreyerOrder(order, leads, degs)
        G = schreyer_syzygy_vectors(G, leads, order, field)
        order = nxt
    return GradedFreeResolution(ring, degrees, maps, minimal=False, homogeneous=homogeneous)


def _as_entry_maps(res: GradedFreeResolution):
    out = []
    for cols in res.maps:
        mc = []
        for col in cols:
            d: Dict[int, dict] = {}
            for (r, e), c in col.items():
                d.setdefault(r, {})[e] = c
            mc.append(d)
        out.append(mc)
    return out


def _poly_axpy(target: dict, src: dict, coef: dict, field):
    """``target -= coef * src`` for polynomial dicts (in place)."""
    norm = field.norm
    for ea, ca in coef.items():
        for eb, cb in src.items():
            e = tuple(x + y for x, y in zip(ea, eb))
            v = norm(target.get(e, 0) - ca * cb)
            if v:
                target[e] = v
            else:
                target.pop(e, None)


def minimize(res: GradedFreeResolution) -> GradedFreeResolution:
    """Cancel unit entries until none remain (graded input only).

    Pivots are taken in the first map that has one, at the lowest row index and
    then the lowest column index.
    """
    if not res.homogeneous:
        raise ValueError("only graded resolutions can be minimized")
    field = res.ring.field
    zero = (0,) * res.ring.nvars
    maps = _as_entry_maps(res)
    degrees = [list(d) for d in res.degrees]
    while True:
        pivot = None
        for k, cols in enumerate(maps):
            best = None
            for c, col in enumerate(cols):
                for r, pd in col.items():
                    if len(pd) == 1 and zero in pd:
                        if best is None or (r, c) < best:
                            best = (r, c)
            if best is not None:
                pivot = (k, best[0], best[1])
                break
        if pivot is None:
            break
        k, r, c = pivot
        cols = maps[k]
        pcol = cols[c]
        uinv = field.inv(pcol[r][zero])
        for j, col in enumerate(cols):
            if j == c or r not in col:
                continue
            coef = {e: field.norm(v * uinv) for e, v in col[r].items()}
            for row, pd in pcol.items():
                tgt = col.setdefault(row, {})
                _poly_axpy(tgt, pd, coef, field)
                if not tgt:
                    del col[row]
        del cols[c]
        maps[k] = [{(i if i < r else i - 1): pd for i, pd in col.items() if i != r} for col in cols]
        if k + 1 < len(maps):
            maps[k + 1] = [{(i if i < c else i - 1): pd for i, pd in col.items() if i != c}
                           for col in maps[k + 1]]
        if k >= 1:
            del maps[k - 1][r]
        del degrees[k][r]
        del degrees[k + 1][c]
    while maps and not maps[-1]:
        maps.pop()
        degrees.pop()
    for cols in maps:
        if any(not col for col in cols):
            raise AssertionError("zero column survived minimization")
    # sort each basis by degree (stable), permuting columns and rows consistently
    perms = [sorted(range(len(ds)), key=lambda i: ds[i]) for ds in degrees]
    new_maps = []
    for k, cols in enumerate(maps):
        rinv = {old: new for new, old in enumerate(perms[k])}
        new_maps.append([{(rinv[i], e): v for i, pd in cols[j].items() for e, v in pd.items()}
                         for j in perms[k + 1]])
    new_degrees = [[ds[i] for i in perm] for ds, perm in zip(degrees, perms)]
    return GradedFreeResolution(res.ring, new_degrees, new_maps, minimal=True)


def _presentation_vectors(presentation, ring, shifts):
    cols = list(presentation)
    if cols and isinstance(cols[0], Polynomial):
        ring = ring or cols[0].ring
        shifts = tuple(shifts) if shifts is not None else (0,)
        vecs = [{(0, e): c for e, c in p.as_dict().items()} for p in cols]
        return ring, list(shifts), vecs
    if cols:
        elems = [as_module_element(c) for c in cols]
        ring = ring or elems[0].ring
        shifts = elems[0].shifts if shifts is None else tuple(shifts)
        if any(e.shifts != tuple(shifts) for e in elems):
            raise ValueError("presentation columns live in different free modules")
        return ring, list(shifts), [e.terms_dict() for e in elems]
    if ring is None or shifts is None:
        raise ValueError("an empty presentation needs a ring and target shifts")
    return ring, list(shifts), []


def minimal_free_resolution(presentation, ring: PolynomialRing | None = None,
                            shifts: Sequence[int] | None = None) -> GradedFreeResolution:
    """Minimal graded free resolution of ``coker(presentation)``.

    ``presentation`` is a list of homogeneous polynomials (the module is then
    ``R/I``) or of homogeneous :class:`FreeModuleElement` columns of one free
    module.  ``shifts`` sets the basis degrees of ``F_0``.
    """
    ring, shifts0, vecs = _presentation_vectors(presentation, ring, shifts)
    for v in vecs:
        if v and len({sum(e) + shifts0[c] for c, e in v}) > 1:
            raise ValueError("non-homogeneous presentation")
    res = minimize(schreyer_resolution(vecs, shifts0, ring))
    if res.length > ring.nvars:
        raise AssertionError("minimal resolution longer than the number of variables")
    return res


def resolve_ideal(gens: Sequence[Polynomial]) -> GradedFreeResolution:
    """Minimal resolution of ``R/I`` for homogeneous generators of I (zero generators dropped)."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        raise ValueError("need at least one nonzero generator; use shifts for free modules")
    return minimal_free_resolution(gens)


def tor_dims_at_origin(gens: Sequence[Polynomial]) -> List[int]:
    """``dim_k Tor_i(k, R_m/I_m)`` for the maximal ideal m of the origin.

    Any free resolution of ``R/I`` localizes to one of the local quotient;
    tensoring with k evaluates every matrix at the origin.
    """
    gens = [g for g in gens if not g.is_zero()]
    ring = gens[0].ring if gens else None
    if ring is None:
        raise ValueError("need generators")
    vecs = [{(0, e): c for e, c in g.as_dict().items()} for g in gens]
    res = schreyer_resolution(vecs, [0], ring, homogeneous=False)
    field = ring.field
    zero = (0,) * ring.nvars
    ranks = res.ranks()
    const_ranks = [0]
    for k, cols in enumerate(res.maps):
        M = linalg.zeros(len(cols), ranks[k], field)
        for j, col in enumerate(cols):
            for (r, e), c in col.items():
                if e == zero:
                    M[j, r] = c
        const_ranks.append(linalg.rank(M, field))
    const_ranks.append(0)
    return [ranks[i] - const_ranks[i] - const_ranks[i + 1] for i in range(len(ranks))]


# --------------------------------------------------------------------------
# Betti tables
# --------------------------------------------------------------------------

@dataclass
class BettiTable:
    """Graded Betti numbers ``beta[(i, j)]`` with derived α, γ and p."""

    beta: Dict[Tuple[int, int], int]
    p: int = dc_field(init=False)
    alpha: List[int] = dc_field(init=False)
    gamma: List[int] = dc_field(init=False)

    def __post_init__(self):
        self.beta = {k: v for k, v in sorted(self.beta.items()) if v}
        if not self.beta:
            raise ValueError("empty Betti table")
        self.p = max(i for i, _ in self.beta)
        self.alpha = [max(j for (i, j) in self.beta if i == k) for k in range(self.p + 1)]
        self.gamma = [min(j for (i, j) in self.beta if i == k) for k in range(self.p + 1)]

    @classmethod
    def from_degrees(cls, degrees: Sequence[Sequence[int]]) -> "BettiTable":
        beta: Dict[Tuple[int, int], int] = {}
        for i, ds in enumerate(degrees):
            for j in ds:
                beta[(i, j)] = beta.get((i, j), 0) + 1
        return cls(beta)

    def get(self, i: int, j: int) -> int:
        return self.beta.get((i, j), 0)

    def totals(self) -> List[int]:
        return [sum(v for (i, _), v in self.beta.items() if i == k) for k in range(self.p + 1)]

    def render(self) -> str:
        lo = min(g - i for i, g in enumerate(self.gamma))
        hi = max(a - i for i, a in enumerate(self.alpha))
        lines = ["total: " + " ".join(str(t) for t in self.totals())]
        for r in range(lo, hi + 1):
            cells = [str(self.get(i, i + r)) if self.get(i, i + r) else "." for i in range(self.p + 1)]
            lines.append(f"{r}: " + " ".join(cells))
        return "\n".join(lines) + "\n"

    def to_json(self) -> dict:
        return {
            "beta": [[i, j, v] for (i, j), v in self.beta.items()],
            "alpha": self.alpha,
            "gamma": self.gamma,
            "pd": self.p,
            "totals": self.totals(),
        }


def betti_table(res: GradedFreeResolution) -> BettiTable:
    if not res.minimal:
        raise ValueError("Betti numbers need a minimal resolution")
    return BettiTable.from_degrees(res.degrees)


def is_pure(bt: BettiTable) -> bool:
    pure = all(a == g for a, g in zip(bt.alpha, bt.gamma))
    if pure:
        assert is_quasi_pure(bt)
    return pure


def is_quasi_pure(bt: BettiTable) -> bool:
    return all(bt.gamma[i] >= bt.alpha[i - 1] for i in range(1, bt.p + 1))


@dataclass(frozen=True)
class HomologicalInvariants:
    pd: int
    depth: int
    dim: int
    reg: int
    is_CM: bool

    def to_json(self) -> dict:
        return {"pd": self.pd, "depth": self.depth, "dim": self.dim, "reg": self.reg, "is_CM": self.is_CM}


def regularity(bt: BettiTable) -> int:
    return max(a - i for i, a in enumerate(bt.alpha))


def homological_invariants(bt: BettiTable, hilbert_dim: int, nvars: int) -> HomologicalInvariants:
    """pd, depth (Auslander–Buchsbaum), dim, regularity and the CM flag."""
    depth = nvars - bt.p
    return HomologicalInvariants(bt.p, depth, hilbert_dim, regularity(bt), depth == hilbert_dim)


# --------------------------------------------------------------------------
# resolutions over graded quotient rings
# --------------------------------------------------------------------------

@dataclass
class FiniteStageResult:
    betti: List[int]
    graded: List[List[int]]
    certified: bool


def _ideal_gb(ring, J: Sequence[Polynomial]) -> List[Vector]:
    vecs = [{(0, e): c for e, c in g.as_dict().items()} for g in J if not g.is_zero()]
    return buchberger_vectors(vecs, TopOrder(ring.order, (0,)), ring.field, rank_one=True, shifts=(0,))


def finite_stage_resolution(J: Sequence[Polynomial], presentation, stages: int,
                            ring: PolynomialRing | None = None,
                            shifts: Sequence[int] | None = None) -> FiniteStageResult:
    """Betti numbers β_0..β_N of a minimal resolution over ``A = R/J``.

    ``presentation`` presents the module over A (polynomials for a cyclic
    module ``A/K``).  Built degree by degree: kernels by linear algebra on the
    graded pieces of ``A^r``, minimal generators as complements of
    ``m·kernel``.  When A is Artinian the degree windows are exact; otherwise a
    window of ``max shift + max(relation degree, 1)`` is used and the result is
    flagged as not certified.
    """
    if stages < 2:
        raise ValueError("need at least 2 stages")
    ring, shifts0, pres = _presentation_vectors(presentation, ring, shifts)
    if not any(not g.is_zero() for g in J):
        cols = [FreeModuleElement.from_terms(ring, len(shifts0), shifts0, v) for v in pres if v]
        degs = minimal_free_resolution(cols).degrees if cols else [list(shifts0)]
        degs = (degs + [[] for _ in range(stages + 1)])[:stages + 1]
        return FiniteStageResult([len(d) for d in degs], [sorted(d) for d in degs], True)
    field = ring.field
    n = ring.nvars
    Jgb = _ideal_gb(ring, J)
    Jleads = [lead_term(g, TopOrder(ring.order, (0,)))[1] for g in Jgb]
    Aring = QuotientModule.free_over_quotient(ring, [0], Jgb)
    # Artinian iff every variable has a pure power among the leading monomials
    artinian = all(any(le[v] > 0 and sum(le) == le[v] for le in Jleads) for v in range(n))
    top_A = None
    if artinian:
        top_A = 0
        while Aring.dim(top_A + 1) > 0:
            top_A += 1
    rel_deg = max([sum(le) for le in Jleads] + [1])

    for v in pres:
        for (_, e), _c in v.items():
            if sum(e) == 0:
                raise ValueError("presentation has unit entries; F_0 is not minimal")

    def window(shifts_k, extra):
        lo = min(shifts_k)
        hi = max(shifts_k) + (top_A if artinian else max(rel_deg, extra))
        return lo, hi

    xs = [{tuple(1 if i == v else 0 for i in range(n)): field.one} for v in range(n)]

    def min_gens(space, F: QuotientModule, lo, hi):
        """Minimal generators of the graded subspace family ``space(d)`` of F."""
        gens: List[Tuple[int, Vector]] = []
        prev = None
        for d in range(lo, hi + 1):
            S = space(d)
            generated = []
            if prev is not None and prev.shape[0] and F.dim(d):
                for x in xs:
                    Mx = F.multiplication_matrix(x, 1, d - 1)
                    generated.extend(list(linalg.matmul(prev, Mx, field)))
            rs = RowSpace(F.dim(d), field)
            for g in generated:
                rs.add(g)
            for row in S:
                if rs.add(row):
                    gens.append((d, F.vector_from_coords(row, d)))
            prev = S
        return gens

    F0 = QuotientModule.free_over_quotient(ring, shifts0, Jgb)
    pres_degs = [max(sum(e) + shifts0[c] for c, e in v) for v in pres if v]
    graded = [list(shifts0)]
    if not pres_degs:
        return FiniteStageResult([len(shifts0)] + [0] * stages, graded + [[] for _ in range(stages)], True)

    # step 1: minimal generators of the image of the presentation
    Gsrc = QuotientModule.free_over_quotient(ring, pres_degs, Jgb)
    pres_cols = [v for v in pres if v]

    def image_space(d):
        M = F0.map_matrix(pres_cols, pres_degs, d, Gsrc)
        R_, piv = linalg.rref(M, field)
        return R_[:len(piv)]

    gens = min_gens(image_space, F0, min(pres_degs), max(pres_degs))
    cols = [g for _, g in gens]
    degs = [d for d, _ in gens]
    graded.append(sorted(degs))
    target = F0
    certified = artinian
    for _stage in range(2, stages + 1):
        if not cols:
            graded.append([])
            continue
        src = QuotientModule.free_over_quotient(ring, degs, Jgb)
        cur_cols, cur_degs, tgt = cols, degs, target

        def kernel_space(d, src=src, tgt=tgt, cur_cols=cur_cols, cur_degs=cur_degs):
            if src.dim(d) == 0:
                return linalg.zeros(0, 0, field)
            M = tgt.map_matrix(cur_cols, cur_degs, d, src)
            return linalg.nullspace(M.T, field) if M.shape[1] else _identity(src.dim(d), field)

        lo, hi = window(cur_degs, max(cur_degs) - min(cur_degs) + 1)
        gens = min_gens(kernel_space, src, lo, hi)
        cols = [g for _, g in gens]
        degs = [d for d, _ in gens]
        graded.append(sorted(degs))
        target = src
    return FiniteStageResult([len(g) for g in graded], graded, certified)


def _identity(n, field):
    M = linalg.zeros(n, n, field)
    for i in range(n):
        M[i, i] = 1 if hasattr(field, "p") else field.one
    return M


@dataclass(frozen=True)
class ComplexityEstimate:
    cx: int
    stable: bool

    def to_json(self) -> dict:
        return {"cx": self.cx, "stable": self.stable, "label": "heuristic"}


def estimate_complexity(betti: Sequence[int]) -> ComplexityEstimate:
    """Heuristic growth rate of a Betti sequence.

    Returns the least b with the (b)-fold step-2 difference of the sequence
    vanishing on its last three entries (b = 0: the sequence itself vanishes
    there).  Step-2 differences absorb the period-2 behaviour of Betti numbers
    over complete intersections.  ``stable`` is False when fewer than three
    entries remain to confirm the vanishing.
    """
    seq = list(betti)
    if len(seq) < 5:
        raise ValueError("need at least 5 Betti numbers")
    b = 0
    while True:
        if len(seq) < 3:
            return ComplexityEstimate(b, False)
        if all(v == 0 for v in seq[-3:]):
            return ComplexityEstimate(b, True)
        seq = [seq[i + 2] - seq[i] for i in range(len(seq) - 2)]
        b += 1


def binomial(n: int, k: int) -> int:
    return comb(n, k) if n >= 0 and 0 <= k <= n else 0
