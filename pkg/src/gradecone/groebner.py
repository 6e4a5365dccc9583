"""Buchberger's algorithm for ideals and graded submodules, normal forms, syzygies.

Internally a module element is a "vector": a dict ``{(component, exponent): coeff}``.
A module order is any object with a ``key((component, exponent))`` method whose
larger values mean larger module monomials.
"""
from __future__ import annotations

import heapq
from dataclasses import dataclass, field as dc_field
from typing import Dict, List, Sequence, Tuple

from .ring import (
    FreeModuleElement,
    MonomialOrder,
    Polynomial,
    PolynomialRing,
    as_module_element,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
)

Term = Tuple[int, tuple]
Vector = Dict[Term, object]


# --------------------------------------------------------------------------
# module orders
# --------------------------------------------------------------------------

class TopOrder:
    """Term-over-position order on ``⊕ R(-shifts[i])``.

    For graded monomial orders the total degree ``deg(m) + shifts[i]`` is
    compared first, so homogeneous elements are led by a term of their degree.
    Position breaks ties, lower index being larger.
    """

    def __init__(self, order: MonomialOrder, shifts: Sequence[int]):
        self.order = order
        self.shifts = tuple(shifts)
        self._cache: dict = {}

    def key(self, t: Term):
        k = self._cache.get(t)
        if k is None:
            c, e = t
            mk = self.order.key(e)
            if self.order.graded:
                k = (sum(e) + self.shifts[c], mk, -c)
            else:
                k = (mk, -c)
            self._cache[t] = k
        return k


class SchreyerOrder:
    """Order on F_k induced by leading terms of the images in F_{k-1}.

    ``m e_i > n e_j`` iff ``m*lead(g_i) > n*lead(g_j)`` in the previous order,
    or the two agree and ``i < j``.
    """

    def __init__(self, prev, leads: Sequence[Term], shifts: Sequence[int]):
        self.prev = prev
        self.leads = list(leads)
        self.shifts = tuple(shifts)
        self._cache: dict = {}

    def key(self, t: Term):
        k = self._cache.get(t)
        if k is None:
            c, e = t
            lc, le = self.leads[c]
            k = (self.prev.key((lc, mono_mul(e, le))), -c)
            self._cache[t] = k
        return k


# --------------------------------------------------------------------------
# vector helpers
# --------------------------------------------------------------------------

def lead_term(vec: Vector, order) -> Term:
    return max(vec, key=order.key)


def make_monic(vec: Vector, order, field) -> Vector:
    lt = lead_term(vec, order)
    inv = field.inv(vec[lt])
    norm = field.norm
    return {t: norm(c * inv) for t, c in vec.items()}


def add_multiple(target: Vector, vec: Vector, coef, shift: tuple, field) -> None:
    """In place: ``target -= coef * x^shift * vec``."""
    norm = field.norm
    for (c, e), v in vec.items():
        t = (c, mono_mul(e, shift))
        nv = norm(target.get(t, 0) - coef * v)
        if nv:
            target[t] = nv
        else:
            target.pop(t, None)


def vec_degree(vec: Vector, shifts) -> int:
    return max(sum(e) + shifts[c] for c, e in vec)


def reduce_vector(vec: Vector, basis: Sequence[Vector], leads: Sequence[Term], order, field,
                  track: bool = False):
    """Full reduction of ``vec`` by monic ``basis``.

    Returns ``(remainder, quotients)`` where ``quotients[k]`` is a polynomial dict
    with ``vec = remainder + sum(quotients[k] * basis[k])`` (only when ``track``).
    """
    rest = dict(vec)
    rem: Vector = {}
    quots: Dict[int, dict] = {}
    key = order.key
    norm = field.norm
    while rest:
        lt = max(rest, key=key)
        c = rest[lt]
        comp, exp = lt
        for k, (lc, le) in enumerate(leads):
            if lc == comp and mono_divides(le, exp):
                shift = mono_div(exp, le)
                add_multiple(rest, basis[k], c, shift, field)
                if track:
                    q = quots.setdefault(k, {})
                    nv = norm(q.get(shift, 0) + c)
                    if nv:
                        q[shift] = nv
                    else:
                        q.pop(shift, None)
                break
        else:
            rem[lt] = c
            del rest[lt]
    return rem, quots


# --------------------------------------------------------------------------
# Buchberger
# --------------------------------------------------------------------------

def buchberger_vectors(vecs: Sequence[Vector], order, field, rank_one: bool = False,
                       shifts: Sequence[int] | None = None) -> List[Vector]:
    """Reduced Gröbner basis of the submodule spanned by ``vecs``.

    Normal selection strategy (smallest lcm degree first) with the coprime
    criterion (ideals only) and Buchberger's chain criterion.
    """
    G: List[Vector] = []
    leads: List[Term] = []
    for v in vecs:
        if v:
            m = make_monic(v, order, field)
            G.append(m)
            leads.append(lead_term(m, order))
    if not G:
        return []
    rank = max(c for c, _ in leads) + 1
    if shifts is None:
        shifts = getattr(order, "shifts", None) or (0,) * (rank + 64)

    heap: list = []
    pending: set = set()

    def pair_entry(i, j):
        (ci, ei), (_, ej) = leads[i], leads[j]
        l = mono_lcm(ei, ej)
        return (sum(l) + shifts[ci], order.key((ci, l)), i, j)

    def add_pairs(j):
        cj, ej = leads[j]
        for i in range(j):
            ci, ei = leads[i]
            if ci != cj:
                continue
            if rank_one and all(a == 0 or b == 0 for a, b in zip(ei, ej)):
                continue
            pending.add((i, j))
            heapq.heappush(heap, pair_entry(i, j))

    for j in range(len(G)):
        add_pairs(j)

    while heap:
        _, _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        ci, ei = leads[i]
        ej = leads[j][1]
        l = mono_lcm(ei, ej)
        skip = False
        for k, (ck, ek) in enumerate(leads):
            if k == i or k == j or ck != ci or not mono_divides(ek, l):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                skip = True
                break
        if skip:
            continue
        s: Vector = {}
        add_multiple(s, G[i], -1, mono_div(l, ei), field)
        add_multiple(s, G[j], 1, mono_div(l, ej), field)
        r, _ = reduce_vector(s, G, leads, order, field)
        if r:
            r = make_monic(r, order, field)
            G.append(r)
            leads.append(lead_term(r, order))
            add_pairs(len(G) - 1)

    return _reduce_basis(G, leads, order, field)


def _reduce_basis(G, leads, order, field) -> List[Vector]:
    keep = []
    for i, (ci, ei) in enumerate(leads):
        redundant = False
        for j, (cj, ej) in enumerate(leads):
            if j == i or cj != ci or not mono_divides(ej, ei):
                continue
            if ej != ei or j < i:
                redundant = True
                break
        if not redundant:
            keep.append(i)
    basis = [G[i] for i in keep]
    bl = [leads[i] for i in keep]
    out = []
    for idx, g in enumerate(basis):
        lt = bl[idx]
        tail = {t: c for t, c in g.items() if t != lt}
        others = basis[:idx] + basis[idx + 1:]
        ol = bl[:idx] + bl[idx + 1:]
        r, _ = reduce_vector(tail, others, ol, order, field)
        r[lt] = field.one
        out.append(r)
    out.sort(key=lambda v: order.key(lead_term(v, order)), reverse=True)
    return out


# --------------------------------------------------------------------------
# public API
# --------------------------------------------------------------------------

@dataclass
class GroebnerBasis:
    """Reduced Gröbner basis of a submodule of ``⊕ R(-shifts)``."""

    ring: PolynomialRing
    shifts: tuple
    vectors: List[Vector]
    module_order: object
    reduced: bool = True
    leads: List[Term] = dc_field(default_factory=list)

    def __post_init__(self):
        if not self.leads:
            self.leads = [lead_term(v, self.module_order) for v in self.vectors]

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    @property
    def rank(self) -> int:
        return len(self.shifts)

    @property
    def generators(self) -> List[FreeModuleElement]:
        return [FreeModuleElement.from_terms(self.ring, self.rank, self.shifts, v) for v in self.vectors]

    @property
    def polys(self) -> List[Polynomial]:
        """Generators as polynomials (ideal case)."""
        if self.rank != 1:
            raise ValueError("not an ideal basis")
        return [Polynomial(self.ring, {e: c for (_, e), c in v.items()}) for v in self.vectors]

    def lead_monomials(self):
        return [e for _, e in self.leads]

    def __len__(self):
        return len(self.vectors)

    def is_unit_ideal(self) -> bool:
        return any(sum(e) == 0 and self.shifts[c] == 0 for c, e in self.leads) and self.rank == 1

    def reduce(self, vec: Vector, track: bool = False):
        return reduce_vector(vec, self.vectors, self.leads, self.module_order, self.ring.field, track)

    def contains(self, f) -> bool:
        return normal_form(f, self).is_zero() if isinstance(f, Polynomial) else \
            normal_form(as_module_element(f), self).is_zero()

    def __str__(self):
        if self.rank == 1:
            return "{" + ", ".join(str(p) for p in self.polys) + "}"
        return "{" + ", ".join(str(g) for g in self.generators) + "}"


def _to_vectors(gens) -> Tuple[PolynomialRing, tuple, List[Vector]]:
    elems = [as_module_element(g) for g in gens]
    if not elems:
        raise ValueError("no generators")
    ring, shifts = elems[0].ring, elems[0].shifts
    for e in elems:
        if e.ring != ring:
            raise ValueError("generators live in different rings")
        if e.shifts != shifts:
            raise ValueError("mixed-rank or mixed-shift generators")
    return ring, shifts, [e.terms_dict() for e in elems]


def buchberger(gens, order: MonomialOrder | None = None) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal/submodule generated by ``gens``.

    ``gens`` are polynomials (ideal case) or free-module elements sharing one
    free module.  ``order`` defaults to the ring's monomial order.
    """
    ring, shifts, vecs = _to_vectors(gens)
    if order is not None and order != ring.order:
        ring = ring.with_order(order)
    morder = TopOrder(ring.order, shifts)
    basis = buchberger_vectors([v for v in vecs if v], morder, ring.field,
                               rank_one=len(shifts) == 1, shifts=shifts)
    return GroebnerBasis(ring, shifts, basis, morder)


def normal_form(f, gb: GroebnerBasis):
    """Canonical remainder of ``f`` modulo ``gb``; same type as ``f``."""
    is_poly = isinstance(f, Polynomial)
    elem = as_module_element(f, gb.shifts if is_poly else None)
    if elem.shifts != gb.shifts:
        raise ValueError("element lives in a different free module")
    if elem.ring.nvars != gb.ring.nvars:
        raise ValueError("ring mismatch")
    r, _ = gb.reduce(elem.terms_dict())
    out_ring = f.ring
    if is_poly:
        return Polynomial(out_ring, {e: c for (_, e), c in r.items()})
    return FreeModuleElement.from_terms(out_ring, gb.rank, gb.shifts, r)


def schreyer_syzygy_vectors(G: Sequence[Vector], leads: Sequence[Term], order, field) -> List[Vector]:
    """Minimal Gröbner basis (Schreyer order) of the syzygies of the basis ``G``.

    ``G`` must be a monic Gröbner basis with respect to ``order``.  For each
    ``i`` only the pairs whose monomial ``lcm/lead_i`` is minimal are kept,
    since the leading term of the syzygy of ``(i, j)``, ``i < j``, is
    ``(lcm/lead_i) e_i`` under the Schreyer order.
    """
    out: List[Vector] = []
    n = len(G)
    for i in range(n):
        ci, ei = leads[i]
        cands = {}
        for j in range(i + 1, n):
            cj, ej = leads[j]
            if cj != ci:
                continue
            m = mono_div(mono_lcm(ei, ej), ei)
            cands.setdefault(m, j)
        mons = sorted(cands)
        minimal = [m for m in mons if not any(o != m and mono_divides(o, m) for o in mons)]
        for m in sorted(minimal, key=lambda m: cands[m]):
            j = cands[m]
            ej = leads[j][1]
            mj = mono_div(mono_lcm(ei, ej), ej)
            s: Vector = {}
            add_multiple(s, G[i], -1, m, field)
            add_multiple(s, G[j], 1, mj, field)
            r, quots = reduce_vector(s, G, leads, order, field, track=True)
            if r:
                raise ArithmeticError("S-pair did not reduce to zero; input is not a Gröbner basis")
            syz: Vector = {(i, m): field.one, (j, mj): field.norm(-1)}
            norm = field.norm
            for k, q in quots.items():
                for e, c in q.items():
                    t = (k, e)
                    nv = norm(syz.get(t, 0) - c)
                    if nv:
                        syz[t] = nv
                    else:
                        syz.pop(t, None)
            out.append(syz)
    return out


def syzygies(gb: GroebnerBasis) -> List[FreeModuleElement]:
    """Generators of the syzygy module of ``gb``'s generators.

    The syzygies live in the free module whose basis degrees are the generator
    degrees (0 for non-homogeneous generators).
    """
    ring = gb.ring
    vecs = schreyer_syzygy_vectors(gb.vectors, gb.leads, gb.module_order, ring.field)
    shifts = []
    for v in gb.vectors:
        degs = {sum(e) + gb.shifts[c] for c, e in v}
        shifts.append(degs.pop() if len(degs) == 1 else 0)
    return [FreeModuleElement.from_terms(ring, len(gb.vectors), shifts, v) for v in vecs]


def apply_matrix(columns: Sequence[Vector], vec: Vector, field) -> Vector:
    """Image of ``vec`` (in the source basis) under the map whose i-th column is ``columns[i]``."""
    out: Vector = {}
    norm = field.norm
    for (i, e), c in vec.items():
        for (r, f), v in columns[i].items():
            t = (r, mono_mul(e, f))
            nv = norm(out.get(t, 0) + c * v)
            if nv:
                out[t] = nv
            else:
                out.pop(t, None)
    return out


def s_pair_certificate(gb: GroebnerBasis) -> bool:
    """Re-reduce every S-pair of ``gb``; True iff all reduce to zero."""
    G, leads, order, field = gb.vectors, gb.leads, gb.module_order, gb.ring.field
    for i in range(len(G)):
        for j in range(i + 1, len(G)):
            (ci, ei), (cj, ej) = leads[i], leads[j]
            if ci != cj:
                continue
            l = mono_lcm(ei, ej)
            s: Vector = {}
            add_multiple(s, G[i], -1, mono_div(l, ei), field)
            add_multiple(s, G[j], 1, mono_div(l, ej), field)
            r, _ = reduce_vector(s, G, leads, order, field)
            if r:
                return False
    return True
