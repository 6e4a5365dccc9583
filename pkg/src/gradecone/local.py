"""Local algebra at the origin: tangent cones, m-adic truncations, superficial elements.

A :class:`LocalInstance` stands for ``M = k[x]_(x) / I``.  Everything is computed
from a *local standard basis* ``S`` of ``I``: polynomials whose lowest-degree
leading terms (negative degree reverse lex) generate the leading ideal of ``I``
in the local ring.  ``S`` comes from one Gröbner basis computation on the
homogenized generators, so no local division algorithm is needed beyond
truncated reduction.
"""
from __future__ import annotations

import heapq
import json
import os
import random
from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Dict, List, Sequence, Tuple

from . import linalg
from .groebner import GroebnerBasis, TopOrder, buchberger
from .hilbert import HilbertData, hilbert_series
from .resolution import betti_table, minimal_free_resolution, tor_dims_at_origin
from .ring import (
    GREVLEX,
    Polynomial,
    PolynomialRing,
    field_from_spec,
    local_key,
    mono_divides,
    mono_div,
    mono_mul,
    monomials_of_degree,
    tangent_lift_order,
)

SEED_ENV = "GRADECONE_SEED"


def resolve_seed(seed: int | None) -> int:
    """Explicit seed, else ``$GRADECONE_SEED``, else 0."""
    if seed is not None:
        return int(seed)
    env = os.environ.get(SEED_ENV)
    return int(env) if env else 0


def ds_lead(f: Polynomial):
    """Leading exponent in the local degree order: grevlex-largest term of the initial form."""
    return max(f.as_dict(), key=local_key)


def local_standard_basis(gens: Sequence[Polynomial]) -> List[Polynomial]:
    """Local standard basis of the ideal generated by ``gens`` (all of order ≥ 1)."""
    gens = [g for g in gens if not g.is_zero()]
    if not gens:
        return []
    R = gens[0].ring
    tname = "t"
    while tname in R.variables:
        tname = "_" + tname
    Rt = PolynomialRing(R.variables + (tname,), R.field, tangent_lift_order(R.nvars))
    gb = buchberger([g.homogenize(Rt) for g in gens])
    cand = []
    for h in gb.polys:
        s = h.dehomogenize(R)
        if not s.is_zero():
            cand.append(s)
    cand.sort(key=lambda s: (sum(ds_lead(s)), local_key(ds_lead(s))[1], len(s)))
    out: List[Polynomial] = []
    for s in cand:
        le = ds_lead(s)
        if not any(mono_divides(ds_lead(o), le) for o in out):
            out.append(s.monic())
    return out


# --------------------------------------------------------------------------
# instances
# --------------------------------------------------------------------------

@dataclass
class LocalInstance:
    """``M = (k[x]/I)`` localized at the origin, plus optional checker metadata.

    ``ci`` lists the sequence ``f`` defining a base ring ``A = Q/(f)`` and
    ``module`` the extra generators cutting ``M = A/(module)``; when given,
    ``ideal`` defaults to ``ci + module``.  ``declared`` holds user-declared
    invariants (``cx``, ``cm``), which are echoed by every report using them.
    """

    ring: PolynomialRing
    ideal: List[Polynomial]
    ci: List[Polynomial] = dc_field(default_factory=list)
    module: List[Polynomial] = dc_field(default_factory=list)
    declared: Dict[str, object] = dc_field(default_factory=dict)
    name: str = ""

    def __post_init__(self):
        self.ideal = [g for g in self.ideal if not g.is_zero()]
        for g in self.ideal + self.ci + self.module:
            if g.ring != self.ring:
                raise ValueError("generators from a different ring")
            if not g.is_zero() and g.constant_term():
                raise ValueError(f"generator {g} is a unit at the origin; the ideal is not in m")

    # ---- I/O
    @classmethod
    def from_json(cls, data, field=None) -> "LocalInstance":
        if isinstance(data, (str, bytes)):
            data = json.loads(data)
        if not isinstance(data, dict):
            raise ValueError("instance must be a JSON object")
        unknown = set(data) - {"field", "vars", "ideal", "ci", "module", "declared", "name"}
        if unknown:
            raise ValueError(f"unknown instance keys: {sorted(unknown)}")
        if "vars" not in data:
            raise ValueError("instance needs 'vars'")
        fld = field if field is not None else field_from_spec(data.get("field"))
        R = PolynomialRing(list(data["vars"]), fld, GREVLEX)
        ci = [R.parse(s) for s in data.get("ci", [])]
        module = [R.parse(s) for s in data.get("module", [])]
        if "ideal" in data:
            ideal = [R.parse(s) for s in data["ideal"]]
        else:
            ideal = ci + module
        return cls(R, ideal, ci, module, dict(data.get("declared", {})), str(data.get("name", "")))

    @classmethod
    def from_file(cls, path, field=None) -> "LocalInstance":
        with open(path, encoding="utf-8") as fh:
            return cls.from_json(fh.read(), field)

    def to_json(self) -> dict:
        out = {"field": self.ring.field.spec, "vars": list(self.ring.variables),
               "ideal": [str(g) for g in self.ideal]}
        if self.name:
            out["name"] = self.name
        if self.ci:
            out["ci"] = [str(g) for g in self.ci]
        if self.module:
            out["module"] = [str(g) for g in self.module]
        if self.declared:
            out["declared"] = self.declared
        return out

    def with_ideal(self, extra: Sequence[Polynomial]) -> "LocalInstance":
        return LocalInstance(self.ring, self.ideal + list(extra), declared={}, name=self.name)

    @property
    def nvars(self) -> int:
        return self.ring.nvars

    @property
    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous() for g in self.ideal)

    # ---- derived data (cached; the instance itself is never mutated)
    @cached_property
    def standard_basis(self) -> List[Polynomial]:
        if self.is_homogeneous:
            return list(self.tangent_cone.polys)
        return local_standard_basis(self.ideal)

    @cached_property
    def tangent_cone(self) -> GroebnerBasis:
        return tangent_cone(self)

    @cached_property
    def graded_resolution(self):
        """Minimal resolution of ``G(M) = R / in*(I)``."""
        polys = self.tangent_cone.polys
        if not polys:
            return minimal_free_resolution([], self.ring, [0])
        return minimal_free_resolution(polys)

    @cached_property
    def hilbert(self) -> HilbertData:
        return hilbert_series(betti_table(self.graded_resolution), self.nvars)

    @property
    def dim(self) -> int:
        return self.hilbert.dim

    @cached_property
    def tor_dims(self) -> List[int]:
        if not self.ideal:
            return [1]
        if self.is_homogeneous:
            return [len(d) for d in minimal_free_resolution(self.ideal).degrees]
        return tor_dims_at_origin(self.ideal)

    @property
    def depth(self) -> int:
        """Depth of M via Auslander–Buchsbaum on Tor over the regular local ring."""
        pd = max(i for i, t in enumerate(self.tor_dims) if t)
        return self.nvars - pd

    @property
    def is_cohen_macaulay(self) -> bool:
        return self.depth == self.dim

    @cached_property
    def algebra(self) -> "TruncatedAlgebra":
        return TruncatedAlgebra(self.ring, self.standard_basis)


# --------------------------------------------------------------------------
# tangent cone and truncations
# --------------------------------------------------------------------------

def tangent_cone(inst: LocalInstance, max_rounds: int = 4) -> GroebnerBasis:
    """Reduced grevlex Gröbner basis of the initial-form ideal ``in*(I)``.

    Homogeneous ideals are returned as they are.  Otherwise the local standard
    basis is recomputed from its own output until the initial-form ideal is
    unchanged between two rounds.
    """
    R = inst.ring
    if not inst.ideal:
        return GroebnerBasis(R, (0,), [], TopOrder(R.order, (0,)))
    if inst.is_homogeneous:
        return buchberger(inst.ideal)
    gens, previous = inst.ideal, None
    for _ in range(max_rounds):
        S = local_standard_basis(gens)
        cone = buchberger([s.initial_form() for s in S])
        if previous is not None and cone.polys == previous.polys:
            return cone
        previous, gens = cone, S
    raise RuntimeError("tangent cone did not stabilize")


def _heap_key(e):
    # min-heap pops the largest monomial in the local order first
    return (sum(e), tuple(reversed(e)), e)


class TruncatedAlgebra:
    """The algebras ``k[x]/(I + m^{N+1})`` for all N at once, in the standard monomial basis.

    Standard monomials are those not divisible by any local leading term of the
    standard basis; in degrees ≤ N they form a basis of the truncation.
    """

    def __init__(self, ring: PolynomialRing, standard_basis: Sequence[Polynomial]):
        self.ring = ring
        self.field = ring.field
        self.S = [s.as_dict() for s in standard_basis]
        self.leads = [max(s, key=local_key) for s in self.S]
        self._by_degree: Dict[int, List[tuple]] = {}
        self._nf: Dict[Tuple[tuple, int], Dict[tuple, int]] = {}

    def is_standard(self, e) -> bool:
        return not any(mono_divides(le, e) for le in self.leads)

    def standard_of_degree(self, d: int) -> List[tuple]:
        b = self._by_degree.get(d)
        if b is None:
            b = [e for e in monomials_of_degree(self.ring.nvars, d) if self.is_standard(e)]
            self._by_degree[d] = b
        return b

    def basis(self, n: int) -> List[tuple]:
        """Basis of ``L_n = k[x]/(I + m^{n+1})``: standard monomials of degree ≤ n."""
        out = []
        for d in range(n + 1):
            out.extend(self.standard_of_degree(d))
        return out

    def normal_form(self, poly: Dict[tuple, object], top: int) -> Dict[tuple, object]:
        """Standard representative of ``poly`` modulo ``I + m^{top+1}``."""
        field = self.field
        norm = field.norm
        work = {e: c for e, c in poly.items() if sum(e) <= top and c}
        heap = [_heap_key(e) for e in work]
        heapq.heapify(heap)
        out: Dict[tuple, object] = {}
        while heap:
            e = heapq.heappop(heap)[-1]
            c = work.pop(e, 0)
            if not c:
                continue
            for s, le in zip(self.S, self.leads):
                if mono_divides(le, e):
                    q = mono_div(e, le)
                    f = field.div(c, s[le]) if hasattr(field, "p") else c / s[le]
                    for se, sc in s.items():
                        m = mono_mul(se, q)
                        if m == e or sum(m) > top:
                            continue
                        old = work.get(m, 0)
                        v = norm(old - f * sc)
                        if v:
                            if not old:
                                heapq.heappush(heap, _heap_key(m))
                            work[m] = v
                        else:
                            work.pop(m, None)
                    break
            else:
                out[e] = c
        return out

    def times_monomial(self, u: tuple, v: tuple, top: int) -> Dict[tuple, object]:
        key = (mono_mul(u, v), top)
        r = self._nf.get(key)
        if r is None:
            r = self.normal_form({key[0]: self.field.one}, top)
            self._nf[key] = r
        return r

    def multiplication_matrix(self, form: Dict[tuple, object], n: int, top: int):
        """Matrix of multiplication by ``form`` (degree 1) from ``L_{n-1}`` to ``L_n``.

        Rows index ``basis(n-1)``, columns ``basis(n)``.  Reductions are done
        modulo ``m^{top+1}`` (shared cache) and truncated to degree ≤ n.
        """
        src = self.basis(n - 1) if n >= 1 else []
        tgt = {e: j for j, e in enumerate(self.basis(n))}
        M = linalg.zeros(len(src), len(tgt), self.field)
        norm = self.field.norm
        for i, u in enumerate(src):
            for e, c in form.items():
                for m, v in self.times_monomial(u, e, top).items():
                    j = tgt.get(m)
                    if j is not None:
                        M[i, j] = norm(M[i, j] + c * v)
        return M


def truncated_quotient_basis(inst: LocalInstance, N: int) -> List[Polynomial]:
    """Monomial basis of the Artinian quotient ``k[x]/(I + m^N)``."""
    if N < 1:
        raise ValueError("N must be at least 1")
    R = inst.ring
    return [R.monomial(e) for e in inst.algebra.basis(N - 1)]


def loewy_length(inst: LocalInstance) -> int:
    """Least i with ``m^i M = 0``; M must have finite length."""
    if inst.dim != 0:
        raise ValueError("module does not have finite length")
    top = len(inst.hilbert.h_poly) - 1
    return top + 1


# --------------------------------------------------------------------------
# superficial elements
# --------------------------------------------------------------------------

@dataclass(frozen=True)
class SuperficialCheck:
    holds: bool
    window: Tuple[int, int]
    failing_degree: int | None = None


def superficial_check(inst: LocalInstance, form: Polynomial,
                      window: Tuple[int, int] = (2, 12)) -> SuperficialCheck:
    """Test ``(m^{n+1}M : ℓ) ∩ m^c M = m^n M`` for n in the window, with c = window start.

    In ``L_{n-1} → L_n`` the left side modulo ``m^n M`` is the kernel of
    multiplication by ℓ on the span of standard monomials of degree ≥ c.
    """
    if not form.is_homogeneous() or form.degree() != 1:
        raise ValueError("superficial candidates must be linear forms")
    n0, n1 = window
    if n0 < 1 or n1 < n0:
        raise ValueError("bad window")
    A = inst.algebra
    field = inst.ring.field
    lf = form.as_dict()
    for n in range(n0, n1 + 1):
        M = A.multiplication_matrix(lf, n, n1)
        rows = [i for i, e in enumerate(A.basis(n - 1)) if sum(e) >= n0]
        if not rows:
            continue
        sub = M[rows]
        if linalg.rank(sub, field) < len(rows):
            return SuperficialCheck(False, (n0, n1), n)
    return SuperficialCheck(True, (n0, n1))


@dataclass(frozen=True)
class SuperficialResult:
    form: Polynomial
    window: Tuple[int, int]
    seed: int
    trials_used: int

    def to_json(self) -> dict:
        return {"form": str(self.form), "window": list(self.window), "seed": self.seed,
                "trials_used": self.trials_used, "evidence": "window"}


class SuperficialSearchError(RuntimeError):
    def __init__(self, message: str, last_failure: int | None):
        super().__init__(message)
        self.last_failure = last_failure


def random_linear_form(ring: PolynomialRing, rng: random.Random) -> Polynomial:
    f = ring.field
    if hasattr(f, "p"):
        coeffs = [rng.randrange(1, f.p) for _ in range(ring.nvars)]
    else:
        coeffs = [rng.choice([c for c in range(-9, 10) if c]) for _ in range(ring.nvars)]
    terms = {}
    for i, c in enumerate(coeffs):
        e = [0] * ring.nvars
        e[i] = 1
        terms[tuple(e)] = c
    return ring.from_dict(terms)


def find_superficial(inst: LocalInstance, trials: int = 20, window: Tuple[int, int] = (2, 12),
                     seed: int | None = None, rng: random.Random | None = None) -> SuperficialResult:
    """Random linear forms until one passes :func:`superficial_check` on the window."""
    if inst.dim < 1:
        raise ValueError("superficial elements need dim M ≥ 1")
    seed = resolve_seed(seed)
    rng = rng or random.Random(seed)
    last = None
    for k in range(1, trials + 1):
        form = random_linear_form(inst.ring, rng)
        chk = superficial_check(inst, form, window)
        if chk.holds:
            return SuperficialResult(form, tuple(window), seed, k)
        last = chk.failing_degree
    raise SuperficialSearchError(f"no superficial element in {trials} trials (last failure in degree {last})",
                                 last)


def find_superficial_sequence(inst: LocalInstance, length: int, trials: int = 20,
                              window: Tuple[int, int] = (2, 12),
                              seed: int | None = None) -> List[SuperficialResult]:
    """ℓ_1, ..., ℓ_length with ℓ_i superficial on ``M/(ℓ_1..ℓ_{i-1})M``."""
    seed = resolve_seed(seed)
    rng = random.Random(seed)
    out: List[SuperficialResult] = []
    cur = inst
    for _ in range(length):
        res = find_superficial(cur, trials, window, seed, rng)
        out.append(res)
        cur = cur.with_ideal([res.form])
    return out


def local_hilbert_coefficients(inst: LocalInstance) -> HilbertData:
    """Hilbert data of ``G(M) = R/in*(I)``."""
    return inst.hilbert


def local_length(inst: LocalInstance) -> int:
    if inst.dim != 0:
        raise ValueError("module does not have finite length")
    return inst.hilbert.e0
