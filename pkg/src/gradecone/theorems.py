"""Checkers for the associated-graded theorems and seeded instance corpora.

Every checker returns a :class:`CheckReport`: named hypotheses with the
witnesses that decided them, the computed invariants, and a verdict.  FAIL is
reserved for instances where every hypothesis holds and the conclusion does
not, so a FAIL always signals a bug in this package.
"""
from __future__ import annotations

import json
import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field as dc_field
from math import comb
from typing import Dict, List, Sequence

from .koszul import GradedModuleSource, depth_via_koszul, koszul_homology
from .graded import QuotientModule
from .local import LocalInstance, resolve_seed
from .resolution import (
    betti_table,
    estimate_complexity,
    finite_stage_resolution,
    homological_invariants,
    is_pure,
    is_quasi_pure,
    minimal_free_resolution,
)
from .hilbert import hilbert_series
from .ring import PolynomialRing, field_from_spec, monomials_of_degree

PASS, FAIL, VACUOUS, NOT_APPLICABLE = "PASS", "FAIL", "VACUOUS", "NOT-APPLICABLE"
THEOREMS = ("thm-3.3", "cor-3.4", "lem-4.2", "thm-4.3", "thm-5.7")


@dataclass
class CheckReport:
    theorem: str
    seed: int
    instance: dict
    hypotheses: List[dict] = dc_field(default_factory=list)
    invariants: Dict[str, object] = dc_field(default_factory=dict)
    verdict: str = NOT_APPLICABLE
    notes: List[str] = dc_field(default_factory=list)

    def hypothesis(self, name: str, holds: bool, witness) -> bool:
        self.hypotheses.append({"name": name, "holds": bool(holds), "witness": witness})
        return bool(holds)

    @property
    def hypotheses_hold(self) -> bool:
        return all(h["holds"] for h in self.hypotheses)

    def to_json(self) -> dict:
        return {"theorem": self.theorem, "seed": self.seed, "instance": self.instance,
                "hypotheses": self.hypotheses, "invariants": self.invariants,
                "verdict": self.verdict, "notes": self.notes}

    def dumps(self) -> str:
        return json.dumps(self.to_json(), indent=2, ensure_ascii=False)


# --------------------------------------------------------------------------
# shared pieces
# --------------------------------------------------------------------------

def graded_invariants(inst: LocalInstance) -> dict:
    """Invariants of ``G(M)`` plus the Hilbert data of M."""
    bt = betti_table(inst.graded_resolution)
    H = inst.hilbert
    hi = homological_invariants(bt, H.dim, inst.nvars)
    return {
        "tangent_cone": [str(g) for g in inst.tangent_cone.polys],
        "betti": bt.to_json(),
        "betti_text": bt.render(),
        "pure": is_pure(bt),
        "quasi_pure": is_quasi_pure(bt),
        "h_poly": H.h_poly,
        "e0": H.e0,
        "e1": H.e1,
        "mu": H.mu,
        "G(M)": hi.to_json(),
    }


def _m_cohen_macaulay(report: CheckReport, inst: LocalInstance) -> bool:
    if "cm" in inst.declared:
        return report.hypothesis("M Cohen-Macaulay", bool(inst.declared["cm"]),
                                 {"declared": inst.declared["cm"]})
    d = depth_via_koszul(inst)
    return report.hypothesis("M Cohen-Macaulay", d.depth == inst.dim,
                             {"depth": d.depth, "dim": inst.dim, "method": d.method})


def _initial_forms_regular(report: CheckReport, inst: LocalInstance):
    """Initial forms of the f-sequence form a regular sequence in G(Q).

    Certified by ``dim R/(f*) = n - c`` (R is Cohen-Macaulay); the vanishing of
    Koszul H_1 in low degrees is recorded alongside as evidence.
    """
    R = inst.ring
    fstar = [f.initial_form() for f in inst.ci]
    A = LocalInstance(R, fstar)
    dim_ok = A.dim == R.nvars - len(fstar)
    src = GradedModuleSource(QuotientModule(R, (0,)), fstar)
    top = sum(f.degree() for f in fstar) + 1
    H = koszul_homology(src, (0, top))
    h1 = all(H.dims[(1, n)] == 0 for n in range(top + 1)) if len(fstar) >= 1 else True
    report.hypothesis("initial forms regular in G(Q)", dim_ok and h1,
                      {"initial_forms": [str(f) for f in fstar], "dim": A.dim,
                       "expected_dim": R.nvars - len(fstar), "koszul_h1_zero_to_degree": top if h1 else None})
    return A


def _base_ring_and_module(inst: LocalInstance):
    R = inst.ring
    A = LocalInstance(R, list(inst.ci))
    M = LocalInstance(R, list(inst.ci) + list(inst.module), declared=inst.declared)
    return A, M


def _module_regular(report: CheckReport, A: LocalInstance, M: LocalInstance, k: int) -> bool:
    return report.hypothesis("module generators form an A-regular sequence", M.dim == A.dim - k,
                             {"dim_A": A.dim, "dim_M": M.dim, "length": k})


# --------------------------------------------------------------------------
# checkers
# --------------------------------------------------------------------------

def check_alpha_drop(inst: LocalInstance, seed: int | None = None) -> CheckReport:
    """If M is CM and G(M) is not, then α_p < α_{p-1} for the resolution of G(M)."""
    rep = CheckReport("thm-3.3", resolve_seed(seed), inst.to_json())
    inv = graded_invariants(inst)
    rep.invariants = inv
    alpha, p = inv["betti"]["alpha"], inv["betti"]["pd"]
    if p >= 1:
        rep.notes.append(f"alpha_{p} = {alpha[p]}, alpha_{p - 1} = {alpha[p - 1]}")
    if not _m_cohen_macaulay(rep, inst):
        rep.verdict = NOT_APPLICABLE
        return rep
    if not rep.hypothesis("G(M) not Cohen-Macaulay", not inv["G(M)"]["is_CM"],
                          {"depth": inv["G(M)"]["depth"], "dim": inv["G(M)"]["dim"]}):
        rep.verdict = VACUOUS
        return rep
    rep.verdict = PASS if alpha[p] < alpha[p - 1] else FAIL
    return rep


def check_quasipure_cm(inst: LocalInstance, seed: int | None = None) -> CheckReport:
    """If M is CM and G(M) has a quasi-pure resolution, G(M) is CM."""
    rep = CheckReport("cor-3.4", resolve_seed(seed), inst.to_json())
    inv = graded_invariants(inst)
    rep.invariants = inv
    if not _m_cohen_macaulay(rep, inst):
        rep.verdict = NOT_APPLICABLE
        return rep
    if not rep.hypothesis("G(M) quasi-pure", inv["quasi_pure"],
                          {"alpha": inv["betti"]["alpha"], "gamma": inv["betti"]["gamma"]}):
        rep.verdict = VACUOUS
        return rep
    rep.verdict = PASS if inv["G(M)"]["is_CM"] else FAIL
    return rep


def check_finite_pd_bounds(inst: LocalInstance, theorem: str = "lem-4.2",
                           seed: int | None = None) -> CheckReport:
    """Bounds ``e_0 ≥ μ + c``, ``e_1 ≥ C(c+1, 2)`` with ``c = reg G(A)``, and CM-ness of
    G(M) when the e_1 bound is attained.

    ``A = Q/(ci)`` and ``M = A/(module)`` with the module generators an
    A-regular sequence, which makes M Cohen-Macaulay of finite projective
    dimension over A.
    """
    if theorem not in ("lem-4.2", "thm-4.3"):
        raise ValueError(theorem)
    rep = CheckReport(theorem, resolve_seed(seed), inst.to_json())
    if not rep.hypothesis("f-sequence given", len(inst.ci) >= 1, {"c": len(inst.ci)}):
        rep.verdict = NOT_APPLICABLE
        return rep
    A, M = _base_ring_and_module(inst)
    ok = True
    _initial_forms_regular(rep, inst)
    ok &= rep.hypotheses[-1]["holds"]
    GA = graded_invariants(A)
    ok &= rep.hypothesis("G(A) Cohen-Macaulay", GA["G(M)"]["is_CM"],
                         {"depth": GA["G(M)"]["depth"], "dim": GA["G(M)"]["dim"]})
    ok &= _module_regular(rep, A, M, len(inst.module))
    ok &= _m_cohen_macaulay(rep, M)
    inv = graded_invariants(M)
    c = GA["G(M)"]["reg"]
    e1_bound = comb(c + 1, 2)
    inv.update({"reg_G(A)": c, "e0_bound": inv["mu"] + c, "e1_bound": e1_bound,
                "e1_equality": inv["e1"] == e1_bound})
    rep.invariants = inv
    if not ok:
        rep.verdict = NOT_APPLICABLE
        return rep
    bounds = inv["e0"] >= inv["mu"] + c and inv["e1"] >= e1_bound
    if theorem == "lem-4.2":
        rep.verdict = PASS if bounds else FAIL
    elif inv["e1"] != e1_bound:
        rep.hypothesis("e1 attains the bound", False, {"e1": inv["e1"], "bound": e1_bound})
        rep.verdict = VACUOUS
    else:
        rep.hypothesis("e1 attains the bound", True, {"e1": inv["e1"], "bound": e1_bound})
        rep.verdict = PASS if inv["G(M)"]["is_CM"] else FAIL
    return rep


def check_sci_bounds(inst: LocalInstance, declared_cx: int | None = None, stages: int = 6,
                     seed: int | None = None) -> CheckReport:
    """Bounds ``e_0 ≥ μ + α``, ``e_1 ≥ C(α+1, 2)`` with ``α = (c - r)(s - 1)`` over a strict
    complete intersection, and CM-ness of G(M) at equality.

    The complexity r is taken from ``declared_cx`` or ``declared["cx"]``; it
    is also estimated from a finite-stage resolution when the data are
    graded, and the estimate is used only when nothing is declared.
    """
    rep = CheckReport("thm-5.7", resolve_seed(seed), inst.to_json())
    c = len(inst.ci)
    if not rep.hypothesis("f-sequence given", c >= 1, {"c": c}):
        rep.verdict = NOT_APPLICABLE
        return rep
    orders = [f.ord() for f in inst.ci]
    s = orders[0]
    ok = rep.hypothesis("equal orders s >= 2", len(set(orders)) == 1 and s >= 2, {"orders": orders})
    _initial_forms_regular(rep, inst)
    ok &= rep.hypotheses[-1]["holds"]
    A, M = _base_ring_and_module(inst)
    ok &= _m_cohen_macaulay(rep, M)

    estimate = None
    graded = all(f.is_homogeneous() for f in list(inst.ci) + list(inst.module))
    if graded:
        fs = finite_stage_resolution(inst.ci, list(inst.module), stages, ring=inst.ring, shifts=[0]) \
            if inst.module else None
        betti = fs.betti if fs else [1] + [0] * stages
        est = estimate_complexity(betti)
        estimate = {"cx": est.cx, "stable": est.stable, "betti": betti, "label": "heuristic",
                    "certified_window": fs.certified if fs else True}
    if declared_cx is None and "cx" in inst.declared:
        declared_cx = int(inst.declared["cx"])
    if declared_cx is not None:
        r, label = int(declared_cx), "DECLARED"
    elif estimate is not None and estimate["stable"]:
        r, label = estimate["cx"], "ESTIMATED"
    else:
        r, label = None, None
    ok &= rep.hypothesis("complexity available", r is not None,
                         {"label": label, "declared": declared_cx, "estimated": estimate})
    inv = graded_invariants(M)
    inv.update({"c": c, "s": s, "cx": r, "cx_label": label, "cx_estimate": estimate})
    rep.invariants = inv
    if r is None:
        rep.verdict = NOT_APPLICABLE
        return rep
    if estimate is not None and declared_cx is not None and estimate["cx"] != declared_cx:
        rep.notes.append(f"estimated cx {estimate['cx']} differs from declared {declared_cx}")
    ok &= rep.hypothesis("cx < c", r < c, {"cx": r, "c": c})
    alpha = (c - r) * (s - 1)
    e1_bound = comb(alpha + 1, 2)
    inv.update({"alpha": alpha, "e0_bound": inv["mu"] + alpha, "e1_bound": e1_bound,
                "e1_equality": inv["e1"] == e1_bound})
    if not ok:
        rep.verdict = NOT_APPLICABLE
        return rep
    bounds = inv["e0"] >= inv["mu"] + alpha and inv["e1"] >= e1_bound
    if not bounds:
        rep.verdict = FAIL
    elif inv["e1"] == e1_bound:
        rep.verdict = PASS if inv["G(M)"]["is_CM"] else FAIL
    else:
        rep.verdict = PASS
    return rep


def run_check(theorem: str, inst: LocalInstance, seed: int | None = None, **kw) -> CheckReport:
    if theorem == "thm-3.3":
        return check_alpha_drop(inst, seed)
    if theorem == "cor-3.4":
        return check_quasipure_cm(inst, seed)
    if theorem in ("lem-4.2", "thm-4.3"):
        return check_finite_pd_bounds(inst, theorem, seed)
    if theorem == "thm-5.7":
        return check_sci_bounds(inst, kw.get("declared_cx"), kw.get("stages", 6), seed)
    raise ValueError(f"unknown theorem {theorem!r}; expected one of {', '.join(THEOREMS)}")


# --------------------------------------------------------------------------
# corpora
# --------------------------------------------------------------------------

KINDS = ("monomial", "perturbed-homogeneous", "ci")


def _var_names(n: int) -> List[str]:
    return ["x", "y", "z", "w", "u", "v", "s", "r"][:n] if n <= 8 else [f"x{i}" for i in range(n)]


def _random_form(R: PolynomialRing, rng: random.Random, d: int, terms: int):
    ms = list(monomials_of_degree(R.nvars, d))
    pick = rng.sample(ms, min(terms, len(ms)))
    p = getattr(R.field, "p", None)
    return R.from_dict({m: (rng.randrange(1, p) if p else rng.choice([-3, -2, -1, 1, 2, 3])) for m in pick})


def _coef(R, rng):
    p = getattr(R.field, "p", None)
    return rng.randrange(1, p) if p else rng.choice([-3, -2, -1, 1, 2, 3])


def _monomial_instance(R, rng, max_degree):
    exps = {}
    for _ in range(rng.randint(1, 2 + R.nvars)):
        d = rng.randint(1, max_degree)
        e = [0] * R.nvars
        for _ in range(d):
            e[rng.randrange(R.nvars)] += 1
        exps.setdefault(tuple(e), None)
    return LocalInstance(R, [R.monomial(e) for e in exps])


def _perturbed_instance(R, rng, max_degree):
    n = R.nvars
    X = R.gens()
    if n >= 3:
        # 2x2 minors of a 3x2 matrix of scaled pure powers plus a higher-order perturbation
        top = max(2, (max_degree + 1) // 2)
        e = [rng.randint(1, top) for _ in range(6)]
        rows = [[_coef(R, rng) * X[0] ** e[0], _coef(R, rng) * X[1] ** e[1], _coef(R, rng) * X[2] ** e[2]],
                [_coef(R, rng) * X[1] ** e[3], _coef(R, rng) * X[2] ** e[4], _coef(R, rng) * X[0] ** e[5]]]
        if rng.random() < 0.7:
            i = rng.randrange(3)
            rows[1][i] = rows[1][i] + _coef(R, rng) * X[rng.randrange(n)] ** (e[3 + i] + rng.randint(1, 2))
        gens = [rows[0][a] * rows[1][b] - rows[0][b] * rows[1][a] for a, b in ((0, 1), (0, 2), (1, 2))]
    else:
        gens = []
        for _ in range(rng.randint(1, 3)):
            d = rng.randint(1, max_degree)
            g = _random_form(R, rng, d, rng.randint(1, 3))
            for _ in range(rng.randint(0, 2)):
                g = g + _random_form(R, rng, rng.randint(d + 1, max_degree + 2), 1)
            gens.append(g)
    return LocalInstance(R, [g for g in gens if not g.is_zero()])


def _ci_instance(R, rng, max_degree):
    n = R.nvars
    c = 2 if n >= 2 else 1
    for _ in range(100):
        s = rng.randint(2, max(2, max_degree // 2))
        fs = [_random_form(R, rng, s, rng.randint(1, 3)) for _ in range(c)]
        if any(f.is_zero() for f in fs):
            continue
        if LocalInstance(R, fs).dim == n - c:
            break
    else:
        raise RuntimeError("could not draw a regular sequence")
    module = []
    roll = rng.random()
    if roll < 0.4:
        module = [_random_form(R, rng, 1, n)]
    elif roll < 0.6:
        module = [R.gens()[rng.randrange(n)]]
    return LocalInstance(R, fs + module, ci=fs, module=module)


def instance_seed(seed: int, index: int) -> int:
    return (seed * 1_000_003 + index) % (1 << 63)


def generate_corpus(nvars: int, max_degree: int, count: int, kind: str, seed: int,
                    field_spec: str = "fp:32003") -> List[LocalInstance]:
    """Deterministic list of instances; instance k depends only on (seed, k) and the parameters."""
    if count < 1:
        raise ValueError("count must be at least 1")
    if kind not in KINDS:
        raise ValueError(f"unknown corpus kind {kind!r}")
    R = PolynomialRing(_var_names(nvars), field_from_spec(field_spec))
    make = {"monomial": _monomial_instance, "perturbed-homogeneous": _perturbed_instance,
            "ci": _ci_instance}[kind]
    out = []
    for k in range(count):
        rng = random.Random(instance_seed(seed, k))
        inst = make(R, rng, max_degree)
        while not inst.ideal:
            inst = make(R, rng, max_degree)
        inst.name = f"{kind}-{seed}-{k}"
        out.append(inst)
    return out


def _check_job(args):
    theorem, data, seed, kw = args
    return run_check(theorem, LocalInstance.from_json(data), seed, **kw).to_json()


def run_corpus(theorem: str, instances: Sequence[LocalInstance], seed: int, workers: int = 1,
               **kw) -> List[dict]:
    """Check every instance; results keep the instance order for any worker count."""
    jobs = [(theorem, inst.to_json(), instance_seed(seed, k), kw) for k, inst in enumerate(instances)]
    if workers <= 1:
        return [_check_job(j) for j in jobs]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(_check_job, jobs, chunksize=max(1, len(jobs) // (4 * workers))))


def summarize(reports: Sequence[dict]) -> dict:
    counts = {v: 0 for v in (PASS, FAIL, VACUOUS, NOT_APPLICABLE)}
    for r in reports:
        counts[r["verdict"]] += 1
    return {"count": len(reports), "verdicts": counts,
            "fail_instances": [r["instance"] for r in reports if r["verdict"] == FAIL]}
