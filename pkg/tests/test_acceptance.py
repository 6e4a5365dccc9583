"""Acceptance gate: one test per criterion, each reported as a PASS/FAIL line.

Every quantity is exact; there is no tolerance anywhere.
"""
import functools
import io
import json
import time

from gradecone import (
    LocalInstance,
    betti_table,
    check_LM_homology_vanishing,
    depth_via_koszul,
    find_superficial,
    generate_corpus,
    hilbert_series,
    is_pure,
    is_quasi_pure,
    loewy_length,
    minimal_free_resolution,
    standard_monomial_hilbert,
)
from gradecone.cli import run
from gradecone.resolution import regularity
from gradecone.theorems import check_finite_pd_bounds, check_sci_bounds, run_check, run_corpus, summarize

from conftest import INSTANCES, ROOT, load

RESULTS = {}


def criterion(number, title):
    def wrap(fn):
        @functools.wraps(fn)
        def inner(*args, **kwargs):
            try:
                detail = fn(*args, **kwargs)
            except BaseException:
                RESULTS[number] = ("FAIL", title, "")
                raise
            RESULTS[number] = ("PASS", title, detail or "")
        return inner
    return wrap


def monomial_corpus():
    """Seeded monomial ideals in 2 and 3 variables with generators of degree ≤ 6."""
    out = []
    for nvars, seed in ((2, 101), (3, 103)):
        out += [(nvars, inst) for inst in generate_corpus(nvars, 6, 110, "monomial", seed)]
    return out


# -----------------------------------------------------------------------------

@criterion(1, "optimality examples: resolutions shift-for-shift, purity flags, < 1 s each")
def test_c1_example_resolutions():
    # [PAPER] basis degrees of F_0, F_1, F_2 and the purity flags
    expected = {
        "ex351": ([[0], [2, 2], [3]], "pure"),
        "ex352": ([[0], [1, 1], [2]], "pure"),
        "ex353": ([[0], [3, 3, 4], [4, 6]], "quasi-pure"),
        "ex354": ([[0], [2, 2, 5], [3, 6]], "not quasi-pure"),
    }
    slowest = 0.0
    for name, (degrees, flag) in expected.items():
        t0 = time.perf_counter()
        inst = LocalInstance.from_file(INSTANCES / f"{name}.json")
        bt = betti_table(inst.graded_resolution)
        elapsed = time.perf_counter() - t0
        slowest = max(slowest, elapsed)
        assert [sorted(d) for d in inst.graded_resolution.degrees] == degrees, name
        assert elapsed < 1.0, (name, elapsed)
        if flag == "pure":
            assert is_pure(bt)
        elif flag == "quasi-pure":
            assert is_quasi_pure(bt) and not is_pure(bt)
        else:
            assert not is_quasi_pure(bt)
    assert betti_table(load("ex352").graded_resolution).alpha == [0, 1, 2]
    return f"slowest {slowest * 1000:.1f} ms"


@criterion(2, "Hilbert series from resolutions equal standard-monomial counts through degree 20")
def test_c2_hilbert_oracle():
    corpus = monomial_corpus()
    assert len(corpus) >= 200
    for nvars, inst in corpus:
        H = hilbert_series(betti_table(minimal_free_resolution(inst.ideal)), nvars)
        assert H.hilbert_function(20) == standard_monomial_hilbert(inst.ideal, 20), inst.to_json()
    return f"{len(corpus)} ideals"


@criterion(3, "Auslander-Buchsbaum depth equals Koszul depth on the criterion-2 corpus")
def test_c3_depth_cross_validation():
    corpus = monomial_corpus()
    for nvars, inst in corpus:
        bt = betti_table(minimal_free_resolution(inst.ideal))
        assert nvars - bt.p == depth_via_koszul(inst.ideal).depth, inst.to_json()
    return f"{len(corpus)} ideals"


@criterion(4, "alpha drop: >= 100 applicable perturbed-homogeneous instances, zero FAIL")
def test_c4_alpha_drop():
    insts = generate_corpus(3, 5, 600, "perturbed-homogeneous", seed=2024)
    summary = summarize(run_corpus("thm-3.3", insts, seed=2024, workers=4))
    v = summary["verdicts"]
    assert v["FAIL"] == 0, summary["fail_instances"]
    assert v["PASS"] + v["FAIL"] >= 100, v
    assert run_check("thm-3.3", load("ex351")).verdict == "NOT-APPLICABLE"
    assert run_check("thm-3.3", load("ex352")).verdict == "VACUOUS"
    return f"{v['PASS']} applicable of {summary['count']}"


@criterion(5, "quasi-pure corollary: zero FAIL on >= 100 instances, quasi-pure example passes")
def test_c5_quasipure():
    insts = generate_corpus(3, 5, 150, "perturbed-homogeneous", seed=77) + \
        generate_corpus(2, 5, 150, "perturbed-homogeneous", seed=78)
    summary = summarize(run_corpus("cor-3.4", insts, seed=77, workers=4))
    v = summary["verdicts"]
    assert v["FAIL"] == 0, summary["fail_instances"]
    assert summary["count"] >= 100
    assert run_check("cor-3.4", load("ex353")).verdict == "PASS"
    return f"{v['PASS']} PASS, {v['VACUOUS']} VACUOUS, {v['NOT-APPLICABLE']} NOT-APPLICABLE"


@criterion(6, "hypersurface desk instances meet the bounds with equality and G(M) CM")
def test_c6_hypersurfaces():
    # [PAPER] (x^2 + y^2): e0 = 2, e1 = 1 = C(2,2); (x^3 - y^4): e0 = 3, e1 = 3 = C(3,2)
    for name, e0, e1 in (("hyper_x2y2", 2, 1), ("hyper_x3y4", 3, 3)):
        lem = check_finite_pd_bounds(load(name), "lem-4.2")
        thm = check_finite_pd_bounds(load(name), "thm-4.3")
        assert lem.verdict == "PASS" and thm.verdict == "PASS"
        inv = thm.invariants
        assert (inv["e0"], inv["e1"]) == (e0, e1)
        assert inv["e0"] >= inv["e0_bound"] == e0 and inv["e1_bound"] == e1
        assert any(h["name"] == "e1 attains the bound" and h["holds"] for h in thm.hypotheses)
        assert inv["G(M)"]["is_CM"]


@criterion(7, "strict complete intersection desk instance with declared and estimated complexity 1")
def test_c7_sci():
    rep = check_sci_bounds(load("sci_x2y2_x"), stages=5)
    inv = rep.invariants
    assert rep.verdict == "PASS"
    assert inv["alpha"] == 1 and inv["e0"] == 2 == inv["mu"] + inv["alpha"]
    assert inv["e1"] == 1 == inv["e1_bound"]
    assert inv["G(M)"]["is_CM"]
    est = inv["cx_estimate"]
    assert est["betti"] == [1, 1, 1, 1, 1, 1]
    assert est["cx"] == 1 and est["stable"]
    assert inv["cx_label"] == "DECLARED" and inv["cx"] == 1


@criterion(8, "truncated L(M) homology vanishes on the tail window up to cutoff 15")
def test_c8_lm_evidence():
    inst = load("cusp")
    forms = [inst.ring.parse("y"), find_superficial(inst, seed=0).form]
    for form in forms:
        rep = check_LM_homology_vanishing(inst, [form], cutoff=15)
        assert rep.verdict == "PASS-ON-WINDOW", rep.to_json()
        assert rep.parts[0]["tail_window"][1] == 14
    return "elements " + ", ".join(str(f) for f in forms)


@criterion(9, "Loewy length 5 equals reg + 1 for the non-quasi-pure example")
def test_c9_loewy():
    inst = load("ex354")
    reg = regularity(betti_table(inst.graded_resolution))
    assert reg == 4
    assert loewy_length(inst) == 5 == reg + 1


@criterion(10, "every CLI golden file reproduces byte-identically across runs and worker counts")
def test_c10_determinism():
    golden = INSTANCES / "golden"
    manifest = json.loads((golden / "manifest.json").read_text())

    def invoke(argv):
        out = io.StringIO()
        run([str(ROOT / a) if a.startswith("instances/") else a for a in argv], out, io.StringIO())
        return out.getvalue()

    for name, argv in manifest:
        expected = (golden / name).read_text()
        assert invoke(argv) == expected, name
        assert invoke(argv) == expected, name
        if argv[0] == "corpus" and "--check" in argv:
            assert invoke(argv + ["--workers", "4"]) == expected, name
    return f"{len(manifest)} golden files"
