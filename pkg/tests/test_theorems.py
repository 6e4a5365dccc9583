import json

import pytest

from gradecone import LocalInstance, check_alpha_drop, check_finite_pd_bounds, check_quasipure_cm, \
    check_sci_bounds, generate_corpus
from gradecone.theorems import KINDS, instance_seed, run_check, run_corpus, summarize

from conftest import load


@pytest.mark.parametrize("theorem,name,verdict", [
    ("thm-3.3", "ex351", "NOT-APPLICABLE"),
    ("thm-3.3", "ex352", "VACUOUS"),
    ("thm-3.3", "ex354", "VACUOUS"),
    ("thm-3.3", "cusp_xy", "VACUOUS"),
    ("cor-3.4", "ex351", "NOT-APPLICABLE"),
    ("cor-3.4", "ex353", "PASS"),
    ("cor-3.4", "ex354", "VACUOUS"),
    ("lem-4.2", "hyper_x2y2", "PASS"),
    ("thm-4.3", "hyper_x2y2", "PASS"),
    ("thm-4.3", "hyper_x3y4", "PASS"),
    ("thm-4.3", "hyper_x2y2_cut", "PASS"),
    ("thm-5.7", "sci_x2y2_x", "PASS"),
    ("thm-5.7", "sci_x3y3_x", "PASS"),
    ("thm-5.7", "sci_x2y2_k", "NOT-APPLICABLE"),
])
def test_desk_verdicts(theorem, name, verdict):
    assert run_check(theorem, load(name)).verdict == verdict


def test_alpha_drop_report_contents():
    rep = check_alpha_drop(load("ex351"))
    assert rep.hypotheses[0]["name"] == "M Cohen-Macaulay" and not rep.hypotheses[0]["holds"]
    assert rep.invariants["betti"]["alpha"] == [0, 2, 3]
    assert json.loads(rep.dumps())["verdict"] == "NOT-APPLICABLE"


def test_declared_cm_is_echoed():
    data = load("ex351").to_json()
    data["declared"] = {"cm": True}
    rep = check_quasipure_cm(LocalInstance.from_json(data))
    assert rep.hypotheses[0]["witness"] == {"declared": True}
    # ex351 has a pure resolution and a non-CM G(M): a false declaration surfaces as FAIL
    assert rep.verdict == "FAIL"


@pytest.mark.parametrize("name,order,e0,e1", [
    # [PAPER] hypersurfaces of order s with M = A: e0 = s, e1 = C(s, 2)
    ("hyper_x2y2", 2, 2, 1),
    ("hyper_x3y4", 3, 3, 3),
])
def test_hypersurface_bounds(name, order, e0, e1):
    rep = check_finite_pd_bounds(load(name), "thm-4.3")
    inv = rep.invariants
    assert (inv["e0"], inv["e1"], inv["reg_G(A)"]) == (e0, e1, order - 1)
    assert inv["e0"] >= inv["e0_bound"] and inv["e1_equality"]
    assert inv["G(M)"]["is_CM"] and rep.verdict == "PASS"


def test_sci_desk_instance():
    rep = check_sci_bounds(load("sci_x2y2_x"), stages=5)
    inv = rep.invariants
    # [PAPER] α = (c - r)(s - 1) = 1, e0 = μ + α = 2, e1 = C(2, 2) = 1
    assert (inv["alpha"], inv["e0"], inv["mu"], inv["e1"]) == (1, 2, 1, 1)
    assert inv["cx_label"] == "DECLARED" and inv["cx"] == 1
    assert inv["cx_estimate"]["betti"] == [1, 1, 1, 1, 1, 1]
    assert inv["cx_estimate"]["cx"] == 1 and inv["G(M)"]["is_CM"]


def test_sci_estimate_used_without_declaration():
    data = load("sci_x2y2_x").to_json()
    data.pop("declared")
    rep = check_sci_bounds(LocalInstance.from_json(data))
    assert rep.invariants["cx_label"] == "ESTIMATED" and rep.verdict == "PASS"


def test_sci_declared_overrides_and_notes_disagreement():
    rep = check_sci_bounds(load("sci_x2y2_x"), declared_cx=0)
    assert rep.invariants["cx"] == 0
    assert any("differs" in n for n in rep.notes)


def test_unknown_theorem():
    with pytest.raises(ValueError):
        run_check("thm-9.9", load("cusp"))
    with pytest.raises(ValueError):
        check_finite_pd_bounds(load("cusp"), "thm-3.3")


@pytest.mark.parametrize("kind", KINDS)
def test_corpus_is_deterministic_and_prefix_stable(kind):
    nvars = 3 if kind != "monomial" else 2
    a = [i.to_json() for i in generate_corpus(nvars, 4, 6, kind, seed=11)]
    b = [i.to_json() for i in generate_corpus(nvars, 4, 6, kind, seed=11)]
    c = [i.to_json() for i in generate_corpus(nvars, 4, 3, kind, seed=11)]
    assert a == b and a[:3] == c
    assert a != [i.to_json() for i in generate_corpus(nvars, 4, 6, kind, seed=12)]


def test_corpus_instances_are_well_formed():
    for inst in generate_corpus(3, 4, 10, "ci", seed=2):
        assert len(inst.ci) == 2 and LocalInstance(inst.ring, inst.ci).dim == 1
        assert len({f.ord() for f in inst.ci}) == 1
    with pytest.raises(ValueError):
        generate_corpus(2, 4, 0, "monomial", seed=1)
    with pytest.raises(ValueError):
        generate_corpus(2, 4, 1, "bogus", seed=1)


def test_instance_seed():
    assert instance_seed(0, 5) == 5
    assert instance_seed(1, 0) == 1_000_003
    assert 0 <= instance_seed(2 ** 70, 3) < 2 ** 63


def test_run_corpus_worker_independence():
    insts = generate_corpus(3, 4, 12, "perturbed-homogeneous", seed=4)
    one = run_corpus("thm-3.3", insts, seed=4, workers=1)
    many = run_corpus("thm-3.3", insts, seed=4, workers=3)
    assert json.dumps(one, sort_keys=True) == json.dumps(many, sort_keys=True)
    s = summarize(one)
    assert s["count"] == 12 and sum(s["verdicts"].values()) == 12


def test_alpha_drop_and_quasipure_agree():
    """Where the α-drop applies, G(M) cannot be quasi-pure, so cor-3.4 must be vacuous there."""
    applicable = 0
    for inst in generate_corpus(3, 5, 40, "perturbed-homogeneous", seed=9):
        if check_alpha_drop(inst).verdict == "PASS":
            applicable += 1
            assert check_quasipure_cm(inst).verdict == "VACUOUS"
    assert applicable > 0


def test_verdicts_agree_over_q_and_fp():
    for inst in generate_corpus(3, 5, 20, "perturbed-homogeneous", seed=1, field_spec="q"):
        data = inst.to_json()
        data["field"] = "fp:32003"
        reduced = LocalInstance.from_json(data)
        for theorem in ("thm-3.3", "cor-3.4"):
            assert run_check(theorem, inst).verdict == run_check(theorem, reduced).verdict
