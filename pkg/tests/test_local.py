import json

import pytest
from hypothesis import assume, given, strategies as st

from gradecone import LocalInstance, PrimeField, betti_table, buchberger, find_superficial, loewy_length
from gradecone.local import (
    SEED_ENV,
    SuperficialSearchError,
    find_superficial_sequence,
    local_length,
    resolve_seed,
    superficial_check,
    truncated_quotient_basis,
)
from gradecone.resolution import regularity

from conftest import load, polynomials, ring, truncated_colength

R2 = ring("xy")
x, y = R2.gens()

local_polys = polynomials(R2, max_deg=4, max_terms=3, min_deg=1).filter(bool)


def test_tangent_cones():
    assert [str(p) for p in load("cusp").tangent_cone.polys] == ["x^2"]
    assert {str(p) for p in load("cusp_xy").tangent_cone.polys} == {"x^2", "x*y", "y^4"}
    # x + y^2 is a smooth curve: tangent line x = 0
    assert [str(p) for p in LocalInstance(R2, [x + y * y]).tangent_cone.polys] == ["x"]


@given(st.lists(local_polys, min_size=1, max_size=2))
def test_tangent_cone_hilbert_matches_truncations(gens):
    """[DERIVED] length k[x]/(I + m^{N+1}) = Σ_{d≤N} H_{G(A)}(d)."""
    inst = LocalInstance(R2, gens)
    H = inst.hilbert.hilbert_function(6)
    for N in range(7):
        assert sum(H[:N + 1]) == truncated_colength(gens, 2, N)


@given(st.lists(st.integers(1, 3).flatmap(
    lambda d: polynomials(R2, max_deg=d, min_deg=d, max_terms=3)), min_size=1, max_size=3))
def test_tangent_cone_of_homogeneous_ideal_is_itself(gens):
    gens = [g for g in gens if g]
    assume(gens)
    inst = LocalInstance(R2, gens)
    assert {str(p) for p in inst.tangent_cone.polys} == {str(p) for p in buchberger(gens).polys}


@given(local_polys)
def test_principal_tangent_cone(f):
    assert [p.monic() for p in LocalInstance(R2, [f]).tangent_cone.polys] == [f.initial_form().monic()]


artinian = st.tuples(st.integers(1, 5), st.integers(1, 5), st.lists(local_polys, max_size=2))


@given(artinian)
def test_loewy_length(data):
    a, b, extra = data
    gens = [x ** a + y ** (a + 1), y ** b] + extra
    inst = LocalInstance(R2, gens)
    ll = loewy_length(inst)
    length = local_length(inst)
    # [DERIVED] ℓℓ is the least i with length k[x]/(I + m^i) equal to the full length
    assert truncated_colength(gens, 2, ll - 1) == length
    assert ll == 1 or truncated_colength(gens, 2, ll - 2) < length
    # for an Artinian G(A) the regularity is its top degree
    assert ll == regularity(betti_table(inst.graded_resolution)) + 1


def test_loewy_examples():
    assert loewy_length(load("ex354")) == 5
    assert loewy_length(load("ex353")) == 5
    assert loewy_length(load("cusp_xy")) == 4
    with pytest.raises(ValueError):
        loewy_length(load("cusp"))


def test_truncated_basis():
    inst = load("cusp_xy")
    assert {str(m) for m in truncated_quotient_basis(inst, 10)} == {"1", "x", "y", "y^2", "y^3"}
    assert {str(m) for m in truncated_quotient_basis(inst, 2)} == {"1", "x", "y"}


def test_superficial_on_cusp():
    inst = load("cusp")
    assert superficial_check(inst, y).holds
    bad = superficial_check(inst, x)
    assert not bad.holds and bad.failing_degree == 3
    assert local_length(inst.with_ideal([y])) == 2
    assert local_length(inst.with_ideal([x])) == 3


@given(st.integers(1, 4).flatmap(lambda d: polynomials(R2, max_deg=d + 2, min_deg=d, max_terms=4)).filter(bool),
       st.integers(0, 50))
def test_superficial_cut_preserves_multiplicity(f, seed):
    """[DERIVED] for a hypersurface e0 = ord f, and a superficial ℓ on a CM curve has length(A/ℓA) = e0."""
    inst = LocalInstance(R2, [f])
    found = find_superficial(inst, seed=seed)
    assert inst.hilbert.e0 == f.ord()
    assert local_length(inst.with_ideal([found.form])) == f.ord()


def test_superficial_search_is_seeded():
    inst = load("cusp")
    a = find_superficial(inst, seed=5)
    b = find_superficial(inst, seed=5)
    assert a.form == b.form and a.trials_used == b.trials_used
    assert len(find_superficial_sequence(inst, 1, seed=5)) == 1
    with pytest.raises(ValueError):
        find_superficial(load("ex353"))


def test_superficial_search_can_fail():
    # over F_2 every linear form x, y or x + y meets one of the three tangent lines of xy(x + y)
    R = ring("xy", field=PrimeField(2))
    u, v = R.gens()
    inst = LocalInstance(R, [u * v * (u + v)])
    with pytest.raises(SuperficialSearchError):
        find_superficial(inst, trials=10)


def test_depth_and_cm():
    assert load("cusp").depth == 1 and load("cusp").is_cohen_macaulay
    assert load("ex351").depth == 0 and not load("ex351").is_cohen_macaulay
    assert load("ex353").is_cohen_macaulay


def test_instance_json():
    inst = load("sci_x2y2_x")
    again = LocalInstance.from_json(json.dumps(inst.to_json()))
    assert again.to_json() == inst.to_json()
    with pytest.raises(ValueError, match="unknown instance keys"):
        LocalInstance.from_json({"vars": ["x"], "ideal": ["x"], "bogus": 1})
    with pytest.raises(ValueError, match="unit"):
        LocalInstance.from_json({"vars": ["x"], "ideal": ["1 + x"]})
    with pytest.raises(ValueError):
        LocalInstance.from_json({"ideal": ["x"]})


def test_seed_resolution(monkeypatch):
    monkeypatch.delenv(SEED_ENV, raising=False)
    assert resolve_seed(None) == 0
    monkeypatch.setenv(SEED_ENV, "17")
    assert resolve_seed(None) == 17
    assert resolve_seed(3) == 3
