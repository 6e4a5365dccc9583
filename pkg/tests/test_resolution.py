import pytest
from hypothesis import given, strategies as st

from gradecone import (
    BettiTable,
    FreeModuleElement,
    betti_table,
    estimate_complexity,
    finite_stage_resolution,
    is_pure,
    is_quasi_pure,
    minimal_free_resolution,
)
from gradecone.graded import QuotientModule
from gradecone.koszul import GradedModuleSource, graded_module, koszul_homology
from gradecone.resolution import regularity, tor_dims_at_origin

from conftest import load, polynomials, ring

# [PAPER] resolutions of G(M) for the four optimality examples, as basis degrees of F_0, F_1, F_2
EXAMPLES = {
    "ex351": ([0], [2, 2], [3]),
    "ex352": ([0], [1, 1], [2]),
    "ex353": ([0], [3, 3, 4], [4, 6]),
    "ex354": ([0], [2, 2, 5], [3, 6]),
}


@pytest.mark.parametrize("name", sorted(EXAMPLES))
def test_example_resolutions(name):
    res = load(name).graded_resolution
    assert [sorted(d) for d in res.degrees] == [list(d) for d in EXAMPLES[name]]
    assert res.composes_to_zero() and not res.has_unit_entries()
    assert res.exactness_certificate()


def test_example_purity_flags():
    bt = {n: betti_table(load(n).graded_resolution) for n in EXAMPLES}
    assert is_pure(bt["ex351"])
    assert is_pure(bt["ex352"]) and bt["ex352"].alpha == [0, 1, 2]
    assert is_quasi_pure(bt["ex353"]) and not is_pure(bt["ex353"])
    assert not is_quasi_pure(bt["ex354"])
    assert regularity(bt["ex354"]) == 4


def test_render_format():
    bt = betti_table(load("ex354").graded_resolution)
    assert bt.render() == "total: 1 3 2\n0: 1 . .\n1: . 2 1\n2: . . .\n3: . . .\n4: . 1 1\n"
    assert BettiTable.from_degrees([[0], [1, 1], [2]]).to_json()["totals"] == [1, 2, 1]


homogeneous_ideals = st.integers(2, 3).flatmap(
    lambda n: st.lists(
        st.integers(1, 3).flatmap(lambda d: polynomials(ring("xyz"[:n]), max_deg=d, min_deg=d, max_terms=3)),
        min_size=1, max_size=3,
    ).filter(lambda gs: any(gs)))


@given(homogeneous_ideals)
def test_minimal_resolution_invariants(gens):
    gens = [g for g in gens if g]
    R = gens[0].ring
    res = minimal_free_resolution(gens)
    assert res.composes_to_zero()
    assert not res.has_unit_entries()
    assert res.exactness_certificate()
    assert res.length <= R.nvars
    bt = betti_table(res)
    # minimal shifts strictly increase along a minimal resolution
    assert all(bt.gamma[i] > bt.gamma[i - 1] for i in range(1, bt.p + 1))


@given(homogeneous_ideals)
def test_betti_numbers_equal_koszul_homology(gens):
    """[DERIVED] β_{i,j}(R/I) = dim H_i(x_1..x_n; R/I)_j."""
    gens = [g for g in gens if g]
    R = gens[0].ring
    bt = betti_table(minimal_free_resolution(gens))
    top = max(bt.alpha) + 1
    H = koszul_homology(GradedModuleSource(graded_module(gens), R.gens()), (0, top))
    assert {k: v for k, v in H.dims.items() if v} == bt.beta


def test_module_presentation():
    R = ring("xy")
    x, y = R.gens()
    col = FreeModuleElement([x, y], [0, 0])
    res = minimal_free_resolution([col])
    assert res.degrees == [[0, 0], [1]]
    twisted = minimal_free_resolution([FreeModuleElement([x, y * y], [1, 0])])
    # bases are listed by ascending degree; rows of the matrix follow
    assert twisted.degrees == [[0, 1], [2]]
    assert [str(row[0]) for row in twisted.matrix(1)] == ["y^2", "x"]


def test_free_module_and_rejections():
    R = ring("xy")
    x, y = R.gens()
    free = minimal_free_resolution([], ring=R, shifts=[0, 3])
    assert free.degrees == [[0, 3]] and free.length == 0
    with pytest.raises(ValueError):
        minimal_free_resolution([x + y * y])
    with pytest.raises(ValueError):
        minimal_free_resolution([])


def test_tor_at_origin():
    R = ring("xy")
    x, y = R.gens()
    assert tor_dims_at_origin([x * x - y ** 3]) == [1, 1]
    # (x^2 - y^3, xy) needs two generators locally; quotient has finite length
    assert tor_dims_at_origin([x * x - y ** 3, x * y]) == [1, 2, 1]
    # a generator that is a unit times a variable away from the origin changes nothing locally
    assert tor_dims_at_origin([x * (1 + y), y]) == [1, 2, 1]


@pytest.mark.parametrize("seq,cx,stable", [
    ([1, 1, 1, 1, 1, 1], 1, True),
    ([1, 2, 3, 4, 5, 6, 7], 2, True),
    ([1, 2, 1, 0, 0, 0], 0, True),
    ([1, 2, 4, 8, 16], 2, False),
])
def test_complexity_estimate(seq, cx, stable):
    est = estimate_complexity(seq)
    assert (est.cx, est.stable) == (cx, stable)


def test_complexity_needs_five_terms():
    with pytest.raises(ValueError):
        estimate_complexity([1, 1, 1, 1])


def test_finite_stage_resolutions():
    R = ring("xy")
    x, y = R.gens()
    J = [x * x, y * y]
    # [DERIVED] over a complete intersection of codim 2 the residue field has β_i = i + 1
    k = finite_stage_resolution(J, [x, y], 6, ring=R)
    assert k.betti == [1, 2, 3, 4, 5, 6, 7] and k.certified
    cyc = finite_stage_resolution(J, [x], 5, ring=R)
    assert cyc.betti == [1, 1, 1, 1, 1, 1]
    assert cyc.graded[:3] == [[0], [1], [2]]
    regular = finite_stage_resolution([], [x, y], 4, ring=R)
    assert regular.betti == [1, 2, 1, 0, 0]


def test_quotient_module_dims():
    R = ring("xy")
    x, y = R.gens()
    M = graded_module([x * x, x * y])
    assert [M.dim(d) for d in range(5)] == [1, 2, 1, 1, 1]
    assert QuotientModule(R, (0, 1)).dim(1) == 3
