import pytest
from hypothesis import given

from gradecone import betti_table, hilbert_series, minimal_free_resolution, standard_monomial_hilbert
from gradecone.hilbert import divide_one_minus_z, hilbert_coefficients, series_expansion

from conftest import load, monomial_ideals, ring


def test_series_expansion():
    assert series_expansion([1], 2, 5) == [1, 2, 3, 4, 5, 6]
    assert series_expansion([1, -1], 1, 3) == [1, 0, 0, 0]
    assert series_expansion([1, 1], 0, 3) == [1, 1, 0, 0]


def test_divide_one_minus_z():
    assert divide_one_minus_z([1, -2, 1]) == [1, -1]
    with pytest.raises(ArithmeticError):
        divide_one_minus_z([1, 1])


def test_coefficients_from_h():
    # h = 1 + 2z + z^2: e0 = h(1), e1 = h'(1), e2 = h''(1)/2
    assert hilbert_coefficients([1, 2, 1]) == [4, 4, 1]


# [DERIVED] h-polynomials from standard monomials counted by hand
@pytest.mark.parametrize("name,h,dim,e0,e1", [
    ("ex351", [1, 1, -1], 1, 1, -1),
    ("ex352", [1], 0, 1, 0),
    ("ex353", [1, 2, 3, 2, 1], 0, 9, 18),
    ("ex354", [1, 2, 1, 1, 1], 0, 6, 11),
    ("cusp", [1, 1], 1, 2, 1),
    ("hyper_x3y4", [1, 1, 1], 1, 3, 3),
])
def test_hilbert_data(name, h, dim, e0, e1):
    H = load(name).hilbert
    assert (H.h_poly, H.dim, H.e0, H.e1) == (h, dim, e0, e1)


@given(monomial_ideals(max_deg=6))
def test_resolution_series_matches_standard_monomials(data):
    R, gens = data
    H = hilbert_series(betti_table(minimal_free_resolution(gens)), R.nvars)
    assert H.hilbert_function(20) == standard_monomial_hilbert(gens, 20)


def test_standard_monomials_reject_non_monomials():
    R = ring("xy")
    x, y = R.gens()
    with pytest.raises(ValueError):
        standard_monomial_hilbert([x + y], 3)
    assert standard_monomial_hilbert([x * y], 3) == [1, 2, 2, 2]
