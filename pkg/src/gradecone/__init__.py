"""Exact computations with graded resolutions, tangent cones and Koszul homology."""

__version__ = "0.1.0"

from .ring import PolynomialRing, PrimeField, QQ, Polynomial, FreeModuleElement, field_from_spec
from .parser import parse_polynomial, ParseError
from .groebner import GroebnerBasis, buchberger, normal_form, syzygies
from .resolution import (
    BettiTable,
    GradedFreeResolution,
    betti_table,
    estimate_complexity,
    finite_stage_resolution,
    homological_invariants,
    is_pure,
    is_quasi_pure,
    minimal_free_resolution,
)
from .hilbert import HilbertData, hilbert_series, min_generators, standard_monomial_hilbert
from .local import (
    LocalInstance,
    find_superficial,
    local_hilbert_coefficients,
    loewy_length,
    tangent_cone,
    truncated_quotient_basis,
)
from .koszul import TruncatedLM, check_LM_homology_vanishing, depth_via_koszul, koszul_homology
from .theorems import (
    CheckReport,
    check_alpha_drop,
    check_finite_pd_bounds,
    check_quasipure_cm,
    check_sci_bounds,
    generate_corpus,
)
