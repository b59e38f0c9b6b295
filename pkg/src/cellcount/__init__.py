"""Counting colorings, tensions and flows on cell complexes.

A cell complex is its labeled top boundary matrix.  Modular counts (over
Z_k) are exact quasipolynomials; integral counts are lattice-point
enumerations with fitted Ehrhart quasipolynomials.
"""

from .complex import (
    CellComplex,
    builtin,
    contract,
    delete_facet,
    flow_basis,
    from_boundary,
    graph_complex,
    matrix_complex,
    simplex_skeleton,
    tension_basis,
)
from .errors import CellCountError
from .exact_linalg import IntMatrix, invariant_factors, kernel_basis, rank, snf
from .integral_counts import (
    closed_pairs_chromatic,
    closed_pairs_flow,
    closed_pairs_tension,
    fit_integral_qp,
    integral_chromatic,
    integral_flow,
    integral_tension,
)
from .modular_counts import (
    brute_chromatic,
    brute_flow,
    brute_tension,
    chromatic_delcon,
    chromatic_ie,
    flow_delcon,
    flow_ie,
    tension_qp,
)
from .orientations import (
    count_C,
    count_Phi,
    count_Psi,
    enumerate_acyclic,
    enumerate_totally_cyclic,
    is_acyclic,
    is_totally_cyclic,
)
from .quasipoly import Quasipolynomial
from .tutte import arithmetic_tutte, check_specializations, tutte
from .unimodularity import classify, is_ISH, is_QU, is_SQU, is_TU, period_bound

__version__ = "0.1.0"
