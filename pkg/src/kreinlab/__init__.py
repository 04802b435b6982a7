"""Krein spaces, Krein C*-algebras and Krein C*-categories in finite dimension.

Everything is a concrete complex matrix: spaces are Gram forms, algebras and
hom-spaces are spans of matrices, and every axiom is checked numerically with
a residual and a witness.
"""
from .errors import ConstructionError, InputError, KreinLabError
from .krein_space import (
    FundamentalDecomposition,
    KreinSpace,
    all_symmetry_check,
    canonical_decomposition,
    decomposition_from_symmetry,
    j_norm,
    krein_adjoint,
    norm_equivalence,
)
from .matrix_core import DEFAULT_TOL, SubspaceBasis, herm_eig, op_norm, saturate_span
from .involution import AdSymmetry, LinearSymmetry, SandwichInvolution
from .report import Check, Report
from .star_algebra import (
    MatrixStarAlgebra,
    algebra_from_generators,
    even_odd_split,
    full_matrix_algebra,
    krein_operator_algebra,
    twist_involution,
    verify_cstar_algebra,
    verify_krein_cstar,
)
from .cstar_category import (
    OperatorCategory,
    StarFunctor,
    category_from_algebra,
    category_from_generators,
    doubling,
    envelope,
    envelope_functor,
    full_operator_category,
    isoenv_check,
    krein_link,
    krein_space_category,
    linking_category,
    twist_category,
    verify_cstar_category,
    verify_krein_cstar_category,
)
from .gns_repr import (
    CategoryState,
    GNSRepresentation,
    KreinRepresentation,
    gelfand_naimark,
    gns,
    represent_krein_algebra,
    represent_krein_category,
    vector_states,
    verify_state,
)

__version__ = "0.1.0"
