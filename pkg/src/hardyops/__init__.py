"""Operator theory on model spaces of the Hardy space of the unit disc.

Boundary functions with banded Fourier spectra, finite Blaschke products,
the model spaces they carve out of the Hardy space, Toeplitz and Hankel
operators with their compressions, corona-pair invertibility with explicit
Bezout inverses, and the commutant of the compressed shift.
"""

from .blaschke import (
    BlaschkeProduct,
    RationalFunction,
    blaschke_eval,
    blaschke_factor,
    blaschke_make,
    factor_difference,
    inner_outer_of_polynomial,
    normalized_kernel,
    unnormalized_kernel,
)
from .corona import (
    CoronaCertificate,
    ProbeReport,
    ProbeRow,
    bezout_solve,
    corona_delta,
    corona_inverse_apply,
    corona_roundtrip_residual,
    min_abs_at_zeros,
    near_degenerate_probe,
)
from .errors import (
    CommonZeroError,
    CommutationError,
    ConfigError,
    ExponentError,
    GridMismatchError,
    HardyOpsError,
    IllConditionedError,
    NotAnalyticError,
    NotInModelSpaceError,
    RankAmbiguityError,
    TrivialInnerError,
    UnitDiscError,
)
from .hardy import (
    BoundaryFunction,
    CircleGrid,
    DEFAULT_GRID,
    HardyParams,
    grid_for_radius,
    hp_norm,
    integral_mean,
    monomial,
    pairing,
    riesz_split,
    shifts,
    sup_norm,
)
from .model_space import (
    ModelSpaceBasis,
    annihilator_defect,
    cauchy_basis,
    decompose,
    duality_gram,
    expand,
    project,
    tm_basis,
)
from .operators import (
    HankelStructure,
    MonomialRange,
    OperatorMatrix,
    adjoint_defect,
    coanalytic_kernel_check,
    commutant_basis,
    commutation_residual,
    commutation_singular_values,
    compressed_matrix,
    compressed_shift,
    hankel_apply,
    hankel_matrix,
    hankel_structure_check,
    hankel_symbol,
    induced_hankel_matrix,
    intertwine_defect,
    kernel_eigen_residual,
    symbol_recover,
    toeplitz_apply,
)

__version__ = "0.1.0"

__all__ = [
    "BlaschkeProduct",
    "BoundaryFunction",
    "CircleGrid",
    "CommonZeroError",
    "CommutationError",
    "ConfigError",
    "CoronaCertificate",
    "DEFAULT_GRID",
    "ExponentError",
    "GridMismatchError",
    "HankelStructure",
    "HardyOpsError",
    "HardyParams",
    "IllConditionedError",
    "ModelSpaceBasis",
    "MonomialRange",
    "NotAnalyticError",
    "NotInModelSpaceError",
    "OperatorMatrix",
    "ProbeReport",
    "ProbeRow",
    "RankAmbiguityError",
    "RationalFunction",
    "TrivialInnerError",
    "UnitDiscError",
    "adjoint_defect",
    "annihilator_defect",
    "bezout_solve",
    "blaschke_eval",
    "blaschke_factor",
    "blaschke_make",
    "cauchy_basis",
    "coanalytic_kernel_check",
    "commutant_basis",
    "commutation_residual",
    "commutation_singular_values",
    "compressed_matrix",
    "compressed_shift",
    "corona_delta",
    "corona_inverse_apply",
    "corona_roundtrip_residual",
    "decompose",
    "duality_gram",
    "expand",
    "factor_difference",
    "grid_for_radius",
    "hankel_apply",
    "hankel_matrix",
    "hankel_structure_check",
    "hankel_symbol",
    "hp_norm",
    "induced_hankel_matrix",
    "inner_outer_of_polynomial",
    "integral_mean",
    "intertwine_defect",
    "kernel_eigen_residual",
    "min_abs_at_zeros",
    "monomial",
    "near_degenerate_probe",
    "normalized_kernel",
    "pairing",
    "project",
    "riesz_split",
    "shifts",
    "sup_norm",
    "symbol_recover",
    "tm_basis",
    "toeplitz_apply",
    "unnormalized_kernel",
]
