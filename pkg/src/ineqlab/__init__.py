"""Numerical verification lab for inner-product, operator-norm and
numerical-radius inequality chains over seeded random ensembles."""

from .chains import AngleResult, ChainResult, ToleranceConfig, make_chain
from .ensembles import FAMILIES, EnsembleConfig, draw, sample, trial_stream
from .errors import (
    ConvergenceError,
    DimensionMismatch,
    IneqLabError,
    InvalidInput,
    NotHermitian,
    NotOrthogonalProjection,
    NotPositiveSemidefinite,
    PreconditionError,
    SpectrumOutOfRange,
    ZeroOperator,
    ZeroVector,
)
from .harness import (
    REGISTRY,
    SuiteReport,
    SuiteSpec,
    check_single,
    default_config,
    run_all,
    run_suite,
    suite_names,
)
from .linalg import (
    EigenDecomposition,
    PolarDecomposition,
    SVDResult,
    hermitian_eigen,
    inner,
    is_positive_contraction,
    jacobi_hermitian_eigen,
    matrix_from_json_dict,
    matrix_to_json_dict,
    modulus,
    norm,
    operator_norm,
    polar_decompose,
    psd_power,
    psd_sqrt,
    svd,
    vector_from_json_dict,
    vector_to_json_dict,
)
from .operator_ineq import (
    PowerParams,
    bourin_property,
    contraction_builder,
    corollary33_chain,
    corollary35_chain,
    corollary37_chain,
    corollary38_norm_chain,
    corollary38_omega_chain,
    final_omega_refinement_chain,
    lemma_2A_chain,
    power_chain,
    remark36_polar_chain,
    remark36_scaled,
    remark36_scaled_unchecked,
    theorem_gap_chain,
)
from .radius import (
    RadiusResult,
    RadiusSweepConfig,
    numerical_radius,
    numerical_radius_sampling_oracle,
)
from .vector_ineq import (
    angles,
    buzano_chain,
    cs_refinement_chain,
    krein_triangle,
    lemma21_chain,
    lin_triangle_refined,
    projection_buzano,
    psi_infimum_property,
)

__version__ = "0.1.0"

__all__ = [
    "AngleResult",
    "ChainResult",
    "ConvergenceError",
    "DimensionMismatch",
    "EigenDecomposition",
    "EnsembleConfig",
    "FAMILIES",
    "IneqLabError",
    "InvalidInput",
    "NotHermitian",
    "NotOrthogonalProjection",
    "NotPositiveSemidefinite",
    "PolarDecomposition",
    "PowerParams",
    "PreconditionError",
    "REGISTRY",
    "RadiusResult",
    "RadiusSweepConfig",
    "SVDResult",
    "SpectrumOutOfRange",
    "SuiteReport",
    "SuiteSpec",
    "ToleranceConfig",
    "ZeroOperator",
    "ZeroVector",
    "angles",
    "bourin_property",
    "buzano_chain",
    "check_single",
    "contraction_builder",
    "corollary33_chain",
    "corollary35_chain",
    "corollary37_chain",
    "corollary38_norm_chain",
    "corollary38_omega_chain",
    "cs_refinement_chain",
    "default_config",
    "draw",
    "final_omega_refinement_chain",
    "hermitian_eigen",
    "inner",
    "is_positive_contraction",
    "jacobi_hermitian_eigen",
    "krein_triangle",
    "lemma21_chain",
    "lemma_2A_chain",
    "lin_triangle_refined",
    "make_chain",
    "matrix_from_json_dict",
    "matrix_to_json_dict",
    "modulus",
    "norm",
    "numerical_radius",
    "numerical_radius_sampling_oracle",
    "operator_norm",
    "polar_decompose",
    "power_chain",
    "projection_buzano",
    "psd_power",
    "psd_sqrt",
    "psi_infimum_property",
    "remark36_polar_chain",
    "remark36_scaled",
    "remark36_scaled_unchecked",
    "run_all",
    "run_suite",
    "sample",
    "suite_names",
    "svd",
    "theorem_gap_chain",
    "trial_stream",
    "vector_from_json_dict",
    "vector_to_json_dict",
]
