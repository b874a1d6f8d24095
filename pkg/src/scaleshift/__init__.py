"""Sparse recovery of nonlinear models from dilated and translated samples.

The package recovers the parameters of expansions
``f(t) = sum_i alpha_i g(param_i; t)`` for exponential, trigonometric,
hyperbolic, polynomial (Chebyshev and spread), cardinal-sine, gamma, and
Gaussian base functions, from structured samples ``f((tau + j sigma) delta)``.
Stretching the grid by ``sigma`` tames conditioning; the coprime
translation ``tau`` restores the uniqueness that aliasing destroys.

The high-level entry points are :func:`analyze` (parameter recovery),
:func:`simulate` (sample generation), and :func:`estimate_order`; the
submodules expose the structured-matrix builders, eigenvalue kernels,
and candidate-set disambiguation the pipeline is assembled from.
"""

from __future__ import annotations

from . import errors
from .analyzers import (
    Tolerances,
    analyze,
    analyze_chebyshev,
    analyze_cosine,
    analyze_exponential,
    analyze_exponential_variant,
    analyze_gamma,
    analyze_gaussian,
    analyze_hyperbolic,
    analyze_phase_sine,
    analyze_sinc,
    analyze_sine,
    analyze_spread,
    report_dict,
)
from .disambig import (
    CandidateSet,
    cos_candidates,
    cos_resolve,
    exp_candidates,
    exp_resolve,
    integer_snap,
    spread_candidates,
    spread_resolve,
)
from .errors import (
    AmbiguityError,
    DomainError,
    MissingSample,
    NumericalError,
    ScaleShiftError,
    SchemaError,
)
from .kernels import (
    EigenPairs,
    cond2,
    generalized_eig,
    singular_values,
    vandermonde_solve,
)
from .models import (
    BaseFamily,
    OrderEstimate,
    RecoveryResult,
    SparseModel,
    Term,
    evaluate,
    model_from_dict,
    model_from_json,
    model_to_dict,
    model_to_json,
)
from .multivariate import analyze_multi_exponential, analyze_multi_gaussian
from .order import estimate_order, family_matrix
from .sampling import (
    SampleSet,
    SamplingScheme,
    aux_transform,
    gamma_transform,
    grid_point,
    grid_points,
    sample_plan,
    samples_from_csv,
    samples_to_csv,
    scheme_from_dict,
    scheme_from_json,
    scheme_to_dict,
    scheme_to_json,
    simulate,
)
from .structmat import (
    Pencil,
    build_cosine_matrix,
    build_gamma_hankel,
    build_gauss_hankel,
    build_hankel,
    build_sine_matrix,
    build_spread_matrices,
    build_toeplitz,
    matrix_from_csv,
    matrix_to_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AmbiguityError",
    "BaseFamily",
    "CandidateSet",
    "DomainError",
    "EigenPairs",
    "MissingSample",
    "NumericalError",
    "OrderEstimate",
    "Pencil",
    "RecoveryResult",
    "SampleSet",
    "SamplingScheme",
    "ScaleShiftError",
    "SchemaError",
    "SparseModel",
    "Term",
    "Tolerances",
    "analyze",
    "analyze_chebyshev",
    "analyze_cosine",
    "analyze_exponential",
    "analyze_exponential_variant",
    "analyze_gamma",
    "analyze_gaussian",
    "analyze_hyperbolic",
    "analyze_multi_exponential",
    "analyze_multi_gaussian",
    "analyze_phase_sine",
    "analyze_sinc",
    "analyze_sine",
    "analyze_spread",
    "build_cosine_matrix",
    "build_gamma_hankel",
    "build_gauss_hankel",
    "build_hankel",
    "build_sine_matrix",
    "build_spread_matrices",
    "build_toeplitz",
    "cond2",
    "cos_candidates",
    "cos_resolve",
    "errors",
    "estimate_order",
    "evaluate",
    "exp_candidates",
    "exp_resolve",
    "family_matrix",
    "generalized_eig",
    "integer_snap",
    "matrix_from_csv",
    "matrix_to_csv",
    "model_from_dict",
    "model_from_json",
    "model_to_dict",
    "model_to_json",
    "report_dict",
    "aux_transform",
    "gamma_transform",
    "grid_point",
    "grid_points",
    "sample_plan",
    "samples_from_csv",
    "samples_to_csv",
    "scheme_from_dict",
    "scheme_from_json",
    "scheme_to_dict",
    "scheme_to_json",
    "simulate",
    "singular_values",
    "spread_candidates",
    "spread_resolve",
    "vandermonde_solve",
    "__version__",
]
