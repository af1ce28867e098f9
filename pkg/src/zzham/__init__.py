"""Closed-form toolkit for zig-zag and block-coupled non-Hermitian models.

The package provides exact, elimination-free algebra and eigensystems for a
family of sparse non-Hermitian matrices, the complete family of inner
product metrics making them quasi-Hermitian, Dyson factorizations, time
evolution with conserved metric norms, and a dense brute-force reference
module (:mod:`zzham.oracle`) that double-checks all of it.
"""

from .algebra import (
    TransposedGzz,
    embed_odd,
    gzz_add,
    gzz_identity,
    gzz_inverse,
    gzz_mul,
    gzz_to_zz,
    gzz_transpose,
    permute_dense,
    swap_permutation,
    zz_to_gzz,
)
from .dynamics import Trajectory, evolve, propagator, theta_norm
from .errors import (
    DimensionMismatchError,
    InvalidWeightError,
    ModelFormatError,
    NonDiagonalizableError,
    PatternTooWideError,
    SingularMatrixError,
)
from .generate import GeneratorConfig, pattern_pairs, random_gzz, random_state, random_weights
from .metric import (
    DysonFactor,
    MetricOperator,
    PositivityCertificate,
    bandwidth,
    build_theta,
    certify_positive,
    dyson_factor,
    quasi_hermiticity_residual,
    theta_from_eigenvectors,
)
from .models import (
    GzzHamiltonian,
    SignedIndex,
    ValidationReport,
    WeightVector,
    ZigZagHamiltonian,
    load_model,
    model_from_dict,
    model_from_json,
    model_to_dict,
    model_to_json,
    save_model,
    to_dense,
    validate,
)
from .spectral import EigenFactor, eigen_q, eigen_qtilde, factor_inverse, spectrum, zz_eigen
from .verify import VerifyReport, verify_model

__version__ = "0.1.0"

__all__ = [
    "DimensionMismatchError",
    "DysonFactor",
    "EigenFactor",
    "GeneratorConfig",
    "GzzHamiltonian",
    "InvalidWeightError",
    "MetricOperator",
    "ModelFormatError",
    "NonDiagonalizableError",
    "PatternTooWideError",
    "PositivityCertificate",
    "SignedIndex",
    "SingularMatrixError",
    "Trajectory",
    "TransposedGzz",
    "ValidationReport",
    "VerifyReport",
    "WeightVector",
    "ZigZagHamiltonian",
    "bandwidth",
    "build_theta",
    "certify_positive",
    "dyson_factor",
    "eigen_q",
    "eigen_qtilde",
    "embed_odd",
    "evolve",
    "factor_inverse",
    "gzz_add",
    "gzz_identity",
    "gzz_inverse",
    "gzz_mul",
    "gzz_to_zz",
    "gzz_transpose",
    "load_model",
    "model_from_dict",
    "model_from_json",
    "model_to_dict",
    "model_to_json",
    "pattern_pairs",
    "permute_dense",
    "propagator",
    "quasi_hermiticity_residual",
    "random_gzz",
    "random_state",
    "random_weights",
    "save_model",
    "spectrum",
    "swap_permutation",
    "theta_from_eigenvectors",
    "theta_norm",
    "to_dense",
    "validate",
    "verify_model",
    "zz_eigen",
    "zz_to_gzz",
    "__version__",
]
