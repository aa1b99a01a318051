"""Randomized nonlinear component analysis.

Random Fourier and Nystrom feature maps for the Gaussian kernel, component
models built on them (PCA, CCA, discriminant directions, spectral clustering,
the randomized dependence coefficient), applications (nonlinear ridge,
autoencoder, privileged-information features), and a validation lab pairing
Monte-Carlo approximation errors with their closed-form bounds.
"""

from ._backend import backend_name
from .apps import (
    AutoencoderModel,
    LupiBlock,
    LupiModel,
    RidgeModel,
    autoencoder_fit,
    autoencoder_reconstruct,
    lupi_features,
    lupi_transform,
    reconstruction_mse,
    ridge_fit,
    ridge_predict,
)
from .bounds import (
    SweepConfig,
    SweepRecord,
    bound_value,
    empirical_error,
    kcca_exact,
    kpca_exact,
    loglog_slope,
    oracle_cap,
    run_sweep,
    write_sweep_csv,
)
from .errors import (
    ArgumentError,
    CapacityError,
    DataError,
    DegenerateDataWarning,
    NumericError,
    RncaError,
)
from .features import (
    FeatureMap,
    KernelSpec,
    featurize,
    gram_exact,
    identity_map,
    median_bandwidth,
    sample_fourier,
    sample_nystrom,
)
from .linalg import EigenResult, kmeans, operator_norm, spd_inverse_sqrt, sym_eig
from .model_io import load_csv, load_labels, load_model, read_idx, save_csv, save_labels, save_model
from .models import (
    RccaModel,
    RdcResult,
    RpcaModel,
    copula_transform,
    rcca_fit,
    rcca_transform,
    rdc,
    rlda_fit,
    rpca_fit,
    rpca_transform,
    spectral_cluster,
    test_correlation_sum,
)

__version__ = "0.1.0"

__all__ = [
    "ArgumentError",
    "AutoencoderModel",
    "CapacityError",
    "DataError",
    "DegenerateDataWarning",
    "EigenResult",
    "FeatureMap",
    "KernelSpec",
    "LupiBlock",
    "LupiModel",
    "NumericError",
    "RccaModel",
    "RdcResult",
    "RidgeModel",
    "RncaError",
    "RpcaModel",
    "SweepConfig",
    "SweepRecord",
    "autoencoder_fit",
    "autoencoder_reconstruct",
    "backend_name",
    "bound_value",
    "copula_transform",
    "empirical_error",
    "featurize",
    "gram_exact",
    "identity_map",
    "kcca_exact",
    "kmeans",
    "kpca_exact",
    "load_csv",
    "load_labels",
    "load_model",
    "loglog_slope",
    "lupi_features",
    "lupi_transform",
    "median_bandwidth",
    "operator_norm",
    "oracle_cap",
    "rcca_fit",
    "rcca_transform",
    "rdc",
    "read_idx",
    "reconstruction_mse",
    "ridge_fit",
    "ridge_predict",
    "rlda_fit",
    "rpca_fit",
    "rpca_transform",
    "run_sweep",
    "save_csv",
    "save_labels",
    "save_model",
    "sample_fourier",
    "sample_nystrom",
    "spd_inverse_sqrt",
    "spectral_cluster",
    "sym_eig",
    "test_correlation_sum",
    "write_sweep_csv",
]
