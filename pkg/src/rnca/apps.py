"""Applications built on the random feature maps.

Nonlinear ridge regression on featurized inputs, a randomized autoencoder
(feature-space PCA encoder plus nonlinear ridge decoder), and privileged
information features, where each privileged attribute is distilled into a
fixed number of canonical directions of the regular view's feature space.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ArgumentError, DataError, DegenerateDataWarning
from .features import FeatureMap, featurize, median_bandwidth, sample_fourier
from .linalg import as_matrix, spd_inverse_sqrt
from .models import RpcaModel, _whitened_cca, rpca_fit, rpca_transform


@dataclass(frozen=True)
class RidgeModel:
    map: FeatureMap
    weights: np.ndarray
    intercepts: np.ndarray
    ridge: float


def ridge_fit(inputs, targets, fmap: FeatureMap, ridge: float) -> RidgeModel:
    """Ridge regression from featurized inputs to (possibly multivariate) targets.

    Features and targets are centered, weights solve
    (Zc^T Zc + ridge I) W = Zc^T Tc through a Cholesky factorization, and the
    intercepts absorb the means. Cost stays linear in the number of rows.
    """
    if not (isinstance(ridge, (int, float, np.floating)) and np.isfinite(ridge) and ridge > 0):
        raise ArgumentError(f"ridge must be a finite positive real, got {ridge!r}")
    Z = featurize(fmap, inputs)
    T = as_matrix(targets, "ridge targets")
    if T.shape[0] != Z.shape[0]:
        raise DataError(f"row pairing mismatch: inputs have {Z.shape[0]} rows, targets {T.shape[0]}")
    z_means = Z.mean(axis=0)
    t_means = T.mean(axis=0)
    Zc = Z - z_means
    G = Zc.T @ Zc + float(ridge) * np.eye(Z.shape[1])
    factor = scipy.linalg.cho_factor(G, lower=True)
    # C order, so predictions after a save/load round trip stay bit-identical
    weights = np.ascontiguousarray(scipy.linalg.cho_solve(factor, Zc.T @ (T - t_means)))
    intercepts = t_means - z_means @ weights
    return RidgeModel(map=fmap, weights=weights, intercepts=intercepts, ridge=float(ridge))


def ridge_predict(model: RidgeModel, X) -> np.ndarray:
    return featurize(model.map, X) @ model.weights + model.intercepts


@dataclass(frozen=True)
class AutoencoderModel:
    encoder: RpcaModel
    decoder: RidgeModel

    @property
    def code_dim(self) -> int:
        return self.encoder.loadings.shape[1]


def autoencoder_fit(X, m: int, d: int, ridge: float = 1e-6, seed: int = 0) -> AutoencoderModel:
    """Randomized autoencoder: encode with feature-space PCA, decode with ridge.

    The encoder is PCA on m random Fourier features of X truncated to d
    scores; the decoder is ridge regression from m random Fourier features of
    the d-dimensional codes back to X. Bandwidths follow the median heuristic
    on the respective inputs, and the two maps draw from sub-seeds of `seed`.
    """
    X = as_matrix(X, "autoencoder input")
    if not isinstance(d, (int, np.integer)) or d < 1:
        raise ArgumentError(f"code dimension d must be a positive integer, got {d!r}")
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise ArgumentError(f"m must be a positive integer, got {m!r}")
    if d > m:
        raise ArgumentError(f"code dimension d={d} cannot exceed feature count m={m}")
    if not (isinstance(ridge, (int, float, np.floating)) and np.isfinite(ridge) and ridge > 0):
        raise ArgumentError(f"ridge must be a finite positive real, got {ridge!r}")
    seeds = np.random.SeedSequence(seed).generate_state(4)
    spec_enc = median_bandwidth(X, seed=int(seeds[0]))
    enc_map = sample_fourier(X.shape[1], int(m), spec_enc, int(seeds[1]))
    encoder = rpca_fit(X, enc_map, int(d))
    codes = rpca_transform(encoder, X)
    spec_dec = median_bandwidth(codes, seed=int(seeds[2]))
    dec_map = sample_fourier(int(d), int(m), spec_dec, int(seeds[3]))
    decoder = ridge_fit(codes, X, dec_map, ridge)
    return AutoencoderModel(encoder=encoder, decoder=decoder)


def autoencoder_reconstruct(model: AutoencoderModel, X) -> np.ndarray:
    return ridge_predict(model.decoder, rpca_transform(model.encoder, X))


def reconstruction_mse(model: AutoencoderModel, X) -> float:
    X = as_matrix(X, "reconstruction input")
    delta = autoencoder_reconstruct(model, X) - X
    return float(np.mean(delta * delta))


@dataclass(frozen=True)
class LupiBlock:
    """Canonical directions extracted for one privileged attribute."""

    attribute: int
    basis: np.ndarray
    correlations: np.ndarray


@dataclass(frozen=True)
class LupiModel:
    map: FeatureMap
    feature_means: np.ndarray
    blocks: tuple
    skipped: tuple
    gamma: float
    per_attr: int


def lupi_features(X, X_star, y, m: int = 1000, gamma: float = 1e-8, per_attr: int = 5, seed: int = 0) -> tuple[LupiModel, np.ndarray]:
    """Distill privileged attributes into features computable from X alone.

    For every non-constant column of the privileged view X_star, canonical
    directions are computed between the random Fourier features of X and the
    two-column view (attribute, label); the top per_attr X-side directions are
    kept. All attributes share one feature map and one whitener, so the loop
    costs a single m x m factorization plus one small SVD per attribute.
    Constant privileged columns are skipped with a warning and recorded.
    Returns the model and the n x (per_attr * kept) training feature matrix;
    block columns appear in attribute order.
    """
    X = as_matrix(X, "lupi X")
    Xs = as_matrix(X_star, "lupi X_star")
    yv = as_matrix(y, "lupi labels")
    if yv.shape[1] != 1:
        raise DataError(f"labels must be a single column, got shape {yv.shape}")
    n = X.shape[0]
    if Xs.shape[0] != n or yv.shape[0] != n:
        raise DataError(
            f"row pairing mismatch: X has {n} rows, X_star {Xs.shape[0]}, labels {yv.shape[0]}"
        )
    if n < 2:
        raise DataError(f"need at least 2 rows, got {n}")
    if not isinstance(per_attr, (int, np.integer)) or per_attr < 1:
        raise ArgumentError(f"per_attr must be a positive integer, got {per_attr!r}")
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise ArgumentError(f"m must be a positive integer, got {m!r}")
    if per_attr > m:
        raise ArgumentError(f"per_attr={per_attr} cannot exceed feature count m={m}")
    if not (isinstance(gamma, (int, float, np.floating)) and np.isfinite(gamma) and gamma > 0):
        raise ArgumentError(f"gamma must be a finite positive real, got {gamma!r}")

    seeds = np.random.SeedSequence(seed).generate_state(2)
    spec = median_bandwidth(X, seed=int(seeds[0]))
    fmap = sample_fourier(X.shape[1], int(m), spec, int(seeds[1]))
    Z = featurize(fmap, X)
    feature_means = Z.mean(axis=0)
    Zc = Z - feature_means
    denom = max(n - 1, 1)
    floor = max(1e-30, float(gamma) * 1e-6)
    Wx = spd_inverse_sqrt(Zc.T @ Zc / denom + float(gamma) * np.eye(int(m)), floor)

    blocks = []
    skipped = []
    for j in range(Xs.shape[1]):
        col = Xs[:, j]
        if np.ptp(col) == 0.0:
            warnings.warn(f"privileged attribute {j} is constant and was skipped", DegenerateDataWarning)
            skipped.append(j)
            continue
        B = np.column_stack([col, yv[:, 0]])
        Bc = B - B.mean(axis=0)
        basis, _, rho = _whitened_cca(Zc, Bc, float(gamma), float(gamma), int(per_attr), pad=True, wx=Wx)
        blocks.append(LupiBlock(attribute=j, basis=basis, correlations=rho))

    if blocks:
        stacked = np.hstack([b.basis for b in blocks])
        features = Zc @ stacked
    else:
        features = np.zeros((n, 0))
    model = LupiModel(
        map=fmap,
        feature_means=feature_means,
        blocks=tuple(blocks),
        skipped=tuple(skipped),
        gamma=float(gamma),
        per_attr=int(per_attr),
    )
    return model, features


def lupi_transform(model: LupiModel, X) -> np.ndarray:
    """Privileged-information features for new rows of the regular view."""
    Z = featurize(model.map, X)
    Zc = Z - model.feature_means
    if not model.blocks:
        return np.zeros((Z.shape[0], 0))
    return Zc @ np.hstack([b.basis for b in model.blocks])
