"""Randomized component-analysis estimators.

RPCA is PCA on featurized data, RCCA is regularized CCA on featurized data,
randomized LDA is RCCA against a class-indicator matrix, spectral clustering
works on the implicit feature Gram matrix, and the randomized dependence
coefficient is the top RCCA correlation of copula-transformed inputs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.stats

from . import _backend
from .errors import ArgumentError, DataError, NumericError
from .features import FeatureMap, KernelSpec, featurize, identity_map, median_bandwidth, sample_fourier
from .linalg import as_matrix, kmeans, spd_inverse_sqrt, sym_eig

# Whitened CCA switches to the factorized route above this feature dimension.
_ECONOMY_CUTOFF = 512


@dataclass(frozen=True)
class RpcaModel:
    """Principal components of featurized data."""

    map: FeatureMap
    feature_means: np.ndarray
    loadings: np.ndarray
    eigenvalues: np.ndarray


@dataclass(frozen=True)
class RccaModel:
    """Canonical bases and correlations between two featurized views."""

    map_x: FeatureMap
    map_y: FeatureMap
    means_x: np.ndarray
    means_y: np.ndarray
    basis_x: np.ndarray
    basis_y: np.ndarray
    correlations: np.ndarray
    gamma_x: float
    gamma_y: float


@dataclass(frozen=True)
class RdcResult:
    """Randomized dependence coefficient with the configuration that produced it."""

    value: float
    m_used: int
    gamma_used: float


def _check_count(value, name: str, low: int = 1, high: int | None = None) -> int:
    if not isinstance(value, (int, np.integer)) or value < low or (high is not None and value > high):
        bound = f"[{low}, {high}]" if high is not None else f">= {low}"
        raise ArgumentError(f"{name} must be an integer {bound}, got {value!r}")
    return int(value)


def _check_gamma(value, name: str) -> float:
    if not (isinstance(value, (int, float, np.floating)) and np.isfinite(value) and value > 0):
        raise ArgumentError(f"{name} must be a finite positive real, got {value!r}")
    return float(value)


def rpca_fit(X, fmap: FeatureMap, r: int) -> RpcaModel:
    """PCA of featurized X: top-r eigenpairs of the m x m feature covariance.

    Cost is O(m^2 n) for the covariance plus the eigensolve; eigenvalues are
    clamped at zero (round-off on rank-deficient covariances).
    """
    Z = featurize(fmap, X)
    n, m = Z.shape
    if n < 2:
        raise DataError("rpca_fit needs at least two rows")
    r = _check_count(r, "r", 1, m)
    means = Z.mean(axis=0)
    Zc = Z - means
    cov = (Zc.T @ Zc) / (n - 1)
    eig = sym_eig(cov, r)
    return RpcaModel(
        map=fmap,
        feature_means=means,
        loadings=eig.vectors,
        eigenvalues=np.maximum(eig.values, 0.0),
    )


def rpca_transform(model: RpcaModel, X) -> np.ndarray:
    """Score matrix (featurize(X) - feature_means) @ loadings, shape n x r."""
    Z = featurize(model.map, X)
    return (Z - model.feature_means) @ model.loadings


def _whitened_cca(Zxc, Zyc, gamma_x, gamma_y, r, pad=False, economy=None, wx=None):
    """Singular structure of M = (Cxx+gx I)^{-1/2} Cxy (Cyy+gy I)^{-1/2}.

    Returns (F, G, rho) with F = Wx @ U[:, :r], G = Wy @ V[:, :r]. The
    factorized (economy) route goes through thin SVDs of the centered feature
    matrices and yields the same triplets without forming m x m covariances;
    it is used automatically for wide feature matrices. With pad=True the SVD
    is taken with full matrices so F can extend past rank(M); the extra
    columns are an orthonormal completion in the whitened metric and their
    correlations are recorded as zero. G is never padded past its dimension.
    A precomputed left whitener can be passed as wx when the same X view is
    paired against many Y views (forces the covariance route).
    """
    n, mx = Zxc.shape
    my = Zyc.shape[1]
    denom = max(n - 1, 1)
    if economy is None:
        economy = wx is None and (not pad) and min(mx, my) > _ECONOMY_CUTOFF and r <= min(n, mx, my)

    if economy:
        Ux, sx, Vxt = scipy.linalg.svd(Zxc, full_matrices=False)
        Uy, sy, Vyt = scipy.linalg.svd(Zyc, full_matrices=False)
        dx = 1.0 / np.sqrt(sx * sx / denom + gamma_x)
        dy = 1.0 / np.sqrt(sy * sy / denom + gamma_y)
        core = ((sx * dx)[:, None] * (Ux.T @ Uy)) * (sy * dy)[None, :] / denom
        Uc, sig, Vct = scipy.linalg.svd(core, full_matrices=False)
        F = Vxt.T @ (dx[:, None] * Uc[:, :r])
        G = Vyt.T @ (dy[:, None] * Vct[:r].T)
        rho = sig[:r]
    else:
        Cyy = Zyc.T @ Zyc / denom
        Cxy = Zxc.T @ Zyc / denom
        floor_x = max(1e-30, gamma_x * 1e-6)
        floor_y = max(1e-30, gamma_y * 1e-6)
        if wx is None:
            Cxx = Zxc.T @ Zxc / denom
            Wx = spd_inverse_sqrt(Cxx + gamma_x * np.eye(mx), floor_x)
        else:
            Wx = wx
        Wy = spd_inverse_sqrt(Cyy + gamma_y * np.eye(my), floor_y)
        M = Wx @ Cxy @ Wy
        U, sig, Vt = scipy.linalg.svd(M, full_matrices=pad)
        F = Wx @ U[:, :r]
        G = Wy @ Vt[: min(r, my)].T
        if len(sig) < r:
            rho = np.concatenate([sig, np.zeros(r - len(sig))])
        else:
            rho = sig[:r].copy()

    return F, G, np.clip(rho, 0.0, 1.0)


def rcca_fit(X, Y, map_x: FeatureMap, map_y: FeatureMap, gamma_x: float = 1e-8, gamma_y: float = 1e-8, r: int = 1) -> RccaModel:
    """Regularized CCA between featurized views.

    The whitened target is M = (Cxx+gx I)^{-1/2} Cxy (Cyy+gy I)^{-1/2};
    correlations are its top-r singular values clamped to [0, 1] and the
    bases are the back-transformed singular vectors, so training canonical
    variables have unit variance under the regularized metric.
    """
    gamma_x = _check_gamma(gamma_x, "gamma_x")
    gamma_y = _check_gamma(gamma_y, "gamma_y")
    Zx = featurize(map_x, X)
    Zy = featurize(map_y, Y)
    if Zx.shape[0] != Zy.shape[0]:
        raise DataError(f"row pairing mismatch: X has {Zx.shape[0]} rows, Y has {Zy.shape[0]}")
    n = Zx.shape[0]
    if n < 2:
        raise DataError("rcca_fit needs at least two paired rows")
    r = _check_count(r, "r", 1, min(Zx.shape[1], Zy.shape[1]))

    means_x = Zx.mean(axis=0)
    means_y = Zy.mean(axis=0)
    F, G, rho = _whitened_cca(Zx - means_x, Zy - means_y, gamma_x, gamma_y, r)
    return RccaModel(
        map_x=map_x,
        map_y=map_y,
        means_x=means_x,
        means_y=means_y,
        basis_x=F,
        basis_y=G,
        correlations=rho,
        gamma_x=gamma_x,
        gamma_y=gamma_y,
    )


def rcca_transform(model: RccaModel, X=None, Y=None):
    """Canonical variables (U, V); pass one side as None to transform the other alone.

    When both sides are given their row counts must match.
    """
    if X is None and Y is None:
        raise ArgumentError("rcca_transform needs X, Y, or both")
    U = V = None
    if X is not None:
        U = (featurize(model.map_x, X) - model.means_x) @ model.basis_x
    if Y is not None:
        V = (featurize(model.map_y, Y) - model.means_y) @ model.basis_y
    if U is not None and V is not None and U.shape[0] != V.shape[0]:
        raise DataError("row pairing mismatch between X and Y in rcca_transform")
    return U, V


def _column_correlations(U: np.ndarray, V: np.ndarray) -> np.ndarray:
    Uc = U - U.mean(axis=0)
    Vc = V - V.mean(axis=0)
    num = np.einsum("ij,ij->j", Uc, Vc)
    den = np.sqrt(np.einsum("ij,ij->j", Uc, Uc) * np.einsum("ij,ij->j", Vc, Vc))
    out = np.zeros(U.shape[1])
    good = den > 0
    out[good] = num[good] / den[good]
    return out


def test_correlation_sum(model: RccaModel, X_test, Y_test, top: int) -> float:
    """Sum of the first `top` per-component Pearson correlations on held-out data.

    Terms are summed as computed and may be negative. Components that are
    constant on the test set contribute zero.
    """
    top = _check_count(top, "top", 1, len(model.correlations))
    U, V = rcca_transform(model, X_test, Y_test)
    if U.shape[0] < 3:
        raise DataError("test_correlation_sum needs at least 3 test rows")
    return float(_column_correlations(U[:, :top], V[:, :top]).sum())


def rlda_fit(X, labels, fmap: FeatureMap, gamma: float = 1e-8, r: int = 1) -> RccaModel:
    """Discriminant directions as RCCA between featurized X and class indicators.

    labels must be integers covering {0..c-1} with every class present; the
    indicator matrix gets an identity map, so the model's Y side is the
    c-dimensional class space and the projection lives on the X side.
    """
    X = as_matrix(X, "rlda input")
    lab = np.asarray(labels)
    if lab.ndim != 1 or lab.shape[0] != X.shape[0]:
        raise DataError("labels must be one integer per row of X")
    if not np.issubdtype(lab.dtype, np.integer):
        if not np.all(lab == np.floor(lab)):
            raise DataError("labels must be integers")
        lab = lab.astype(np.int64)
    c = int(lab.max()) + 1 if lab.size else 0
    present = np.unique(lab)
    if lab.min() < 0 or len(present) != c:
        raise DataError("labels must cover {0..c-1} with every class present")
    if c < 2:
        raise DataError("rlda_fit needs at least two classes")
    T = np.zeros((X.shape[0], c))
    T[np.arange(X.shape[0]), lab] = 1.0
    return rcca_fit(X, T, fmap, identity_map(c), gamma, gamma, r)


def spectral_cluster(X, k: int, fmap: FeatureMap, seed: int, kmeans_iters: int = 300) -> np.ndarray:
    """Cluster by k-means on the row-normalized spectral embedding of Z Z^T.

    The top-k eigenvectors of D^{-1/2} Z Z^T D^{-1/2} are obtained through
    the m x m auxiliary problem, so the n x n affinity is never materialized.
    """
    Z = featurize(fmap, X)
    n, m = Z.shape
    k = _check_count(k, "k", 2, n)
    degrees = Z @ Z.sum(axis=0)
    if np.any(degrees <= 0.0):
        raise NumericError("nonpositive affinity degree; the approximate kernel is not usable as an affinity here")
    B = Z / np.sqrt(degrees)[:, None]
    eig = sym_eig(B.T @ B, min(k, m))
    lam = eig.values
    if lam[0] <= 0.0:
        raise NumericError("normalized affinity has no positive spectrum")
    scales = 1.0 / np.sqrt(np.maximum(lam, 1e-12 * lam[0]))
    embedding = (B @ eig.vectors) * scales
    norms = np.linalg.norm(embedding, axis=1)
    norms[norms == 0.0] = 1.0
    embedding /= norms[:, None]
    return kmeans(embedding, k, seed, kmeans_iters)


def copula_transform(X) -> np.ndarray:
    """Column-wise normalized average ranks: entries rank/(n+1), ties averaged."""
    X = as_matrix(X, "copula input")
    n = X.shape[0]
    out = np.empty_like(X)
    for j in range(X.shape[1]):
        out[:, j] = scipy.stats.rankdata(X[:, j], method="average") / (n + 1.0)
    return out


def rdc(x, y, m: int = 200, gamma: float = 1e-3, seed: int = 0) -> RdcResult:
    """Randomized dependence coefficient of two paired samples.

    Copula-transforms both sides, samples one fourier map per side (median
    bandwidth on the copula scale) and returns the top RCCA correlation.
    Depends on the raw values only through ranks, so it is exactly invariant
    to strictly increasing marginal transformations at fixed seed.
    """
    x = as_matrix(x, "rdc x")
    y = as_matrix(y, "rdc y")
    if x.shape[0] != y.shape[0]:
        raise DataError(f"row pairing mismatch: x has {x.shape[0]} rows, y has {y.shape[0]}")
    if x.shape[0] < 5:
        raise DataError("rdc needs at least 5 paired rows")
    m = _check_count(m, "m", 1)
    gamma = _check_gamma(gamma, "gamma")

    seeds = [int(s) for s in np.random.SeedSequence(seed).generate_state(4)]
    cx = copula_transform(x)
    cy = copula_transform(y)
    spec_x = median_bandwidth(cx, max_pairs=10_000, seed=seeds[0])
    spec_y = median_bandwidth(cy, max_pairs=10_000, seed=seeds[1])
    map_x = sample_fourier(cx.shape[1], m, spec_x, seeds[2])
    map_y = sample_fourier(cy.shape[1], m, spec_y, seeds[3])
    model = rcca_fit(cx, cy, map_x, map_y, gamma, gamma, r=1)
    return RdcResult(value=float(model.correlations[0]), m_used=m, gamma_used=gamma)
