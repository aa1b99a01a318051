"""Gaussian-kernel feature machinery.

Provides the median-distance bandwidth heuristic, random Fourier and Nystrom
feature maps for the Gaussian kernel k(x, y) = exp(-s * ||x - y||^2), the
identity map, and exact Gram evaluation. Feature maps are immutable once
sampled; all sampling is driven by explicit integer seeds.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from . import _backend
from .errors import ArgumentError, DataError, DegenerateDataWarning
from .linalg import as_matrix, spd_inverse_sqrt

CONVENTIONS = ("unbiased", "paper_literal")


@dataclass(frozen=True)
class KernelSpec:
    """Gaussian kernel parameters: k(x, y) = exp(-s * ||x - y||^2)."""

    s: float

    def __post_init__(self):
        if not (isinstance(self.s, (int, float, np.floating)) and np.isfinite(self.s) and self.s > 0):
            raise ArgumentError(f"kernel width s must be a finite positive real, got {self.s!r}")
        object.__setattr__(self, "s", float(self.s))


def _frozen(a: np.ndarray) -> np.ndarray:
    out = np.array(a, dtype=np.float64)
    out.setflags(write=False)
    return out


@dataclass(frozen=True)
class FeatureMap:
    """A sampled (or identity) finite-dimensional approximation of the kernel.

    kind "fourier" holds projection weights (m x d) and phase offsets (m);
    kind "nystrom" holds landmarks (m x d) and the whitening matrix (m x m);
    kind "identity" holds no sampled state and has output_dim == input_dim.
    `scale_convention` only affects fourier maps: "unbiased" scales features
    by sqrt(2/m) so that Z Z^T estimates the kernel itself, "paper_literal"
    scales by sqrt(1/m).
    """

    kind: str
    input_dim: int
    output_dim: int
    spec: KernelSpec | None = None
    scale_convention: str = "unbiased"
    weights: np.ndarray | None = None
    offsets: np.ndarray | None = None
    landmarks: np.ndarray | None = None
    whitener: np.ndarray | None = None

    def __post_init__(self):
        if self.kind not in ("fourier", "nystrom", "identity"):
            raise ArgumentError(f"unknown feature map kind {self.kind!r}")
        if self.scale_convention not in CONVENTIONS:
            raise ArgumentError(f"scale_convention must be one of {CONVENTIONS}, got {self.scale_convention!r}")
        if self.input_dim < 1 or self.output_dim < 1:
            raise ArgumentError("feature map dimensions must be positive")
        if self.kind == "fourier":
            if self.weights is None or self.offsets is None or self.spec is None:
                raise ArgumentError("fourier maps need weights, offsets, and a kernel spec")
            if self.weights.shape != (self.output_dim, self.input_dim):
                raise ArgumentError("fourier weights must have shape (output_dim, input_dim)")
            if self.offsets.shape != (self.output_dim,):
                raise ArgumentError("fourier offsets must have shape (output_dim,)")
        elif self.kind == "nystrom":
            if self.landmarks is None or self.whitener is None or self.spec is None:
                raise ArgumentError("nystrom maps need landmarks, a whitener, and a kernel spec")
            if self.landmarks.shape != (self.output_dim, self.input_dim):
                raise ArgumentError("nystrom landmarks must have shape (output_dim, input_dim)")
            if self.whitener.shape != (self.output_dim, self.output_dim):
                raise ArgumentError("nystrom whitener must be square of side output_dim")
        else:
            if self.output_dim != self.input_dim:
                raise ArgumentError("identity maps must have output_dim == input_dim")


def identity_map(d: int) -> FeatureMap:
    """The do-nothing map: featurize returns the input unchanged."""
    if not isinstance(d, (int, np.integer)) or d < 1:
        raise ArgumentError(f"dimension must be a positive integer, got {d!r}")
    return FeatureMap(kind="identity", input_dim=int(d), output_dim=int(d))


def median_bandwidth(X, max_pairs: int = 100_000, seed: int = 0) -> KernelSpec:
    """Bandwidth from the median pairwise distance: s = 1 / (2 * median^2).

    Uses all n(n-1)/2 pairs when they fit within `max_pairs`, otherwise a
    seeded sample of that many distinct-index pairs. Identical points (median
    zero) fall back to s = 1 with a DegenerateDataWarning.
    """
    X = as_matrix(X, "bandwidth input")
    n = X.shape[0]
    if n < 2:
        raise DataError("median bandwidth needs at least two rows")
    if not isinstance(max_pairs, (int, np.integer)) or max_pairs < 1:
        raise ArgumentError(f"max_pairs must be a positive integer, got {max_pairs!r}")

    total = n * (n - 1) // 2
    if total <= max_pairs:
        d2 = _backend.sq_dists(X, X)
        iu = np.triu_indices(n, k=1)
        dists = np.sqrt(d2[iu])
    else:
        rng = np.random.default_rng(seed)
        i = rng.integers(0, n, size=max_pairs)
        j = rng.integers(0, n - 1, size=max_pairs)
        j = j + (j >= i)  # uniform over ordered pairs with i != j
        diff = X[i] - X[j]
        dists = np.sqrt(np.einsum("ij,ij->i", diff, diff))

    med = float(np.median(dists))
    if med == 0.0:
        warnings.warn("all sampled pairwise distances are zero; using s = 1", DegenerateDataWarning)
        return KernelSpec(s=1.0)
    return KernelSpec(s=1.0 / (2.0 * med * med))


def sample_fourier(
    d: int,
    m: int,
    spec: KernelSpec,
    seed: int,
    scale_convention: str = "unbiased",
) -> FeatureMap:
    """Sample a random Fourier map: rows w_i ~ N(0, 2s I), offsets b_i ~ U[0, 2pi)."""
    if not isinstance(d, (int, np.integer)) or d < 1:
        raise ArgumentError(f"input dimension must be a positive integer, got {d!r}")
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise ArgumentError(f"feature count must be a positive integer, got {m!r}")
    if not isinstance(spec, KernelSpec):
        raise ArgumentError("spec must be a KernelSpec")
    rng = np.random.default_rng(seed)
    weights = rng.normal(0.0, np.sqrt(2.0 * spec.s), size=(int(m), int(d)))
    offsets = rng.uniform(0.0, 2.0 * np.pi, size=int(m))
    return FeatureMap(
        kind="fourier",
        input_dim=int(d),
        output_dim=int(m),
        spec=spec,
        scale_convention=scale_convention,
        weights=_frozen(weights),
        offsets=_frozen(offsets),
    )


def sample_nystrom(X, m: int, spec: KernelSpec, seed: int, floor: float = 1e-12) -> FeatureMap:
    """Sample m landmark rows without replacement and whiten by K_mm^{-1/2}.

    With m equal to the number of rows the induced Gram reproduces the exact
    kernel matrix (up to the eigenvalue floor).
    """
    X = as_matrix(X, "nystrom input")
    n, d = X.shape
    if not isinstance(m, (int, np.integer)) or m < 1 or m > n:
        raise ArgumentError(f"landmark count must be an integer in [1, {n}], got {m!r}")
    if not isinstance(spec, KernelSpec):
        raise ArgumentError("spec must be a KernelSpec")
    rng = np.random.default_rng(seed)
    idx = rng.choice(n, size=int(m), replace=False)
    landmarks = X[idx]
    K_mm = _backend.gaussian_gram_sym(landmarks, spec.s)
    whitener = spd_inverse_sqrt(K_mm, floor)
    return FeatureMap(
        kind="nystrom",
        input_dim=int(d),
        output_dim=int(m),
        spec=spec,
        landmarks=_frozen(landmarks),
        whitener=_frozen(whitener),
    )


def featurize(fmap: FeatureMap, X) -> np.ndarray:
    """Apply a feature map row-wise; output has shape (rows, fmap.output_dim)."""
    if not isinstance(fmap, FeatureMap):
        raise ArgumentError("fmap must be a FeatureMap")
    X = as_matrix(X, "featurize input")
    if X.shape[1] != fmap.input_dim:
        raise DataError(f"featurize input has {X.shape[1]} columns, map expects {fmap.input_dim}")
    if fmap.kind == "identity":
        return X.copy()
    if fmap.kind == "fourier":
        proj = X @ fmap.weights.T
        proj += fmap.offsets
        np.cos(proj, out=proj)
        if fmap.scale_convention == "unbiased":
            proj *= np.sqrt(2.0 / fmap.output_dim)
        else:
            proj *= np.sqrt(1.0 / fmap.output_dim)
        return proj
    k_nm = _backend.gaussian_gram(X, fmap.landmarks, fmap.spec.s)
    return k_nm @ fmap.whitener


def gram_exact(X, spec: KernelSpec) -> np.ndarray:
    """Exact Gaussian Gram matrix of one sample set (symmetric, unit diagonal)."""
    X = as_matrix(X, "gram input")
    if not isinstance(spec, KernelSpec):
        raise ArgumentError("spec must be a KernelSpec")
    return _backend.gaussian_gram_sym(X, spec.s)
