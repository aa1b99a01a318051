"""Dense numeric primitives: symmetric eigensolves, SPD inverse square roots,
operator-norm estimation by power iteration, and seeded k-means.

Everything here is deterministic given its arguments; k-means and the power
iteration restarts draw only from generators seeded inside the call.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
import scipy.linalg
import scipy.sparse.linalg

from .errors import ArgumentError, DataError, NumericError

# Above this dimension, small-r eigenproblems go through the iterative solver.
DENSE_EIG_CUTOFF = 2048

# Iterative eigensolves only pay off for a thin slice of the spectrum.
_ITERATIVE_MAX_RANK = 32


def as_matrix(a, name: str = "matrix") -> np.ndarray:
    """Validate and return `a` as a 2-D float64 array with finite entries."""
    arr = np.asarray(a, dtype=np.float64)
    if arr.ndim == 1:
        arr = arr.reshape(-1, 1)
    if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
        raise DataError(f"{name} must be 2-D with at least one row and one column")
    if not np.all(np.isfinite(arr)):
        raise NumericError(f"{name} contains non-finite entries")
    return arr


def _check_square_symmetric(A: np.ndarray, name: str, rtol: float = 1e-10) -> np.ndarray:
    if A.shape[0] != A.shape[1]:
        raise DataError(f"{name} must be square, got shape {A.shape}")
    scale = float(np.max(np.abs(A)))
    if scale > 0.0:
        asym = float(np.max(np.abs(A - A.T)))
        if asym > rtol * scale:
            raise DataError(f"{name} is not symmetric (relative asymmetry {asym / scale:.3e})")
    # Work on the exactly symmetric part so LAPACK sees a clean input.
    return 0.5 * (A + A.T)


@dataclass(frozen=True)
class EigenResult:
    """Top eigenpairs of a symmetric matrix: `values` descending, `vectors` in columns."""

    values: np.ndarray
    vectors: np.ndarray


def sym_eig(A, r: int, dense_cutoff: int = DENSE_EIG_CUTOFF) -> EigenResult:
    """Top-r eigenpairs of a symmetric matrix, ordered by descending eigenvalue.

    Uses a full dense decomposition for dimensions up to `dense_cutoff` and a
    Lanczos solve (fixed start vector, hence deterministic) above it when r is
    small; large r above the cutoff falls back to the dense path.
    """
    A = as_matrix(A, "sym_eig input")
    A = _check_square_symmetric(A, "sym_eig input")
    n = A.shape[0]
    if not isinstance(r, (int, np.integer)) or r < 1 or r > n:
        raise ArgumentError(f"r must be an integer in [1, {n}], got {r!r}")

    if n <= dense_cutoff or r > min(_ITERATIVE_MAX_RANK, n - 2):
        w, v = scipy.linalg.eigh(A)
        values = w[::-1][:r].copy()
        vectors = v[:, ::-1][:, :r].copy()
    else:
        v0 = np.full(n, 1.0 / np.sqrt(n))
        w, v = scipy.sparse.linalg.eigsh(A, k=r, which="LA", v0=v0)
        order = np.argsort(w)[::-1]
        values = w[order]
        vectors = v[:, order]
    return EigenResult(values=values, vectors=vectors)


def spd_inverse_sqrt(A, floor: float) -> np.ndarray:
    """Inverse square root of a symmetric PSD matrix with eigenvalue flooring.

    Eigenvalues below `floor` are raised to `floor` before inversion, which
    keeps rank-deficient inputs (duplicate landmarks, tiny regularizers)
    usable at the cost of a bounded bias.
    """
    A = as_matrix(A, "spd_inverse_sqrt input")
    A = _check_square_symmetric(A, "spd_inverse_sqrt input")
    if not (isinstance(floor, (int, float, np.floating)) and float(floor) > 0.0):
        raise ArgumentError(f"floor must be a positive real, got {floor!r}")
    w, v = scipy.linalg.eigh(A)
    w = np.maximum(w, float(floor))
    B = (v / np.sqrt(w)) @ v.T
    return 0.5 * (B + B.T)


def operator_norm(A, tol: float = 1e-9, max_iters: int = 10000) -> float:
    """Largest singular value via power iteration on A^T A.

    Deterministic: starts from the normalized all-ones vector and only falls
    back to a fixed-seed random restart if that start lies in the null space.
    Convergence is declared when the estimate's relative change drops below
    `tol`.
    """
    A = as_matrix(A, "operator_norm input")
    if not (isinstance(tol, (int, float, np.floating)) and float(tol) > 0.0):
        raise ArgumentError(f"tol must be a positive real, got {tol!r}")
    n, m = A.shape
    if not np.any(A):
        return 0.0

    v = np.full(m, 1.0 / np.sqrt(m))
    rng = np.random.default_rng(0)
    estimate = 0.0
    restarts = 0
    it = 0
    while it < max_iters:
        w = A @ v
        sw = float(np.linalg.norm(w))
        if sw == 0.0:
            if restarts >= 3:
                return 0.0
            v = rng.standard_normal(m)
            v /= np.linalg.norm(v)
            restarts += 1
            continue
        u = w / sw
        v = A.T @ u
        new_estimate = float(np.linalg.norm(v))
        if new_estimate == 0.0:
            return sw
        v /= new_estimate
        it += 1
        if it >= 3 and abs(new_estimate - estimate) <= tol * new_estimate:
            return new_estimate
        estimate = new_estimate
    return estimate


def _plusplus_init(P: np.ndarray, k: int, rng: np.random.Generator) -> np.ndarray:
    from . import _backend

    n = P.shape[0]
    centers = np.empty((k, P.shape[1]), dtype=np.float64)
    first = int(rng.integers(n))
    centers[0] = P[first]
    d2 = _backend.sq_dists(P, centers[:1]).ravel()
    for j in range(1, k):
        total = float(d2.sum())
        if total <= 0.0:
            idx = int(rng.integers(n))
        else:
            idx = int(rng.choice(n, p=d2 / total))
        centers[j] = P[idx]
        d2 = np.minimum(d2, _backend.sq_dists(P, centers[j : j + 1]).ravel())
    return centers


def kmeans(points, k: int, seed: int, max_iters: int = 300) -> np.ndarray:
    """Seeded k-means (k-means++ init, Lloyd updates); returns integer labels.

    Bitwise deterministic for fixed (points, k, seed, max_iters). Empty
    clusters are re-seeded at the point farthest from its current center.
    """
    from . import _backend

    P = as_matrix(points, "kmeans points")
    n = P.shape[0]
    if not isinstance(k, (int, np.integer)) or k < 1 or k > n:
        raise ArgumentError(f"k must be an integer in [1, {n}], got {k!r}")
    if not isinstance(max_iters, (int, np.integer)) or max_iters < 1:
        raise ArgumentError(f"max_iters must be a positive integer, got {max_iters!r}")

    rng = np.random.default_rng(seed)
    centers = _plusplus_init(P, k, rng)
    labels = None
    for _ in range(max_iters):
        new_labels, _ = _backend.kmeans_assign(P, centers)
        if labels is not None and np.array_equal(new_labels, labels):
            break
        labels = new_labels
        dists = np.einsum("ij,ij->i", P - centers[labels], P - centers[labels])
        for j in range(k):
            mask = labels == j
            if np.any(mask):
                centers[j] = P[mask].mean(axis=0)
            else:
                far = int(np.argmax(dists))
                if dists[far] > 0.0:
                    centers[j] = P[far]
    return labels
