"""Pure-numpy implementations of the hot kernels.

Used whenever the compiled extension is unavailable (or disabled through
RNCA_PURE_PYTHON). Must stay semantically interchangeable with
rnca._ckernels; the two are only required to agree to floating-point
round-off, not bitwise.
"""

import numpy as np


def sq_dists(X, Y):
    """Pairwise squared Euclidean distances, shape (rows(X), rows(Y))."""
    x2 = np.einsum("ij,ij->i", X, X)
    y2 = np.einsum("ij,ij->i", Y, Y)
    d2 = x2[:, None] + y2[None, :] - 2.0 * (X @ Y.T)
    # The expanded form can go slightly negative for near-coincident points.
    np.maximum(d2, 0.0, out=d2)
    return d2


def gaussian_gram(X, Y, s):
    """Cross Gram matrix exp(-s * ||x - y||^2)."""
    d2 = sq_dists(X, Y)
    d2 *= -s
    np.exp(d2, out=d2)
    return d2


def gaussian_gram_sym(X, s):
    """Symmetric Gram matrix of one sample set, exact unit diagonal."""
    d2 = sq_dists(X, X)
    d2 = 0.5 * (d2 + d2.T)
    np.fill_diagonal(d2, 0.0)
    d2 *= -s
    np.exp(d2, out=d2)
    return d2


def kmeans_assign(X, centers):
    """Nearest-center labels (first index wins ties) and the summed objective."""
    d2 = sq_dists(X, centers)
    labels = np.argmin(d2, axis=1)
    objective = float(d2[np.arange(X.shape[0]), labels].sum())
    return labels.astype(np.intp), objective
