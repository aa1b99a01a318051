# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled hot kernels: pairwise distances, fused Gaussian Gram, k-means assignment."""

import numpy as np

cimport numpy as cnp
from libc.math cimport exp

cnp.import_array()


def sq_dists(const double[:, ::1] X, const double[:, ::1] Y):
    """Pairwise squared Euclidean distances, shape (rows(X), rows(Y))."""
    cdef Py_ssize_t n = X.shape[0], m = Y.shape[0], d = X.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double acc, diff
    out_arr = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    for i in range(n):
        for j in range(m):
            acc = 0.0
            for k in range(d):
                diff = X[i, k] - Y[j, k]
                acc += diff * diff
            out[i, j] = acc
    return out_arr


def gaussian_gram(const double[:, ::1] X, const double[:, ::1] Y, double s):
    """Cross Gram matrix exp(-s * ||x - y||^2), computed without temporaries."""
    cdef Py_ssize_t n = X.shape[0], m = Y.shape[0], d = X.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double acc, diff
    out_arr = np.empty((n, m), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    for i in range(n):
        for j in range(m):
            acc = 0.0
            for k in range(d):
                diff = X[i, k] - Y[j, k]
                acc += diff * diff
            out[i, j] = exp(-s * acc)
    return out_arr


def gaussian_gram_sym(const double[:, ::1] X, double s):
    """Symmetric Gram matrix of one sample set; exact unit diagonal by construction."""
    cdef Py_ssize_t n = X.shape[0], d = X.shape[1]
    cdef Py_ssize_t i, j, k
    cdef double acc, diff, v
    out_arr = np.empty((n, n), dtype=np.float64)
    cdef double[:, ::1] out = out_arr
    for i in range(n):
        out[i, i] = 1.0
        for j in range(i + 1, n):
            acc = 0.0
            for k in range(d):
                diff = X[i, k] - X[j, k]
                acc += diff * diff
            v = exp(-s * acc)
            out[i, j] = v
            out[j, i] = v
    return out_arr


def kmeans_assign(const double[:, ::1] X, const double[:, ::1] centers):
    """Nearest-center labels (first index wins ties) and the summed objective."""
    cdef Py_ssize_t n = X.shape[0], k = centers.shape[0], d = X.shape[1]
    cdef Py_ssize_t i, j, c, best
    cdef double acc, diff, bestval, objective = 0.0
    labels_arr = np.empty(n, dtype=np.intp)
    cdef Py_ssize_t[::1] labels = labels_arr
    for i in range(n):
        best = 0
        bestval = 0.0
        for j in range(k):
            acc = 0.0
            for c in range(d):
                diff = X[i, c] - centers[j, c]
                acc += diff * diff
            if j == 0 or acc < bestval:
                best = j
                bestval = acc
        labels[i] = best
        objective += bestval
    return labels_arr, objective
