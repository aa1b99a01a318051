"""Selects the compiled kernel core at import time.

Preference order: rnca._ckernels (Cython) when importable, else the numpy
fallbacks in rnca._pykernels. Setting RNCA_PURE_PYTHON=1 forces the
fallback, which keeps the two paths comparable in tests and benchmarks.
"""

import os

import numpy as np

from . import _pykernels

if os.environ.get("RNCA_PURE_PYTHON", "").strip() not in ("", "0"):
    _impl = _pykernels
else:
    try:
        from . import _ckernels as _impl  # type: ignore[no-redef]
    except ImportError:
        _impl = _pykernels


def backend_name() -> str:
    return "python" if _impl is _pykernels else "compiled"


def _c(a):
    return np.ascontiguousarray(a, dtype=np.float64)


def sq_dists(X, Y):
    return _impl.sq_dists(_c(X), _c(Y))


def gaussian_gram(X, Y, s):
    return _impl.gaussian_gram(_c(X), _c(Y), float(s))


def gaussian_gram_sym(X, s):
    return _impl.gaussian_gram_sym(_c(X), float(s))


def kmeans_assign(X, centers):
    return _impl.kmeans_assign(_c(X), _c(centers))
