"""Validation lab for the kernel-approximation error bounds.

Contains exact KPCA/KCCA oracles (capped in size), the closed-form expectation
bounds on the operator-norm error of random-feature Gram approximations, the
Monte-Carlo measurement of those errors, and parameter sweeps that pair each
empirical mean with its bound.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import ArgumentError, CapacityError, DataError
from .features import CONVENTIONS, KernelSpec, featurize, gram_exact, median_bandwidth, sample_fourier, sample_nystrom
from .linalg import EigenResult, as_matrix, operator_norm, sym_eig

DEFAULT_ORACLE_CAP = 2000
BOUND_VARIANTS = ("paper", "corrected")
ERROR_KINDS = ("pca", "cca")


def oracle_cap(override: int | None = None) -> int:
    """Size cap for exact-oracle computations; RNCA_ORACLE_CAP overrides the default."""
    if override is not None:
        if not isinstance(override, (int, np.integer)) or override < 1:
            raise ArgumentError(f"oracle cap must be a positive integer, got {override!r}")
        return int(override)
    raw = os.environ.get("RNCA_ORACLE_CAP")
    if raw is None or raw.strip() == "":
        return DEFAULT_ORACLE_CAP
    try:
        value = int(raw)
    except ValueError:
        raise ArgumentError(f"RNCA_ORACLE_CAP must be an integer, got {raw!r}") from None
    if value < 1:
        raise ArgumentError(f"RNCA_ORACLE_CAP must be positive, got {value}")
    return value


def _require_cap(size: int, cap: int | None, what: str) -> None:
    limit = oracle_cap(cap)
    if size > limit:
        raise CapacityError(
            f"{what} needs size {size} but the exact-oracle cap is {limit} "
            f"(override with RNCA_ORACLE_CAP or the cap argument)"
        )


def kpca_exact(X, spec: KernelSpec, r: int, cap: int | None = None) -> EigenResult:
    """Top-r eigenpairs of the doubly centered exact Gram matrix H K H."""
    X = as_matrix(X, "kpca input")
    n = X.shape[0]
    _require_cap(n, cap, "kpca_exact")
    K = gram_exact(X, spec)
    row_means = K.mean(axis=1, keepdims=True)
    grand = K.mean()
    Kc = K - row_means - row_means.T + grand
    return sym_eig(Kc, r)


def kcca_exact(X, Y, spec_x: KernelSpec, spec_y: KernelSpec, gamma_x: float, gamma_y: float, r: int, cap: int | None = None) -> np.ndarray:
    """Top-r exact kernel canonical correlations.

    Computed from the symmetric pencil: with S = (K+gamma I)^{-1/2} K
    (K+gamma I)^{-1/2} per view, the squared correlations are the eigenvalues
    of Sx^{1/2} Sy Sx^{1/2}, the nonnegative spectrum of the underlying
    block generalized eigenproblem.
    """
    X = as_matrix(X, "kcca X")
    Y = as_matrix(Y, "kcca Y")
    if X.shape[0] != Y.shape[0]:
        raise DataError(f"row pairing mismatch: X has {X.shape[0]} rows, Y has {Y.shape[0]}")
    n = X.shape[0]
    # the underlying generalized problem is 2n x 2n, so the cap applies to 2n
    _require_cap(2 * n, cap, "kcca_exact")
    for g, name in ((gamma_x, "gamma_x"), (gamma_y, "gamma_y")):
        if not (isinstance(g, (int, float, np.floating)) and np.isfinite(g) and g > 0):
            raise ArgumentError(f"{name} must be a finite positive real, got {g!r}")
    if not isinstance(r, (int, np.integer)) or r < 1 or r > n:
        raise ArgumentError(f"r must be an integer in [1, {n}], got {r!r}")

    def normalized_kernel(K, gamma):
        w, v = scipy.linalg.eigh(K)
        w = np.maximum(w, 0.0)
        scale = w / (w + gamma)
        return (v * scale) @ v.T

    Sx = normalized_kernel(gram_exact(X, spec_x), float(gamma_x))
    Sy = normalized_kernel(gram_exact(Y, spec_y), float(gamma_y))
    wx, vx = scipy.linalg.eigh(Sx)
    root = (vx * np.sqrt(np.maximum(wx, 0.0))) @ vx.T
    T = root @ Sy @ root
    vals = sym_eig(0.5 * (T + T.T), int(r)).values
    return np.sqrt(np.clip(vals, 0.0, 1.0))


def bound_value(kind: str, n: int, m: int, gamma: float | None = None, variant: str = "paper") -> float:
    """Closed-form expectation bound on the operator-norm approximation error.

    pca/paper: sqrt(3 n^2 ln n / m) + 2 n ln n / m. cca uses ln 2n and a 1/gamma
    factor. The corrected variant doubles the feature-norm-dependent constants
    (6 n^2 under the root, 4 n linear) to cover the unbiased feature scaling.
    Natural logarithms throughout.
    """
    if kind not in ERROR_KINDS:
        raise ArgumentError(f"kind must be one of {ERROR_KINDS}, got {kind!r}")
    if variant not in BOUND_VARIANTS:
        raise ArgumentError(f"variant must be one of {BOUND_VARIANTS}, got {variant!r}")
    if not isinstance(n, (int, np.integer)) or n < 2:
        raise ArgumentError(f"n must be an integer >= 2, got {n!r}")
    if not isinstance(m, (int, np.integer)) or m < 1:
        raise ArgumentError(f"m must be an integer >= 1, got {m!r}")

    if kind == "pca":
        log_term = np.log(n)
        scale = 1.0
    else:
        if not (isinstance(gamma, (int, float, np.floating)) and np.isfinite(gamma) and gamma > 0):
            raise ArgumentError(f"cca bound needs gamma > 0, got {gamma!r}")
        log_term = np.log(2 * n)
        scale = 1.0 / float(gamma)

    if variant == "paper":
        quad, lin = 3.0, 2.0
    else:
        quad, lin = 6.0, 4.0
    value = np.sqrt(quad * n * n * log_term / m) + lin * n * log_term / m
    return float(scale * value)


def _trial_seeds(seed: int, trial: int) -> tuple[int, int]:
    state = np.random.SeedSequence(seed + trial).generate_state(2)
    return int(state[0]), int(state[1])


def empirical_error(
    kind: str,
    X,
    spec: KernelSpec,
    m: int,
    gamma: float | None = None,
    trials: int = 25,
    seed: int = 0,
    *,
    Y=None,
    spec_y: KernelSpec | None = None,
    convention: str = "unbiased",
    feature_kind: str = "fourier",
    norm_tol: float = 1e-6,
    threads: int = 1,
    cap: int | None = None,
) -> tuple[float, float]:
    """Monte-Carlo operator-norm error of the random-feature approximation.

    pca: mean over trials of ||Z Z^T - K||. cca: builds the exact and
    approximate 2n x 2n block matrices (block-diagonal regularized inverses
    times the off-diagonal kernel blocks) and averages the operator norm of
    their difference. Per-trial seeds are derived as seed + trial index, so
    results do not depend on execution order or thread count.
    """
    if kind not in ERROR_KINDS:
        raise ArgumentError(f"kind must be one of {ERROR_KINDS}, got {kind!r}")
    if convention not in CONVENTIONS:
        raise ArgumentError(f"convention must be one of {CONVENTIONS}, got {convention!r}")
    if feature_kind not in ("fourier", "nystrom"):
        raise ArgumentError(f"feature_kind must be fourier or nystrom, got {feature_kind!r}")
    if not isinstance(trials, (int, np.integer)) or trials < 1:
        raise ArgumentError(f"trials must be a positive integer, got {trials!r}")
    if not isinstance(threads, (int, np.integer)) or threads < 1:
        raise ArgumentError(f"threads must be a positive integer, got {threads!r}")
    X = as_matrix(X, "empirical_error X")
    n, d = X.shape

    if kind == "pca":
        _require_cap(n, cap, "empirical_error(pca)")
        K = gram_exact(X, spec)

        def one_trial(t: int) -> float:
            if feature_kind == "fourier":
                fmap = sample_fourier(d, m, spec, seed + t, scale_convention=convention)
            else:
                fmap = sample_nystrom(X, m, spec, seed + t)
            Z = featurize(fmap, X)
            return operator_norm(Z @ Z.T - K, norm_tol)

    else:
        if Y is None or spec_y is None:
            raise ArgumentError("cca empirical error needs Y and spec_y")
        if not (isinstance(gamma, (int, float, np.floating)) and np.isfinite(gamma) and gamma > 0):
            raise ArgumentError(f"cca empirical error needs gamma > 0, got {gamma!r}")
        Y = as_matrix(Y, "empirical_error Y")
        if Y.shape[0] != n:
            raise DataError(f"row pairing mismatch: X has {n} rows, Y has {Y.shape[0]}")
        _require_cap(2 * n, cap, "empirical_error(cca)")
        g = float(gamma)
        Kx = gram_exact(X, spec)
        Ky = gram_exact(Y, spec_y)
        eye = np.eye(n)
        AKy = scipy.linalg.solve(Kx + g * eye, Ky, assume_a="pos")
        BKx = scipy.linalg.solve(Ky + g * eye, Kx, assume_a="pos")

        def one_trial(t: int) -> float:
            sx, sy = _trial_seeds(seed, t)
            if feature_kind == "fourier":
                map_x = sample_fourier(d, m, spec, sx, scale_convention=convention)
                map_y = sample_fourier(Y.shape[1], m, spec_y, sy, scale_convention=convention)
            else:
                map_x = sample_nystrom(X, m, spec, sx)
                map_y = sample_nystrom(Y, m, spec_y, sy)
            Zx = featurize(map_x, X)
            Zy = featurize(map_y, Y)
            Kx_hat = Zx @ Zx.T
            Ky_hat = Zy @ Zy.T
            delta = np.zeros((2 * n, 2 * n))
            delta[:n, n:] = scipy.linalg.solve(Kx_hat + g * eye, Ky_hat, assume_a="pos") - AKy
            delta[n:, :n] = scipy.linalg.solve(Ky_hat + g * eye, Kx_hat, assume_a="pos") - BKx
            return operator_norm(delta, norm_tol)

    if threads == 1:
        errors = [one_trial(t) for t in range(int(trials))]
    else:
        with ThreadPoolExecutor(max_workers=int(threads)) as pool:
            errors = list(pool.map(one_trial, range(int(trials))))
    errors = np.asarray(errors, dtype=float)
    std = float(errors.std(ddof=1)) if trials > 1 else 0.0
    return float(errors.mean()), std


@dataclass(frozen=True)
class SweepConfig:
    """One bound-validation sweep: vary one parameter, hold the others at base values.

    `kind` selects the error protocol ("pca" or "cca"); gamma only enters the
    cca protocol and bound.
    """

    varying: str
    grid: tuple
    kind: str = "pca"
    base_n: int = 1000
    base_m: int = 1000
    base_gamma: float = 1e-3
    dims: int = 10
    trials: int = 25
    seed: int = 0
    convention: str = "unbiased"
    bound_variant: str = "paper"

    def __post_init__(self):
        if self.varying not in ("n", "m", "gamma"):
            raise ArgumentError(f"varying must be n, m, or gamma, got {self.varying!r}")
        if self.kind not in ERROR_KINDS:
            raise ArgumentError(f"kind must be one of {ERROR_KINDS}, got {self.kind!r}")
        grid = tuple(float(v) for v in self.grid)
        if len(grid) == 0:
            raise ArgumentError("grid must be non-empty")
        if any(b <= a for a, b in zip(grid, grid[1:])):
            raise ArgumentError("grid must be strictly increasing")
        if self.varying in ("n", "m") and any(v != int(v) or v < 1 for v in grid):
            raise ArgumentError(f"{self.varying} grid values must be positive integers")
        if self.varying == "gamma" and any(v <= 0 for v in grid):
            raise ArgumentError("gamma grid values must be positive")
        object.__setattr__(self, "grid", grid)
        if not isinstance(self.trials, (int, np.integer)) or self.trials < 1:
            raise ArgumentError(f"trials must be a positive integer, got {self.trials!r}")
        if self.convention not in CONVENTIONS:
            raise ArgumentError(f"convention must be one of {CONVENTIONS}, got {self.convention!r}")
        if self.bound_variant not in BOUND_VARIANTS:
            raise ArgumentError(f"bound_variant must be one of {BOUND_VARIANTS}, got {self.bound_variant!r}")


@dataclass(frozen=True)
class SweepRecord:
    """One grid point: empirical mean/stddev of the error norm plus its bound."""

    param_value: float
    empirical_mean_error: float
    empirical_stddev: float
    bound_value: float


def run_sweep(config: SweepConfig, cap: int | None = None, threads: int = 1) -> list[SweepRecord]:
    """Run the configured sweep; one record per grid value, in grid order.

    Data is regenerated per grid value as i.i.d. standard normal rows with
    sub-seeds derived from (config.seed, grid index), and bandwidths follow
    the median heuristic on each generated set.
    """
    records = []
    for index, value in enumerate(config.grid):
        n = int(value) if config.varying == "n" else config.base_n
        m = int(value) if config.varying == "m" else config.base_m
        gamma = float(value) if config.varying == "gamma" else config.base_gamma
        state = np.random.SeedSequence([int(config.seed), index]).generate_state(5)
        X = np.random.default_rng(int(state[0])).standard_normal((n, config.dims))
        spec_x = median_bandwidth(X, max_pairs=10_000, seed=int(state[2]))
        if config.kind == "pca":
            mean, std = empirical_error(
                "pca", X, spec_x, m,
                trials=config.trials, seed=int(state[4]),
                convention=config.convention, threads=threads, cap=cap,
            )
        else:
            Y = np.random.default_rng(int(state[1])).standard_normal((n, config.dims))
            spec_y = median_bandwidth(Y, max_pairs=10_000, seed=int(state[3]))
            mean, std = empirical_error(
                "cca", X, spec_x, m, gamma,
                trials=config.trials, seed=int(state[4]),
                Y=Y, spec_y=spec_y,
                convention=config.convention, threads=threads, cap=cap,
            )
        records.append(
            SweepRecord(
                param_value=float(value),
                empirical_mean_error=mean,
                empirical_stddev=std,
                bound_value=bound_value(config.kind, n, m, gamma, config.bound_variant),
            )
        )
    return records


def loglog_slope(records: list[SweepRecord]) -> float:
    """Least-squares slope of log(mean error) against log(parameter value)."""
    if len(records) < 2:
        raise ArgumentError("slope needs at least two records")
    x = np.array([r.param_value for r in records])
    y = np.array([r.empirical_mean_error for r in records])
    if np.any(x <= 0) or np.any(y <= 0):
        raise ArgumentError("slope needs positive parameters and errors")
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def write_sweep_csv(records: list[SweepRecord], stream) -> None:
    """Write records as `param,mean_error,stddev,bound` rows with 17-digit rendering."""
    stream.write("param,mean_error,stddev,bound\n")
    for r in records:
        row = (r.param_value, r.empirical_mean_error, r.empirical_stddev, r.bound_value)
        stream.write(",".join(format(v, ".17g") for v in row) + "\n")
