"""Shared test helpers: clustering score, synthetic datasets, small oracles."""

import numpy as np


def ari(a, b) -> float:
    """Adjusted Rand index between two integer labelings."""
    a = np.asarray(a, dtype=int)
    b = np.asarray(b, dtype=int)
    C = np.zeros((a.max() + 1, b.max() + 1))
    for i in range(len(a)):
        C[a[i], b[i]] += 1

    def choose2(x):
        return x * (x - 1) / 2.0

    sum_ij = choose2(C).sum()
    sum_a = choose2(C.sum(axis=1)).sum()
    sum_b = choose2(C.sum(axis=0)).sum()
    total = choose2(float(len(a)))
    expected = sum_a * sum_b / total
    return float((sum_ij - expected) / (0.5 * (sum_a + sum_b) - expected))


def make_rings(n, seed, r1=1.0, r2=3.0, noise=0.08):
    """Two concentric noisy rings with balanced labels."""
    rng = np.random.default_rng(seed)
    half = n // 2
    th1 = rng.uniform(0, 2 * np.pi, half)
    th2 = rng.uniform(0, 2 * np.pi, n - half)
    inner = np.column_stack([r1 * np.cos(th1), r1 * np.sin(th1)]) + noise * rng.standard_normal((half, 2))
    outer = np.column_stack([r2 * np.cos(th2), r2 * np.sin(th2)]) + noise * rng.standard_normal((n - half, 2))
    X = np.vstack([inner, outer])
    truth = np.concatenate([np.zeros(half, dtype=int), np.ones(n - half, dtype=int)])
    return X, truth


def make_blobs(counts, centers, seed, scale=1.0):
    rng = np.random.default_rng(seed)
    parts = []
    labels = []
    for idx, (count, center) in enumerate(zip(counts, centers)):
        parts.append(scale * rng.standard_normal((count, len(center))) + np.asarray(center, dtype=float))
        labels.append(np.full(count, idx, dtype=int))
    return np.vstack(parts), np.concatenate(labels)


def make_manifold(n, seed, latent=20, ambient=30, decay=0.9, amp=0.2):
    """Points near a smooth low-dimensional manifold with decaying latent scales."""
    rng = np.random.default_rng(seed)
    scales = decay ** np.arange(latent)
    T = rng.standard_normal((n, latent)) * scales
    W1 = np.random.default_rng(777).standard_normal((latent, ambient)) / np.sqrt(latent)
    W2 = np.random.default_rng(778).standard_normal((latent, ambient)) / np.sqrt(latent)
    return T @ W1 + amp * np.sin(T @ W2)


def grid_cca_oracle(X, Y, levels=3, points=360):
    """Best absolute correlation between 1-D projections of two 2-D views.

    Exhaustive angle grid with local refinement; independent of any library
    CCA code path.
    """
    Xc = X - X.mean(axis=0)
    Yc = Y - Y.mean(axis=0)
    n = len(X)

    def scan(t_lo, t_hi, p_lo, p_hi):
        th = np.linspace(t_lo, t_hi, points)
        ph = np.linspace(p_lo, p_hi, points)
        A = np.stack([np.cos(th), np.sin(th)])
        B = np.stack([np.cos(ph), np.sin(ph)])
        U = Xc @ A
        V = Yc @ B
        su = U.std(axis=0, ddof=1)
        sv = V.std(axis=0, ddof=1)
        R = np.abs((U.T @ V) / (n - 1) / np.outer(su, sv))
        i, j = np.unravel_index(np.argmax(R), R.shape)
        return R[i, j], th[i], ph[j], (t_hi - t_lo) / (points - 1)

    t_lo, t_hi, p_lo, p_hi = 0.0, np.pi, 0.0, np.pi
    best = 0.0
    for _ in range(levels):
        best, tb, pb, step = scan(t_lo, t_hi, p_lo, p_hi)
        t_lo, t_hi = tb - 2 * step, tb + 2 * step
        p_lo, p_hi = pb - 2 * step, pb + 2 * step
    return float(best)
