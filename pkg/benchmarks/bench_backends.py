"""Timing comparison of the compiled kernel core against the numpy fallback.

Runs each hot kernel on both implementations, checks that they agree to
floating-point round-off, and prints a small table of best-of-N wall times.

    python3 benchmarks/bench_backends.py [--n 2000] [--dims 10] [--repeats 5]
"""

import argparse
import time

import numpy as np

from rnca import _pykernels

try:
    from rnca import _ckernels
except ImportError:
    _ckernels = None


def best_time(fn, repeats):
    results = []
    for _ in range(repeats):
        start = time.perf_counter()
        fn()
        results.append(time.perf_counter() - start)
    return min(results)


def main():
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--n", type=int, default=2000, help="rows for the Gram benchmarks")
    parser.add_argument("--dims", type=int, default=10)
    parser.add_argument("--kmeans-n", type=int, default=20000)
    parser.add_argument("--kmeans-k", type=int, default=50)
    parser.add_argument("--repeats", type=int, default=5)
    args = parser.parse_args()

    rng = np.random.default_rng(0)
    X = np.ascontiguousarray(rng.standard_normal((args.n, args.dims)))
    Y = np.ascontiguousarray(rng.standard_normal((args.n // 2, args.dims)))
    P = np.ascontiguousarray(rng.standard_normal((args.kmeans_n, args.dims)))
    centers = np.ascontiguousarray(P[: args.kmeans_k].copy())

    cases = [
        ("sq_dists", f"({args.n}x{args.dims}) x ({args.n // 2}x{args.dims})",
         lambda impl: impl.sq_dists(X, Y)),
        ("gaussian_gram", f"({args.n}x{args.dims}) x ({args.n // 2}x{args.dims})",
         lambda impl: impl.gaussian_gram(X, Y, 0.5)),
        ("gaussian_gram_sym", f"({args.n}x{args.dims})",
         lambda impl: impl.gaussian_gram_sym(X, 0.5)),
        ("kmeans_assign", f"({args.kmeans_n}x{args.dims}), k={args.kmeans_k}",
         lambda impl: impl.kmeans_assign(P, centers)),
    ]

    if _ckernels is None:
        print("compiled extension not built; timing the numpy fallback only\n")
    header = f"{'kernel':<20} {'shape':<28} {'python ms':>10} {'compiled ms':>12} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, shape, call in cases:
        py_ms = best_time(lambda: call(_pykernels), args.repeats) * 1e3
        if _ckernels is None:
            print(f"{name:<20} {shape:<28} {py_ms:>10.2f} {'-':>12} {'-':>8}")
            continue
        c_ms = best_time(lambda: call(_ckernels), args.repeats) * 1e3
        a, b = call(_pykernels), call(_ckernels)
        if name == "kmeans_assign":
            agree = np.array_equal(np.asarray(a[0]), np.asarray(b[0]))
            drift = abs(a[1] - b[1]) / max(abs(a[1]), 1.0)
        else:
            agree = True
            drift = float(np.max(np.abs(np.asarray(a) - np.asarray(b))))
        if not agree or drift > 1e-8:
            raise SystemExit(f"{name}: backends disagree (drift {drift:.3e})")
        print(f"{name:<20} {shape:<28} {py_ms:>10.2f} {c_ms:>12.2f} {py_ms / c_ms:>7.1f}x")
    print("\nbackends agree on every kernel (max drift <= 1e-8)")


if __name__ == "__main__":
    main()
