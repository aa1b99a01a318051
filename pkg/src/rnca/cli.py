"""Command-line front end.

One command per process. Exit codes: 0 success, 2 argument error, 3 data or
file-format error, 4 numeric or capacity error. Every command honoring --seed
is deterministic down to output bytes, and --threads never changes results.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .apps import (
    AutoencoderModel,
    RidgeModel,
    LupiModel,
    autoencoder_fit,
    autoencoder_reconstruct,
    lupi_features,
    lupi_transform,
    reconstruction_mse,
    ridge_predict,
)
from .bounds import SweepConfig, loglog_slope, run_sweep, write_sweep_csv
from .errors import ArgumentError, DataError, NumericError
from .features import CONVENTIONS, KernelSpec, identity_map, median_bandwidth, sample_fourier, sample_nystrom
from .model_io import format_float, load_csv, load_labels, load_model, read_idx, save_csv, save_labels, save_model
from .models import (
    RccaModel,
    RpcaModel,
    rcca_fit,
    rcca_transform,
    rdc,
    rlda_fit,
    rpca_fit,
    rpca_transform,
    spectral_cluster,
    test_correlation_sum,
)

FEATURE_KINDS = ("fourier", "nystrom", "identity")


def _positive_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {value}")
    return value


def _seed_int(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer seed, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"seed must be non-negative, got {value}")
    return value


def _positive_float(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not np.isfinite(value) or value <= 0:
        raise argparse.ArgumentTypeError(f"expected a positive finite number, got {text!r}")
    return value


def _bandwidth_arg(text: str):
    if text == "median":
        return "median"
    return _positive_float(text)


def _grid_arg(text: str) -> tuple:
    try:
        values = tuple(float(tok) for tok in text.split(",") if tok != "")
    except ValueError:
        raise argparse.ArgumentTypeError(f"grid must be comma-separated numbers, got {text!r}") from None
    if not values:
        raise argparse.ArgumentTypeError("grid must not be empty")
    return values


def _add_map_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--features", choices=FEATURE_KINDS, default="fourier", help="feature map kind")
    p.add_argument("--m", type=_positive_int, default=None, help="feature count (required unless identity)")
    p.add_argument("--bandwidth", type=_bandwidth_arg, default="median",
                   help="'median' or an explicit positive kernel coefficient s")
    p.add_argument("--convention", choices=CONVENTIONS, default="unbiased", help="fourier scaling convention")


def _build_map(X: np.ndarray, args, bw_seed: int, map_seed: int):
    d = X.shape[1]
    if args.features == "identity":
        return identity_map(d)
    if args.m is None:
        raise ArgumentError("--m is required for fourier or nystrom features")
    if args.bandwidth == "median":
        spec = median_bandwidth(X, seed=bw_seed)
    else:
        spec = KernelSpec(s=float(args.bandwidth))
    if args.features == "fourier":
        return sample_fourier(d, args.m, spec, map_seed, scale_convention=args.convention)
    return sample_nystrom(X, args.m, spec, map_seed)


def _print_values(label: str, values) -> None:
    print(label + " = " + ",".join(format_float(v) for v in np.asarray(values).ravel()))


def _cmd_pca(args) -> int:
    X = load_csv(args.x)
    seeds = np.random.SeedSequence(args.seed).generate_state(2)
    fmap = _build_map(X, args, int(seeds[0]), int(seeds[1]))
    model = rpca_fit(X, fmap, args.r)
    _print_values("eigenvalues", model.eigenvalues)
    if args.model_out:
        save_model(model, args.model_out)
    if args.scores_out:
        save_csv(args.scores_out, rpca_transform(model, X))
    return 0


def _cmd_cca(args) -> int:
    X = load_csv(args.x)
    Y = load_csv(args.y)
    seeds = np.random.SeedSequence(args.seed).generate_state(4)
    map_x = _build_map(X, args, int(seeds[0]), int(seeds[2]))
    map_y = _build_map(Y, args, int(seeds[1]), int(seeds[3]))
    gamma_y = args.gamma if args.gamma_y is None else args.gamma_y
    model = rcca_fit(X, Y, map_x, map_y, args.gamma, gamma_y, args.r)
    _print_values("correlations", model.correlations)
    if (args.test_x is None) != (args.test_y is None):
        raise ArgumentError("--test-x and --test-y must be given together")
    if args.test_x is not None:
        top = args.top if args.top is not None else args.r
        value = test_correlation_sum(model, load_csv(args.test_x), load_csv(args.test_y), top)
        print("test_correlation_sum = " + format_float(value))
    if args.model_out:
        save_model(model, args.model_out)
    return 0


def _cmd_lda(args) -> int:
    X = load_csv(args.x)
    labels = load_labels(args.labels)
    seeds = np.random.SeedSequence(args.seed).generate_state(2)
    fmap = _build_map(X, args, int(seeds[0]), int(seeds[1]))
    model = rlda_fit(X, labels, fmap, args.gamma, args.r)
    _print_values("correlations", model.correlations)
    if args.model_out:
        save_model(model, args.model_out)
    if args.scores_out:
        scores, _ = rcca_transform(model, X=X)
        save_csv(args.scores_out, scores)
    return 0


def _cmd_rdc(args) -> int:
    X = load_csv(args.x)
    Y = load_csv(args.y)
    result = rdc(X, Y, m=args.m, gamma=args.gamma, seed=args.seed)
    print(format_float(result.value))
    return 0


def _cmd_cluster(args) -> int:
    X = load_csv(args.x)
    seeds = np.random.SeedSequence(args.seed).generate_state(3)
    fmap = _build_map(X, args, int(seeds[0]), int(seeds[1]))
    labels = spectral_cluster(X, args.k, fmap, seed=int(seeds[2]))
    save_labels(args.out, labels)
    return 0


def _cmd_bounds(args) -> int:
    config = SweepConfig(
        varying=args.vary,
        grid=args.grid,
        kind=args.kind,
        base_n=args.n,
        base_m=args.m,
        base_gamma=args.gamma,
        dims=args.dims,
        trials=args.trials,
        seed=args.seed,
        convention=args.convention,
        bound_variant=args.variant,
    )
    records = run_sweep(config, threads=args.threads)
    with open(args.out, "w", encoding="utf-8", newline="") as fh:
        write_sweep_csv(records, fh)
    if args.vary == "m" and len(records) >= 2:
        print("slope = " + format_float(loglog_slope(records)))
    return 0


def _cmd_autoencode(args) -> int:
    X = load_csv(args.x)
    model = autoencoder_fit(X, args.m, args.d, ridge=args.ridge, seed=args.seed)
    print("train_mse = " + format_float(reconstruction_mse(model, X)))
    if args.model_out:
        save_model(model, args.model_out)
    if args.recon_out:
        save_csv(args.recon_out, autoencoder_reconstruct(model, X))
    return 0


def _cmd_lupi(args) -> int:
    X = load_csv(args.x)
    Xs = load_csv(args.xstar)
    labels = load_labels(args.labels)
    model, features = lupi_features(
        X, Xs, labels, m=args.m, gamma=args.gamma, per_attr=args.per_attr, seed=args.seed
    )
    print(f"features = {features.shape[0]} x {features.shape[1]}")
    if args.model_out:
        save_model(model, args.model_out)
    if args.features_out:
        save_csv(args.features_out, features)
    return 0


def _cmd_transform(args) -> int:
    model = load_model(args.model)
    if isinstance(model, RccaModel):
        if args.x is None and args.y is None:
            raise ArgumentError("transform with a cca model needs --x and/or --y")
        X = load_csv(args.x) if args.x is not None else None
        Y = load_csv(args.y) if args.y is not None else None
        U, V = rcca_transform(model, X=X, Y=Y)
        if U is not None and V is not None and args.out_y is None:
            raise ArgumentError("transforming both views needs --out-y for the second view")
        if U is not None:
            save_csv(args.out, U)
        if V is not None:
            save_csv(args.out_y if U is not None else args.out, V)
        return 0
    if args.x is None:
        raise ArgumentError("transform needs --x")
    X = load_csv(args.x)
    if isinstance(model, RpcaModel):
        out = rpca_transform(model, X)
    elif isinstance(model, RidgeModel):
        out = ridge_predict(model, X)
    elif isinstance(model, AutoencoderModel):
        out = autoencoder_reconstruct(model, X)
    elif isinstance(model, LupiModel):
        out = lupi_transform(model, X)
    else:
        raise DataError(f"loaded model of unsupported type {type(model).__name__}")
    save_csv(args.out, out)
    return 0


def _cmd_convert_idx(args) -> int:
    if args.images is None and args.labels is None:
        raise ArgumentError("convert-idx needs --images and/or --labels")
    if args.images is not None:
        if args.out is None:
            raise ArgumentError("--out is required with --images")
        arr = read_idx(args.images)
        if arr.ndim < 2:
            raise DataError(f"{args.images}: image idx file must have at least 2 dimensions, got {arr.ndim}")
        M = arr.reshape(arr.shape[0], -1).astype(float)
        if args.scale:
            M = M / 255.0
        save_csv(args.out, M)
    if args.labels is not None:
        if args.labels_out is None:
            raise ArgumentError("--labels-out is required with --labels")
        arr = read_idx(args.labels)
        if arr.ndim != 1:
            raise DataError(f"{args.labels}: label idx file must be 1-dimensional, got {arr.ndim}")
        save_labels(args.labels_out, arr.astype(np.int64))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="rnca", description="Randomized nonlinear component analysis toolkit.")
    sub = parser.add_subparsers(dest="command", metavar="command")

    p = sub.add_parser("pca", help="fit PCA on random features")
    p.add_argument("--x", required=True, help="input CSV")
    p.add_argument("--r", type=_positive_int, default=2, help="number of components")
    _add_map_flags(p)
    p.add_argument("--seed", type=_seed_int, default=0)
    p.add_argument("--model-out", default=None)
    p.add_argument("--scores-out", default=None)
    p.set_defaults(handler=_cmd_pca)

    p = sub.add_parser("cca", help="fit CCA on random features of two views")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--r", type=_positive_int, default=1)
    p.add_argument("--gamma", type=_positive_float, default=1e-8)
    p.add_argument("--gamma-y", type=_positive_float, default=None, help="second-view gamma (defaults to --gamma)")
    _add_map_flags(p)
    p.add_argument("--seed", type=_seed_int, default=0)
    p.add_argument("--test-x", default=None, help="held-out first view for the test correlation sum")
    p.add_argument("--test-y", default=None, help="held-out second view")
    p.add_argument("--top", type=_positive_int, default=None, help="components summed on held-out data (default r)")
    p.add_argument("--model-out", default=None)
    p.set_defaults(handler=_cmd_cca)

    p = sub.add_parser("lda", help="fit discriminant directions on random features")
    p.add_argument("--x", required=True)
    p.add_argument("--labels", required=True, help="one integer class label per row")
    p.add_argument("--r", type=_positive_int, default=2)
    p.add_argument("--gamma", type=_positive_float, default=1e-8)
    _add_map_flags(p)
    p.add_argument("--seed", type=_seed_int, default=0)
    p.add_argument("--model-out", default=None)
    p.add_argument("--scores-out", default=None)
    p.set_defaults(handler=_cmd_lda)

    p = sub.add_parser("rdc", help="randomized dependence coefficient of two samples")
    p.add_argument("--x", required=True)
    p.add_argument("--y", required=True)
    p.add_argument("--m", type=_positive_int, default=200)
    p.add_argument("--gamma", type=_positive_float, default=1e-3)
    p.add_argument("--seed", type=_seed_int, default=0)
    p.set_defaults(handler=_cmd_rdc)

    p = sub.add_parser("cluster", help="spectral clustering in random feature space")
    p.add_argument("--x", required=True)
    p.add_argument("--k", type=_positive_int, required=True, help="number of clusters")
    _add_map_flags(p)
    p.add_argument("--seed", type=_seed_int, default=0)
    p.add_argument("--out", required=True, help="output labels file")
    p.set_defaults(handler=_cmd_cluster)

    p = sub.add_parser("bounds", help="bound-validation sweep")
    p.add_argument("--kind", choices=("pca", "cca"), default="pca")
    p.add_argument("--vary", choices=("n", "m", "gamma"), required=True)
    p.add_argument("--grid", type=_grid_arg, required=True, help="comma-separated grid values")
    p.add_argument("--n", type=_positive_int, default=1000)
    p.add_argument("--m", type=_positive_int, default=1000)
    p.add_argument("--gamma", type=_positive_float, default=1e-3)
    p.add_argument("--dims", type=_positive_int, default=10)
    p.add_argument("--trials", type=_positive_int, default=25)
    p.add_argument("--seed", type=_seed_int, default=0)
    p.add_argument("--convention", choices=CONVENTIONS, default="unbiased")
    p.add_argument("--variant", choices=("paper", "corrected"), default="paper")
    p.add_argument("--threads", type=_positive_int, default=1)
    p.add_argument("--out", required=True, help="output sweep CSV")
    p.set_defaults(handler=_cmd_bounds)

    p = sub.add_parser("autoencode", help="fit the randomized autoencoder")
    p.add_argument("--x", required=True)
    p.add_argument("--m", type=_positive_int, required=True)
    p.add_argument("--d", type=_positive_int, required=True, help="code dimension")
    p.add_argument("--ridge", type=_positive_float, default=1e-6)
    p.add_argument("--seed", type=_seed_int, default=0)
    p.add_argument("--model-out", default=None)
    p.add_argument("--recon-out", default=None)
    p.set_defaults(handler=_cmd_autoencode)

    p = sub.add_parser("lupi", help="distill privileged attributes into regular-view features")
    p.add_argument("--x", required=True)
    p.add_argument("--xstar", required=True, help="privileged view CSV")
    p.add_argument("--labels", required=True)
    p.add_argument("--m", type=_positive_int, default=1000)
    p.add_argument("--gamma", type=_positive_float, default=1e-8)
    p.add_argument("--per-attr", type=_positive_int, default=5)
    p.add_argument("--seed", type=_seed_int, default=0)
    p.add_argument("--model-out", default=None)
    p.add_argument("--features-out", default=None)
    p.set_defaults(handler=_cmd_lupi)

    p = sub.add_parser("transform", help="apply a saved model to new data")
    p.add_argument("--model", required=True)
    p.add_argument("--x", default=None)
    p.add_argument("--y", default=None, help="second view (cca models)")
    p.add_argument("--out", required=True)
    p.add_argument("--out-y", default=None, help="second-view output (cca models)")
    p.set_defaults(handler=_cmd_transform)

    p = sub.add_parser("convert-idx", help="convert IDX tensor files to CSV")
    p.add_argument("--images", default=None)
    p.add_argument("--labels", default=None)
    p.add_argument("--out", default=None, help="output CSV for --images")
    p.add_argument("--labels-out", default=None, help="output labels file for --labels")
    p.add_argument("--scale", action="store_true", help="divide image values by 255")
    p.set_defaults(handler=_cmd_convert_idx)

    return parser


def run(argv) -> int:
    """Parse argv (no program name) and execute; returns the process exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(list(argv))
    except SystemExit as exc:
        return int(exc.code) if exc.code else 0
    if not hasattr(args, "handler"):
        parser.print_usage(sys.stderr)
        return 2
    try:
        return args.handler(args)
    except ArgumentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DataError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3


def main(argv=None) -> None:
    sys.exit(run(sys.argv[1:] if argv is None else argv))


if __name__ == "__main__":
    main()
