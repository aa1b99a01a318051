"""File formats (CSV, labels, IDX, model container) and the command line."""

import gzip
import struct
import subprocess
import sys
import warnings

import numpy as np
import pytest

from rnca import (
    DataError,
    DegenerateDataWarning,
    KernelSpec,
    autoencoder_fit,
    autoencoder_reconstruct,
    identity_map,
    load_csv,
    load_labels,
    load_model,
    lupi_features,
    lupi_transform,
    rcca_fit,
    rcca_transform,
    read_idx,
    ridge_fit,
    ridge_predict,
    rpca_fit,
    rpca_transform,
    sample_fourier,
    sample_nystrom,
    save_csv,
    save_labels,
    save_model,
)
from rnca.cli import run
from rnca.model_io import format_float, read_container, write_container

from conftest import ari, make_blobs


# ---------------------------------------------------------------- CSV files


def test_csv_round_trip_is_bitwise_exact(tmp_path):
    rng = np.random.default_rng(0)
    M = rng.standard_normal((17, 5)) * np.logspace(-8, 8, 5)
    path = tmp_path / "m.csv"
    save_csv(path, M)
    back = load_csv(path)
    assert back.shape == M.shape
    assert np.array_equal(back, M)


def test_load_csv_skips_a_single_header_row(tmp_path):
    path = tmp_path / "h.csv"
    path.write_text("alpha,beta\n1.5,2\n3,4\n", encoding="utf-8")
    M = load_csv(path)
    assert np.array_equal(M, [[1.5, 2.0], [3.0, 4.0]])

    bare = tmp_path / "bare.csv"
    bare.write_text("1.5,2\n3,4\n", encoding="utf-8")
    assert np.array_equal(load_csv(bare), M)


def test_save_csv_writes_optional_header(tmp_path):
    path = tmp_path / "h.csv"
    save_csv(path, [[1.0, 2.0]], header="a,b")
    assert path.read_text(encoding="utf-8").splitlines()[0] == "a,b"
    assert np.array_equal(load_csv(path), [[1.0, 2.0]])


@pytest.mark.parametrize(
    "text",
    [
        "",
        "col_a,col_b\n",
        "1,2\n3\n",
        "1,2\nx,4\n",
        "h1,h2\n1,oops\n",
    ],
)
def test_load_csv_rejects_malformed_files(tmp_path, text):
    path = tmp_path / "bad.csv"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(DataError):
        load_csv(path)


def test_load_csv_missing_file_is_a_data_error(tmp_path):
    with pytest.raises(DataError):
        load_csv(tmp_path / "nope.csv")


def test_labels_round_trip(tmp_path):
    labels = np.array([3, 0, 0, 2, 7, 1], dtype=np.int64)
    path = tmp_path / "labels.csv"
    save_labels(path, labels)
    back = load_labels(path)
    assert back.dtype == np.int64
    assert np.array_equal(back, labels)


def test_load_labels_rejects_bad_shapes_and_values(tmp_path):
    wide = tmp_path / "wide.csv"
    wide.write_text("1,2\n3,4\n", encoding="utf-8")
    with pytest.raises(DataError):
        load_labels(wide)

    frac = tmp_path / "frac.csv"
    frac.write_text("1\n2.5\n", encoding="utf-8")
    with pytest.raises(DataError):
        load_labels(frac)

    inf = tmp_path / "inf.csv"
    inf.write_text("1\ninf\n", encoding="utf-8")
    with pytest.raises(DataError):
        load_labels(inf)


# ---------------------------------------------------------------- IDX files


def idx_bytes(type_code: int, arr: np.ndarray) -> bytes:
    head = bytes([0, 0, type_code, arr.ndim])
    head += struct.pack(">" + "i" * arr.ndim, *arr.shape)
    return head + arr.tobytes()


def test_read_idx_uint8_tensor(tmp_path):
    arr = np.arange(24, dtype=np.uint8).reshape(2, 3, 4)
    path = tmp_path / "t.idx"
    path.write_bytes(idx_bytes(0x08, arr))
    back = read_idx(path)
    assert back.shape == (2, 3, 4)
    assert np.array_equal(back, arr)


def test_read_idx_gzip_variant(tmp_path):
    arr = np.array([5, 0, 9, 2], dtype=np.uint8)
    path = tmp_path / "labels.idx.gz"
    with gzip.open(path, "wb") as fh:
        fh.write(idx_bytes(0x08, arr))
    assert np.array_equal(read_idx(path), arr)


def test_read_idx_big_endian_floats(tmp_path):
    arr = np.array([[1.5, -2.25], [0.125, 8.0]], dtype=">f4")
    path = tmp_path / "f.idx"
    path.write_bytes(idx_bytes(0x0D, arr))
    back = read_idx(path)
    assert np.array_equal(back.astype(float), arr.astype(float))


def test_read_idx_rejects_corrupt_files(tmp_path):
    arr = np.arange(6, dtype=np.uint8).reshape(2, 3)
    good = idx_bytes(0x08, arr)

    def expect_error(data: bytes):
        path = tmp_path / "bad.idx"
        path.write_bytes(data)
        with pytest.raises(DataError):
            read_idx(path)

    expect_error(b"\x01" + good[1:])  # nonzero magic byte
    expect_error(good[:2] + b"\x05" + good[3:])  # unknown element type
    expect_error(good[:-1])  # short payload
    expect_error(good + b"\x00")  # long payload
    expect_error(good[:5])  # truncated dimension list
    expect_error(b"\x00\x00")  # truncated header


def test_read_idx_missing_file(tmp_path):
    with pytest.raises(DataError):
        read_idx(tmp_path / "gone.idx")


# ------------------------------------------------------------- container


def test_container_round_trip(tmp_path):
    path = tmp_path / "c.model"
    A = np.random.default_rng(1).standard_normal((3, 4))
    write_container(path, {"model": "demo", "gamma": format_float(1e-8)}, {"A": A, "b": [[1.0, 2.0]]})
    scalars, matrices = read_container(path)
    assert scalars["model"] == "demo"
    assert float(scalars["gamma"]) == 1e-8
    assert np.array_equal(matrices["A"], A)
    assert np.array_equal(matrices["b"], [[1.0, 2.0]])


@pytest.mark.parametrize(
    "text",
    [
        "",
        "not-a-model 1\nend\n",
        "rnca-model one\nend\n",
        "rnca-model 99\nend\n",
        "rnca-model 1\nkey = 1\n",  # missing end
        "rnca-model 1\nmatrix A 2 2\n1,2\n",  # truncated block
        "rnca-model 1\nmatrix A 1 2\n1,2,3\nend\n",  # wrong field count
        "rnca-model 1\nmatrix A 1 1\nx\nend\n",  # non-numeric entry
        "rnca-model 1\nmatrix A 1 1\n1\nmatrix A 1 1\n2\nend\n",  # duplicate matrix
        "rnca-model 1\nk = 1\nk = 2\nend\n",  # duplicate scalar
        "rnca-model 1\nwhat even is this line\nend\n",
        "rnca-model 1\nend\ntrailing garbage\n",
        "rnca-model 1\nmatrix A x 1\n1\nend\n",
    ],
)
def test_read_container_rejects_malformed_files(tmp_path, text):
    path = tmp_path / "bad.model"
    path.write_text(text, encoding="utf-8")
    with pytest.raises(DataError):
        read_container(path)


def test_load_model_rejects_unknown_kind_and_missing_fields(tmp_path):
    path = tmp_path / "m.model"
    write_container(path, {"model": "banana"}, {})
    with pytest.raises(DataError):
        load_model(path)

    write_container(path, {"note": "no model key"}, {})
    with pytest.raises(DataError):
        load_model(path)

    write_container(path, {"model": "rpca", "map.kind": "fourier"}, {})
    with pytest.raises(DataError):
        load_model(path)


# ----------------------------------------------------- model round trips


def small_data(seed=0, n=40, d=3):
    return np.random.default_rng(seed).standard_normal((n, d))


def test_rpca_model_round_trip_fourier(tmp_path):
    X = small_data(2)
    fmap = sample_fourier(3, 16, KernelSpec(s=0.7), seed=5)
    model = rpca_fit(X, fmap, 4)
    path = tmp_path / "rpca.model"
    save_model(model, path)
    back = load_model(path)
    assert np.array_equal(back.eigenvalues, model.eigenvalues)
    assert np.array_equal(back.loadings, model.loadings)
    assert back.map.scale_convention == fmap.scale_convention
    assert np.array_equal(rpca_transform(back, X), rpca_transform(model, X))


def test_rpca_model_round_trip_nystrom_and_identity(tmp_path):
    X = small_data(3)
    ny = rpca_fit(X, sample_nystrom(X, 10, KernelSpec(s=0.5), seed=1), 3)
    ident = rpca_fit(X, identity_map(3), 2)
    for tag, model in (("ny", ny), ("id", ident)):
        path = tmp_path / f"{tag}.model"
        save_model(model, path)
        back = load_model(path)
        assert back.map.kind == model.map.kind
        assert np.array_equal(rpca_transform(back, X), rpca_transform(model, X))


def test_rcca_model_round_trip(tmp_path):
    rng = np.random.default_rng(4)
    X = rng.standard_normal((50, 2))
    Y = X @ rng.standard_normal((2, 2)) + 0.1 * rng.standard_normal((50, 2))
    map_x = sample_fourier(2, 12, KernelSpec(s=0.4), seed=7)
    map_y = sample_fourier(2, 14, KernelSpec(s=0.6), seed=8)
    model = rcca_fit(X, Y, map_x, map_y, 1e-6, 1e-5, 3)
    path = tmp_path / "rcca.model"
    save_model(model, path)
    back = load_model(path)
    assert np.array_equal(back.correlations, model.correlations)
    assert back.gamma_x == model.gamma_x and back.gamma_y == model.gamma_y
    U0, V0 = rcca_transform(model, X=X, Y=Y)
    U1, V1 = rcca_transform(back, X=X, Y=Y)
    assert np.array_equal(U1, U0) and np.array_equal(V1, V0)


def test_ridge_model_round_trip(tmp_path):
    X = small_data(5)
    T = X @ np.array([[1.0], [2.0], [-1.0]]) + 0.5
    fmap = sample_fourier(3, 20, KernelSpec(s=0.3), seed=11)
    model = ridge_fit(X, T, fmap, 1e-4)
    path = tmp_path / "ridge.model"
    save_model(model, path)
    back = load_model(path)
    assert back.ridge == model.ridge
    assert np.array_equal(ridge_predict(back, X), ridge_predict(model, X))


def test_autoencoder_model_round_trip(tmp_path):
    X = small_data(6, n=30)
    model = autoencoder_fit(X, m=24, d=4, ridge=1e-6, seed=2)
    path = tmp_path / "ae.model"
    save_model(model, path)
    back = load_model(path)
    assert back.code_dim == model.code_dim
    assert np.array_equal(autoencoder_reconstruct(back, X), autoencoder_reconstruct(model, X))


def test_lupi_model_round_trip_preserves_skips(tmp_path):
    rng = np.random.default_rng(7)
    X = rng.standard_normal((60, 3))
    Xs = np.column_stack([X[:, 0], np.full(60, 2.0), rng.standard_normal(60)])
    y = (X[:, 1] > 0).astype(int)
    with pytest.warns(DegenerateDataWarning):
        model, feats = lupi_features(X, Xs, y, m=30, gamma=1e-6, per_attr=2, seed=3)
    assert model.skipped == (1,)
    path = tmp_path / "lupi.model"
    save_model(model, path)
    back = load_model(path)
    assert back.skipped == model.skipped
    assert back.per_attr == model.per_attr
    assert len(back.blocks) == len(model.blocks)
    assert back.blocks[0].attribute == model.blocks[0].attribute
    assert np.array_equal(lupi_transform(back, X), feats)


def test_save_model_rejects_foreign_objects(tmp_path):
    with pytest.raises(DataError):
        save_model({"not": "a model"}, tmp_path / "x.model")


# ------------------------------------------------------------------- CLI


def write_csv(path, M):
    save_csv(path, np.asarray(M, dtype=float))
    return str(path)


def test_cli_pca_outputs_match_library_and_leave_inputs_alone(tmp_path, capsys):
    X = small_data(10, n=30)
    xpath = tmp_path / "x.csv"
    write_csv(xpath, X)
    before = xpath.read_bytes()
    model_path = tmp_path / "pca.model"
    scores_path = tmp_path / "scores.csv"
    code = run([
        "pca", "--x", str(xpath), "--r", "3", "--m", "16",
        "--seed", "9", "--model-out", str(model_path), "--scores-out", str(scores_path),
    ])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("eigenvalues = ")
    assert xpath.read_bytes() == before
    model = load_model(model_path)
    assert np.array_equal(load_csv(scores_path), rpca_transform(model, X))
    printed = [float(tok) for tok in out.split("=", 1)[1].strip().split(",")]
    assert np.array_equal(printed, model.eigenvalues)


def test_cli_runs_are_byte_deterministic(tmp_path, capsys):
    X = small_data(11, n=25)
    xpath = write_csv(tmp_path / "x.csv", X)
    outs, files = [], []
    for tag in ("a", "b"):
        scores = tmp_path / f"scores_{tag}.csv"
        assert run(["pca", "--x", xpath, "--r", "2", "--m", "12", "--seed", "4",
                    "--scores-out", str(scores)]) == 0
        outs.append(capsys.readouterr().out)
        files.append(scores.read_bytes())
    assert outs[0] == outs[1]
    assert files[0] == files[1]


def test_cli_cca_then_transform_cross_check(tmp_path, capsys):
    rng = np.random.default_rng(12)
    X = rng.standard_normal((40, 2))
    Y = np.sin(X) + 0.05 * rng.standard_normal((40, 2))
    xpath = write_csv(tmp_path / "x.csv", X)
    ypath = write_csv(tmp_path / "y.csv", Y)
    model_path = tmp_path / "cca.model"
    code = run([
        "cca", "--x", xpath, "--y", ypath, "--r", "2", "--m", "10",
        "--gamma", "1e-6", "--seed", "1",
        "--test-x", xpath, "--test-y", ypath, "--top", "2",
        "--model-out", str(model_path),
    ])
    out = capsys.readouterr().out
    assert code == 0
    assert "correlations = " in out and "test_correlation_sum = " in out

    upath = tmp_path / "u.csv"
    vpath = tmp_path / "v.csv"
    assert run(["transform", "--model", str(model_path), "--x", xpath, "--y", ypath,
                "--out", str(upath), "--out-y", str(vpath)]) == 0
    capsys.readouterr()
    model = load_model(model_path)
    U, V = rcca_transform(model, X=X, Y=Y)
    assert np.array_equal(load_csv(upath), U)
    assert np.array_equal(load_csv(vpath), V)


def test_cli_transform_single_view_of_cca_model(tmp_path, capsys):
    rng = np.random.default_rng(13)
    X = rng.standard_normal((30, 2))
    Y = rng.standard_normal((30, 2))
    xpath = write_csv(tmp_path / "x.csv", X)
    ypath = write_csv(tmp_path / "y.csv", Y)
    model_path = tmp_path / "cca.model"
    assert run(["cca", "--x", xpath, "--y", ypath, "--m", "8", "--model-out", str(model_path)]) == 0
    upath = tmp_path / "u_only.csv"
    assert run(["transform", "--model", str(model_path), "--x", xpath, "--out", str(upath)]) == 0
    capsys.readouterr()
    U, _ = rcca_transform(load_model(model_path), X=X)
    assert np.array_equal(load_csv(upath), U)


def test_cli_rdc_prints_a_unit_interval_float(tmp_path, capsys):
    rng = np.random.default_rng(14)
    x = rng.standard_normal((80, 1))
    xpath = write_csv(tmp_path / "x.csv", x)
    ypath = write_csv(tmp_path / "y.csv", np.cos(2 * x) + 0.1 * rng.standard_normal((80, 1)))
    assert run(["rdc", "--x", xpath, "--y", ypath, "--m", "50", "--seed", "3"]) == 0
    value = float(capsys.readouterr().out.strip())
    assert 0.0 <= value <= 1.0


def test_cli_lda_and_scores(tmp_path, capsys):
    X, labels = make_blobs((20, 20), [[0.0, 0.0], [6.0, 0.0]], seed=15)
    xpath = write_csv(tmp_path / "x.csv", X)
    lpath = tmp_path / "labels.csv"
    save_labels(lpath, labels)
    spath = tmp_path / "scores.csv"
    code = run(["lda", "--x", xpath, "--labels", str(lpath), "--r", "1",
                "--m", "20", "--seed", "2", "--scores-out", str(spath)])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("correlations = ")
    scores = load_csv(spath)
    assert scores.shape == (40, 1)
    side_a = scores[labels == 0, 0]
    side_b = scores[labels == 1, 0]
    assert max(side_a.max(), side_b.max()) > min(side_a.min(), side_b.min())  # both nonempty
    assert (side_a.mean() - side_b.mean()) != 0.0


def test_cli_cluster_recovers_blobs(tmp_path):
    X, labels = make_blobs((30, 30), [[0.0, 0.0], [8.0, 8.0]], seed=16)
    xpath = write_csv(tmp_path / "x.csv", X)
    opath = tmp_path / "assign.csv"
    assert run(["cluster", "--x", xpath, "--k", "2", "--m", "40", "--seed", "5",
                "--out", str(opath)]) == 0
    found = load_labels(opath)
    assert found.shape == (60,)
    assert ari(found, labels) == pytest.approx(1.0)


def test_cli_autoencode_and_saved_reconstruction(tmp_path, capsys):
    X = small_data(17, n=35)
    xpath = write_csv(tmp_path / "x.csv", X)
    mpath = tmp_path / "ae.model"
    rpath = tmp_path / "recon.csv"
    code = run(["autoencode", "--x", xpath, "--m", "20", "--d", "3", "--seed", "6",
                "--model-out", str(mpath), "--recon-out", str(rpath)])
    out = capsys.readouterr().out
    assert code == 0
    assert out.startswith("train_mse = ")
    model = load_model(mpath)
    assert np.array_equal(load_csv(rpath), autoencoder_reconstruct(model, X))
    assert float(out.split("=", 1)[1]) == pytest.approx(np.mean((load_csv(rpath) - X) ** 2))


def test_cli_lupi_features_file(tmp_path, capsys):
    rng = np.random.default_rng(18)
    X = rng.standard_normal((50, 3))
    Xs = np.column_stack([X[:, 0] + 0.1 * rng.standard_normal(50), rng.standard_normal(50)])
    xpath = write_csv(tmp_path / "x.csv", X)
    spath = write_csv(tmp_path / "xs.csv", Xs)
    lpath = tmp_path / "labels.csv"
    save_labels(lpath, (X[:, 1] > 0).astype(int))
    fpath = tmp_path / "feats.csv"
    mpath = tmp_path / "lupi.model"
    code = run(["lupi", "--x", xpath, "--xstar", str(spath), "--labels", str(lpath),
                "--m", "25", "--per-attr", "2", "--seed", "7",
                "--features-out", str(fpath), "--model-out", str(mpath)])
    out = capsys.readouterr().out
    assert code == 0
    assert out.strip() == "features = 50 x 4"
    feats = load_csv(fpath)
    assert feats.shape == (50, 4)
    assert np.array_equal(lupi_transform(load_model(mpath), X), feats)


def test_cli_bounds_sweep_and_thread_invariance(tmp_path, capsys):
    outs = []
    blobs = []
    for tag, threads in (("one", "1"), ("three", "3")):
        opath = tmp_path / f"sweep_{tag}.csv"
        code = run(["bounds", "--kind", "pca", "--vary", "m", "--grid", "16,32,64",
                    "--n", "60", "--dims", "4", "--trials", "3", "--seed", "0",
                    "--threads", threads, "--out", str(opath)])
        assert code == 0
        outs.append(capsys.readouterr().out)
        blobs.append(opath.read_bytes())
    assert outs[0].startswith("slope = ")
    assert outs[0] == outs[1]
    assert blobs[0] == blobs[1]
    header = blobs[0].decode("utf-8").splitlines()[0]
    assert header == "param,mean_error,stddev,bound"
    assert len(blobs[0].decode("utf-8").splitlines()) == 4


def test_cli_convert_idx_images_and_labels(tmp_path):
    images = np.arange(3 * 2 * 2, dtype=np.uint8).reshape(3, 2, 2)
    labels = np.array([7, 1, 4], dtype=np.uint8)
    ipath = tmp_path / "images.idx"
    lpath = tmp_path / "labels.idx"
    ipath.write_bytes(idx_bytes(0x08, images))
    lpath.write_bytes(idx_bytes(0x08, labels))
    icsv = tmp_path / "images.csv"
    lcsv = tmp_path / "labels.csv"
    assert run(["convert-idx", "--images", str(ipath), "--out", str(icsv),
                "--labels", str(lpath), "--labels-out", str(lcsv), "--scale"]) == 0
    M = load_csv(icsv)
    assert M.shape == (3, 4)
    assert np.array_equal(M, images.reshape(3, 4).astype(float) / 255.0)
    assert np.array_equal(load_labels(lcsv), labels.astype(np.int64))


def test_cli_convert_idx_validation(tmp_path, capsys):
    assert run(["convert-idx"]) == 2
    ipath = tmp_path / "images.idx"
    ipath.write_bytes(idx_bytes(0x08, np.zeros((2, 2, 2), dtype=np.uint8)))
    assert run(["convert-idx", "--images", str(ipath)]) == 2
    one_d = tmp_path / "one.idx"
    one_d.write_bytes(idx_bytes(0x08, np.zeros(4, dtype=np.uint8)))
    assert run(["convert-idx", "--images", str(one_d), "--out", str(tmp_path / "o.csv")]) == 3
    capsys.readouterr()


def test_cli_exit_code_two_for_argument_problems(tmp_path, capsys):
    xpath = write_csv(tmp_path / "x.csv", np.eye(4))
    assert run(["pca", "--x", xpath, "--r", "0"]) == 2  # argparse validator
    assert run(["pca", "--x", xpath, "--no-such-flag"]) == 2
    assert run(["no-such-command"]) == 2
    assert run([]) == 2
    assert run(["pca", "--x", xpath, "--features", "fourier"]) == 2  # missing --m
    ypath = write_csv(tmp_path / "y.csv", np.eye(4))
    assert run(["cca", "--x", xpath, "--y", ypath, "--m", "4", "--test-x", xpath]) == 2
    capsys.readouterr()


def test_cli_exit_code_three_for_data_problems(tmp_path, capsys):
    assert run(["pca", "--x", str(tmp_path / "missing.csv"), "--m", "4"]) == 3
    bad = tmp_path / "bad.csv"
    bad.write_text("1,2\n3\n", encoding="utf-8")
    assert run(["pca", "--x", str(bad), "--m", "4"]) == 3
    xpath = write_csv(tmp_path / "x.csv", np.eye(3))
    sink = tmp_path / "no_dir" / "out.csv"
    assert run(["pca", "--x", xpath, "--m", "4", "--scores-out", str(sink)]) == 3
    capsys.readouterr()


def test_cli_exit_code_four_for_capacity_refusal(tmp_path, capsys, monkeypatch):
    monkeypatch.setenv("RNCA_ORACLE_CAP", "30")
    opath = tmp_path / "sweep.csv"
    assert run(["bounds", "--kind", "pca", "--vary", "m", "--grid", "8,16",
                "--n", "60", "--dims", "3", "--trials", "2", "--out", str(opath)]) == 4
    err = capsys.readouterr().err
    assert "30" in err
    assert not opath.exists()


def test_cli_transform_argument_contract(tmp_path, capsys):
    X = small_data(19, n=20)
    xpath = write_csv(tmp_path / "x.csv", X)
    ypath = write_csv(tmp_path / "y.csv", small_data(20, n=20))
    model_path = tmp_path / "cca.model"
    assert run(["cca", "--x", xpath, "--y", ypath, "--m", "6", "--model-out", str(model_path)]) == 0
    # both views requested but only one output path given
    assert run(["transform", "--model", str(model_path), "--x", xpath, "--y", ypath,
                "--out", str(tmp_path / "u.csv")]) == 2
    # neither view given
    assert run(["transform", "--model", str(model_path), "--out", str(tmp_path / "u.csv")]) == 2
    # non-cca model without --x
    pca_path = tmp_path / "pca.model"
    assert run(["pca", "--x", xpath, "--m", "6", "--model-out", str(pca_path)]) == 0
    assert run(["transform", "--model", str(pca_path), "--out", str(tmp_path / "u.csv")]) == 2
    capsys.readouterr()


def test_cli_help_exits_zero(capsys):
    assert run(["--help"]) == 0
    assert run(["pca", "--help"]) == 0
    capsys.readouterr()


def test_module_entry_point_runs_in_a_subprocess(tmp_path):
    rng = np.random.default_rng(21)
    x = rng.standard_normal((40, 1))
    xpath = write_csv(tmp_path / "x.csv", x)
    ypath = write_csv(tmp_path / "y.csv", x**2)
    proc = subprocess.run(
        [sys.executable, "-m", "rnca", "rdc", "--x", xpath, "--y", ypath, "--m", "30"],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0
    value = float(proc.stdout.strip())
    assert 0.0 <= value <= 1.0
