"""File formats: numeric CSV, integer labels, IDX, and the text model container.

The container is a line-oriented text format: a `rnca-model <version>` header,
`key = value` scalar lines, `matrix <name> <rows> <cols>` blocks with one
comma-separated row per line, and a final `end` line. Floats are rendered
with 17 significant digits so write/read round-trips are exact.
"""

from __future__ import annotations

import gzip
import struct

import numpy as np

from .apps import AutoencoderModel, LupiBlock, LupiModel, RidgeModel
from .errors import DataError
from .features import CONVENTIONS, FeatureMap, KernelSpec
from .models import RccaModel, RpcaModel

MODEL_MAGIC = "rnca-model"
MODEL_VERSION = 1


def format_float(x: float) -> str:
    return format(float(x), ".17g")


def load_csv(path) -> np.ndarray:
    """Read a numeric CSV as a float matrix; a single leading header row is allowed."""
    try:
        with open(path, encoding="utf-8") as fh:
            rows = [line.strip() for line in fh]
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from None
    rows = [r for r in rows if r != ""]
    if not rows:
        raise DataError(f"{path} has no data rows")

    def parse(line: str) -> list[float]:
        return [float(tok) for tok in line.split(",")]

    start = 0
    try:
        parse(rows[0])
    except ValueError:
        start = 1
        if len(rows) == 1:
            raise DataError(f"{path} has a header but no data rows") from None
    data = []
    width = None
    for offset, line in enumerate(rows[start:]):
        try:
            values = parse(line)
        except ValueError:
            raise DataError(f"{path}: non-numeric value in data row {offset + 1}") from None
        if width is None:
            width = len(values)
        elif len(values) != width:
            raise DataError(f"{path}: row {offset + 1} has {len(values)} fields, expected {width}")
        data.append(values)
    return np.asarray(data, dtype=float)


def save_csv(path, M, header: str | None = None) -> None:
    M = np.atleast_2d(np.asarray(M, dtype=float))
    with open(path, "w", encoding="utf-8", newline="") as fh:
        if header:
            fh.write(header + "\n")
        for row in M:
            fh.write(",".join(format_float(v) for v in row) + "\n")


def load_labels(path) -> np.ndarray:
    """Read a one-column CSV of integer labels."""
    M = load_csv(path)
    if M.shape[1] != 1:
        raise DataError(f"{path}: labels file must have exactly one column, got {M.shape[1]}")
    v = M[:, 0]
    if not np.all(np.isfinite(v)):
        raise DataError(f"{path}: labels must be finite")
    if np.any(v != np.floor(v)):
        raise DataError(f"{path}: labels must be integers")
    return v.astype(np.int64)


def save_labels(path, labels) -> None:
    labels = np.asarray(labels).ravel()
    with open(path, "w", encoding="utf-8", newline="") as fh:
        for v in labels:
            fh.write(f"{int(v)}\n")


_IDX_DTYPES = {
    0x08: np.dtype(np.uint8),
    0x09: np.dtype(np.int8),
    0x0B: np.dtype(">i2"),
    0x0C: np.dtype(">i4"),
    0x0D: np.dtype(">f4"),
    0x0E: np.dtype(">f8"),
}


def read_idx(path) -> np.ndarray:
    """Read an IDX tensor file (optionally gzip-compressed)."""
    opener = gzip.open if str(path).endswith(".gz") else open
    try:
        with opener(path, "rb") as fh:
            raw = fh.read()
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from None
    if len(raw) < 4:
        raise DataError(f"{path}: truncated idx header")
    if raw[0] != 0 or raw[1] != 0:
        raise DataError(f"{path}: bad idx magic bytes")
    dtype = _IDX_DTYPES.get(raw[2])
    if dtype is None:
        raise DataError(f"{path}: unknown idx element type 0x{raw[2]:02x}")
    ndim = raw[3]
    header_len = 4 + 4 * ndim
    if len(raw) < header_len:
        raise DataError(f"{path}: truncated idx dimension list")
    dims = struct.unpack(">" + "i" * ndim, raw[4:header_len])
    if any(d < 0 for d in dims):
        raise DataError(f"{path}: negative idx dimension")
    count = int(np.prod(dims, dtype=np.int64)) if ndim else 1
    expected = header_len + count * dtype.itemsize
    if len(raw) != expected:
        raise DataError(f"{path}: idx payload has {len(raw) - header_len} bytes, expected {expected - header_len}")
    return np.frombuffer(raw, dtype=dtype, offset=header_len).reshape(dims)


def _row(values) -> np.ndarray:
    return np.asarray(values, dtype=float).reshape(1, -1)


def write_container(path, scalars: dict, matrices: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(f"{MODEL_MAGIC} {MODEL_VERSION}\n")
        for key, value in scalars.items():
            fh.write(f"{key} = {value}\n")
        for name, M in matrices.items():
            M = np.atleast_2d(np.asarray(M, dtype=float))
            fh.write(f"matrix {name} {M.shape[0]} {M.shape[1]}\n")
            for row in M:
                fh.write(",".join(format_float(v) for v in row) + "\n")
        fh.write("end\n")


def read_container(path) -> tuple[dict, dict]:
    try:
        with open(path, encoding="utf-8") as fh:
            lines = fh.read().split("\n")
    except OSError as exc:
        raise DataError(f"cannot read {path}: {exc}") from None
    if not lines:
        raise DataError(f"{path}: empty model file")
    head = lines[0].split()
    if len(head) != 2 or head[0] != MODEL_MAGIC:
        raise DataError(f"{path}: not a model file (bad header line)")
    try:
        version = int(head[1])
    except ValueError:
        raise DataError(f"{path}: bad model version {head[1]!r}") from None
    if version != MODEL_VERSION:
        raise DataError(f"{path}: unsupported model version {version}, expected {MODEL_VERSION}")

    scalars: dict = {}
    matrices: dict = {}
    i = 1
    ended = False
    while i < len(lines):
        line = lines[i]
        i += 1
        if line.strip() == "":
            continue
        if line == "end":
            ended = True
            break
        if line.startswith("matrix "):
            parts = line.split()
            if len(parts) != 4:
                raise DataError(f"{path}: malformed matrix header {line!r}")
            name = parts[1]
            try:
                rows, cols = int(parts[2]), int(parts[3])
            except ValueError:
                raise DataError(f"{path}: malformed matrix header {line!r}") from None
            if rows < 0 or cols < 0 or name in matrices:
                raise DataError(f"{path}: bad or duplicate matrix block {name!r}")
            block = np.empty((rows, cols), dtype=float)
            for r in range(rows):
                if i >= len(lines):
                    raise DataError(f"{path}: truncated matrix block {name!r}")
                fields = lines[i].split(",")
                i += 1
                if len(fields) != cols:
                    raise DataError(f"{path}: matrix {name!r} row {r} has {len(fields)} fields, expected {cols}")
                try:
                    block[r] = [float(tok) for tok in fields]
                except ValueError:
                    raise DataError(f"{path}: non-numeric value in matrix {name!r}") from None
            matrices[name] = block
        elif " = " in line:
            key, _, value = line.partition(" = ")
            key = key.strip()
            if key in scalars:
                raise DataError(f"{path}: duplicate scalar {key!r}")
            scalars[key] = value
        else:
            raise DataError(f"{path}: unrecognized line {line!r}")
    if not ended:
        raise DataError(f"{path}: truncated model file (missing end line)")
    for line in lines[i:]:
        if line.strip() != "":
            raise DataError(f"{path}: content after end line")
    return scalars, matrices


def _need_scalar(scalars: dict, key: str, path) -> str:
    if key not in scalars:
        raise DataError(f"{path}: model is missing field {key!r}")
    return scalars[key]


def _need_matrix(matrices: dict, name: str, path) -> np.ndarray:
    if name not in matrices:
        raise DataError(f"{path}: model is missing matrix {name!r}")
    return matrices[name]


def _need_float(scalars: dict, key: str, path) -> float:
    try:
        return float(_need_scalar(scalars, key, path))
    except ValueError:
        raise DataError(f"{path}: field {key!r} is not a number") from None


def _need_int(scalars: dict, key: str, path) -> int:
    try:
        return int(_need_scalar(scalars, key, path))
    except ValueError:
        raise DataError(f"{path}: field {key!r} is not an integer") from None


def _put_map(prefix: str, fmap: FeatureMap, scalars: dict, matrices: dict) -> None:
    scalars[prefix + "kind"] = fmap.kind
    scalars[prefix + "input_dim"] = str(fmap.input_dim)
    scalars[prefix + "output_dim"] = str(fmap.output_dim)
    scalars[prefix + "scale_convention"] = fmap.scale_convention
    if fmap.spec is not None:
        scalars[prefix + "bandwidth_s"] = format_float(fmap.spec.s)
    if fmap.kind == "fourier":
        matrices[prefix + "weights"] = fmap.weights
        matrices[prefix + "offsets"] = _row(fmap.offsets)
    elif fmap.kind == "nystrom":
        matrices[prefix + "landmarks"] = fmap.landmarks
        matrices[prefix + "whitener"] = fmap.whitener


def _take_map(prefix: str, scalars: dict, matrices: dict, path) -> FeatureMap:
    kind = _need_scalar(scalars, prefix + "kind", path)
    if kind not in ("identity", "fourier", "nystrom"):
        raise DataError(f"{path}: unknown feature map kind {kind!r}")
    input_dim = _need_int(scalars, prefix + "input_dim", path)
    output_dim = _need_int(scalars, prefix + "output_dim", path)
    convention = scalars.get(prefix + "scale_convention", "unbiased")
    if convention not in CONVENTIONS:
        raise DataError(f"{path}: unknown scale convention {convention!r}")
    spec = None
    if prefix + "bandwidth_s" in scalars:
        spec = KernelSpec(s=_need_float(scalars, prefix + "bandwidth_s", path))
    kwargs = {}
    if kind == "fourier":
        kwargs["weights"] = _need_matrix(matrices, prefix + "weights", path)
        kwargs["offsets"] = _need_matrix(matrices, prefix + "offsets", path).ravel()
    elif kind == "nystrom":
        kwargs["landmarks"] = _need_matrix(matrices, prefix + "landmarks", path)
        kwargs["whitener"] = _need_matrix(matrices, prefix + "whitener", path)
    try:
        return FeatureMap(
            kind=kind,
            input_dim=input_dim,
            output_dim=output_dim,
            spec=spec,
            scale_convention=convention,
            **kwargs,
        )
    except Exception as exc:
        raise DataError(f"{path}: inconsistent feature map fields ({exc})") from None


def _put_rpca(model: RpcaModel, scalars: dict, matrices: dict, prefix: str = "") -> None:
    _put_map(prefix + "map.", model.map, scalars, matrices)
    matrices[prefix + "feature_means"] = _row(model.feature_means)
    matrices[prefix + "loadings"] = model.loadings
    matrices[prefix + "eigenvalues"] = _row(model.eigenvalues)


def _take_rpca(scalars: dict, matrices: dict, path, prefix: str = "") -> RpcaModel:
    return RpcaModel(
        map=_take_map(prefix + "map.", scalars, matrices, path),
        feature_means=_need_matrix(matrices, prefix + "feature_means", path).ravel(),
        loadings=_need_matrix(matrices, prefix + "loadings", path),
        eigenvalues=_need_matrix(matrices, prefix + "eigenvalues", path).ravel(),
    )


def _put_ridge(model: RidgeModel, scalars: dict, matrices: dict, prefix: str = "") -> None:
    _put_map(prefix + "map.", model.map, scalars, matrices)
    scalars[prefix + "ridge"] = format_float(model.ridge)
    matrices[prefix + "weights"] = model.weights
    matrices[prefix + "intercepts"] = _row(model.intercepts)


def _take_ridge(scalars: dict, matrices: dict, path, prefix: str = "") -> RidgeModel:
    return RidgeModel(
        map=_take_map(prefix + "map.", scalars, matrices, path),
        weights=_need_matrix(matrices, prefix + "weights", path),
        intercepts=_need_matrix(matrices, prefix + "intercepts", path).ravel(),
        ridge=_need_float(scalars, prefix + "ridge", path),
    )


def save_model(model, path) -> None:
    """Serialize a fitted model to the text container format."""
    scalars: dict = {}
    matrices: dict = {}
    if isinstance(model, RpcaModel):
        scalars["model"] = "rpca"
        _put_rpca(model, scalars, matrices)
    elif isinstance(model, RccaModel):
        scalars["model"] = "rcca"
        scalars["gamma_x"] = format_float(model.gamma_x)
        scalars["gamma_y"] = format_float(model.gamma_y)
        _put_map("map_x.", model.map_x, scalars, matrices)
        _put_map("map_y.", model.map_y, scalars, matrices)
        matrices["means_x"] = _row(model.means_x)
        matrices["means_y"] = _row(model.means_y)
        matrices["basis_x"] = model.basis_x
        matrices["basis_y"] = model.basis_y
        matrices["correlations"] = _row(model.correlations)
    elif isinstance(model, RidgeModel):
        scalars["model"] = "ridge"
        _put_ridge(model, scalars, matrices)
    elif isinstance(model, AutoencoderModel):
        scalars["model"] = "autoencoder"
        _put_rpca(model.encoder, scalars, matrices, prefix="encoder.")
        _put_ridge(model.decoder, scalars, matrices, prefix="decoder.")
    elif isinstance(model, LupiModel):
        scalars["model"] = "lupi"
        scalars["gamma"] = format_float(model.gamma)
        scalars["per_attr"] = str(model.per_attr)
        scalars["skipped"] = ",".join(str(j) for j in model.skipped)
        scalars["n_blocks"] = str(len(model.blocks))
        _put_map("map.", model.map, scalars, matrices)
        matrices["feature_means"] = _row(model.feature_means)
        for i, block in enumerate(model.blocks):
            scalars[f"block{i}.attribute"] = str(block.attribute)
            matrices[f"block{i}.basis"] = block.basis
            matrices[f"block{i}.correlations"] = _row(block.correlations)
    else:
        raise DataError(f"cannot serialize object of type {type(model).__name__}")
    write_container(path, scalars, matrices)


def load_model(path):
    """Read a model container back into its fitted-model object."""
    scalars, matrices = read_container(path)
    kind = _need_scalar(scalars, "model", path)
    if kind == "rpca":
        return _take_rpca(scalars, matrices, path)
    if kind == "rcca":
        return RccaModel(
            map_x=_take_map("map_x.", scalars, matrices, path),
            map_y=_take_map("map_y.", scalars, matrices, path),
            means_x=_need_matrix(matrices, "means_x", path).ravel(),
            means_y=_need_matrix(matrices, "means_y", path).ravel(),
            basis_x=_need_matrix(matrices, "basis_x", path),
            basis_y=_need_matrix(matrices, "basis_y", path),
            correlations=_need_matrix(matrices, "correlations", path).ravel(),
            gamma_x=_need_float(scalars, "gamma_x", path),
            gamma_y=_need_float(scalars, "gamma_y", path),
        )
    if kind == "ridge":
        return _take_ridge(scalars, matrices, path)
    if kind == "autoencoder":
        return AutoencoderModel(
            encoder=_take_rpca(scalars, matrices, path, prefix="encoder."),
            decoder=_take_ridge(scalars, matrices, path, prefix="decoder."),
        )
    if kind == "lupi":
        raw_skip = _need_scalar(scalars, "skipped", path)
        skipped = tuple(int(tok) for tok in raw_skip.split(",") if tok != "")
        blocks = []
        for i in range(_need_int(scalars, "n_blocks", path)):
            blocks.append(
                LupiBlock(
                    attribute=_need_int(scalars, f"block{i}.attribute", path),
                    basis=_need_matrix(matrices, f"block{i}.basis", path),
                    correlations=_need_matrix(matrices, f"block{i}.correlations", path).ravel(),
                )
            )
        return LupiModel(
            map=_take_map("map.", scalars, matrices, path),
            feature_means=_need_matrix(matrices, "feature_means", path).ravel(),
            blocks=tuple(blocks),
            skipped=skipped,
            gamma=_need_float(scalars, "gamma", path),
            per_attr=_need_int(scalars, "per_attr", path),
        )
    raise DataError(f"{path}: unknown model kind {kind!r}")
