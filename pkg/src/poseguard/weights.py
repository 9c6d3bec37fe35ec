"""Model weight schema: load, save, dimension checks, test fixtures.

The weight file is a single JSON document of named row-major nested arrays:

    {"meta": {"window_len": T, "feature_dim": D, "filters": F, "hidden": H,
              "notes": "..."},
     "tensors": {"conv.kernel": [F][D][K], "conv.bias": [F],
                 "lstm.<L>.<dir>.W": [4H][in], "lstm.<L>.<dir>.U": [4H][H],
                 "lstm.<L>.<dir>.b": [4H],   (L in 1..5, dir in fw/bw)
                 "dense.W": [3][2H], "dense.b": [3]}}

Gate blocks inside every stacked LSTM tensor are ordered i, f, g, o along
the 4H axis. Layer 1 consumes the F conv channels; layers 2..5 consume the
2H outputs of the previous bidirectional layer.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .errors import SchemaError, ValidationError
from .rng import SplitMix64
from .types import LABELS

NUM_LSTM_LAYERS = 5
NUM_CLASSES = len(LABELS)
DIRECTIONS = ("fw", "bw")


@dataclass(frozen=True)
class LstmParams:
    """One direction of one LSTM layer; gate rows stacked i, f, g, o."""

    w: np.ndarray  # (4H, input)
    u: np.ndarray  # (4H, H)
    b: np.ndarray  # (4H,)


@dataclass(frozen=True)
class ModelWeights:
    conv_kernel: np.ndarray  # (F, D, K)
    conv_bias: np.ndarray  # (F,)
    layers: tuple[tuple[LstmParams, LstmParams], ...]  # ((fw, bw), ...) x5
    dense_w: np.ndarray  # (3, 2H)
    dense_b: np.ndarray  # (3,)
    window_len: int
    feature_dim: int
    filters: int
    hidden: int
    notes: str = ""

    @property
    def kernel_size(self) -> int:
        return self.conv_kernel.shape[2]


def _tensor_names(hidden_layers: int = NUM_LSTM_LAYERS) -> list[str]:
    names = ["conv.kernel", "conv.bias"]
    for layer in range(1, hidden_layers + 1):
        for direction in DIRECTIONS:
            for part in ("W", "U", "b"):
                names.append(f"lstm.{layer}.{direction}.{part}")
    names.extend(["dense.W", "dense.b"])
    return names


TENSOR_NAMES = tuple(_tensor_names())


def _as_array(name: str, raw) -> np.ndarray:
    try:
        arr = np.asarray(raw, dtype=np.float64)
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"tensor {name!r} is not a rectangular numeric array") from exc
    if arr.dtype != np.float64 or arr.ndim == 0:
        raise SchemaError(f"tensor {name!r} is not a rectangular numeric array")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"tensor {name!r} contains non-finite values")
    return arr


def _check_shape(name: str, arr: np.ndarray, expected: tuple[int, ...], anchor: str) -> None:
    if arr.shape != expected:
        raise SchemaError(
            f"dimension mismatch: {name!r} has shape {arr.shape}, "
            f"but {anchor} implies {expected}"
        )


def load_weights(document: str) -> ModelWeights:
    """Parse and dimension-check a weight-file document."""
    try:
        doc = json.loads(document)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"weight file is not valid JSON: {exc.msg}") from exc
    if not isinstance(doc, dict) or "meta" not in doc or "tensors" not in doc:
        raise SchemaError("weight file must hold {'meta': ..., 'tensors': ...}")
    meta = doc["meta"]
    tensors = doc["tensors"]
    if not isinstance(meta, dict) or not isinstance(tensors, dict):
        raise SchemaError("weight file 'meta' and 'tensors' must be objects")

    for key in ("window_len", "feature_dim", "filters", "hidden"):
        if key not in meta:
            raise SchemaError(f"meta: missing field {key!r}")
        if isinstance(meta[key], bool) or not isinstance(meta[key], int) or meta[key] < 1:
            raise SchemaError(f"meta: field {key!r} must be a positive integer")
    window_len = meta["window_len"]
    feature_dim = meta["feature_dim"]
    filters = meta["filters"]
    hidden = meta["hidden"]
    notes = meta.get("notes", "")
    if not isinstance(notes, str):
        raise SchemaError("meta: field 'notes' must be a string")

    for name in TENSOR_NAMES:
        if name not in tensors:
            raise SchemaError(f"missing tensor {name!r}")

    arrays = {name: _as_array(name, tensors[name]) for name in TENSOR_NAMES}

    kernel = arrays["conv.kernel"]
    if kernel.ndim != 3:
        raise SchemaError(f"tensor 'conv.kernel' must be rank 3, got rank {kernel.ndim}")
    ksize = kernel.shape[2]
    if ksize % 2 != 1:
        raise ValidationError(f"conv kernel size must be odd, got {ksize}")
    _check_shape("conv.kernel", kernel, (filters, feature_dim, ksize), "meta filters/feature_dim")
    _check_shape("conv.bias", arrays["conv.bias"], (filters,), "'conv.kernel'")

    layers = []
    for layer in range(1, NUM_LSTM_LAYERS + 1):
        input_dim = filters if layer == 1 else 2 * hidden
        anchor = "'conv.kernel'" if layer == 1 else f"'lstm.{layer - 1}.fw.U'"
        pair = []
        for direction in DIRECTIONS:
            prefix = f"lstm.{layer}.{direction}"
            w = arrays[f"{prefix}.W"]
            u = arrays[f"{prefix}.U"]
            b = arrays[f"{prefix}.b"]
            _check_shape(f"{prefix}.W", w, (4 * hidden, input_dim), anchor)
            _check_shape(f"{prefix}.U", u, (4 * hidden, hidden), f"'{prefix}.W'")
            _check_shape(f"{prefix}.b", b, (4 * hidden,), f"'{prefix}.W'")
            pair.append(LstmParams(w=w, u=u, b=b))
        layers.append(tuple(pair))

    _check_shape("dense.W", arrays["dense.W"], (NUM_CLASSES, 2 * hidden),
                 f"'lstm.{NUM_LSTM_LAYERS}.fw.U'")
    _check_shape("dense.b", arrays["dense.b"], (NUM_CLASSES,), "'dense.W'")

    return ModelWeights(
        conv_kernel=kernel,
        conv_bias=arrays["conv.bias"],
        layers=tuple(layers),
        dense_w=arrays["dense.W"],
        dense_b=arrays["dense.b"],
        window_len=window_len,
        feature_dim=feature_dim,
        filters=filters,
        hidden=hidden,
        notes=notes,
    )


def save_weights(weights: ModelWeights) -> str:
    """Serialize weights to the canonical JSON document form."""
    tensors: dict[str, object] = {
        "conv.kernel": weights.conv_kernel.tolist(),
        "conv.bias": weights.conv_bias.tolist(),
    }
    for layer_idx, (fw, bw) in enumerate(weights.layers, start=1):
        for direction, params in (("fw", fw), ("bw", bw)):
            prefix = f"lstm.{layer_idx}.{direction}"
            tensors[f"{prefix}.W"] = params.w.tolist()
            tensors[f"{prefix}.U"] = params.u.tolist()
            tensors[f"{prefix}.b"] = params.b.tolist()
    tensors["dense.W"] = weights.dense_w.tolist()
    tensors["dense.b"] = weights.dense_b.tolist()
    doc = {
        "meta": {
            "window_len": weights.window_len,
            "feature_dim": weights.feature_dim,
            "filters": weights.filters,
            "hidden": weights.hidden,
            "notes": weights.notes,
        },
        "tensors": tensors,
    }
    return json.dumps(doc, indent=1)


def load_weights_file(path: str | Path) -> ModelWeights:
    return load_weights(Path(path).read_text(encoding="utf-8"))


def save_weights_file(weights: ModelWeights, path: str | Path) -> None:
    Path(path).write_text(save_weights(weights), encoding="utf-8")


def init_test_weights(
    seed: int,
    dims: tuple[int, int, int, int],
    kernel_size: int = 3,
    notes: str = "",
) -> ModelWeights:
    """Deterministic fixture weights, uniform in [-0.5, 0.5].

    Values come from one SplitMix64 stream (see poseguard.rng) consumed in
    the canonical tensor order, each tensor filled row-major, so a given
    (seed, dims, kernel_size) always produces a bit-identical file.
    """
    window_len, feature_dim, filters, hidden = dims
    if min(dims) < 1:
        raise ValidationError("all weight dimensions must be positive")
    if kernel_size % 2 != 1 or kernel_size < 1:
        raise ValidationError("kernel_size must be odd and positive")

    rng = SplitMix64(seed)

    def fill(shape: tuple[int, ...]) -> np.ndarray:
        flat = [rng.uniform(-0.5, 0.5) for _ in range(int(np.prod(shape)))]
        return np.asarray(flat, dtype=np.float64).reshape(shape)

    conv_kernel = fill((filters, feature_dim, kernel_size))
    conv_bias = fill((filters,))
    layers = []
    for layer in range(1, NUM_LSTM_LAYERS + 1):
        input_dim = filters if layer == 1 else 2 * hidden
        pair = []
        for _direction in DIRECTIONS:
            pair.append(
                LstmParams(
                    w=fill((4 * hidden, input_dim)),
                    u=fill((4 * hidden, hidden)),
                    b=fill((4 * hidden,)),
                )
            )
        layers.append(tuple(pair))
    dense_w = fill((NUM_CLASSES, 2 * hidden))
    dense_b = fill((NUM_CLASSES,))
    return ModelWeights(
        conv_kernel=conv_kernel,
        conv_bias=conv_bias,
        layers=tuple(layers),
        dense_w=dense_w,
        dense_b=dense_b,
        window_len=window_len,
        feature_dim=feature_dim,
        filters=filters,
        hidden=hidden,
        notes=notes,
    )
