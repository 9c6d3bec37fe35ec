"""Forward pass of the temporal conv + stacked BiLSTM + softmax classifier.

Pure numpy inference. One 1-D convolution over time (same padding, ReLU)
feeds five bidirectional LSTM layers; the last layer returns only the
final forward state concatenated with the final backward state, which a
dense layer maps to 3-class softmax probabilities. Dropout exists only
at training time and has no inference counterpart here.

LSTM gate rows are stacked in i, f, g, o order:

    z = W x + U h_prev + b
    i, f, o = sigmoid(z_i), sigmoid(z_f), sigmoid(z_o);  g = tanh(z_g)
    c = f * c_prev + i * g;  h = o * tanh(c)
"""

from __future__ import annotations

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view
from scipy.special import expit

from .errors import ValidationError
from .weights import LstmParams, ModelWeights


def conv1d_forward(x: np.ndarray, kernel: np.ndarray, bias: np.ndarray) -> np.ndarray:
    """Temporal convolution with zero same-padding and ReLU.

    x is (T, D) or batched (N, T, D); kernel is (F, D, K) with K odd.
    Output has the same time length with D replaced by F.
    """
    batched = x.ndim == 3
    xs = x if batched else x[None]
    n, t, d = xs.shape
    f, d2, k = kernel.shape
    assert d2 == d and k % 2 == 1
    pad = (k - 1) // 2
    padded = np.zeros((n, t + 2 * pad, d))
    padded[:, pad : pad + t] = xs
    windows = sliding_window_view(padded, k, axis=1)  # (N, T, D, K)
    out = np.einsum("ntdk,fdk->ntf", windows, kernel) + bias
    out = np.maximum(out, 0.0)
    return out if batched else out[0]


def lstm_cell_step(
    x: np.ndarray, h_prev: np.ndarray, c_prev: np.ndarray, params: LstmParams
) -> tuple[np.ndarray, np.ndarray]:
    """One LSTM time step; x is (input,) or (N, input), states match H."""
    hidden = params.u.shape[1]
    z = x @ params.w.T + h_prev @ params.u.T + params.b
    i = expit(z[..., :hidden])
    f = expit(z[..., hidden : 2 * hidden])
    g = np.tanh(z[..., 2 * hidden : 3 * hidden])
    o = expit(z[..., 3 * hidden :])
    c = f * c_prev + i * g
    h = o * np.tanh(c)
    return h, c


def bilstm_layer_forward(
    x: np.ndarray,
    fw: LstmParams,
    bw: LstmParams,
    return_sequences: bool = True,
) -> np.ndarray:
    """Run one bidirectional layer over (T, input) or (N, T, input).

    With return_sequences the output keeps the time axis and concatenates
    both directions per step, (..., T, 2H). Without it the output is the
    forward state after the last step joined with the backward state
    after its last step (which reads input index 0), (..., 2H).
    """
    batched = x.ndim == 3
    xs = x if batched else x[None]
    n, t, _ = xs.shape
    hidden = fw.u.shape[1]

    h = np.zeros((n, hidden))
    c = np.zeros((n, hidden))
    fw_out = np.empty((n, t, hidden))
    for step in range(t):
        h, c = lstm_cell_step(xs[:, step], h, c, fw)
        fw_out[:, step] = h

    h = np.zeros((n, hidden))
    c = np.zeros((n, hidden))
    bw_out = np.empty((n, t, hidden))
    for step in reversed(range(t)):
        h, c = lstm_cell_step(xs[:, step], h, c, bw)
        bw_out[:, step] = h

    if return_sequences:
        out = np.concatenate([fw_out, bw_out], axis=2)
    else:
        out = np.concatenate([fw_out[:, -1], bw_out[:, 0]], axis=1)
    return out if batched else out[0]


def softmax(logits: np.ndarray) -> np.ndarray:
    """Numerically stable softmax along the last axis."""
    shifted = logits - np.max(logits, axis=-1, keepdims=True)
    e = np.exp(shifted)
    return e / np.sum(e, axis=-1, keepdims=True)


def dense_softmax(x: np.ndarray, w: np.ndarray, b: np.ndarray) -> np.ndarray:
    return softmax(x @ w.T + b)


def model_forward(windows: np.ndarray, weights: ModelWeights) -> np.ndarray:
    """Class probabilities for feature windows.

    windows is (N, T, D) or a single (T, D); output is (N, 3) or (3,).
    """
    batched = windows.ndim == 3
    xs = np.asarray(windows, dtype=np.float64)
    xs = xs if batched else xs[None]
    if xs.shape[1:] != (weights.window_len, weights.feature_dim):
        raise ValidationError(
            f"window shape {xs.shape[1:]} does not match weight metadata "
            f"({weights.window_len}, {weights.feature_dim})"
        )

    h = conv1d_forward(xs, weights.conv_kernel, weights.conv_bias)
    last = len(weights.layers) - 1
    for idx, (fw, bw) in enumerate(weights.layers):
        h = bilstm_layer_forward(h, fw, bw, return_sequences=idx < last)
    probs = dense_softmax(h, weights.dense_w, weights.dense_b)
    return probs if batched else probs[0]


def argmax_label(probs: np.ndarray) -> int:
    """Winning class index; exact ties resolve to the lowest index (neutral first)."""
    return int(np.argmax(probs))
