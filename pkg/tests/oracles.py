"""Brute-force reference implementations used to cross-check the kernels.

Everything here is deliberately written the slow, obvious way — scalar
loops, exhaustive enumeration, pixel rasterization — and shares no code
with the package kernels it checks. When a test compares a kernel to
one of these, agreement is evidence, not tautology.
"""

from __future__ import annotations

import math
from itertools import permutations

import numpy as np

MAX_BRUTE_DIM = 7
_MAX_PERMS = 200_000


def brute_assignment(cost) -> tuple[tuple[tuple[int, int], ...], float]:
    """Exhaustive minimum-cost assignment.

    Returns (pairs, total) where pairs is sorted by row and, among
    equal-total optima, is the lexicographically smallest pair list.
    Totals are math.fsum'd so equal sums compare exactly.
    """
    grid = [[float(v) for v in row] for row in np.asarray(cost, dtype=np.float64)]
    n_rows = len(grid)
    n_cols = len(grid[0]) if n_rows else 0
    if min(n_rows, n_cols) > MAX_BRUTE_DIM:
        raise ValueError(f"brute force refuses min dim > {MAX_BRUTE_DIM}")
    if n_rows == 0 or n_cols == 0:
        return (), 0.0
    if math.perm(max(n_rows, n_cols), min(n_rows, n_cols)) > _MAX_PERMS:
        raise ValueError("too many permutations to enumerate")

    best_pairs = None
    best_total = None
    if n_rows <= n_cols:
        for cols in permutations(range(n_cols), n_rows):
            pairs = tuple((i, cols[i]) for i in range(n_rows))
            total = math.fsum(grid[i][j] for i, j in pairs)
            if (
                best_total is None
                or total < best_total
                or (total == best_total and pairs < best_pairs)
            ):
                best_pairs, best_total = pairs, total
    else:
        for rows in permutations(range(n_rows), n_cols):
            pairs = tuple(sorted((rows[j], j) for j in range(n_cols)))
            total = math.fsum(grid[i][j] for i, j in pairs)
            if (
                best_total is None
                or total < best_total
                or (total == best_total and pairs < best_pairs)
            ):
                best_pairs, best_total = pairs, total
    return best_pairs, best_total


def iou_raster(a, b) -> float:
    """IoU by counting unit pixels; exact for integer boxes."""
    ax, ay, aw, ah = (int(v) for v in a)
    bx, by, bw, bh = (int(v) for v in b)
    x0 = min(ax, bx)
    y0 = min(ay, by)
    width = max(ax + aw, bx + bw) - x0
    height = max(ay + ah, by + bh) - y0
    grid_a = np.zeros((height, width), dtype=bool)
    grid_b = np.zeros((height, width), dtype=bool)
    grid_a[ay - y0 : ay - y0 + ah, ax - x0 : ax - x0 + aw] = True
    grid_b[by - y0 : by - y0 + bh, bx - x0 : bx - x0 + bw] = True
    intersection = int((grid_a & grid_b).sum())
    union = int((grid_a | grid_b).sum())
    return intersection / union


# --- scalar-loop classifier reference ------------------------------------


def _sigmoid(x: float) -> float:
    if x >= 0.0:
        return 1.0 / (1.0 + math.exp(-x))
    e = math.exp(x)
    return e / (1.0 + e)


def reference_conv(x, kernel, bias):
    """Same-padded temporal convolution + ReLU; x is T rows of D values."""
    n_steps = len(x)
    n_filters = len(kernel)
    k = len(kernel[0][0])
    pad = (k - 1) // 2
    out = []
    for t in range(n_steps):
        row = []
        for f in range(n_filters):
            acc = bias[f]
            for tap in range(k):
                src = t + tap - pad
                if 0 <= src < n_steps:
                    for d in range(len(kernel[f])):
                        acc += kernel[f][d][tap] * x[src][d]
            row.append(acc if acc > 0.0 else 0.0)
        out.append(row)
    return out


def _lstm_direction(xs, w, u, b, reverse):
    """Hidden state per input index for one direction; gates i, f, g, o."""
    n_steps = len(xs)
    hidden = len(u[0])
    h = [0.0] * hidden
    c = [0.0] * hidden
    outs = [None] * n_steps
    order = range(n_steps - 1, -1, -1) if reverse else range(n_steps)
    for t in order:
        x = xs[t]
        z = []
        for j in range(4 * hidden):
            acc = b[j]
            for d in range(len(x)):
                acc += w[j][d] * x[d]
            for d in range(hidden):
                acc += u[j][d] * h[d]
            z.append(acc)
        new_h = []
        new_c = []
        for d in range(hidden):
            gate_i = _sigmoid(z[d])
            gate_f = _sigmoid(z[hidden + d])
            gate_g = math.tanh(z[2 * hidden + d])
            gate_o = _sigmoid(z[3 * hidden + d])
            cd = gate_f * c[d] + gate_i * gate_g
            new_c.append(cd)
            new_h.append(gate_o * math.tanh(cd))
        h, c = new_h, new_c
        outs[t] = h
    return outs


def reference_bilstm(xs, fw, bw, return_sequences):
    """fw/bw are (w, u, b) nested-list triples."""
    fw_outs = _lstm_direction(xs, *fw, reverse=False)
    bw_outs = _lstm_direction(xs, *bw, reverse=True)
    if return_sequences:
        return [fw_outs[t] + bw_outs[t] for t in range(len(xs))]
    return fw_outs[-1] + bw_outs[0]


def reference_softmax(logits):
    peak = max(logits)
    exps = [math.exp(v - peak) for v in logits]
    norm = math.fsum(exps)
    return [e / norm for e in exps]


def reference_forward(window, weights):
    """Scalar-loop forward pass; small dims only (T <= 20, H <= 16)."""
    xs = np.asarray(window, dtype=np.float64).tolist()
    assert len(xs) <= 20 and weights.hidden <= 16
    h = reference_conv(xs, weights.conv_kernel.tolist(), weights.conv_bias.tolist())
    last = len(weights.layers) - 1
    for idx, (fw, bw) in enumerate(weights.layers):
        h = reference_bilstm(
            h,
            (fw.w.tolist(), fw.u.tolist(), fw.b.tolist()),
            (bw.w.tolist(), bw.u.tolist(), bw.b.tolist()),
            return_sequences=idx < last,
        )
    dense_w = weights.dense_w.tolist()
    dense_b = weights.dense_b.tolist()
    logits = []
    for j in range(len(dense_w)):
        acc = dense_b[j]
        for d in range(len(h)):
            acc += dense_w[j][d] * h[d]
        logits.append(acc)
    return reference_softmax(logits)


# --- counting metrics reference -------------------------------------------


def counting_report(predictions, truths, classes):
    """Per-class precision/recall/F1/support by direct counting."""
    out = {}
    for cls in classes:
        tp = sum(1 for p, t in zip(predictions, truths) if p == cls and t == cls)
        fp = sum(1 for p, t in zip(predictions, truths) if p == cls and t != cls)
        fn = sum(1 for p, t in zip(predictions, truths) if p != cls and t == cls)
        support = sum(1 for t in truths if t == cls)
        precision = tp / (tp + fp) if tp + fp else 0.0
        recall = tp / (tp + fn) if tp + fn else 0.0
        f1 = (
            2.0 * precision * recall / (precision + recall)
            if precision + recall
            else 0.0
        )
        out[cls] = (precision, recall, f1, support)
    return out
