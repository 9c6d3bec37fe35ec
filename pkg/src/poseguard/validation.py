"""Input checks shared by the estimator facades and CLI loaders."""

from __future__ import annotations

import numpy as np

from .errors import ValidationError
from .types import LABELS, NUM_KEYPOINTS

POSE_COLS = NUM_KEYPOINTS * 3  # x, y, confidence per keypoint
POSE_BBOX_COLS = POSE_COLS + 4  # ... plus x, y, w, h


def check_matrix(X, n_cols: int, name: str = "X") -> np.ndarray:
    """2-D float array with the expected column count and finite entries."""
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim != 2:
        raise ValidationError(f"{name} must be 2-D, got shape {arr.shape}")
    if arr.shape[1] != n_cols:
        raise ValidationError(f"{name} must have {n_cols} columns, got {arr.shape[1]}")
    if not np.isfinite(arr).all():
        raise ValidationError(f"{name} contains non-finite values")
    return arr


def check_windows_array(X, window_len: int | None = None, feature_dim: int | None = None) -> np.ndarray:
    """3-D (n_windows, window_len, feature_dim) float array, finite."""
    arr = np.asarray(X, dtype=np.float64)
    if arr.ndim != 3:
        raise ValidationError(f"windows must be 3-D (N, T, D), got shape {arr.shape}")
    if window_len is not None and arr.shape[1] != window_len:
        raise ValidationError(f"windows have length {arr.shape[1]}, expected {window_len}")
    if feature_dim is not None and arr.shape[2] != feature_dim:
        raise ValidationError(f"windows have {arr.shape[2]} features, expected {feature_dim}")
    if not np.isfinite(arr).all():
        raise ValidationError("windows contain non-finite values")
    return arr


def check_labels(y) -> np.ndarray:
    """Label names or indices as an index array."""
    out = []
    for label in y:
        if isinstance(label, str):
            if label not in LABELS:
                raise ValidationError(f"unknown label {label!r}")
            out.append(LABELS.index(label))
        else:
            idx = int(label)
            if not 0 <= idx < len(LABELS):
                raise ValidationError(f"label index {idx} out of range")
            out.append(idx)
    return np.array(out, dtype=np.int64)
