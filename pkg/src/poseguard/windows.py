"""Sliding feature windows over per-track feature streams.

A WindowBuffer accumulates one track's feature vectors and emits a
window of the last `window_len` rows on every push once full (stride 1,
so consecutive windows overlap in all but one row). A missed frame
within the carry grace re-appends the last valid vector; more than
`max_carry` consecutive misses reset the buffer, and the track must then
fill a whole fresh window before emitting again.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

from .features import FeatureVector


@dataclass(frozen=True)
class Window:
    """A (window_len, feature_dim) block of consecutive feature rows."""

    values: np.ndarray

    @property
    def window_len(self) -> int:
        return self.values.shape[0]

    @property
    def feature_dim(self) -> int:
        return self.values.shape[1]


class WindowBuffer:
    def __init__(self, window_len: int, feature_dim: int, max_carry: int = 3):
        assert window_len >= 1 and feature_dim >= 1 and max_carry >= 0
        self.window_len = window_len
        self.feature_dim = feature_dim
        self.max_carry = max_carry
        self._rows: deque[np.ndarray] = deque(maxlen=window_len)
        self._last_valid: np.ndarray | None = None
        self._consecutive_misses = 0

    def __len__(self) -> int:
        return len(self._rows)

    @property
    def last_valid_values(self) -> np.ndarray | None:
        return None if self._last_valid is None else self._last_valid.copy()

    def reset(self) -> None:
        self._rows.clear()
        self._last_valid = None
        self._consecutive_misses = 0

    def push(self, fv: FeatureVector | None) -> Window | None:
        """Add one frame's feature vector (None = no detection this frame).

        Returns the completed window for this frame, or None while the
        buffer is still filling or has just been reset by a carry overrun.
        An invalid (sentinel) vector counts as a miss.
        """
        if fv is not None and fv.valid:
            row = np.asarray(fv.values, dtype=np.float64).copy()
            assert row.shape == (self.feature_dim,)
            self._rows.append(row)
            self._last_valid = row
            self._consecutive_misses = 0
        else:
            self._consecutive_misses += 1
            if self._consecutive_misses > self.max_carry:
                self.reset()
                return None
            if self._last_valid is None:
                return None
            self._rows.append(self._last_valid.copy())

        if len(self._rows) == self.window_len:
            return Window(np.array(self._rows))
        return None


def build_dataset(sequences, window_len: int) -> np.ndarray:
    """Stack every stride-1 window from each sequence into one (N, T, D) array.

    Each sequence is an (n_i, D) array of feature rows; a sequence shorter
    than `window_len` contributes nothing.
    """
    windows = []
    feature_dim = 0
    for seq in sequences:
        arr = np.asarray(seq, dtype=np.float64)
        assert arr.ndim == 2
        feature_dim = arr.shape[1]
        for start in range(arr.shape[0] - window_len + 1):
            windows.append(arr[start : start + window_len])
    if not windows:
        return np.empty((0, window_len, feature_dim))
    return np.stack(windows)
