"""scikit-learn style facades over the feature and classifier kernels.

These let the kernels compose with sklearn pipelines and model-selection
tooling. Rows are flattened poses: 51 keypoint values (x, y, confidence
per keypoint in skeleton order), plus 4 bbox values (x, y, w, h) for the
distance transformer, which needs a normalization fallback.

The classifier is inference-only: weights come from a weight file, and
fit() just records the class list so the estimator plays nicely with
sklearn tooling.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClassifierMixin, TransformerMixin
from sklearn.exceptions import NotFittedError

from .features import (
    ANGLE_DIM,
    DISTANCE_DIM,
    angle_features,
    distance_features,
)
from .network import model_forward
from .types import LABELS, BBox, Detection
from .validation import POSE_BBOX_COLS, POSE_COLS, check_matrix, check_windows_array
from .weights import ModelWeights, load_weights_file


def detection_row(det: Detection) -> np.ndarray:
    """Flatten one detection to the 55-column row the transformers accept."""
    kps = [v for kp in det.pose.keypoints for v in (kp.x, kp.y, kp.confidence)]
    return np.array(kps + [det.bbox.x, det.bbox.y, det.bbox.w, det.bbox.h])


class DistanceFeatures(BaseEstimator, TransformerMixin):
    """Rows of 55 pose+bbox values -> rows of 24 normalized distances.

    With carry=True the rows are treated as consecutive frames of one
    track and low-confidence entries repeat the previous row's value.
    """

    def __init__(self, conf_threshold: float = 0.3, carry: bool = False):
        self.conf_threshold = conf_threshold
        self.carry = carry

    def fit(self, X, y=None):
        check_matrix(X, POSE_BBOX_COLS)
        return self

    def transform(self, X) -> np.ndarray:
        arr = check_matrix(X, POSE_BBOX_COLS)
        out = np.zeros((arr.shape[0], DISTANCE_DIM))
        prev = None
        for i, row in enumerate(arr):
            fv = distance_features(
                row[:POSE_COLS].reshape(17, 3),
                BBox(*row[POSE_COLS:]),
                self.conf_threshold,
                prev,
            )
            out[i] = fv.values
            if self.carry and fv.valid:
                prev = fv.values
        return out


class AngleFeatures(BaseEstimator, TransformerMixin):
    """Rows of 51 pose values -> rows of 12 joint angles in radians."""

    def __init__(self, conf_threshold: float = 0.3, carry: bool = False):
        self.conf_threshold = conf_threshold
        self.carry = carry

    def fit(self, X, y=None):
        check_matrix(X, POSE_COLS)
        return self

    def transform(self, X) -> np.ndarray:
        arr = check_matrix(X, POSE_COLS)
        out = np.zeros((arr.shape[0], ANGLE_DIM))
        prev = None
        for i, row in enumerate(arr):
            fv = angle_features(row.reshape(17, 3), self.conf_threshold, prev)
            out[i] = fv.values
            if self.carry and fv.valid:
                prev = fv.values
        return out


class CnnBiLstmClassifier(BaseEstimator, ClassifierMixin):
    """Windowed-sequence classifier backed by a weight file.

    X is (n_windows, window_len, feature_dim); predictions are label
    names. Pass weights directly or a path to load them from.
    """

    def __init__(self, weights: ModelWeights | None = None, weights_path: str | None = None):
        self.weights = weights
        self.weights_path = weights_path

    def _resolve_weights(self) -> ModelWeights:
        if self.weights is not None:
            return self.weights
        if self.weights_path is not None:
            return load_weights_file(self.weights_path)
        raise NotFittedError("no weights: pass `weights` or `weights_path`")

    def fit(self, X, y=None):
        w = self._resolve_weights()
        check_windows_array(X, w.window_len, w.feature_dim)
        self.classes_ = np.array(LABELS)
        return self

    def predict_proba(self, X) -> np.ndarray:
        w = self._resolve_weights()
        arr = check_windows_array(X, w.window_len, w.feature_dim)
        return model_forward(arr, w)

    def predict(self, X) -> np.ndarray:
        probs = self.predict_proba(X)
        return np.array(LABELS)[np.argmax(probs, axis=1)]
