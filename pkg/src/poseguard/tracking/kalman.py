"""Constant-velocity Kalman filter over box state (cx, cy, a, h).

State vector: (cx, cy, a, h, vcx, vcy, va, vh) where a is the aspect
ratio w/h. Process and measurement noise scale with box height through
std_weight_position (default 1/20) and std_weight_velocity (default
1/160); the aspect components use small fixed stds.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ..errors import ValidationError
from ..types import BBox

STATE_DIM = 8
MEAS_DIM = 4

# Aspect-ratio noise stds (dimensionless, not height-scaled).
_ASPECT_INIT_STD = 1e-2
_ASPECT_VEL_INIT_STD = 1e-5
_ASPECT_PROCESS_STD = 1e-2
_ASPECT_VEL_PROCESS_STD = 1e-5
_ASPECT_MEAS_STD = 1e-1

_MIN_ASPECT = 1e-4
_MIN_HEIGHT = 1e-4


@dataclass
class KalmanState:
    mean: np.ndarray  # (8,)
    covariance: np.ndarray  # (8, 8)

    def to_bbox(self) -> BBox:
        """Current box estimate; aspect and height clamped to stay positive."""
        cx, cy, a, h = self.mean[:4]
        a = max(float(a), _MIN_ASPECT)
        h = max(float(h), _MIN_HEIGHT)
        return BBox.from_cxcyah(float(cx), float(cy), a, h)


class KalmanFilter:
    def __init__(
        self,
        std_weight_position: float = 1.0 / 20,
        std_weight_velocity: float = 1.0 / 160,
    ):
        self.std_weight_position = std_weight_position
        self.std_weight_velocity = std_weight_velocity
        self._transition = np.eye(STATE_DIM)
        for i in range(MEAS_DIM):
            self._transition[i, MEAS_DIM + i] = 1.0
        self._measurement = np.eye(MEAS_DIM, STATE_DIM)

    def init(self, measurement) -> KalmanState:
        """New state from a (cx, cy, a, h) measurement; velocities start at 0."""
        cx, cy, a, h = (float(v) for v in measurement)
        if h <= 0:
            raise ValidationError(f"measurement height must be positive, got {h}")
        mean = np.array([cx, cy, a, h, 0.0, 0.0, 0.0, 0.0])
        std = np.array([
            2 * self.std_weight_position * h,
            2 * self.std_weight_position * h,
            _ASPECT_INIT_STD,
            2 * self.std_weight_position * h,
            10 * self.std_weight_velocity * h,
            10 * self.std_weight_velocity * h,
            _ASPECT_VEL_INIT_STD,
            10 * self.std_weight_velocity * h,
        ])
        return KalmanState(mean=mean, covariance=np.diag(std ** 2))

    def _process_noise(self, h: float) -> np.ndarray:
        std = np.array([
            self.std_weight_position * h,
            self.std_weight_position * h,
            _ASPECT_PROCESS_STD,
            self.std_weight_position * h,
            self.std_weight_velocity * h,
            self.std_weight_velocity * h,
            _ASPECT_VEL_PROCESS_STD,
            self.std_weight_velocity * h,
        ])
        return np.diag(std ** 2)

    def predict(self, state: KalmanState) -> KalmanState:
        """One constant-velocity step: position += velocity, covariance grows."""
        f = self._transition
        h = max(float(state.mean[3]), _MIN_HEIGHT)
        mean = f @ state.mean
        cov = f @ state.covariance @ f.T + self._process_noise(h)
        cov = (cov + cov.T) / 2.0  # keep symmetric under round-off
        return KalmanState(mean=mean, covariance=cov)

    def update(self, state: KalmanState, measurement) -> KalmanState:
        """Fuse a (cx, cy, a, h) measurement via the standard gain update."""
        z = np.array([float(v) for v in measurement])
        if z[3] <= 0:
            raise ValidationError(f"measurement height must be positive, got {z[3]}")
        h = max(float(state.mean[3]), _MIN_HEIGHT)
        std = np.array([
            self.std_weight_position * h,
            self.std_weight_position * h,
            _ASPECT_MEAS_STD,
            self.std_weight_position * h,
        ])
        meas_cov = np.diag(std ** 2)
        hm = self._measurement
        projected_mean = hm @ state.mean
        innovation_cov = hm @ state.covariance @ hm.T + meas_cov
        try:
            chol = np.linalg.cholesky(innovation_cov)
        except np.linalg.LinAlgError as exc:
            raise ValidationError("singular innovation covariance") from exc
        # gain = P H^T S^-1 via two triangular solves
        pht = state.covariance @ hm.T
        gain = np.linalg.solve(chol.T, np.linalg.solve(chol, pht.T)).T
        innovation = z - projected_mean
        mean = state.mean + gain @ innovation
        cov = state.covariance - gain @ innovation_cov @ gain.T
        cov = (cov + cov.T) / 2.0
        return KalmanState(mean=mean, covariance=cov)
