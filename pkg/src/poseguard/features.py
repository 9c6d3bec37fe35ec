"""Per-pose feature vectors: normalized keypoint distances or joint angles.

Distance mode produces 24 pairwise keypoint distances divided by a body
scale (torso length, falling back to the bbox diagonal), which makes the
vector invariant to translation and uniform scaling. Angle mode produces
12 interior angles in radians, additionally invariant to rotation.

A feature whose keypoints fall below the confidence threshold takes the
matching entry of the previous vector for the same track when one is
given, else 0.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DegeneratePoseError
from .types import (
    LEFT_HIP,
    LEFT_SHOULDER,
    NOSE,
    RIGHT_HIP,
    RIGHT_SHOULDER,
    BBox,
    Pose,
)

DISTANCE_DIM = 24
ANGLE_DIM = 12

MID_HIP = -1  # pseudo-keypoint: midpoint of the two hips

# 24 keypoint pairs emphasizing hand/head/limb extension and leaning.
DISTANCE_PAIRS: tuple[tuple[int, int], ...] = (
    (0, 9), (0, 10), (9, 10), (9, 5), (10, 6), (9, 6), (10, 5),
    (9, 11), (10, 12), (7, 11), (8, 12),
    (0, MID_HIP), (5, MID_HIP), (6, MID_HIP), (9, MID_HIP), (10, MID_HIP),
    (13, 14), (15, 16), (15, 11), (16, 12), (9, 13), (10, 14),
    (0, 5), (0, 6),
)

# Interior angles at articulated joints: (end, vertex, end) keypoint triples.
ANGLE_TRIPLES: tuple[tuple[int, int, int], ...] = (
    (5, 7, 9),     # left elbow
    (6, 8, 10),    # right elbow
    (7, 5, 11),    # left shoulder
    (8, 6, 12),    # right shoulder
    (5, 11, 13),   # left hip
    (6, 12, 14),   # right hip
    (11, 13, 15),  # left knee
    (12, 14, 16),  # right knee
)

_SEGMENT_EPS = 1e-6


@dataclass(frozen=True)
class FeatureVector:
    mode: str  # "distance" | "angle"
    values: np.ndarray
    valid: bool = True

    def __post_init__(self):
        expected = DISTANCE_DIM if self.mode == "distance" else ANGLE_DIM
        assert self.values.shape == (expected,)


def pose_to_array(pose: Pose) -> np.ndarray:
    """Pose as a (17, 3) float array of x, y, confidence rows."""
    return np.array([[kp.x, kp.y, kp.confidence] for kp in pose.keypoints])


def _as_keypoint_array(pose) -> np.ndarray:
    if isinstance(pose, Pose):
        return pose_to_array(pose)
    arr = np.asarray(pose, dtype=np.float64)
    assert arr.shape == (17, 3)
    return arr


def body_scale(pose, bbox: BBox, conf_threshold: float) -> float:
    """Normalizing length in pixels: torso length, else the bbox diagonal.

    Torso length is the distance from mid-shoulder to mid-hip, used when
    all four torso keypoints meet the confidence threshold and the length
    is nonzero. Raises DegeneratePoseError when no positive scale exists.
    """
    kps = _as_keypoint_array(pose)
    torso_idx = (LEFT_SHOULDER, RIGHT_SHOULDER, LEFT_HIP, RIGHT_HIP)
    if all(kps[i, 2] >= conf_threshold for i in torso_idx):
        mid_shoulder = (kps[LEFT_SHOULDER, :2] + kps[RIGHT_SHOULDER, :2]) / 2.0
        mid_hip = (kps[LEFT_HIP, :2] + kps[RIGHT_HIP, :2]) / 2.0
        torso = float(np.hypot(*(mid_shoulder - mid_hip)))
        if torso > 0.0:
            return torso
    diagonal = math.hypot(bbox.w, bbox.h)
    if diagonal > 0.0:
        return diagonal
    raise DegeneratePoseError("pose has zero torso length and zero bbox diagonal")


def _point(kps: np.ndarray, index: int) -> np.ndarray:
    if index == MID_HIP:
        return (kps[LEFT_HIP, :2] + kps[RIGHT_HIP, :2]) / 2.0
    return kps[index, :2]


def _confident(kps: np.ndarray, index: int, threshold: float) -> bool:
    if index == MID_HIP:
        return bool(kps[LEFT_HIP, 2] >= threshold and kps[RIGHT_HIP, 2] >= threshold)
    return bool(kps[index, 2] >= threshold)


def distance_features(
    pose,
    bbox: BBox,
    conf_threshold: float = 0.3,
    prev_values: np.ndarray | None = None,
) -> FeatureVector:
    """24 scale-normalized keypoint distances for one pose."""
    kps = _as_keypoint_array(pose)
    try:
        scale = body_scale(kps, bbox, conf_threshold)
    except DegeneratePoseError:
        return FeatureVector("distance", np.zeros(DISTANCE_DIM), valid=False)

    values = np.zeros(DISTANCE_DIM)
    for k, (i, j) in enumerate(DISTANCE_PAIRS):
        if _confident(kps, i, conf_threshold) and _confident(kps, j, conf_threshold):
            values[k] = float(np.hypot(*(_point(kps, i) - _point(kps, j)))) / scale
        elif prev_values is not None:
            values[k] = prev_values[k]
    return FeatureVector("distance", values)


def _vector_angle(u: np.ndarray, v: np.ndarray) -> float:
    """Interior angle between two segment vectors, in [0, pi].

    atan2 of (|cross|, dot) stays accurate near collinearity, where the
    arccos form loses digits. Segments shorter than 1e-6 px have no
    direction; the angle is reported as 0.
    """
    if np.hypot(*u) < _SEGMENT_EPS or np.hypot(*v) < _SEGMENT_EPS:
        return 0.0
    cross = u[0] * v[1] - u[1] * v[0]
    dot = u[0] * v[0] + u[1] * v[1]
    return math.atan2(abs(cross), dot)


def angle_features(
    pose,
    conf_threshold: float = 0.3,
    prev_values: np.ndarray | None = None,
) -> FeatureVector:
    """12 interior joint and axis angles (radians) for one pose.

    Eight articulated-joint angles, then: torso axis vs hip line (lean),
    nose-to-mid-shoulder vs torso axis (head tilt), and each shoulder-to-
    wrist segment vs torso axis (arm raise). Every angle is between two
    pose segments, so the whole vector is rotation invariant.
    """
    kps = _as_keypoint_array(pose)
    values = np.zeros(ANGLE_DIM)

    def put(k: int, required: tuple[int, ...], u, v) -> None:
        if all(_confident(kps, i, conf_threshold) for i in required):
            values[k] = _vector_angle(np.asarray(u), np.asarray(v))
        elif prev_values is not None:
            values[k] = prev_values[k]

    for k, (a, b, c) in enumerate(ANGLE_TRIPLES):
        put(k, (a, b, c), _point(kps, a) - _point(kps, b), _point(kps, c) - _point(kps, b))

    mid_shoulder = (kps[LEFT_SHOULDER, :2] + kps[RIGHT_SHOULDER, :2]) / 2.0
    mid_hip = (kps[LEFT_HIP, :2] + kps[RIGHT_HIP, :2]) / 2.0
    torso_axis = mid_hip - mid_shoulder
    hip_line = kps[RIGHT_HIP, :2] - kps[LEFT_HIP, :2]
    torso_kps = (LEFT_SHOULDER, RIGHT_SHOULDER, LEFT_HIP, RIGHT_HIP)

    put(8, torso_kps, torso_axis, hip_line)
    put(9, (NOSE,) + torso_kps, mid_shoulder - kps[NOSE, :2], torso_axis)
    put(10, (LEFT_SHOULDER, 9) + torso_kps,
        kps[9, :2] - kps[LEFT_SHOULDER, :2], torso_axis)
    put(11, (RIGHT_SHOULDER, 10) + torso_kps,
        kps[10, :2] - kps[RIGHT_SHOULDER, :2], torso_axis)
    return FeatureVector("angle", values)


def compute_features(
    mode: str,
    pose,
    bbox: BBox,
    conf_threshold: float = 0.3,
    prev_values: np.ndarray | None = None,
) -> FeatureVector:
    if mode == "distance":
        return distance_features(pose, bbox, conf_threshold, prev_values)
    if mode == "angle":
        return angle_features(pose, conf_threshold, prev_values)
    raise ValueError(f"unknown feature mode {mode!r}")
