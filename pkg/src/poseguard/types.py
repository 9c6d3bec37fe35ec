"""Domain types for pose keypoint streams.

Keypoints follow the COCO 17-joint convention; every pose carries exactly
17 joints in the fixed index order below.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .errors import ValidationError

# COCO-17 joint indices
NOSE = 0
LEFT_EYE = 1
RIGHT_EYE = 2
LEFT_EAR = 3
RIGHT_EAR = 4
LEFT_SHOULDER = 5
RIGHT_SHOULDER = 6
LEFT_ELBOW = 7
RIGHT_ELBOW = 8
LEFT_WRIST = 9
RIGHT_WRIST = 10
LEFT_HIP = 11
RIGHT_HIP = 12
LEFT_KNEE = 13
RIGHT_KNEE = 14
LEFT_ANKLE = 15
RIGHT_ANKLE = 16

NUM_KEYPOINTS = 17

KEYPOINT_NAMES = (
    "nose", "left_eye", "right_eye", "left_ear", "right_ear",
    "left_shoulder", "right_shoulder", "left_elbow", "right_elbow",
    "left_wrist", "right_wrist", "left_hip", "right_hip",
    "left_knee", "right_knee", "left_ankle", "right_ankle",
)

# Class labels in fixed order; index doubles as the dense-head output index.
LABELS = ("neutral", "aggressor", "victim")


@dataclass(frozen=True)
class Keypoint:
    """One joint location in pixels plus its detection confidence."""

    x: float
    y: float
    confidence: float

    def validate(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValidationError(f"non-finite keypoint coordinate ({self.x}, {self.y})")
        if not math.isfinite(self.confidence) or not 0.0 <= self.confidence <= 1.0:
            raise ValidationError(f"keypoint confidence {self.confidence} outside [0, 1]")


@dataclass(frozen=True)
class Pose:
    """Fixed sequence of 17 keypoints in COCO order."""

    keypoints: tuple[Keypoint, ...]

    def validate(self) -> None:
        if len(self.keypoints) != NUM_KEYPOINTS:
            raise ValidationError(
                f"expected {NUM_KEYPOINTS} keypoints, got {len(self.keypoints)}"
            )
        for kp in self.keypoints:
            kp.validate()

    def __getitem__(self, index: int) -> Keypoint:
        return self.keypoints[index]


@dataclass(frozen=True)
class BBox:
    """Axis-aligned box: top-left corner plus extent, in pixels."""

    x: float
    y: float
    w: float
    h: float

    def validate(self) -> None:
        for v in (self.x, self.y, self.w, self.h):
            if not math.isfinite(v):
                raise ValidationError(f"non-finite bbox value {v}")
        if self.w <= 0 or self.h <= 0:
            raise ValidationError(f"bbox extent must be positive, got w={self.w} h={self.h}")

    @property
    def diagonal(self) -> float:
        return math.hypot(self.w, self.h)

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.x, self.y, self.w, self.h)

    def to_cxcyah(self) -> tuple[float, float, float, float]:
        """Center x, center y, aspect ratio w/h, height."""
        return (self.x + self.w / 2.0, self.y + self.h / 2.0, self.w / self.h, self.h)

    @staticmethod
    def from_cxcyah(cx: float, cy: float, a: float, h: float) -> "BBox":
        w = a * h
        return BBox(cx - w / 2.0, cy - h / 2.0, w, h)


@dataclass(frozen=True)
class Detection:
    """One person detection: bounding box, pose, and detector score."""

    bbox: BBox
    pose: Pose
    score: float

    def validate(self) -> None:
        self.bbox.validate()
        self.pose.validate()
        if not math.isfinite(self.score) or not 0.0 <= self.score <= 1.0:
            raise ValidationError(f"detection score {self.score} outside [0, 1]")


@dataclass(frozen=True)
class Frame:
    """One timestamped camera frame with zero or more person detections."""

    stream_id: str
    frame_index: int
    timestamp_ms: int
    detections: tuple[Detection, ...] = field(default_factory=tuple)

    def validate(self) -> None:
        if self.frame_index < 0:
            raise ValidationError(f"frame_index must be non-negative, got {self.frame_index}")
        for det in self.detections:
            det.validate()
