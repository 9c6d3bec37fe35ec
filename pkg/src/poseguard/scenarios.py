"""Deterministic synthetic pose scenarios for tests, demos, and benchmarks.

Each person is a rigid 17-keypoint figure translated at constant
velocity, with optional limb oscillation ("walking" swings arms and
legs, "arm_swing" swings only the arms) and optional Gaussian pixel
noise from the seeded generator. The same spec always produces the
same byte stream.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass

from .errors import SchemaError
from .rng import SplitMix64
from .types import BBox, Detection, Frame, Keypoint, Pose

# Upright figure, mid-hip at the origin, ~270 px tall, x right / y down.
_BASE_POSE: tuple[tuple[float, float], ...] = (
    (0.0, -160.0),    # nose
    (6.0, -168.0),    # left eye
    (-6.0, -168.0),   # right eye
    (12.0, -162.0),   # left ear
    (-12.0, -162.0),  # right ear
    (28.0, -130.0),   # left shoulder
    (-28.0, -130.0),  # right shoulder
    (40.0, -95.0),    # left elbow
    (-40.0, -95.0),   # right elbow
    (45.0, -60.0),    # left wrist
    (-45.0, -60.0),   # right wrist
    (16.0, 0.0),      # left hip
    (-16.0, 0.0),     # right hip
    (18.0, 55.0),     # left knee
    (-18.0, 55.0),    # right knee
    (20.0, 110.0),    # left ankle
    (-20.0, 110.0),   # right ankle
)

_LEFT_ARM = (7, 9)  # elbow, wrist
_RIGHT_ARM = (8, 10)
_LEFT_LEG = (13, 15)
_RIGHT_LEG = (14, 16)

TEMPLATES = ("standing", "walking", "arm_swing")

_KEYPOINT_CONFIDENCE = 0.95
_BBOX_MARGIN = 0.05


@dataclass(frozen=True)
class PersonSpec:
    start: tuple[float, float]
    velocity: tuple[float, float] = (0.0, 0.0)  # px/s
    template: str = "standing"
    swing_amplitude: float = 0.0  # px
    swing_frequency: float = 1.0  # Hz

    def validate(self) -> None:
        if self.template not in TEMPLATES:
            raise SchemaError(f"unknown pose template {self.template!r}")


@dataclass(frozen=True)
class ScenarioSpec:
    persons: tuple[PersonSpec, ...]
    seed: int = 0
    duration_s: float = 2.0
    fps: float = 30.0
    noise_std: float = 0.0
    stream_id: str = "scenario"

    def validate(self) -> None:
        if self.duration_s <= 0 or self.fps <= 0 or self.noise_std < 0:
            raise SchemaError("duration_s and fps must be positive, noise_std >= 0")
        for person in self.persons:
            person.validate()

    @property
    def n_frames(self) -> int:
        return round(self.duration_s * self.fps)


def _person_keypoints(person: PersonSpec, t: float) -> list[tuple[float, float]]:
    points = [list(p) for p in _BASE_POSE]
    swing = person.swing_amplitude * math.sin(2.0 * math.pi * person.swing_frequency * t)
    if person.template == "walking":
        # arms and opposite legs swing in antiphase
        for (elbow, wrist), sign in ((_LEFT_ARM, 1.0), (_RIGHT_ARM, -1.0)):
            points[wrist][0] += sign * swing
            points[elbow][0] += sign * swing / 2.0
        for (knee, ankle), sign in ((_LEFT_LEG, -1.0), (_RIGHT_LEG, 1.0)):
            points[ankle][0] += sign * swing
            points[knee][0] += sign * swing / 2.0
    elif person.template == "arm_swing":
        # both arms punch forward/back together, wrists leading
        for elbow, wrist in (_LEFT_ARM, _RIGHT_ARM):
            points[wrist][0] += swing
            points[wrist][1] -= abs(swing) / 2.0
            points[elbow][0] += swing / 2.0
    offset_x = person.start[0] + person.velocity[0] * t
    offset_y = person.start[1] + person.velocity[1] * t
    return [(x + offset_x, y + offset_y) for x, y in points]


def _fit_bbox(points: list[tuple[float, float]]) -> BBox:
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    width = max(xs) - min(xs)
    height = max(ys) - min(ys)
    return BBox(
        x=min(xs) - _BBOX_MARGIN * width,
        y=min(ys) - _BBOX_MARGIN * height,
        w=width * (1 + 2 * _BBOX_MARGIN),
        h=height * (1 + 2 * _BBOX_MARGIN),
    )


def gen_scenario(spec: ScenarioSpec) -> list[Frame]:
    """All frames of the scenario, in frame_index order."""
    spec.validate()
    rng = SplitMix64(spec.seed)
    frames = []
    for index in range(spec.n_frames):
        t = index / spec.fps
        detections = []
        for person in spec.persons:
            points = _person_keypoints(person, t)
            if spec.noise_std > 0:
                points = [
                    (x + rng.gauss() * spec.noise_std, y + rng.gauss() * spec.noise_std)
                    for x, y in points
                ]
            pose = Pose(
                tuple(Keypoint(x, y, _KEYPOINT_CONFIDENCE) for x, y in points)
            )
            detections.append(
                Detection(bbox=_fit_bbox(points), pose=pose, score=_KEYPOINT_CONFIDENCE)
            )
        frames.append(
            Frame(
                stream_id=spec.stream_id,
                frame_index=index,
                timestamp_ms=round(1000.0 * index / spec.fps),
                detections=tuple(detections),
            )
        )
    return frames


def _person_from_dict(raw: dict) -> PersonSpec:
    try:
        return PersonSpec(
            start=(float(raw["start"][0]), float(raw["start"][1])),
            velocity=tuple(float(v) for v in raw.get("velocity", (0.0, 0.0))),
            template=str(raw.get("template", "standing")).replace("-", "_"),
            swing_amplitude=float(raw.get("swing_amplitude", 0.0)),
            swing_frequency=float(raw.get("swing_frequency", 1.0)),
        )
    except (KeyError, TypeError, ValueError, IndexError) as exc:
        raise SchemaError(f"bad person spec: {exc}") from exc


def scenario_from_dict(raw: dict) -> ScenarioSpec:
    try:
        spec = ScenarioSpec(
            persons=tuple(_person_from_dict(p) for p in raw["persons"]),
            seed=int(raw.get("seed", 0)),
            duration_s=float(raw.get("duration_s", 2.0)),
            fps=float(raw.get("fps", 30.0)),
            noise_std=float(raw.get("noise_std", 0.0)),
            stream_id=str(raw.get("stream_id", "scenario")),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad scenario spec: {exc}") from exc
    spec.validate()
    return spec


def load_scenario_spec(path: str) -> ScenarioSpec:
    with open(path, encoding="utf-8") as fh:
        return scenario_from_dict(json.load(fh))
