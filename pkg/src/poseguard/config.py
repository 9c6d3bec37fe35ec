"""Engine configuration: defaults, file loading, CLI override merge."""

from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace
from pathlib import Path
from typing import Any

from .errors import ValidationError

WINDOW_SECONDS = {"1s": 10, "2s": 20}
FEATURE_MODES = ("distance", "angle")


@dataclass(frozen=True)
class EngineConfig:
    input_fps: float = 30.0
    processing_fps: float = 10.0
    window_len: int = 10
    feature_mode: str = "distance"
    keypoint_conf_threshold: float = 0.3
    alert_prob_threshold: float = 0.5
    alert_consecutive_k: int = 3
    iou_gate: float = 0.3
    n_init: int = 3
    max_age: int = 30
    max_carry: int = 3
    sink: str = "stdout"

    def validate(self) -> "EngineConfig":
        if not self.input_fps > 0 or not self.processing_fps > 0:
            raise ValidationError("fps values must be positive")
        if self.processing_fps > self.input_fps:
            raise ValidationError(
                f"processing_fps {self.processing_fps} exceeds input_fps {self.input_fps}"
            )
        if self.window_len not in (10, 20):
            raise ValidationError(f"window_len must be 10 or 20, got {self.window_len}")
        if self.feature_mode not in FEATURE_MODES:
            raise ValidationError(f"unknown feature_mode {self.feature_mode!r}")
        if not 0.0 <= self.keypoint_conf_threshold <= 1.0:
            raise ValidationError("keypoint_conf_threshold must lie in [0, 1]")
        if not 0.0 <= self.alert_prob_threshold <= 1.0:
            raise ValidationError("alert_prob_threshold must lie in [0, 1]")
        if self.alert_consecutive_k < 1:
            raise ValidationError("alert_consecutive_k must be at least 1")
        if not 0.0 <= self.iou_gate <= 1.0:
            raise ValidationError("iou_gate must lie in [0, 1]")
        if self.n_init < 1 or self.max_age < 0 or self.max_carry < 0:
            raise ValidationError("tracker/window counters must be non-negative")
        return self

    @property
    def feature_dim(self) -> int:
        return 24 if self.feature_mode == "distance" else 12

    def with_overrides(self, **overrides: Any) -> "EngineConfig":
        """Return a copy with non-None overrides applied, then re-validated."""
        present = {k: v for k, v in overrides.items() if v is not None}
        return replace(self, **present).validate()


def config_from_dict(doc: dict[str, Any]) -> EngineConfig:
    known = {f.name for f in fields(EngineConfig)}
    unknown = set(doc) - known
    if unknown:
        raise ValidationError(f"unknown config keys: {sorted(unknown)}")
    return EngineConfig(**doc).validate()


def load_config(path: str | Path) -> EngineConfig:
    text = Path(path).read_text(encoding="utf-8")
    doc = json.loads(text)
    if not isinstance(doc, dict):
        raise ValidationError("config file must hold a single JSON object")
    return config_from_dict(doc)
