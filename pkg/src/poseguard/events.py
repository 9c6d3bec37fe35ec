"""Classification and alert events, plus the per-track alert debouncer.

Events serialize to one compact JSON line each with a fixed key order,
so an event log is byte-reproducible:

    {"kind":...,"stream_id":...,"track_id":...,"frame_index":...,
     "timestamp_ms":...,"label":...,"probs":{"neutral":...,"aggressor":...,
     "victim":...},"bbox":[x,y,w,h]}

An alert fires after `alert_consecutive_k` consecutive classifications
of a track that are non-neutral with probability at or above
`alert_prob_threshold`; it then latches until the streak breaks.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .config import EngineConfig
from .errors import SchemaError, ValidationError
from .types import LABELS


@dataclass(frozen=True)
class Event:
    kind: str  # "classification" | "alert"
    stream_id: str
    track_id: int
    frame_index: int
    timestamp_ms: int
    label: str
    probs: tuple[float, float, float]  # (neutral, aggressor, victim)
    bbox: tuple[float, float, float, float]

    def validate(self) -> None:
        if self.kind not in ("classification", "alert"):
            raise ValidationError(f"unknown event kind {self.kind!r}")
        if self.label not in LABELS:
            raise ValidationError(f"unknown label {self.label!r}")
        if self.kind == "alert" and self.label == "neutral":
            raise ValidationError("alert events must carry a non-neutral label")
        if len(self.probs) != 3 or len(self.bbox) != 4:
            raise ValidationError("probs must have 3 entries and bbox 4")


def serialize_event(event: Event) -> str:
    """One compact JSON line (no trailing newline), keys in fixed order."""
    payload = {
        "kind": event.kind,
        "stream_id": event.stream_id,
        "track_id": event.track_id,
        "frame_index": event.frame_index,
        "timestamp_ms": event.timestamp_ms,
        "label": event.label,
        "probs": dict(zip(LABELS, (float(p) for p in event.probs))),
        "bbox": [float(v) for v in event.bbox],
    }
    return json.dumps(payload, separators=(",", ":"), allow_nan=False)


def parse_event(line: str) -> Event:
    try:
        raw = json.loads(line)
    except json.JSONDecodeError as exc:
        raise SchemaError(f"bad event line: {exc}") from exc
    try:
        event = Event(
            kind=raw["kind"],
            stream_id=raw["stream_id"],
            track_id=int(raw["track_id"]),
            frame_index=int(raw["frame_index"]),
            timestamp_ms=int(raw["timestamp_ms"]),
            label=raw["label"],
            probs=tuple(float(raw["probs"][name]) for name in LABELS),
            bbox=tuple(float(v) for v in raw["bbox"]),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise SchemaError(f"bad event line: {exc}") from exc
    event.validate()
    return event


@dataclass
class DebounceState:
    count: int = 0
    latched: bool = field(default=False)


def debounce_update(
    state: DebounceState, label: str, prob_of_label: float, config: EngineConfig
) -> bool:
    """Feed one classification; True exactly when the alert fires.

    The threshold comparison is inclusive. After firing, the latch
    suppresses further alerts until a neutral or sub-threshold
    classification resets the streak.
    """
    if label == "neutral" or prob_of_label < config.alert_prob_threshold:
        state.count = 0
        state.latched = False
        return False
    state.count += 1
    if state.count >= config.alert_consecutive_k and not state.latched:
        state.latched = True
        return True
    return False
