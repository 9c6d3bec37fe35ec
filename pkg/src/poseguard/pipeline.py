"""Per-stream orchestration: decimate, track, featurize, window, classify, alert.

StreamPipeline owns all mutable state for one stream (tracker, per-track
window buffers, carry-forward feature values, debounce counters) and is
driven by a single logical thread. Engine fans frames out to one
pipeline per stream id and shares the sink, which serializes publishes
internally.

Only confirmed tracks feed the feature/window stage; tentative tracks
are maintained silently so one-frame false detections never classify.
"""

from __future__ import annotations

from typing import Iterable, Iterator

import numpy as np

from .config import EngineConfig
from .errors import SequencingError, SinkError, ValidationError
from .events import DebounceState, Event, debounce_update
from .features import compute_features
from .network import argmax_label, model_forward
from .sinks import Sink
from .streams import decimate
from .tracking import Tracker
from .types import LABELS, Frame
from .weights import ModelWeights
from .windows import WindowBuffer


class StreamPipeline:
    def __init__(
        self,
        config: EngineConfig,
        weights: ModelWeights,
        sink: Sink | None = None,
    ):
        config.validate()
        if (weights.window_len, weights.feature_dim) != (
            config.window_len,
            config.feature_dim,
        ):
            raise ValidationError(
                f"weights are ({weights.window_len}, {weights.feature_dim}) "
                f"but config wants ({config.window_len}, {config.feature_dim})"
            )
        self.config = config
        self.weights = weights
        self.sink = sink
        self.tracker = Tracker(config)
        self._buffers: dict[int, WindowBuffer] = {}
        self._debounce: dict[int, DebounceState] = {}
        self._prev_features: dict[int, np.ndarray] = {}
        self._stream_id: str | None = None
        self._last_frame_index: int | None = None
        self.frames_seen = 0
        self.frames_processed = 0
        self.windows_classified = 0
        self.events_published = 0
        self.events_dropped = 0
        self.last_sink_error: SinkError | None = None

    def process_frame(self, frame: Frame) -> list[Event]:
        """Consume one frame; returns the events it produced (possibly none)."""
        if self._stream_id is None:
            self._stream_id = frame.stream_id
        elif frame.stream_id != self._stream_id:
            raise ValidationError(
                f"pipeline for stream {self._stream_id!r} got frame "
                f"for {frame.stream_id!r}"
            )
        if self._last_frame_index is not None and frame.frame_index <= self._last_frame_index:
            raise SequencingError(
                f"frame_index {frame.frame_index} after {self._last_frame_index} "
                f"on stream {frame.stream_id!r}"
            )
        self._last_frame_index = frame.frame_index
        self.frames_seen += 1

        cfg = self.config
        if not decimate(frame.frame_index, cfg.input_fps, cfg.processing_fps):
            return []
        self.frames_processed += 1

        matches = dict(self.tracker.step(list(frame.detections)))
        pending = []  # (track, window values) awaiting one batched forward pass
        for track in sorted(self.tracker.tracks, key=lambda t: t.id):
            if not track.is_confirmed:
                continue
            buffer = self._buffers.get(track.id)
            if buffer is None:
                buffer = WindowBuffer(cfg.window_len, cfg.feature_dim, cfg.max_carry)
                self._buffers[track.id] = buffer
            det_index = matches.get(track.id)
            if det_index is None:
                fv = None
            else:
                det = frame.detections[det_index]
                fv = compute_features(
                    cfg.feature_mode,
                    det.pose,
                    det.bbox,
                    cfg.keypoint_conf_threshold,
                    self._prev_features.get(track.id),
                )
                if fv.valid:
                    self._prev_features[track.id] = fv.values
            window = buffer.push(fv)
            if window is not None:
                pending.append((track, window.values))

        events: list[Event] = []
        if pending:
            probs = model_forward(np.stack([w for _, w in pending]), self.weights)
            self.windows_classified += len(pending)
            for (track, _), p in zip(pending, probs):
                label_index = argmax_label(p)
                label = LABELS[label_index]
                common = dict(
                    stream_id=frame.stream_id,
                    track_id=track.id,
                    frame_index=frame.frame_index,
                    timestamp_ms=frame.timestamp_ms,
                    label=label,
                    probs=tuple(float(x) for x in p),
                    bbox=track.current_bbox().as_tuple(),
                )
                events.append(Event(kind="classification", **common))
                state = self._debounce.setdefault(track.id, DebounceState())
                if debounce_update(state, label, float(p[label_index]), cfg):
                    events.append(Event(kind="alert", **common))

        live = {t.id for t in self.tracker.tracks}
        for table in (self._buffers, self._debounce, self._prev_features):
            for track_id in [k for k in table if k not in live]:
                del table[track_id]

        if self.sink is not None:
            for event in events:
                try:
                    self.sink.publish(event)
                    self.events_published += 1
                except SinkError as exc:
                    self.events_dropped += 1
                    self.last_sink_error = exc
        return events

    @property
    def stats(self) -> dict:
        return {
            "frames_seen": self.frames_seen,
            "frames_processed": self.frames_processed,
            "windows_classified": self.windows_classified,
            "events_published": self.events_published,
            "events_dropped": self.events_dropped,
            "live_tracks": len(self.tracker.tracks),
        }


class Engine:
    """Routes a mixed multi-stream frame sequence to per-stream pipelines."""

    def __init__(
        self,
        config: EngineConfig,
        weights: ModelWeights,
        sink: Sink | None = None,
    ):
        self.config = config
        self.weights = weights
        self.sink = sink
        self.pipelines: dict[str, StreamPipeline] = {}

    def process_frame(self, frame: Frame) -> list[Event]:
        pipeline = self.pipelines.get(frame.stream_id)
        if pipeline is None:
            pipeline = StreamPipeline(self.config, self.weights, self.sink)
            self.pipelines[frame.stream_id] = pipeline
        return pipeline.process_frame(frame)

    def run(self, frames: Iterable[Frame]) -> Iterator[Event]:
        for frame in frames:
            yield from self.process_frame(frame)

    @property
    def stats(self) -> dict:
        return {stream_id: p.stats for stream_id, p in self.pipelines.items()}
