"""Wire-format parsing, serialization, and frame-rate decimation.

The inter-process format is line-delimited JSON, one frame per line:

    {"stream_id": str, "frame_index": int, "timestamp_ms": int,
     "detections": [{"bbox": [x, y, w, h], "score": s,
                     "keypoints": [[x, y, c], ... 17 entries]}]}
"""

from __future__ import annotations

import json
import math
import socket
import sys
from fractions import Fraction
from pathlib import Path
from typing import Iterator

from .errors import ParseError, SchemaError, ValidationError
from .types import NUM_KEYPOINTS, BBox, Detection, Frame, Keypoint, Pose


def _require(doc: dict, key: str, kind: type, where: str):
    if key not in doc:
        raise SchemaError(f"{where}: missing field {key!r}")
    value = doc[key]
    if kind is float:
        if isinstance(value, bool) or not isinstance(value, (int, float)):
            raise SchemaError(f"{where}: field {key!r} must be a number")
        return float(value)
    if kind is int:
        if isinstance(value, bool) or not isinstance(value, int):
            raise SchemaError(f"{where}: field {key!r} must be an integer")
        return value
    if not isinstance(value, kind):
        raise SchemaError(f"{where}: field {key!r} must be {kind.__name__}")
    return value


def _number(value, where: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise SchemaError(f"{where}: expected a number")
    return float(value)


def parse_frame(line: str) -> Frame:
    """Parse one text line into a validated Frame.

    Raises ParseError (with byte offset) on malformed JSON, SchemaError on
    structural violations, ValidationError on out-of-range values.
    """
    try:
        doc = json.loads(line)
    except json.JSONDecodeError as exc:
        offset = len(line[: exc.pos].encode("utf-8"))
        raise ParseError(f"malformed frame line at byte {offset}: {exc.msg}", offset) from exc
    if not isinstance(doc, dict):
        raise SchemaError("frame line must hold a JSON object")

    stream_id = _require(doc, "stream_id", str, "frame")
    frame_index = _require(doc, "frame_index", int, "frame")
    timestamp_ms = _require(doc, "timestamp_ms", int, "frame")
    raw_dets = _require(doc, "detections", list, "frame")

    detections = []
    for d_idx, raw in enumerate(raw_dets):
        where = f"detection {d_idx}"
        if not isinstance(raw, dict):
            raise SchemaError(f"{where}: must be an object")
        raw_bbox = _require(raw, "bbox", list, where)
        if len(raw_bbox) != 4:
            raise SchemaError(f"{where}: bbox must have 4 entries")
        bbox = BBox(*(_number(v, f"{where} bbox") for v in raw_bbox))
        score = _require(raw, "score", float, where)
        raw_kps = _require(raw, "keypoints", list, where)
        if len(raw_kps) != NUM_KEYPOINTS:
            raise SchemaError(
                f"{where}: expected {NUM_KEYPOINTS} keypoints, got {len(raw_kps)}"
            )
        keypoints = []
        for k_idx, raw_kp in enumerate(raw_kps):
            if not isinstance(raw_kp, list) or len(raw_kp) != 3:
                raise SchemaError(f"{where} keypoint {k_idx}: must be [x, y, confidence]")
            keypoints.append(Keypoint(*(_number(v, f"{where} keypoint {k_idx}") for v in raw_kp)))
        detections.append(Detection(bbox=bbox, pose=Pose(tuple(keypoints)), score=score))

    frame = Frame(
        stream_id=stream_id,
        frame_index=frame_index,
        timestamp_ms=timestamp_ms,
        detections=tuple(detections),
    )
    frame.validate()
    return frame


def serialize_frame(frame: Frame) -> str:
    """Serialize a Frame to its canonical one-line JSON form (no newline)."""
    doc = {
        "stream_id": frame.stream_id,
        "frame_index": frame.frame_index,
        "timestamp_ms": frame.timestamp_ms,
        "detections": [
            {
                "bbox": list(det.bbox.as_tuple()),
                "score": det.score,
                "keypoints": [[kp.x, kp.y, kp.confidence] for kp in det.pose.keypoints],
            }
            for det in frame.detections
        ],
    }
    return json.dumps(doc, separators=(",", ":"), allow_nan=False)


def decimate(frame_index: int, input_fps: float, processing_fps: float) -> bool:
    """Keep frame i iff floor(i*p/q) advanced past floor((i-1)*p/q).

    Index-based so the kept set is independent of timestamp jitter; over N
    frames exactly ceil(N*p/q) are kept. Frame 0 is always kept.
    """
    if input_fps <= 0 or processing_fps <= 0:
        raise ValidationError("fps values must be positive")
    if processing_fps > input_fps:
        raise ValidationError("processing_fps must not exceed input_fps")
    if frame_index <= 0:
        return True
    if float(input_fps).is_integer() and float(processing_fps).is_integer():
        p, q = int(processing_fps), int(input_fps)
        return (frame_index * p) // q > ((frame_index - 1) * p) // q
    p = Fraction(processing_fps)
    q = Fraction(input_fps)
    ratio = p / q
    return math.floor(frame_index * ratio) > math.floor((frame_index - 1) * ratio)


def read_lines(source: str) -> Iterator[str]:
    """Yield text lines from a file path, '-' (stdin), or 'tcp:HOST:PORT'."""
    if source == "-":
        for line in sys.stdin:
            if line.strip():
                yield line
        return
    if source.startswith("tcp:"):
        _, host, port = source.split(":", 2)
        with socket.create_connection((host, int(port))) as conn:
            with conn.makefile("r", encoding="utf-8") as reader:
                for line in reader:
                    if line.strip():
                        yield line
        return
    with Path(source).open("r", encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                yield line


def read_frames(source: str) -> Iterator[Frame]:
    for line in read_lines(source):
        yield parse_frame(line)
