"""Track-log editing: drop spurious ids, merge split identities.

A track log is a sequence of records (frame_index, track_id, payload);
on disk it is line-delimited JSON with those two fields plus arbitrary
payload fields.
"""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Iterable

from ..errors import MergeConflictError, SchemaError

TrackRecord = tuple[int, int, Any]


def remove_tracks(records: Iterable[TrackRecord], ids: set[int]) -> list[TrackRecord]:
    """Drop every record whose track_id is in ids; survivor order preserved."""
    return [rec for rec in records if rec[1] not in ids]


def merge_tracks(records: Iterable[TrackRecord], from_id: int, into_id: int) -> list[TrackRecord]:
    """Relabel from_id as into_id.

    A frame where both ids appear is a conflict (one person cannot be two
    boxes at once) and raises MergeConflictError naming the frame.
    """
    if from_id == into_id:
        raise SchemaError(f"cannot merge track {from_id} into itself")
    records = list(records)
    frames_with_from = {rec[0] for rec in records if rec[1] == from_id}
    for rec in records:
        if rec[1] == into_id and rec[0] in frames_with_from:
            raise MergeConflictError(rec[0], from_id, into_id)
    return [
        (frame, into_id if tid == from_id else tid, payload)
        for frame, tid, payload in records
    ]


def parse_track_log_line(line: str) -> TrackRecord:
    doc = json.loads(line)
    if not isinstance(doc, dict) or "frame_index" not in doc or "track_id" not in doc:
        raise SchemaError("track-log line must carry frame_index and track_id")
    payload = {k: v for k, v in doc.items() if k not in ("frame_index", "track_id")}
    return (int(doc["frame_index"]), int(doc["track_id"]), payload)


def serialize_track_log_line(record: TrackRecord) -> str:
    frame, tid, payload = record
    doc = {"frame_index": frame, "track_id": tid}
    if payload:
        doc.update(payload)
    return json.dumps(doc, separators=(",", ":"))


def read_track_log(path: str | Path) -> list[TrackRecord]:
    records = []
    with Path(path).open("r", encoding="utf-8") as handle:
        for line in handle:
            if line.strip():
                records.append(parse_track_log_line(line))
    return records


def write_track_log(records: Iterable[TrackRecord], path: str | Path) -> None:
    with Path(path).open("w", encoding="utf-8") as handle:
        for record in records:
            handle.write(serialize_track_log_line(record) + "\n")
