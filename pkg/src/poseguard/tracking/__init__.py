from .annotate import (
    TrackRecord,
    merge_tracks,
    parse_track_log_line,
    read_track_log,
    remove_tracks,
    serialize_track_log_line,
    write_track_log,
)
from .assignment import Assignment, hungarian
from .geometry import iou
from .kalman import KalmanFilter, KalmanState
from .tracker import CONFIRMED, DELETED, TENTATIVE, Track, Tracker

__all__ = [
    "Assignment",
    "CONFIRMED",
    "DELETED",
    "KalmanFilter",
    "KalmanState",
    "TENTATIVE",
    "Track",
    "TrackRecord",
    "Tracker",
    "hungarian",
    "iou",
    "merge_tracks",
    "parse_track_log_line",
    "read_track_log",
    "remove_tracks",
    "serialize_track_log_line",
    "write_track_log",
]
