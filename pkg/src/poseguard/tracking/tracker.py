"""Track lifecycle management over per-frame detections.

One Tracker instance is bound to one stream and must be stepped
sequentially. Association cost is 1 - IoU between each track's predicted
box and each detection box; pairs under the IoU gate are forbidden.
An optional appearance_cost hook can blend in an appearance distance;
the default build is IoU-only.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

import numpy as np

from ..config import EngineConfig
from ..types import BBox, Detection, Pose
from .assignment import hungarian
from .geometry import iou
from .kalman import KalmanFilter, KalmanState

TENTATIVE = "tentative"
CONFIRMED = "confirmed"
DELETED = "deleted"

_GATED_COST = 1e6

# hook signature: (track, detection) -> cost contribution added to 1 - IoU
AppearanceCost = Callable[["Track", Detection], float]


@dataclass
class Track:
    id: int
    state: KalmanState
    status: str = TENTATIVE
    hits: int = 1
    misses: int = 0
    last_pose: Optional[Pose] = None
    last_detection_bbox: Optional[BBox] = None

    @property
    def is_confirmed(self) -> bool:
        return self.status == CONFIRMED

    def current_bbox(self) -> BBox:
        return self.state.to_bbox()


class Tracker:
    def __init__(
        self,
        config: EngineConfig | None = None,
        kalman: KalmanFilter | None = None,
        appearance_cost: AppearanceCost | None = None,
    ):
        self.config = config or EngineConfig()
        self.kalman = kalman or KalmanFilter()
        self.appearance_cost = appearance_cost
        self.tracks: list[Track] = []
        self._next_id = 1

    def step(self, detections: list[Detection]) -> list[tuple[int, int]]:
        """Advance one processed frame; returns matched (track_id, det_index)."""
        cfg = self.config
        for track in self.tracks:
            track.state = self.kalman.predict(track.state)

        matches: list[tuple[int, int]] = []
        matched_tracks: set[int] = set()
        matched_dets: set[int] = set()

        if self.tracks and detections:
            overlap = np.zeros((len(self.tracks), len(detections)))
            cost = np.zeros_like(overlap)
            for ti, track in enumerate(self.tracks):
                predicted = track.current_bbox()
                for di, det in enumerate(detections):
                    overlap[ti, di] = iou(predicted, det.bbox)
                    if overlap[ti, di] < cfg.iou_gate:
                        cost[ti, di] = _GATED_COST
                    else:
                        cost[ti, di] = 1.0 - overlap[ti, di]
                        if self.appearance_cost is not None:
                            cost[ti, di] += self.appearance_cost(track, det)
            result = hungarian(cost)
            for ti, di in result.pairs:
                if overlap[ti, di] < cfg.iou_gate:
                    continue  # forced pairing through a forbidden entry
                track = self.tracks[ti]
                det = detections[di]
                track.state = self.kalman.update(track.state, det.bbox.to_cxcyah())
                track.hits += 1
                track.misses = 0
                track.last_pose = det.pose
                track.last_detection_bbox = det.bbox
                matched_tracks.add(ti)
                matched_dets.add(di)
                matches.append((track.id, di))

        for ti, track in enumerate(self.tracks):
            if ti not in matched_tracks:
                track.misses += 1
                if track.misses > cfg.max_age:
                    track.status = DELETED

        for di, det in enumerate(detections):
            if di not in matched_dets:
                track = Track(
                    id=self._next_id,
                    state=self.kalman.init(det.bbox.to_cxcyah()),
                    last_pose=det.pose,
                    last_detection_bbox=det.bbox,
                )
                self._next_id += 1
                self.tracks.append(track)

        for track in self.tracks:
            if track.status == TENTATIVE and track.hits >= cfg.n_init:
                track.status = CONFIRMED

        self.tracks = [t for t in self.tracks if t.status != DELETED]
        return matches
