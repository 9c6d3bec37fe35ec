"""Box overlap cost for track association."""

from __future__ import annotations

from ..types import BBox


def iou(a: BBox, b: BBox) -> float:
    """Intersection-over-union of two axis-aligned boxes; 0 when disjoint."""
    ix = max(a.x, b.x)
    iy = max(a.y, b.y)
    ix2 = min(a.x + a.w, b.x + b.w)
    iy2 = min(a.y + a.h, b.y + b.h)
    iw = ix2 - ix
    ih = iy2 - iy
    if iw <= 0.0 or ih <= 0.0:
        return 0.0
    inter = iw * ih
    union = a.w * a.h + b.w * b.h - inter
    return inter / union
