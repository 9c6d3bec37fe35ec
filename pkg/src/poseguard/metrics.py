"""Evaluation report: confusion matrix and per-class precision/recall/F1.

Counting only, no estimation. Any 0/0 ratio (empty class, empty
prediction, P + R = 0) is reported as 0.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .types import LABELS


@dataclass(frozen=True)
class Report:
    confusion: np.ndarray  # (3, 3) int counts, rows = true, columns = predicted
    precision: np.ndarray  # (3,)
    recall: np.ndarray
    f1: np.ndarray
    support: np.ndarray  # (3,) int, true count per class
    macro_precision: float
    macro_recall: float
    macro_f1: float


def _label_index(label) -> int:
    if isinstance(label, str):
        try:
            return LABELS.index(label)
        except ValueError:
            raise ValidationError(f"unknown label {label!r}") from None
    idx = int(label)
    if not 0 <= idx < len(LABELS):
        raise ValidationError(f"label index {idx} out of range")
    return idx


def _ratio(num: float, den: float) -> float:
    return num / den if den else 0.0


def evaluate(predictions, truths) -> Report:
    """Score predicted labels against ground truth (names or indices)."""
    predictions = list(predictions)
    truths = list(truths)
    if len(predictions) != len(truths):
        raise ValidationError(
            f"got {len(predictions)} predictions for {len(truths)} truths"
        )
    n = len(LABELS)
    confusion = np.zeros((n, n), dtype=np.int64)
    for pred, true in zip(predictions, truths):
        confusion[_label_index(true), _label_index(pred)] += 1

    tp = np.diag(confusion).astype(np.float64)
    predicted_per_class = confusion.sum(axis=0).astype(np.float64)
    support = confusion.sum(axis=1)
    precision = np.array([_ratio(tp[k], predicted_per_class[k]) for k in range(n)])
    recall = np.array([_ratio(tp[k], float(support[k])) for k in range(n)])
    f1 = np.array(
        [_ratio(2 * precision[k] * recall[k], precision[k] + recall[k]) for k in range(n)]
    )
    return Report(
        confusion=confusion,
        precision=precision,
        recall=recall,
        f1=f1,
        support=support,
        macro_precision=float(precision.mean()),
        macro_recall=float(recall.mean()),
        macro_f1=float(f1.mean()),
    )


def report_to_dict(report: Report) -> dict:
    per_class = {
        name: {
            "precision": float(report.precision[k]),
            "recall": float(report.recall[k]),
            "f1": float(report.f1[k]),
            "support": int(report.support[k]),
        }
        for k, name in enumerate(LABELS)
    }
    return {
        "confusion": report.confusion.tolist(),
        "classes": per_class,
        "macro": {
            "precision": report.macro_precision,
            "recall": report.macro_recall,
            "f1": report.macro_f1,
        },
    }


def render_report(report: Report) -> str:
    """Aligned text table: one row per class, then the macro average."""
    width = max(len(name) for name in LABELS + ("macro avg",))
    lines = [f"{'':<{width}}  precision  recall  f1-score  support"]
    for k, name in enumerate(LABELS):
        lines.append(
            f"{name:<{width}}  {report.precision[k]:>9.2f}  {report.recall[k]:>6.2f}"
            f"  {report.f1[k]:>8.2f}  {report.support[k]:>7d}"
        )
    total = int(report.support.sum())
    lines.append(
        f"{'macro avg':<{width}}  {report.macro_precision:>9.2f}"
        f"  {report.macro_recall:>6.2f}  {report.macro_f1:>8.2f}  {total:>7d}"
    )
    return "\n".join(lines)
