"""Confidence-threshold sweeps and best-threshold selection.

A sweep filters the raw auto-label set at each alpha (strict >), matches
every image against the references, and aggregates into one MetricPoint
per alpha. Points are independent, so the curve is reproducible
point-by-point by single-alpha runs.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import dataclass
from typing import Sequence

from .matching import (
    MetricPoint,
    check_same_vocabulary,
    match_sets,
    metrics_from_tallies,
)
from .model import LabelSet, filter_by_confidence

# 15-point default grid; dense below 0.2 where label counts move fastest.
DEFAULT_ALPHA_GRID = (
    0.025, 0.05, 0.1, 0.15, 0.2, 0.3, 0.4, 0.5,
    0.6, 0.7, 0.8, 0.85, 0.9, 0.95, 0.975,
)

CURVE_CSV_HEADER = ("alpha", "label_count", "tp", "fp", "fn",
                    "precision", "recall", "f1")


@dataclass(frozen=True)
class MetricCurve:
    """Per-alpha metric points for one (model, dataset) pair."""

    model_tag: str
    dataset_tag: str
    points: tuple[MetricPoint, ...]

    def __post_init__(self):
        alphas = [p.alpha for p in self.points]
        if any(b <= a for a, b in zip(alphas, alphas[1:])):
            raise ValueError(f"alphas not strictly increasing: {alphas}")
        counts = [p.label_count for p in self.points]
        if any(b > a for a, b in zip(counts, counts[1:])):
            raise ValueError(f"label counts increase with alpha: {counts}")

    def __len__(self) -> int:
        return len(self.points)


def sweep(
    raw: LabelSet,
    reference: LabelSet,
    alphas: Sequence[float] = DEFAULT_ALPHA_GRID,
    iou_threshold: float = 0.5,
    model_tag: str = "",
    dataset_tag: str = "",
) -> MetricCurve:
    """Evaluate the raw auto-labels against references at every alpha."""
    if not alphas:
        raise ValueError("alphas must be non-empty")
    for a in alphas:
        if not 0.0 <= a <= 1.0:
            raise ValueError(f"alpha outside [0, 1]: {a}")
    check_same_vocabulary(raw, reference)

    points = []
    for alpha in sorted(set(alphas)):
        filtered = filter_by_confidence(raw, alpha)
        tallies = match_sets(filtered, reference, iou_threshold)
        points.append(
            metrics_from_tallies(
                tallies, alpha=alpha, label_count=filtered.label_count
            )
        )
    return MetricCurve(
        model_tag=model_tag, dataset_tag=dataset_tag, points=tuple(points)
    )


def best_f1(curve: MetricCurve) -> tuple[float, MetricPoint]:
    """The point with maximal F1; ties go to the smallest alpha."""
    return _best_by(curve, lambda p: p.f1)


def best_recall(curve: MetricCurve) -> tuple[float, MetricPoint]:
    """The point with maximal recall; ties go to the smallest alpha."""
    return _best_by(curve, lambda p: p.recall)


def _best_by(curve: MetricCurve, key) -> tuple[float, MetricPoint]:
    if not curve.points:
        raise ValueError("empty curve")
    best = curve.points[0]
    for p in curve.points[1:]:
        if key(p) > key(best):
            best = p
    return best.alpha, best


def curve_to_csv(curve: MetricCurve) -> str:
    """CSV rows `alpha,label_count,tp,fp,fn,precision,recall,f1`."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CURVE_CSV_HEADER)
    for p in curve.points:
        writer.writerow(
            [p.alpha, p.label_count, p.tp, p.fp, p.fn,
             p.precision, p.recall, p.f1]
        )
    return buf.getvalue()


def curve_to_records(curve: MetricCurve) -> str:
    """Line-delimited JSON records, each tagged with model and dataset."""
    lines = []
    for p in curve.points:
        lines.append(
            json.dumps(
                {
                    "model": curve.model_tag,
                    "dataset": curve.dataset_tag,
                    "alpha": p.alpha,
                    "label_count": p.label_count,
                    "tp": p.tp,
                    "fp": p.fp,
                    "fn": p.fn,
                    "precision": p.precision,
                    "recall": p.recall,
                    "f1": p.f1,
                },
                sort_keys=True,
            )
        )
    return "\n".join(lines) + "\n"


def curve_from_records(lines) -> MetricCurve:
    """Inverse of curve_to_records; accepts an iterable of JSON lines."""
    if isinstance(lines, str):
        lines = lines.splitlines()
    points = []
    model_tag = dataset_tag = ""
    for line in lines:
        if not line.strip():
            continue
        rec = json.loads(line)
        model_tag = rec.get("model", model_tag)
        dataset_tag = rec.get("dataset", dataset_tag)
        points.append(
            MetricPoint(
                alpha=rec["alpha"],
                label_count=rec["label_count"],
                tp=rec["tp"],
                fp=rec["fp"],
                fn=rec["fn"],
                precision=rec["precision"],
                recall=rec["recall"],
                f1=rec["f1"],
            )
        )
    points.sort(key=lambda p: p.alpha)
    return MetricCurve(
        model_tag=model_tag, dataset_tag=dataset_tag, points=tuple(points)
    )
