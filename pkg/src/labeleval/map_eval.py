"""Per-class average precision, mAP over IoU thresholds, class frequency.

AP uses the interpolated precision envelope sampled at fixed recall
levels (101-point by default, 11-point behind a flag). Predictions are
ranked dataset-wide by confidence, descending, with deterministic
tie-breaks (image_id lexicographic, then input order), and assigned
TP/FP per image with the same greedy rule as the matcher: highest-IoU
unmatched reference, strictly above the threshold.

Classes with zero references have no defined AP; they are reported as
absent and excluded from every mean, never scored 0.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .matching import check_same_vocabulary
from .model import ClassVocabulary, LabelSet, iou

COCO_IOU_THRESHOLDS = tuple(round(0.5 + 0.05 * i, 2) for i in range(10))

REPORT_CSV_HEADER = ("class", "ap50", "ap75", "ap50_95", "ref_count")


@dataclass(frozen=True)
class EvalReport:
    """Per-class AP per IoU threshold plus the usual mAP summaries."""

    per_class_ap: dict[int, dict[float, float]]
    class_counts: dict[int, int]
    map_at: dict[float, float] = field(default_factory=dict)
    map50: Optional[float] = None
    map75: Optional[float] = None
    map50_95: Optional[float] = None


def average_precision(
    predictions: LabelSet,
    references: LabelSet,
    class_index: int,
    iou_threshold: float = 0.5,
    recall_points: int = 101,
) -> Optional[float]:
    """Interpolated AP for one class, or None when it has no references."""
    check_same_vocabulary(predictions, references)
    refs_by_image = {
        image_id: [
            lb
            for lb in references.labels_for(image_id)
            if lb.class_index == class_index
        ]
        for image_id in references.image_ids()
    }
    total_refs = sum(len(v) for v in refs_by_image.values())
    if total_refs == 0:
        return None

    tp_flags = _ranked_tp_flags(
        predictions, refs_by_image, class_index, iou_threshold
    )
    if tp_flags.size == 0:
        return 0.0

    cum_tp = np.cumsum(tp_flags)
    precision = cum_tp / np.arange(1, tp_flags.size + 1)
    recall = cum_tp / total_refs
    return _envelope_ap(precision, recall, recall_points)


def _ranked_tp_flags(predictions, refs_by_image, class_index, iou_threshold):
    """Dataset-wide confidence ranking plus per-image greedy TP assignment."""
    ranked = []
    for image_id in predictions.image_ids():
        for order, lb in enumerate(predictions.labels_for(image_id)):
            if lb.class_index != class_index:
                continue
            conf = lb.confidence if lb.confidence is not None else 1.0
            ranked.append((-conf, image_id, order, lb))
    ranked.sort(key=lambda t: t[:3])

    matched: dict[str, set[int]] = {}
    flags = np.zeros(len(ranked))
    for k, (_, image_id, _, pred) in enumerate(ranked):
        refs = refs_by_image.get(image_id, ())
        taken = matched.setdefault(image_id, set())
        best_ref = -1
        best_iou = iou_threshold
        for ri, ref in enumerate(refs):
            if ri in taken:
                continue
            overlap = iou(pred.box, ref.box)
            if overlap > best_iou:
                best_iou = overlap
                best_ref = ri
        if best_ref >= 0:
            taken.add(best_ref)
            flags[k] = 1.0
    return flags


def _envelope_ap(precision, recall, recall_points):
    """Mean of max_{r' >= r} P(r') over evenly spaced recall samples."""
    # Running max from the right turns P into its envelope over recall.
    envelope = np.maximum.accumulate(precision[::-1])[::-1]
    samples = np.linspace(0.0, 1.0, recall_points)
    # recall is non-decreasing; first rank reaching each sample.
    idx = np.searchsorted(recall, samples, side="left")
    values = np.where(idx < recall.size, envelope[np.minimum(idx, recall.size - 1)], 0.0)
    return float(values.mean())


def mean_ap(
    predictions: LabelSet,
    references: LabelSet,
    iou_thresholds: Sequence[float] = COCO_IOU_THRESHOLDS,
    recall_points: int = 101,
) -> EvalReport:
    """Per-class AP at each threshold; mAP means ignore reference-free classes."""
    check_same_vocabulary(predictions, references)
    n_classes = len(references.vocabulary)

    class_counts = {c: 0 for c in range(n_classes)}
    for _, lb in references.iter_labels():
        class_counts[lb.class_index] += 1

    thresholds = [round(t, 2) for t in iou_thresholds]
    per_class_ap: dict[int, dict[float, float]] = {}
    for c in range(n_classes):
        if class_counts[c] == 0:
            continue
        per_class_ap[c] = {
            t: average_precision(predictions, references, c, t, recall_points)
            for t in thresholds
        }

    map_at = {}
    if per_class_ap:
        for t in thresholds:
            map_at[t] = float(
                np.mean([aps[t] for aps in per_class_ap.values()])
            )
    coco = [round(t, 2) for t in COCO_IOU_THRESHOLDS]
    return EvalReport(
        per_class_ap=per_class_ap,
        class_counts=class_counts,
        map_at=map_at,
        map50=map_at.get(0.5),
        map75=map_at.get(0.75),
        map50_95=(
            float(np.mean([map_at[t] for t in coco]))
            if all(t in map_at for t in coco)
            else None
        ),
    )


def class_frequency(
    labels: LabelSet, k: int
) -> tuple[list[tuple[str, int]], list[tuple[str, int]]]:
    """The k most and k least frequent classes as (name, count) lists.

    Zero-count classes participate in the bottom ranking. Both lists are
    presented most-frequent-first; ties break to the lower vocabulary
    index, so uniform counts yield identical lists.
    """
    n_classes = len(labels.vocabulary)
    if not 0 <= k <= n_classes:
        raise ValueError(f"k={k} outside [0, {n_classes}]")
    counts = [0] * n_classes
    for _, lb in labels.iter_labels():
        counts[lb.class_index] += 1

    by_count_desc = sorted(range(n_classes), key=lambda c: (-counts[c], c))
    top = by_count_desc[:k]
    bottom_set = sorted(range(n_classes), key=lambda c: (counts[c], c))[:k]
    bottom = sorted(bottom_set, key=lambda c: (-counts[c], c))
    names = labels.vocabulary.names
    return (
        [(names[c], counts[c]) for c in top],
        [(names[c], counts[c]) for c in bottom],
    )


def frequency_slice_map(
    report: EvalReport,
    top_classes: Sequence[int],
    bottom_classes: Sequence[int],
    iou_threshold: float = 0.5,
) -> tuple[float, float, Optional[float]]:
    """Unweighted mAP over two class slices and their relative difference.

    Returns (top mAP, bottom mAP, (bottom - top) / top); the difference
    is None when the top slice mean is 0. Every listed class must have a
    defined AP at the threshold.
    """
    t = round(iou_threshold, 2)
    top = _slice_mean(report, top_classes, t, "top")
    bottom = _slice_mean(report, bottom_classes, t, "bottom")
    diff = (bottom - top) / top if top > 0 else None
    return top, bottom, diff


def _slice_mean(report, classes, threshold, which):
    if not classes:
        raise ValueError(f"empty {which} class list")
    values = []
    for c in classes:
        if c not in report.per_class_ap:
            raise ValueError(
                f"{which} class {c} has no references, AP undefined"
            )
        if threshold not in report.per_class_ap[c]:
            raise ValueError(
                f"{which} class {c} has no AP at IoU threshold {threshold}"
            )
        values.append(report.per_class_ap[c][threshold])
    return float(np.mean(values))


def percent_display(fraction: Optional[float]) -> str:
    """Whole-percent display, half away from zero; '-' for undefined."""
    if fraction is None:
        return "-"
    pct = fraction * 100.0
    rounded = int(math.copysign(math.floor(abs(pct) + 0.5), pct))
    return f"{rounded}%"


def report_to_csv(report: EvalReport, vocabulary: ClassVocabulary) -> str:
    """CSV rows `class,ap50,ap75,ap50_95,ref_count`; blank AP when undefined."""
    coco = [round(t, 2) for t in COCO_IOU_THRESHOLDS]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(REPORT_CSV_HEADER)
    for c, name in enumerate(vocabulary.names):
        aps = report.per_class_ap.get(c)
        if aps is None:
            writer.writerow([name, "", "", "", report.class_counts.get(c, 0)])
            continue
        ap50_95 = (
            float(np.mean([aps[t] for t in coco]))
            if all(t in aps for t in coco)
            else ""
        )
        writer.writerow(
            [
                name,
                aps.get(0.5, ""),
                aps.get(0.75, ""),
                ap50_95,
                report.class_counts.get(c, 0),
            ]
        )
    return buf.getvalue()


def frequency_summary(
    report: EvalReport,
    vocabulary: ClassVocabulary,
    top_classes: Sequence[int],
    bottom_classes: Sequence[int],
    iou_threshold: float = 0.5,
    markdown: bool = False,
) -> str:
    """Class-slice summary: per-class rows, slice means, % difference, All."""
    t = round(iou_threshold, 2)
    k = len(top_classes)
    top, bottom, diff = frequency_slice_map(
        report, top_classes, bottom_classes, t
    )
    rows = []
    for c in list(top_classes) + list(bottom_classes):
        rows.append((vocabulary.names[c], f"{report.per_class_ap[c][t]:.3f}"))
    rows.append((f"{k} Most", f"{top:.3f}"))
    rows.append((f"{k} Least", f"{bottom:.3f}"))
    rows.append(("% Diff.", percent_display(diff)))
    all_map = report.map_at.get(t)
    rows.append(("All", f"{all_map:.3f}" if all_map is not None else "-"))

    if markdown:
        width = max(len(r[0]) for r in rows)
        lines = [f"| {'Class'.ljust(width)} | AP@{t:.2f} |",
                 f"| {'-' * width} | ------- |"]
        lines += [f"| {name.ljust(width)} | {value} |" for name, value in rows]
        return "\n".join(lines) + "\n"
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("class", f"ap{int(t * 100)}"))
    writer.writerows(rows)
    return buf.getvalue()
