"""Class-aware greedy IoU matching and precision/recall/F1 from tallies.

The matching rule: predictions are visited in descending confidence
(ties by input order); each takes the not-yet-matched same-class
reference with the highest IoU, provided IoU is strictly above the
threshold; IoU ties break to the lower reference index. Matched
predictions are TP, the rest FP; references never matched are FN.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence

from .errors import VocabularyMismatchError
from .model import LabelSet, ObjectLabel, iou


@dataclass(frozen=True)
class MatchResult:
    """TP/FP/FN tallies, with a per-class breakdown and optional audit pairs."""

    tp: int
    fp: int
    fn: int
    per_class: dict[int, tuple[int, int, int]] = field(default_factory=dict)
    pairs: Optional[tuple[tuple[int, int, float], ...]] = None

    def __post_init__(self):
        if min(self.tp, self.fp, self.fn) < 0:
            raise ValueError(
                f"negative tally: tp={self.tp} fp={self.fp} fn={self.fn}"
            )


@dataclass(frozen=True)
class MetricPoint:
    """Precision/recall/F1 at one confidence threshold."""

    alpha: float
    label_count: int
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f1: float


def match_image(
    predictions: Sequence[ObjectLabel],
    references: Sequence[ObjectLabel],
    iou_threshold: float = 0.5,
    record_pairs: bool = False,
) -> MatchResult:
    """Match one image's predictions to its references.

    Predictions without a confidence are treated as confidence 1.0 and
    keep their input-order rank, so pure label-vs-label comparisons
    work. With record_pairs the result carries (prediction index,
    reference index, iou) for every TP.
    """
    order = sorted(
        range(len(predictions)),
        key=lambda i: -(
            predictions[i].confidence
            if predictions[i].confidence is not None
            else 1.0
        ),
    )
    matched_refs: set[int] = set()
    pairs: list[tuple[int, int, float]] = []
    tp_by_class: dict[int, int] = {}
    for pi in order:
        pred = predictions[pi]
        best_ref = -1
        best_iou = iou_threshold  # strict: must exceed this
        for ri, ref in enumerate(references):
            if ri in matched_refs or ref.class_index != pred.class_index:
                continue
            overlap = iou(pred.box, ref.box)
            if overlap > best_iou:
                best_iou = overlap
                best_ref = ri
        if best_ref >= 0:
            matched_refs.add(best_ref)
            pairs.append((pi, best_ref, best_iou))
            tp_by_class[pred.class_index] = (
                tp_by_class.get(pred.class_index, 0) + 1
            )

    pred_by_class: dict[int, int] = {}
    for pred in predictions:
        pred_by_class[pred.class_index] = (
            pred_by_class.get(pred.class_index, 0) + 1
        )
    ref_by_class: dict[int, int] = {}
    for ref in references:
        ref_by_class[ref.class_index] = ref_by_class.get(ref.class_index, 0) + 1

    per_class = {}
    for c in sorted(set(pred_by_class) | set(ref_by_class)):
        ctp = tp_by_class.get(c, 0)
        per_class[c] = (
            ctp,
            pred_by_class.get(c, 0) - ctp,
            ref_by_class.get(c, 0) - ctp,
        )

    tp = len(pairs)
    return MatchResult(
        tp=tp,
        fp=len(predictions) - tp,
        fn=len(references) - tp,
        per_class=per_class,
        pairs=tuple(sorted(pairs)) if record_pairs else None,
    )


def aggregate(results: Iterable[MatchResult]) -> MatchResult:
    """Component-wise sum of per-image results (disjoint images)."""
    tp = fp = fn = 0
    per_class: dict[int, tuple[int, int, int]] = {}
    for r in results:
        tp += r.tp
        fp += r.fp
        fn += r.fn
        for c, (ctp, cfp, cfn) in r.per_class.items():
            otp, ofp, ofn = per_class.get(c, (0, 0, 0))
            per_class[c] = (otp + ctp, ofp + cfp, ofn + cfn)
    return MatchResult(tp=tp, fp=fp, fn=fn, per_class=per_class)


def metrics_from_tallies(
    m: MatchResult, alpha: float = 0.0, label_count: Optional[int] = None
) -> MetricPoint:
    """precision = tp/(tp+fp), recall = tp/(tp+fn), f1 = 2tp/(2tp+fp+fn).

    Every 0/0 is 0 by convention: an empty prediction set against
    nonempty references must not score perfect precision into F1.
    """
    precision = m.tp / (m.tp + m.fp) if m.tp + m.fp else 0.0
    recall = m.tp / (m.tp + m.fn) if m.tp + m.fn else 0.0
    denom = 2 * m.tp + m.fp + m.fn
    f1 = 2 * m.tp / denom if denom else 0.0
    return MetricPoint(
        alpha=alpha,
        label_count=label_count if label_count is not None else m.tp + m.fp,
        tp=m.tp,
        fp=m.fp,
        fn=m.fn,
        precision=precision,
        recall=recall,
        f1=f1,
    )


def check_same_vocabulary(a: LabelSet, b: LabelSet) -> None:
    if a.vocabulary.names != b.vocabulary.names:
        raise VocabularyMismatchError(
            "label sets use different vocabularies",
            left=a.vocabulary.names,
            right=b.vocabulary.names,
        )


def match_sets(
    predictions: LabelSet,
    references: LabelSet,
    iou_threshold: float = 0.5,
) -> MatchResult:
    """Match every image of two label sets and aggregate the tallies."""
    check_same_vocabulary(predictions, references)
    image_ids = set(predictions.image_ids()) | set(references.image_ids())
    return aggregate(
        match_image(
            predictions.labels_for(image_id),
            references.labels_for(image_id),
            iou_threshold,
        )
        for image_id in sorted(image_ids)
    )


def audit_records(
    predictions: LabelSet,
    references: LabelSet,
    iou_threshold: float = 0.5,
) -> list[dict]:
    """Matched pairs per image, one record per TP, for audit dumps."""
    check_same_vocabulary(predictions, references)
    records = []
    for image_id in sorted(
        set(predictions.image_ids()) | set(references.image_ids())
    ):
        result = match_image(
            predictions.labels_for(image_id),
            references.labels_for(image_id),
            iou_threshold,
            record_pairs=True,
        )
        for pi, ri, overlap in result.pairs or ():
            records.append(
                {
                    "image_id": image_id,
                    "prediction_index": pi,
                    "reference_index": ri,
                    "iou": overlap,
                }
            )
    return records
