"""Core geometry and label types plus confidence filtering and IoU.

Canonical internal coordinates are absolute pixels in center format
(cx, cy, w, h); every on-disk format converts on ingest. All types are
immutable after construction and safe to share across workers; the
operations here are pure functions.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Mapping, Optional, Sequence

from .errors import (
    InvalidGeometryError,
    MissingConfidenceError,
    ValueRangeError,
    VocabularyError,
)


@dataclass(frozen=True)
class BoundingBox:
    """Axis-aligned box as center x/y, width, height, in pixels."""

    cx: float
    cy: float
    w: float
    h: float

    def __post_init__(self):
        for name in ("cx", "cy", "w", "h"):
            v = getattr(self, name)
            if not math.isfinite(v):
                raise InvalidGeometryError(f"non-finite {name}: {v!r}")
        if self.w < 0 or self.h < 0:
            raise InvalidGeometryError(
                f"negative dimensions: w={self.w}, h={self.h}"
            )

    @property
    def area(self) -> float:
        return self.w * self.h


@dataclass(frozen=True)
class ObjectLabel:
    """One labeled object: box, class index, optional confidence.

    Confidence is mandatory for auto-generated labels and optional for
    human references; the type does not encode the source, callers do.
    `difficult` carries the VOC flag through parse/write round-trips.
    """

    box: BoundingBox
    class_index: int
    confidence: Optional[float] = None
    difficult: bool = False

    def __post_init__(self):
        if self.class_index < 0:
            raise VocabularyError(f"negative class index: {self.class_index}")
        if self.confidence is not None and not 0.0 <= self.confidence <= 1.0:
            raise ValueRangeError(
                f"confidence outside [0, 1]: {self.confidence}"
            )


@dataclass(frozen=True)
class ImageRecord:
    """Identity and pixel dimensions of one image; payload stays on disk."""

    image_id: str
    width: int
    height: int

    def __post_init__(self):
        if self.width <= 0 or self.height <= 0:
            raise InvalidGeometryError(
                f"image {self.image_id!r}: non-positive dimensions "
                f"{self.width}x{self.height}"
            )


def _canonical(name: str) -> str:
    return name.strip().lower()


@dataclass(frozen=True)
class ClassVocabulary:
    """Ordered class names; index order is the prompt order.

    A name may carry synonyms ("chili/chilli/..." style descriptions);
    the whole string stays the canonical name and the parts become the
    synonym list. Evaluation matches on indices only, never on strings.
    """

    names: tuple[str, ...]
    synonyms: tuple[tuple[str, ...], ...] = ()

    def __post_init__(self):
        if not self.names:
            raise VocabularyError("empty vocabulary")
        seen = {}
        for i, name in enumerate(self.names):
            canon = _canonical(name)
            if not canon:
                raise VocabularyError(f"empty class name at index {i}")
            if canon in seen:
                raise VocabularyError(
                    f"duplicate class name {name!r} at indices "
                    f"{seen[canon]} and {i}"
                )
            seen[canon] = i
        if self.synonyms and len(self.synonyms) != len(self.names):
            raise VocabularyError(
                f"synonym list length {len(self.synonyms)} != "
                f"{len(self.names)} classes"
            )

    @classmethod
    def from_names(cls, names: Iterable[str]) -> "ClassVocabulary":
        """Build a vocabulary, splitting '/'-joined names into synonyms."""
        names = tuple(names)
        synonyms = tuple(
            tuple(part.strip() for part in name.split("/") if part.strip())
            if "/" in name
            else (name.strip(),)
            for name in names
        )
        return cls(names=names, synonyms=synonyms)

    def __len__(self) -> int:
        return len(self.names)

    def __iter__(self) -> Iterator[str]:
        return iter(self.names)

    def index_of(self, name: str) -> int:
        """Resolve a class name or synonym to its index.

        Canonical names win over synonyms; a synonym shared by several
        classes resolves to the lowest index. Raises VocabularyError for
        unknown names.
        """
        canon = _canonical(name)
        for i, n in enumerate(self.names):
            if _canonical(n) == canon:
                return i
        for i, syns in enumerate(self.synonyms):
            if any(_canonical(s) == canon for s in syns):
                return i
        raise VocabularyError(f"unknown class name: {name!r}")


@dataclass(frozen=True)
class LabelSet:
    """All labels for one dataset split, keyed by image id."""

    vocabulary: ClassVocabulary
    images: tuple[ImageRecord, ...]
    labels: Mapping[str, tuple[ObjectLabel, ...]] = field(default_factory=dict)

    def __post_init__(self):
        ids = [img.image_id for img in self.images]
        if len(set(ids)) != len(ids):
            dupes = sorted({i for i in ids if ids.count(i) > 1})
            raise VocabularyError(f"duplicate image ids: {dupes}")
        known = set(ids)
        n = len(self.vocabulary)
        for image_id, labels in self.labels.items():
            if image_id not in known:
                raise VocabularyError(
                    f"labels reference unknown image {image_id!r}"
                )
            for label in labels:
                if label.class_index >= n:
                    raise VocabularyError(
                        f"image {image_id!r}: class index "
                        f"{label.class_index} outside vocabulary of size {n}"
                    )

    def labels_for(self, image_id: str) -> tuple[ObjectLabel, ...]:
        return tuple(self.labels.get(image_id, ()))

    def iter_labels(self) -> Iterator[tuple[str, ObjectLabel]]:
        for image in self.images:
            for label in self.labels.get(image.image_id, ()):
                yield image.image_id, label

    @property
    def label_count(self) -> int:
        return sum(len(v) for v in self.labels.values())

    def image_ids(self) -> tuple[str, ...]:
        return tuple(img.image_id for img in self.images)

    def with_labels(
        self, labels: Mapping[str, Sequence[ObjectLabel]]
    ) -> "LabelSet":
        """Same images and vocabulary, different labels."""
        return LabelSet(
            vocabulary=self.vocabulary,
            images=self.images,
            labels={k: tuple(v) for k, v in labels.items() if v},
        )


def iou(a: BoundingBox, b: BoundingBox) -> float:
    """Intersection over union of two boxes, in [0, 1].

    Degenerate (zero-area) boxes are legal and score 0 against
    everything, including themselves.
    """
    ax0, ay0, ax1, ay1 = center_to_corners(a)
    bx0, by0, bx1, by1 = center_to_corners(b)
    iw = min(ax1, bx1) - max(ax0, bx0)
    ih = min(ay1, by1) - max(ay0, by0)
    if iw <= 0 or ih <= 0:
        return 0.0
    inter = iw * ih
    # Areas from the same corner values, so iou(b, b) is exactly 1.
    area_a = (ax1 - ax0) * (ay1 - ay0)
    area_b = (bx1 - bx0) * (by1 - by0)
    union = area_a + area_b - inter
    if union <= 0:
        return 0.0
    return inter / union


def center_to_corners(b: BoundingBox) -> tuple[float, float, float, float]:
    """(cx, cy, w, h) -> (xmin, ymin, xmax, ymax)."""
    half_w = b.w / 2.0
    half_h = b.h / 2.0
    return (b.cx - half_w, b.cy - half_h, b.cx + half_w, b.cy + half_h)


def corners_to_center(
    xmin: float, ymin: float, xmax: float, ymax: float
) -> BoundingBox:
    """(xmin, ymin, xmax, ymax) -> center-format box; inverse of center_to_corners."""
    if xmax < xmin or ymax < ymin:
        raise InvalidGeometryError(
            f"inverted corners: ({xmin}, {ymin}, {xmax}, {ymax})"
        )
    return BoundingBox(
        cx=(xmin + xmax) / 2.0,
        cy=(ymin + ymax) / 2.0,
        w=xmax - xmin,
        h=ymax - ymin,
    )


def filter_by_confidence(labels: LabelSet, alpha: float) -> LabelSet:
    """Keep labels with confidence strictly greater than alpha.

    Images and vocabulary pass through unchanged. Every label must carry
    a confidence; a bare one raises MissingConfidenceError naming its
    image.
    """
    if not 0.0 <= alpha <= 1.0:
        raise ValueError(f"alpha outside [0, 1]: {alpha}")
    kept: dict[str, tuple[ObjectLabel, ...]] = {}
    for image_id, image_labels in labels.labels.items():
        for label in image_labels:
            if label.confidence is None:
                raise MissingConfidenceError(
                    f"image {image_id!r}: label without confidence cannot "
                    f"be threshold-filtered"
                )
        retained = tuple(
            lb for lb in image_labels if lb.confidence > alpha
        )
        if retained:
            kept[image_id] = retained
    return labels.with_labels(kept)
