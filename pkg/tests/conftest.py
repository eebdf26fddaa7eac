"""Shared builders for synthetic label sets and multiset comparison."""

from __future__ import annotations

from collections import Counter

import numpy as np

from labeleval import (
    BoundingBox,
    ClassVocabulary,
    ImageRecord,
    LabelSet,
    ObjectLabel,
)


def vocab(n=3, prefix="class"):
    return ClassVocabulary.from_names(f"{prefix}{i}" for i in range(n))


def box(cx, cy, w, h):
    return BoundingBox(cx=cx, cy=cy, w=w, h=h)


def label(cx, cy, w, h, class_index=0, confidence=None, difficult=False):
    return ObjectLabel(
        box=box(cx, cy, w, h),
        class_index=class_index,
        confidence=confidence,
        difficult=difficult,
    )


def label_set(images_labels, n_classes=3, width=640, height=480):
    """images_labels: {image_id: [ObjectLabel, ...]}."""
    images = tuple(
        ImageRecord(image_id, width, height) for image_id in images_labels
    )
    return LabelSet(
        vocabulary=vocab(n_classes),
        images=images,
        labels={k: tuple(v) for k, v in images_labels.items() if v},
    )


def random_label(rng, n_classes=3, span=100.0, with_confidence=True):
    w = rng.uniform(5.0, 40.0)
    h = rng.uniform(5.0, 40.0)
    return ObjectLabel(
        box=BoundingBox(
            cx=rng.uniform(0.0, span),
            cy=rng.uniform(0.0, span),
            w=w,
            h=h,
        ),
        class_index=int(rng.integers(0, n_classes)),
        confidence=float(rng.uniform(0.0, 1.0)) if with_confidence else None,
    )


def random_label_set(
    rng,
    n_images=5,
    max_labels=10,
    n_classes=3,
    with_confidence=True,
    width=640,
    height=480,
):
    images_labels = {
        f"img{i:03d}": [
            random_label(rng, n_classes, with_confidence=with_confidence)
            for _ in range(int(rng.integers(0, max_labels + 1)))
        ]
        for i in range(n_images)
    }
    return label_set(images_labels, n_classes, width, height)


def geometry_multiset(labels: LabelSet, decimals=6):
    """Counter of (image_id, class, rounded box) ignoring confidences."""
    return Counter(
        (
            image_id,
            lb.class_index,
            round(lb.box.cx, decimals),
            round(lb.box.cy, decimals),
            round(lb.box.w, decimals),
            round(lb.box.h, decimals),
        )
        for image_id, lb in labels.iter_labels()
    )


def full_multiset(labels: LabelSet, decimals=6):
    """Counter including confidences (rounded)."""
    return Counter(
        (
            image_id,
            lb.class_index,
            round(lb.box.cx, decimals),
            round(lb.box.cy, decimals),
            round(lb.box.w, decimals),
            round(lb.box.h, decimals),
            None if lb.confidence is None else round(lb.confidence, decimals),
        )
        for image_id, lb in labels.iter_labels()
    )


def rng_for(seed):
    return np.random.default_rng(seed)
