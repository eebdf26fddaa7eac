"""Sweep confidence thresholds and pick the best one.

Builds a synthetic "auto-labeled" dataset whose mistakes depend on
confidence, sweeps the default 15-point grid, and selects the threshold
with the best F1 and the best recall.

Run: python demos/03_threshold_sweep.py
"""

import numpy as np

from labeleval import (
    BoundingBox,
    ClassVocabulary,
    ImageRecord,
    LabelSet,
    ObjectLabel,
    best_f1,
    best_recall,
    sweep,
)
from labeleval.sweep import curve_to_csv

rng = np.random.default_rng(7)

# Human reference labels: 40 images, a few objects each.
vocabulary = ClassVocabulary.from_names(["person", "car", "dog"])
images = tuple(ImageRecord(f"img{i:03d}", 640, 480) for i in range(40))
ref_labels = {}
for img in images:
    ref_labels[img.image_id] = tuple(
        ObjectLabel(
            box=BoundingBox(
                cx=rng.uniform(60, 580), cy=rng.uniform(60, 420),
                w=rng.uniform(30, 120), h=rng.uniform(30, 120),
            ),
            class_index=int(rng.integers(0, 3)),
        )
        for _ in range(rng.integers(2, 6))
    )
references = LabelSet(vocabulary=vocabulary, images=images, labels=ref_labels)

# Auto-labels: each true object is found with jitter and a confidence;
# high-confidence detections are more accurate, and low-confidence
# hallucinations are sprinkled in. That shape gives the classic
# precision-up / recall-down trade as the threshold rises.
auto_labels = {}
for img in images:
    out = []
    for ref in references.labels_for(img.image_id):
        confidence = float(rng.beta(4, 2))
        jitter = (1.05 - confidence) * 28.0
        out.append(
            ObjectLabel(
                box=BoundingBox(
                    cx=ref.box.cx + rng.normal(0, jitter),
                    cy=ref.box.cy + rng.normal(0, jitter),
                    w=max(4.0, ref.box.w + rng.normal(0, jitter)),
                    h=max(4.0, ref.box.h + rng.normal(0, jitter)),
                ),
                class_index=ref.class_index,
                confidence=confidence,
            )
        )
    for _ in range(rng.integers(0, 4)):
        out.append(
            ObjectLabel(
                box=BoundingBox(
                    cx=rng.uniform(0, 640), cy=rng.uniform(0, 480),
                    w=rng.uniform(20, 80), h=rng.uniform(20, 80),
                ),
                class_index=int(rng.integers(0, 3)),
                confidence=float(rng.beta(2, 5)),
            )
        )
    auto_labels[img.image_id] = tuple(out)
auto = LabelSet(vocabulary=vocabulary, images=images, labels=auto_labels)

curve = sweep(auto, references, model_tag="synthetic", dataset_tag="demo")
print(curve_to_csv(curve))

alpha_f1, point_f1 = best_f1(curve)
alpha_recall, point_recall = best_recall(curve)
print(f"best F1     : {point_f1.f1:.3f} at alpha={alpha_f1}")
print(f"best recall : {point_recall.recall:.3f} at alpha={alpha_recall}")
print("label counts fall monotonically:",
      [p.label_count for p in curve.points])
