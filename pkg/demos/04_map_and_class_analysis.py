"""Mean average precision and class-frequency slices.

Run: python demos/04_map_and_class_analysis.py
"""

import numpy as np

from labeleval import (
    BoundingBox,
    ClassVocabulary,
    ImageRecord,
    LabelSet,
    ObjectLabel,
    average_precision,
    class_frequency,
    frequency_slice_map,
    mean_ap,
    percent_display,
)
from labeleval.map_eval import frequency_summary

rng = np.random.default_rng(11)

vocabulary = ClassVocabulary.from_names(
    ["person", "car", "chair", "dog", "bottle", "sofa"]
)
images = tuple(ImageRecord(f"val{i:03d}", 640, 480) for i in range(30))

# References with a skewed class distribution: person is everywhere,
# sofa is rare.
weights = np.array([0.4, 0.25, 0.15, 0.1, 0.07, 0.03])
ref_labels = {}
for img in images:
    ref_labels[img.image_id] = tuple(
        ObjectLabel(
            box=BoundingBox(
                cx=rng.uniform(60, 580), cy=rng.uniform(60, 420),
                w=rng.uniform(40, 120), h=rng.uniform(40, 120),
            ),
            class_index=int(rng.choice(6, p=weights)),
        )
        for _ in range(rng.integers(2, 7))
    )
references = LabelSet(vocabulary=vocabulary, images=images, labels=ref_labels)

top, bottom = class_frequency(references, 2)
print("most frequent :", top)
print("least frequent:", bottom)

# Predictions: decent on common classes, sloppy on rare ones.
pred_labels = {}
for img in images:
    out = []
    for ref in references.labels_for(img.image_id):
        rarity = 1.0 - weights[ref.class_index] / weights[0]
        if rng.uniform() < 0.15 + 0.5 * rarity:
            continue  # miss
        jitter = 6.0 + 30.0 * rarity
        out.append(
            ObjectLabel(
                box=BoundingBox(
                    cx=ref.box.cx + rng.normal(0, jitter),
                    cy=ref.box.cy + rng.normal(0, jitter),
                    w=max(4.0, ref.box.w + rng.normal(0, jitter)),
                    h=max(4.0, ref.box.h + rng.normal(0, jitter)),
                ),
                class_index=ref.class_index,
                confidence=float(rng.uniform(0.3, 1.0)),
            )
        )
    pred_labels[img.image_id] = tuple(out)
predictions = references.with_labels(pred_labels)

# Per-class AP at IoU > 0.5, then the full 10-threshold report.
for c, name in enumerate(vocabulary.names):
    ap = average_precision(predictions, references, c)
    print(f"AP50[{name}] = {'-' if ap is None else f'{ap:.3f}'}")

report = mean_ap(predictions, references)
print(f"\nmAP50    = {report.map50:.3f}")
print(f"mAP75    = {report.map75:.3f}")
print(f"mAP50-95 = {report.map50_95:.3f}")

# How much worse are the rare classes?
index_of = {n: i for i, n in enumerate(vocabulary.names)}
top_idx = [index_of[name] for name, _ in top]
bottom_idx = [index_of[name] for name, _ in bottom]
top_map, bottom_map, diff = frequency_slice_map(report, top_idx, bottom_idx)
print(f"\nfrequent-slice mAP50 {top_map:.3f}, rare-slice {bottom_map:.3f}, "
      f"difference {percent_display(diff)}")
print()
print(frequency_summary(report, vocabulary, top_idx, bottom_idx, markdown=True))
