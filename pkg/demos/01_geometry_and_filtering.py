"""Boxes, IoU, and strict confidence filtering.

Run: python demos/01_geometry_and_filtering.py
"""

from labeleval import (
    BoundingBox,
    ClassVocabulary,
    ImageRecord,
    LabelSet,
    ObjectLabel,
    center_to_corners,
    corners_to_center,
    filter_by_confidence,
    iou,
)

# Boxes live in absolute pixels, center format: (cx, cy, w, h).
a = BoundingBox(cx=1, cy=1, w=2, h=2)
b = BoundingBox(cx=2, cy=1, w=2, h=2)
print("a =", a)
print("b =", b)
print("iou(a, b) =", iou(a, b))  # shares a 1x2 strip: 2 / 6 = 1/3
print("iou(a, a) =", iou(a, a))

# Corner conversion is the exact inverse.
corners = center_to_corners(a)
print("corners of a:", corners)
print("and back:", corners_to_center(*corners))

# A degenerate box is legal input and scores 0 against everything.
point_box = BoundingBox(cx=3, cy=3, w=0, h=0)
print("degenerate iou:", iou(point_box, point_box))

# A label set keys labels by image and carries the class vocabulary.
vocabulary = ClassVocabulary.from_names(["person", "car", "dog"])
images = (ImageRecord("frame_000", width=640, height=480),)
labels = LabelSet(
    vocabulary=vocabulary,
    images=images,
    labels={
        "frame_000": (
            ObjectLabel(box=a, class_index=0, confidence=0.19),
            ObjectLabel(box=a, class_index=1, confidence=0.20),
            ObjectLabel(box=b, class_index=2, confidence=0.21),
        )
    },
)

# Filtering is strictly greater-than: at alpha = 0.2 the 0.20 label goes.
for alpha in (0.0, 0.2, 0.5):
    kept = filter_by_confidence(labels, alpha)
    names = [
        vocabulary.names[lb.class_index] for _, lb in kept.iter_labels()
    ]
    print(f"alpha={alpha}: {kept.label_count} labels kept {names}")
