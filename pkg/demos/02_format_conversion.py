"""COCO -> internal -> YOLO/VOC conversion with ingestion accommodations.

Run: python demos/02_format_conversion.py
"""

import json
import tempfile
from pathlib import Path

from labeleval import DatasetManifest, write_voc_xml, write_yolo
from labeleval.formats import parse_coco_with_stats

scratch = Path(tempfile.mkdtemp(prefix="labeleval_demo_"))

# A small COCO file: one crowd annotation and one polygon-bearing one.
coco = {
    "images": [
        {"id": 1, "width": 640, "height": 480, "file_name": "1.jpg"},
        {"id": 2, "width": 320, "height": 240, "file_name": "2.jpg"},
    ],
    "categories": [{"id": 5, "name": "cat"}, {"id": 2, "name": "dog"}],
    "annotations": [
        {"id": 1, "image_id": 1, "category_id": 5, "bbox": [10, 10, 40, 30]},
        {"id": 2, "image_id": 1, "category_id": 2, "bbox": [0, 0, 5, 5],
         "iscrowd": 1},
        {"id": 3, "image_id": 2, "category_id": 2, "bbox": [50, 50, 10, 10],
         "segmentation": [[40.0, 40.0, 80.0, 40.0, 80.0, 70.0]]},
    ],
}
coco_path = scratch / "annotations.json"
coco_path.write_text(json.dumps(coco), encoding="utf-8")

# Crowd instances are dropped and polygons become tight hull boxes by
# default; both behaviors are manifest options.
manifest = DatasetManifest(format="coco", root=coco_path)
labels, stats = parse_coco_with_stats(manifest)
print("ingest stats:", stats.as_dict())

# Category ids remap to dense indices sorted by original id: dog(2) -> 0,
# cat(5) -> 1.
print("vocabulary:", labels.vocabulary.names)
for image_id, lb in labels.iter_labels():
    print(f"  {image_id}: class={labels.vocabulary.names[lb.class_index]}"
          f" box=({lb.box.cx}, {lb.box.cy}, {lb.box.w}, {lb.box.h})")

# The same labels as a YOLO-txt training layout...
yolo_dir = scratch / "yolo"
write_yolo(labels, yolo_dir)
print("\nYOLO layout:")
for path in sorted(yolo_dir.rglob("*")):
    if path.is_file():
        print(f"  {path.relative_to(scratch)}")
print("labels/1.txt:", (yolo_dir / "labels" / "1.txt").read_text().strip())

# ...and as per-image VOC XML.
voc_dir = scratch / "voc"
write_voc_xml(labels, voc_dir)
print("\nVOC files:", [p.name for p in sorted(voc_dir.glob('*.xml'))])
print(f"\nscratch dir: {scratch}")
