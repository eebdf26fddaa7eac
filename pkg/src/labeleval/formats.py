"""Parsers and writers for COCO-JSON, VOC-XML, YOLO-txt and the wire format.

Everything converts to/from the internal center-format pixel boxes.
Ingestion accommodations (crowd exclusion, segmentation-to-box
conversion) are manifest options. Per-file parsing is pure, so files may
be parsed concurrently and merged; all outputs here are deterministic
given identical inputs.

On-disk layouts:

  coco  one JSON file with images/annotations/categories arrays,
        bbox = [xmin, ymin, w, h]; optional per-annotation "score"
        becomes the confidence.
  voc   directory of per-image XML files; <bndbox> corner coordinates,
        optional <difficult> flag. Corners are treated as continuous
        half-open extents (w = xmax - xmin); the legacy inclusive
        convention (w = xmax - xmin + 1) sits behind an option.
  yolo  classes.txt (one class name per line), images.txt
        (image_id<TAB>width<TAB>height), labels/<image_id>.txt with
        lines "class cx cy w h [confidence]" normalized to [0, 1],
        six decimal places.
  wire  line-delimited JSON. Optional first line is a header object
        {"classes": [...], "model": ..., "options": {...}} fixing the
        class order; each following record is {"image_id": str,
        "width": int, "height": int, "labels": [{"class_index", "cx",
        "cy", "w", "h", "confidence"}, ...]} in absolute pixels with
        mandatory confidences. This is the exact contract with the
        inference adapter.
"""

from __future__ import annotations

import json
import xml.etree.ElementTree as ET
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Iterable, Optional, Union

from .errors import (
    DuplicateRecordError,
    FormatError,
    MissingConfidenceError,
    ParseError,
    ReferentialIntegrityError,
    ValueRangeError,
    VocabularyError,
    VocabularyMismatchError,
)
from .model import (
    BoundingBox,
    ClassVocabulary,
    ImageRecord,
    LabelSet,
    ObjectLabel,
    center_to_corners,
    corners_to_center,
)

FORMATS = ("coco", "voc", "yolo", "wire")

YOLO_DECIMALS = 6  # fixed so fixture diffs stay bit-stable


@dataclass(frozen=True)
class DatasetManifest:
    """Where a dataset lives and how to ingest it."""

    format: str
    root: Union[str, Path]
    split: str = "train"
    exclude_crowd: bool = True
    convert_segmentation: bool = True
    include_difficult: bool = True
    legacy_voc_inclusive: bool = False
    strict: bool = False

    def __post_init__(self):
        if self.format not in FORMATS:
            raise FormatError(
                f"unknown format {self.format!r}; expected one of {FORMATS}"
            )

    @classmethod
    def from_spec(cls, spec: str, **options) -> "DatasetManifest":
        """Parse a "format:path" string, e.g. "coco:annotations.json"."""
        fmt, sep, root = spec.partition(":")
        if not sep or not root:
            raise FormatError(
                f"dataset spec {spec!r} is not of the form format:path"
            )
        return cls(format=fmt, root=root, **options)

    @property
    def path(self) -> Path:
        return Path(self.root)


@dataclass
class IngestStats:
    """Counts reported by the convert command."""

    images: int = 0
    labels_in: int = 0
    labels_out: int = 0
    crowd_dropped: int = 0
    segmentation_converted: int = 0

    def as_dict(self) -> dict:
        return {
            "images": self.images,
            "labels_in": self.labels_in,
            "labels_out": self.labels_out,
            "crowd_dropped": self.crowd_dropped,
            "segmentation_converted": self.segmentation_converted,
        }


def _require(path: Path) -> Path:
    if not path.exists():
        raise FileNotFoundError(f"dataset root does not exist: {path}")
    return path


# --------------------------------------------------------------------------
# COCO

def parse_coco(manifest: DatasetManifest) -> LabelSet:
    """Parse a COCO annotation JSON into a LabelSet."""
    labels, _ = parse_coco_with_stats(manifest)
    return labels


def parse_coco_with_stats(
    manifest: DatasetManifest,
) -> tuple[LabelSet, IngestStats]:
    path = _require(manifest.path)
    text = path.read_text(encoding="utf-8")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        offset = len(text[: e.pos].encode("utf-8"))
        raise ParseError(
            f"{path}: malformed JSON at byte {offset}: {e.msg}", offset=offset
        ) from e

    for key in ("images", "annotations", "categories"):
        if key not in doc or not isinstance(doc[key], list):
            raise FormatError(f"{path}: missing or non-list {key!r} array")

    categories = sorted(doc["categories"], key=lambda c: c["id"])
    names, synonyms = [], []
    for cat in categories:
        name = str(cat["name"])
        names.append(name)
        if cat.get("synonyms"):
            synonyms.append(tuple(str(s) for s in cat["synonyms"]))
        elif "/" in name:
            synonyms.append(tuple(p.strip() for p in name.split("/") if p.strip()))
        else:
            synonyms.append((name,))
    vocabulary = ClassVocabulary(names=tuple(names), synonyms=tuple(synonyms))
    index_by_cat_id = {cat["id"]: i for i, cat in enumerate(categories)}

    images = []
    for img in doc["images"]:
        try:
            images.append(
                ImageRecord(
                    image_id=str(img["id"]),
                    width=int(img["width"]),
                    height=int(img["height"]),
                )
            )
        except KeyError as e:
            raise FormatError(f"{path}: image record missing {e}") from e
    known_images = {img.image_id for img in images}

    bad_image_ids = sorted(
        {
            str(ann["image_id"])
            for ann in doc["annotations"]
            if str(ann["image_id"]) not in known_images
        }
    )
    bad_cat_ids = sorted(
        {
            ann["category_id"]
            for ann in doc["annotations"]
            if ann["category_id"] not in index_by_cat_id
        },
        key=str,
    )
    if bad_image_ids or bad_cat_ids:
        raise ReferentialIntegrityError(
            f"{path}: annotations reference unknown image ids "
            f"{bad_image_ids} / category ids {bad_cat_ids}",
            offending_ids=bad_image_ids + [str(c) for c in bad_cat_ids],
        )

    stats = IngestStats(images=len(images), labels_in=len(doc["annotations"]))
    labels: dict[str, list[ObjectLabel]] = {}
    for ann in doc["annotations"]:
        if manifest.exclude_crowd and ann.get("iscrowd", 0) == 1:
            stats.crowd_dropped += 1
            continue
        box = None
        seg = ann.get("segmentation")
        if manifest.convert_segmentation and isinstance(seg, list) and seg:
            box = _polygon_hull(seg)
            if box is not None:
                stats.segmentation_converted += 1
        if box is None:
            x, y, w, h = (float(v) for v in ann["bbox"])
            box = BoundingBox(cx=x + w / 2.0, cy=y + h / 2.0, w=w, h=h)
        score = ann.get("score")
        label = ObjectLabel(
            box=box,
            class_index=index_by_cat_id[ann["category_id"]],
            confidence=float(score) if score is not None else None,
        )
        labels.setdefault(str(ann["image_id"]), []).append(label)

    stats.labels_out = sum(len(v) for v in labels.values())
    label_set = LabelSet(
        vocabulary=vocabulary,
        images=tuple(images),
        labels={k: tuple(v) for k, v in labels.items()},
    )
    return label_set, stats


def _polygon_hull(segmentation: list) -> Optional[BoundingBox]:
    """Tight axis-aligned hull over polygon ring vertices; None for RLE."""
    xs: list[float] = []
    ys: list[float] = []
    for ring in segmentation:
        if not isinstance(ring, (list, tuple)) or len(ring) < 4:
            return None
        xs.extend(float(v) for v in ring[0::2])
        ys.extend(float(v) for v in ring[1::2])
    if not xs:
        return None
    return corners_to_center(min(xs), min(ys), max(xs), max(ys))


def write_coco(labels: LabelSet, path: Union[str, Path]) -> Path:
    """Write a LabelSet as a COCO annotation JSON file."""
    path = Path(path)
    vocab = labels.vocabulary
    categories = []
    for i, name in enumerate(vocab.names):
        cat = {"id": i + 1, "name": name}
        syns = vocab.synonyms[i] if vocab.synonyms else (name,)
        if len(syns) > 1 or syns[0] != name:
            cat["synonyms"] = list(syns)
        categories.append(cat)

    def image_id_out(image_id: str):
        return int(image_id) if image_id.isdigit() else image_id

    images = [
        {
            "id": image_id_out(img.image_id),
            "file_name": img.image_id,
            "width": img.width,
            "height": img.height,
        }
        for img in labels.images
    ]
    annotations = []
    next_id = 1
    for image_id, label in labels.iter_labels():
        xmin, ymin, _, _ = center_to_corners(label.box)
        ann = {
            "id": next_id,
            "image_id": image_id_out(image_id),
            "category_id": label.class_index + 1,
            "bbox": [xmin, ymin, label.box.w, label.box.h],
            "area": label.box.area,
            "iscrowd": 0,
        }
        if label.confidence is not None:
            ann["score"] = label.confidence
        annotations.append(ann)
        next_id += 1

    doc = {"images": images, "annotations": annotations, "categories": categories}
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(doc, sort_keys=True), encoding="utf-8")
    return path


# --------------------------------------------------------------------------
# PASCAL VOC XML

def parse_voc_xml(
    manifest: DatasetManifest,
    vocabulary: Optional[ClassVocabulary] = None,
) -> LabelSet:
    """Parse a directory of per-image VOC XML files.

    Without a vocabulary, class names are collected from all files and
    ordered by canonical name. With one, unknown names either extend it
    (appended in encounter order) or raise, per manifest.strict.
    """
    root = _require(manifest.path)
    files = sorted(root.glob("*.xml"))

    parsed = [_parse_voc_file(f, manifest) for f in files]

    if vocabulary is None:
        seen: dict[str, str] = {}
        for _, objects in parsed:
            for name, _, _ in objects:
                seen.setdefault(name.strip().lower(), name)
        if not seen:
            raise FormatError(f"{root}: no classes found in any XML file")
        vocabulary = ClassVocabulary.from_names(
            seen[k] for k in sorted(seen)
        )

    names = list(vocabulary.names)
    index_by_name = {n.strip().lower(): i for i, n in enumerate(names)}
    images: list[ImageRecord] = []
    labels: dict[str, tuple[ObjectLabel, ...]] = {}
    for record, objects in parsed:
        image_labels = []
        for name, difficult, box in objects:
            if difficult and not manifest.include_difficult:
                continue
            key = name.strip().lower()
            if key not in index_by_name:
                if manifest.strict:
                    raise VocabularyError(
                        f"{record.image_id}: unknown class name {name!r}"
                    )
                index_by_name[key] = len(names)
                names.append(name)
            image_labels.append(
                ObjectLabel(
                    box=box,
                    class_index=index_by_name[key],
                    difficult=difficult,
                )
            )
        images.append(record)
        labels[record.image_id] = tuple(image_labels)

    if len(names) != len(vocabulary.names):
        vocabulary = ClassVocabulary.from_names(names)
    return LabelSet(vocabulary=vocabulary, images=tuple(images), labels=labels)


def _parse_voc_file(path: Path, manifest: DatasetManifest):
    try:
        xml_root = ET.parse(path).getroot()
    except ET.ParseError as e:
        raise ParseError(f"{path}: malformed XML: {e}") from e
    size = xml_root.find("size")
    if size is None or size.find("width") is None or size.find("height") is None:
        raise FormatError(f"{path}: missing size element")
    record = ImageRecord(
        image_id=path.stem,
        width=int(float(size.findtext("width"))),
        height=int(float(size.findtext("height"))),
    )
    objects = []
    for obj in xml_root.findall("object"):
        name = obj.findtext("name")
        if name is None:
            raise FormatError(f"{path}: object without a name")
        bnd = obj.find("bndbox")
        if bnd is None:
            raise FormatError(f"{path}: object {name!r} without bndbox")
        try:
            xmin = float(bnd.findtext("xmin"))
            ymin = float(bnd.findtext("ymin"))
            xmax = float(bnd.findtext("xmax"))
            ymax = float(bnd.findtext("ymax"))
        except (TypeError, ValueError) as e:
            raise FormatError(f"{path}: bad bndbox for {name!r}") from e
        if manifest.legacy_voc_inclusive:
            # 1-based inclusive pixel range [xmin..xmax] spans the
            # continuous extent [xmin-1, xmax].
            box = corners_to_center(xmin - 1.0, ymin - 1.0, xmax, ymax)
        else:
            box = corners_to_center(xmin, ymin, xmax, ymax)
        difficult = (obj.findtext("difficult") or "0").strip() == "1"
        objects.append((name, difficult, box))
    return record, objects


def _num(value: float) -> str:
    return str(int(value)) if float(value).is_integer() else repr(float(value))


def write_voc_xml(labels: LabelSet, root: Union[str, Path]) -> Path:
    """Write one VOC XML per image under root (half-open corner convention)."""
    root = Path(root)
    root.mkdir(parents=True, exist_ok=True)
    vocab = labels.vocabulary
    for img in labels.images:
        ann = ET.Element("annotation")
        ET.SubElement(ann, "filename").text = img.image_id
        size = ET.SubElement(ann, "size")
        ET.SubElement(size, "width").text = str(img.width)
        ET.SubElement(size, "height").text = str(img.height)
        ET.SubElement(size, "depth").text = "3"
        for label in labels.labels_for(img.image_id):
            obj = ET.SubElement(ann, "object")
            ET.SubElement(obj, "name").text = vocab.names[label.class_index]
            ET.SubElement(obj, "difficult").text = "1" if label.difficult else "0"
            bnd = ET.SubElement(obj, "bndbox")
            xmin, ymin, xmax, ymax = center_to_corners(label.box)
            ET.SubElement(bnd, "xmin").text = _num(xmin)
            ET.SubElement(bnd, "ymin").text = _num(ymin)
            ET.SubElement(bnd, "xmax").text = _num(xmax)
            ET.SubElement(bnd, "ymax").text = _num(ymax)
        tree = ET.ElementTree(ann)
        ET.indent(tree)
        tree.write(root / f"{img.image_id}.xml", encoding="unicode")
    return root


# --------------------------------------------------------------------------
# YOLO txt

def parse_yolo(manifest: DatasetManifest) -> LabelSet:
    """Parse a YOLO-txt dataset directory (see module docstring layout)."""
    root = _require(manifest.path)
    classes_file = root / "classes.txt"
    images_file = root / "images.txt"
    if not classes_file.exists():
        raise FormatError(f"{root}: missing classes.txt")
    if not images_file.exists():
        raise FormatError(f"{root}: missing images.txt")

    vocabulary = ClassVocabulary.from_names(
        line.strip()
        for line in classes_file.read_text(encoding="utf-8").splitlines()
        if line.strip()
    )
    images = []
    for lineno, line in enumerate(
        images_file.read_text(encoding="utf-8").splitlines(), start=1
    ):
        if not line.strip():
            continue
        parts = line.split("\t")
        if len(parts) != 3:
            raise FormatError(
                f"{images_file}:{lineno}: expected image_id<TAB>width<TAB>height"
            )
        images.append(
            ImageRecord(
                image_id=parts[0], width=int(parts[1]), height=int(parts[2])
            )
        )

    labels: dict[str, tuple[ObjectLabel, ...]] = {}
    for img in images:
        label_file = root / "labels" / f"{img.image_id}.txt"
        if not label_file.exists():
            continue
        image_labels = []
        for lineno, line in enumerate(
            label_file.read_text(encoding="utf-8").splitlines(), start=1
        ):
            if not line.strip():
                continue
            image_labels.append(
                _parse_yolo_line(line, label_file, lineno, img, vocabulary)
            )
        labels[img.image_id] = tuple(image_labels)
    return LabelSet(vocabulary=vocabulary, images=tuple(images), labels=labels)


def _parse_yolo_line(line, path, lineno, img, vocabulary) -> ObjectLabel:
    parts = line.split()
    if len(parts) not in (5, 6):
        raise FormatError(
            f"{path}:{lineno}: expected 5 or 6 fields, got {len(parts)}"
        )
    try:
        class_index = int(parts[0])
        values = [float(p) for p in parts[1:]]
    except ValueError as e:
        raise FormatError(f"{path}:{lineno}: non-numeric field") from e
    for v in values[:4]:
        if not 0.0 <= v <= 1.0001:
            raise ValueRangeError(
                f"{path}:{lineno}: normalized value {v} outside [0, 1.0001]"
            )
    if class_index < 0 or class_index >= len(vocabulary):
        raise VocabularyError(
            f"{path}:{lineno}: class index {class_index} outside "
            f"vocabulary of size {len(vocabulary)}"
        )
    cx, cy, w, h = values[:4]
    confidence = values[4] if len(values) == 5 else None
    return ObjectLabel(
        box=BoundingBox(
            cx=cx * img.width, cy=cy * img.height,
            w=w * img.width, h=h * img.height,
        ),
        class_index=class_index,
        confidence=confidence,
    )


def write_yolo(
    labels: LabelSet,
    root: Union[str, Path],
    include_confidence: bool = False,
) -> Path:
    """Write a YOLO-txt dataset; inverse of parse_yolo up to 6-decimal rounding."""
    root = Path(root)
    (root / "labels").mkdir(parents=True, exist_ok=True)
    (root / "classes.txt").write_text(
        "".join(f"{name}\n" for name in labels.vocabulary.names),
        encoding="utf-8",
    )
    lines = []
    for img in labels.images:
        if any(c in img.image_id for c in "\t\n"):
            raise FormatError(
                f"image id {img.image_id!r} contains tab/newline"
            )
        lines.append(f"{img.image_id}\t{img.width}\t{img.height}\n")
    (root / "images.txt").write_text("".join(lines), encoding="utf-8")

    for img in labels.images:
        out = []
        for label in labels.labels_for(img.image_id):
            fields = [
                str(label.class_index),
                f"{label.box.cx / img.width:.{YOLO_DECIMALS}f}",
                f"{label.box.cy / img.height:.{YOLO_DECIMALS}f}",
                f"{label.box.w / img.width:.{YOLO_DECIMALS}f}",
                f"{label.box.h / img.height:.{YOLO_DECIMALS}f}",
            ]
            if include_confidence:
                if label.confidence is None:
                    raise MissingConfidenceError(
                        f"image {img.image_id!r}: label without confidence"
                    )
                fields.append(f"{label.confidence:.{YOLO_DECIMALS}f}")
            out.append(" ".join(fields) + "\n")
        (root / "labels" / f"{img.image_id}.txt").write_text(
            "".join(out), encoding="utf-8"
        )
    return root


# --------------------------------------------------------------------------
# Wire format (contract with the inference adapter)

def parse_wire(
    source: Union[str, Path, IO[str], Iterable[str]],
    vocabulary: Optional[ClassVocabulary] = None,
) -> LabelSet:
    """Parse a line-delimited wire stream into a LabelSet.

    The class order comes from the stream header when present, else from
    the vocabulary argument; confidences are mandatory on every label.
    """
    if isinstance(source, (str, Path)):
        lines = _require(Path(source)).read_text(encoding="utf-8").splitlines()
    elif hasattr(source, "read"):
        lines = source.read().splitlines()
    else:
        lines = list(source)

    images: list[ImageRecord] = []
    labels: dict[str, tuple[ObjectLabel, ...]] = {}
    seen: set[str] = set()
    header_seen = False
    for lineno, line in enumerate(lines, start=1):
        if not line.strip():
            continue
        try:
            record = json.loads(line)
        except json.JSONDecodeError as e:
            raise ParseError(
                f"wire line {lineno}: malformed JSON: {e.msg}", offset=e.pos
            ) from e
        if not isinstance(record, dict):
            raise FormatError(f"wire line {lineno}: record is not an object")
        if "image_id" not in record:
            if header_seen or images:
                raise FormatError(
                    f"wire line {lineno}: header after image records"
                )
            header_seen = True
            header_vocab = ClassVocabulary.from_names(
                str(n) for n in record.get("classes", ())
            )
            if vocabulary is not None and vocabulary.names != header_vocab.names:
                raise VocabularyMismatchError(
                    "wire header classes differ from the supplied vocabulary",
                    left=header_vocab.names,
                    right=vocabulary.names,
                )
            vocabulary = header_vocab
            continue
        if vocabulary is None:
            raise FormatError(
                "wire stream has no header line and no vocabulary was supplied"
            )
        image_id = str(record["image_id"])
        if image_id in seen:
            raise DuplicateRecordError(
                f"wire line {lineno}: duplicate image_id {image_id!r}"
            )
        seen.add(image_id)
        try:
            img = ImageRecord(
                image_id=image_id,
                width=int(record["width"]),
                height=int(record["height"]),
            )
        except KeyError as e:
            raise FormatError(f"wire line {lineno}: record missing {e}") from e
        image_labels = []
        for entry in record.get("labels", ()):
            try:
                class_index = int(entry["class_index"])
            except KeyError as e:
                raise FormatError(
                    f"wire line {lineno}: label missing {e}"
                ) from e
            if class_index < 0 or class_index >= len(vocabulary):
                raise ReferentialIntegrityError(
                    f"wire line {lineno}: class index {class_index} outside "
                    f"vocabulary of size {len(vocabulary)}",
                    offending_ids=[str(class_index)],
                )
            if "confidence" not in entry or entry["confidence"] is None:
                raise MissingConfidenceError(
                    f"wire line {lineno}: image {image_id!r} label without "
                    f"confidence"
                )
            confidence = float(entry["confidence"])
            if not 0.0 <= confidence <= 1.0:
                raise ValueRangeError(
                    f"wire line {lineno}: confidence {confidence} outside [0, 1]"
                )
            image_labels.append(
                ObjectLabel(
                    box=BoundingBox(
                        cx=float(entry["cx"]),
                        cy=float(entry["cy"]),
                        w=float(entry["w"]),
                        h=float(entry["h"]),
                    ),
                    class_index=class_index,
                    confidence=confidence,
                )
            )
        images.append(img)
        labels[image_id] = tuple(image_labels)

    if vocabulary is None:
        raise FormatError(
            "empty wire stream with no header and no vocabulary supplied"
        )
    return LabelSet(vocabulary=vocabulary, images=tuple(images), labels=labels)


def write_wire(
    labels: LabelSet,
    dest: Union[str, Path, IO[str]],
    model_tag: Optional[str] = None,
    options: Optional[dict] = None,
) -> None:
    """Write a LabelSet as a wire stream with a header line."""
    header: dict = {"classes": list(labels.vocabulary.names)}
    if model_tag is not None:
        header["model"] = model_tag
    if options:
        header["options"] = options
    out_lines = [json.dumps(header, sort_keys=True)]
    for img in labels.images:
        entries = []
        for label in labels.labels_for(img.image_id):
            if label.confidence is None:
                raise MissingConfidenceError(
                    f"image {img.image_id!r}: wire labels require confidences"
                )
            entries.append(
                {
                    "class_index": label.class_index,
                    "cx": label.box.cx,
                    "cy": label.box.cy,
                    "w": label.box.w,
                    "h": label.box.h,
                    "confidence": label.confidence,
                }
            )
        out_lines.append(
            json.dumps(
                {
                    "image_id": img.image_id,
                    "width": img.width,
                    "height": img.height,
                    "labels": entries,
                },
                sort_keys=True,
            )
        )
    text = "\n".join(out_lines) + "\n"
    if isinstance(dest, (str, Path)):
        Path(dest).parent.mkdir(parents=True, exist_ok=True)
        Path(dest).write_text(text, encoding="utf-8")
    else:
        dest.write(text)


# --------------------------------------------------------------------------
# Dispatch

def load_dataset(manifest: DatasetManifest) -> LabelSet:
    labels, _ = load_dataset_with_stats(manifest)
    return labels


def load_dataset_with_stats(
    manifest: DatasetManifest,
) -> tuple[LabelSet, IngestStats]:
    if manifest.format == "coco":
        return parse_coco_with_stats(manifest)
    if manifest.format == "voc":
        labels = parse_voc_xml(manifest)
    elif manifest.format == "yolo":
        labels = parse_yolo(manifest)
    else:
        labels = parse_wire(manifest.path)
    n = labels.label_count
    return labels, IngestStats(
        images=len(labels.images), labels_in=n, labels_out=n
    )


def write_dataset(
    labels: LabelSet, fmt: str, out_dir: Union[str, Path]
) -> Path:
    """Write labels under out_dir in the named format; returns the path written."""
    out_dir = Path(out_dir)
    if fmt == "coco":
        return write_coco(labels, out_dir / "annotations.json")
    if fmt == "voc":
        return write_voc_xml(labels, out_dir)
    if fmt == "yolo":
        return write_yolo(labels, out_dir)
    if fmt == "wire":
        path = out_dir / "labels.jsonl"
        write_wire(labels, path)
        return path
    raise FormatError(f"unknown format {fmt!r}; expected one of {FORMATS}")
