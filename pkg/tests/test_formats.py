import json

import pytest

from labeleval import (
    DatasetManifest,
    DuplicateRecordError,
    FormatError,
    MissingConfidenceError,
    ParseError,
    ReferentialIntegrityError,
    ValueRangeError,
    VocabularyError,
    VocabularyMismatchError,
    parse_coco,
    parse_voc_xml,
    parse_wire,
    parse_yolo,
    write_coco,
    write_voc_xml,
    write_wire,
    write_yolo,
)
from labeleval.formats import parse_coco_with_stats
from conftest import (
    full_multiset,
    geometry_multiset,
    label,
    label_set,
    random_label_set,
    rng_for,
)


def coco_doc(annotations, images=None, categories=None):
    return {
        "images": images
        or [
            {"id": 1, "width": 640, "height": 480, "file_name": "1.jpg"},
            {"id": 2, "width": 320, "height": 240, "file_name": "2.jpg"},
        ],
        "annotations": annotations,
        "categories": categories
        or [{"id": 7, "name": "cat"}, {"id": 3, "name": "dog"}],
    }


def write_coco_doc(tmp_path, doc, name="ann.json"):
    path = tmp_path / name
    path.write_text(json.dumps(doc), encoding="utf-8")
    return path


def coco_manifest(path, **kw):
    return DatasetManifest(format="coco", root=path, **kw)


class TestParseCoco:
    def test_bbox_to_center_format(self, tmp_path):
        doc = coco_doc(
            [{"id": 1, "image_id": 1, "category_id": 7, "bbox": [0, 0, 4, 2]}]
        )
        labels = parse_coco(coco_manifest(write_coco_doc(tmp_path, doc)))
        (_, lb), = labels.iter_labels()
        assert (lb.box.cx, lb.box.cy, lb.box.w, lb.box.h) == (2, 1, 4, 2)

    def test_category_ids_remap_sorted_ascending(self, tmp_path):
        doc = coco_doc(
            [{"id": 1, "image_id": 1, "category_id": 7, "bbox": [0, 0, 4, 2]}]
        )
        labels = parse_coco(coco_manifest(write_coco_doc(tmp_path, doc)))
        # dog has the lower original id (3), so index 0; cat (7) is 1
        assert labels.vocabulary.names == ("dog", "cat")
        (_, lb), = labels.iter_labels()
        assert lb.class_index == 1

    def test_crowd_excluded_when_flagged(self, tmp_path):
        doc = coco_doc(
            [
                {"id": 1, "image_id": 1, "category_id": 7,
                 "bbox": [0, 0, 4, 2], "iscrowd": 1},
                {"id": 2, "image_id": 1, "category_id": 7,
                 "bbox": [0, 0, 4, 2], "iscrowd": 0},
            ]
        )
        path = write_coco_doc(tmp_path, doc)
        labels, stats = parse_coco_with_stats(coco_manifest(path))
        assert labels.label_count == 1
        assert stats.crowd_dropped == 1

        kept = parse_coco(coco_manifest(path, exclude_crowd=False))
        assert kept.label_count == 2

    def test_polygon_hull_replaces_bbox(self, tmp_path):
        doc = coco_doc(
            [
                {
                    "id": 1, "image_id": 1, "category_id": 7,
                    "bbox": [1, 1, 1, 1],
                    "segmentation": [[0, 0, 4, 0, 4, 2]],
                }
            ]
        )
        path = write_coco_doc(tmp_path, doc)
        labels, stats = parse_coco_with_stats(coco_manifest(path))
        (_, lb), = labels.iter_labels()
        assert (lb.box.cx, lb.box.cy, lb.box.w, lb.box.h) == (2, 1, 4, 2)
        assert stats.segmentation_converted == 1

        raw = parse_coco(coco_manifest(path, convert_segmentation=False))
        (_, lb), = raw.iter_labels()
        assert (lb.box.cx, lb.box.cy, lb.box.w, lb.box.h) == (1.5, 1.5, 1, 1)

    def test_rle_segmentation_falls_back_to_bbox(self, tmp_path):
        doc = coco_doc(
            [
                {
                    "id": 1, "image_id": 1, "category_id": 7,
                    "bbox": [0, 0, 4, 2],
                    "segmentation": {"counts": "abc", "size": [480, 640]},
                }
            ]
        )
        labels = parse_coco(coco_manifest(write_coco_doc(tmp_path, doc)))
        (_, lb), = labels.iter_labels()
        assert (lb.box.w, lb.box.h) == (4, 2)

    def test_unknown_ids_listed(self, tmp_path):
        doc = coco_doc(
            [
                {"id": 1, "image_id": 99, "category_id": 7, "bbox": [0, 0, 1, 1]},
                {"id": 2, "image_id": 1, "category_id": 42, "bbox": [0, 0, 1, 1]},
            ]
        )
        with pytest.raises(ReferentialIntegrityError) as exc:
            parse_coco(coco_manifest(write_coco_doc(tmp_path, doc)))
        assert "99" in str(exc.value)
        assert "42" in str(exc.value)

    def test_malformed_json_reports_byte_offset(self, tmp_path):
        path = tmp_path / "bad.json"
        path.write_text('{"images": [}', encoding="utf-8")
        with pytest.raises(ParseError) as exc:
            parse_coco(coco_manifest(path))
        assert exc.value.offset == 12

    def test_missing_arrays_rejected(self, tmp_path):
        path = write_coco_doc(tmp_path, {"images": [], "annotations": []})
        with pytest.raises(FormatError):
            parse_coco(coco_manifest(path))

    def test_annotation_order_permutation_gives_equal_multiset(self, tmp_path):
        anns = [
            {"id": i, "image_id": 1 + i % 2, "category_id": 7,
             "bbox": [i, i, 4, 2]}
            for i in range(6)
        ]
        a = parse_coco(coco_manifest(write_coco_doc(tmp_path, coco_doc(anns), "a.json")))
        b = parse_coco(
            coco_manifest(
                write_coco_doc(tmp_path, coco_doc(list(reversed(anns))), "b.json")
            )
        )
        assert full_multiset(a) == full_multiset(b)

    def test_no_exclusions_preserves_count(self, tmp_path):
        anns = [
            {"id": 1, "image_id": 1, "category_id": 7,
             "bbox": [0, 0, 4, 2], "iscrowd": 1},
            {"id": 2, "image_id": 2, "category_id": 3,
             "bbox": [1, 1, 2, 2],
             "segmentation": [[0, 0, 9, 0, 9, 9]]},
        ]
        path = write_coco_doc(tmp_path, coco_doc(anns))
        labels = parse_coco(
            coco_manifest(path, exclude_crowd=False, convert_segmentation=False)
        )
        assert labels.label_count == len(anns)

    def test_score_becomes_confidence(self, tmp_path):
        doc = coco_doc(
            [{"id": 1, "image_id": 1, "category_id": 7,
              "bbox": [0, 0, 4, 2], "score": 0.75}]
        )
        labels = parse_coco(coco_manifest(write_coco_doc(tmp_path, doc)))
        (_, lb), = labels.iter_labels()
        assert lb.confidence == 0.75

    def test_round_trip_preserves_boxes_and_categories(self, tmp_path):
        rng = rng_for(21)
        original = random_label_set(rng, n_images=4, max_labels=8)
        path = tmp_path / "out.json"
        write_coco(original, path)
        back = parse_coco(coco_manifest(path))
        assert back.vocabulary.names == original.vocabulary.names
        assert full_multiset(back, decimals=6) == full_multiset(original, decimals=6)


class TestParseVoc:
    def write_xml(self, tmp_path, image_id, objects, size=(500, 400)):
        parts = [
            "<annotation>",
            f"<filename>{image_id}.jpg</filename>",
            f"<size><width>{size[0]}</width><height>{size[1]}</height>"
            "<depth>3</depth></size>",
        ]
        for name, xmin, ymin, xmax, ymax, difficult in objects:
            parts.append(
                f"<object><name>{name}</name><difficult>{difficult}</difficult>"
                f"<bndbox><xmin>{xmin}</xmin><ymin>{ymin}</ymin>"
                f"<xmax>{xmax}</xmax><ymax>{ymax}</ymax></bndbox></object>"
            )
        parts.append("</annotation>")
        (tmp_path / f"{image_id}.xml").write_text("\n".join(parts), "utf-8")

    def manifest(self, tmp_path, **kw):
        return DatasetManifest(format="voc", root=tmp_path, **kw)

    def test_half_open_corner_conversion(self, tmp_path):
        self.write_xml(tmp_path, "im0", [("sofa", 1, 1, 3, 3, 0)])
        labels = parse_voc_xml(self.manifest(tmp_path))
        (_, lb), = labels.iter_labels()
        assert (lb.box.cx, lb.box.cy, lb.box.w, lb.box.h) == (2, 2, 2, 2)

    def test_legacy_inclusive_convention(self, tmp_path):
        self.write_xml(tmp_path, "im0", [("sofa", 1, 1, 3, 3, 0)])
        labels = parse_voc_xml(
            self.manifest(tmp_path, legacy_voc_inclusive=True)
        )
        (_, lb), = labels.iter_labels()
        assert (lb.box.w, lb.box.h) == (3, 3)
        assert (lb.box.cx, lb.box.cy) == (1.5, 1.5)

    def test_empty_object_list_keeps_image(self, tmp_path):
        self.write_xml(tmp_path, "empty", [])
        self.write_xml(tmp_path, "full", [("cat", 1, 1, 3, 3, 0)])
        labels = parse_voc_xml(self.manifest(tmp_path))
        assert {img.image_id for img in labels.images} == {"empty", "full"}
        assert labels.labels_for("empty") == ()

    def test_class_name_maps_to_vocabulary_index(self, tmp_path):
        voc_classes = [
            "aeroplane", "bicycle", "bird", "boat", "bottle", "bus", "car",
            "cat", "chair", "cow", "diningtable", "dog", "horse", "motorbike",
            "person", "pottedplant", "sheep", "sofa", "train", "tvmonitor",
        ]
        from labeleval import ClassVocabulary

        vocabulary = ClassVocabulary.from_names(voc_classes)
        self.write_xml(tmp_path, "im0", [("sofa", 1, 1, 3, 3, 0)])
        labels = parse_voc_xml(self.manifest(tmp_path), vocabulary)
        (_, lb), = labels.iter_labels()
        assert lb.class_index == voc_classes.index("sofa")

    def test_difficult_retained_and_marked(self, tmp_path):
        self.write_xml(
            tmp_path, "im0",
            [("cat", 1, 1, 3, 3, 1), ("cat", 5, 5, 9, 9, 0)],
        )
        labels = parse_voc_xml(self.manifest(tmp_path))
        flags = sorted(lb.difficult for _, lb in labels.iter_labels())
        assert flags == [False, True]

        hard_dropped = parse_voc_xml(
            self.manifest(tmp_path, include_difficult=False)
        )
        assert hard_dropped.label_count == 1

    def test_unknown_class_strict_vs_extend(self, tmp_path):
        from labeleval import ClassVocabulary

        vocabulary = ClassVocabulary.from_names(["cat"])
        self.write_xml(tmp_path, "im0", [("zebra", 1, 1, 3, 3, 0)])
        with pytest.raises(VocabularyError, match="zebra"):
            parse_voc_xml(self.manifest(tmp_path, strict=True), vocabulary)
        extended = parse_voc_xml(self.manifest(tmp_path), vocabulary)
        assert extended.vocabulary.names == ("cat", "zebra")

    def test_missing_size_rejected(self, tmp_path):
        (tmp_path / "bad.xml").write_text(
            "<annotation><filename>x.jpg</filename></annotation>", "utf-8"
        )
        with pytest.raises(FormatError, match="size"):
            parse_voc_xml(self.manifest(tmp_path))

    def test_round_trip_preserves_corners(self, tmp_path):
        rng = rng_for(22)
        original = random_label_set(rng, n_images=3, max_labels=6,
                                    with_confidence=False)
        out = tmp_path / "voc"
        write_voc_xml(original, out)
        back = parse_voc_xml(self.manifest(out))
        assert geometry_multiset(back, decimals=6) == geometry_multiset(
            original, decimals=6
        )


class TestYolo:
    def manifest(self, root):
        return DatasetManifest(format="yolo", root=root)

    def test_line_format(self, tmp_path):
        ls = label_set(
            {"img": [label(50, 25, 100, 50, class_index=0, confidence=0.5)]},
            width=100,
            height=50,
        )
        write_yolo(ls, tmp_path)
        line = (tmp_path / "labels" / "img.txt").read_text().strip()
        assert line == "0 0.500000 0.500000 1.000000 1.000000"

    def test_round_trip_at_stated_precision(self, tmp_path):
        rng = rng_for(23)
        original = random_label_set(
            rng, n_images=4, max_labels=8, width=1000, height=1000
        )
        write_yolo(original, tmp_path)
        back = parse_yolo(self.manifest(tmp_path))
        assert back.image_ids() == original.image_ids()
        for image_id in original.image_ids():
            for a, b in zip(
                original.labels_for(image_id), back.labels_for(image_id)
            ):
                assert a.class_index == b.class_index
                for attr in ("cx", "cy", "w", "h"):
                    # 6-decimal normalized quantization at 1000 px
                    assert abs(
                        getattr(a.box, attr) - getattr(b.box, attr)
                    ) <= 5.1e-4

    def test_empty_label_file_is_zero_labels(self, tmp_path):
        ls = label_set({"img": []}, width=100, height=100)
        write_yolo(ls, tmp_path)
        assert (tmp_path / "labels" / "img.txt").read_text() == ""
        back = parse_yolo(self.manifest(tmp_path))
        assert back.labels_for("img") == ()

    def test_value_out_of_range_names_file_and_line(self, tmp_path):
        ls = label_set({"img": []}, width=100, height=100)
        write_yolo(ls, tmp_path)
        (tmp_path / "labels" / "img.txt").write_text(
            "0 0.5 0.5 1.2 0.5\n", "utf-8"
        )
        with pytest.raises(ValueRangeError, match=r"img\.txt:1"):
            parse_yolo(self.manifest(tmp_path))

    def test_confidence_column_round_trip(self, tmp_path):
        ls = label_set(
            {"img": [label(50, 50, 20, 20, confidence=0.25)]},
            width=100,
            height=100,
        )
        write_yolo(ls, tmp_path, include_confidence=True)
        back = parse_yolo(self.manifest(tmp_path))
        (_, lb), = back.iter_labels()
        assert lb.confidence == pytest.approx(0.25, abs=1e-6)

    def test_missing_classes_file(self, tmp_path):
        with pytest.raises(FormatError, match="classes.txt"):
            parse_yolo(self.manifest(tmp_path))


class TestWire:
    def stream(self, *records, classes=("class0", "class1", "class2")):
        lines = [json.dumps({"classes": list(classes)})]
        lines += [json.dumps(r) for r in records]
        return lines

    def record(self, image_id="a", labels=()):
        return {
            "image_id": image_id,
            "width": 640,
            "height": 480,
            "labels": list(labels),
        }

    def entry(self, confidence=0.5, class_index=0):
        return {
            "class_index": class_index,
            "cx": 10.0,
            "cy": 10.0,
            "w": 5.0,
            "h": 5.0,
            "confidence": confidence,
        }

    def test_empty_label_list(self):
        labels = parse_wire(self.stream(self.record()))
        assert labels.labels_for("a") == ()
        assert len(labels.images) == 1

    def test_confidence_one_accepted(self):
        labels = parse_wire(
            self.stream(self.record(labels=[self.entry(confidence=1.0)]))
        )
        (_, lb), = labels.iter_labels()
        assert lb.confidence == 1.0

    def test_duplicate_image_id_rejected(self):
        with pytest.raises(DuplicateRecordError):
            parse_wire(self.stream(self.record("a"), self.record("a")))

    def test_confidence_out_of_range_rejected(self):
        with pytest.raises(ValueRangeError):
            parse_wire(
                self.stream(self.record(labels=[self.entry(confidence=1.5)]))
            )

    def test_missing_confidence_rejected(self):
        entry = self.entry()
        del entry["confidence"]
        with pytest.raises(MissingConfidenceError):
            parse_wire(self.stream(self.record(labels=[entry])))

    def test_unknown_class_index_rejected(self):
        with pytest.raises(ReferentialIntegrityError):
            parse_wire(
                self.stream(self.record(labels=[self.entry(class_index=3)]))
            )

    def test_no_header_requires_vocabulary(self):
        record = json.dumps(self.record())
        with pytest.raises(FormatError, match="header"):
            parse_wire([record])
        from conftest import vocab

        labels = parse_wire([record], vocabulary=vocab(3))
        assert len(labels.images) == 1

    def test_header_conflicting_with_argument(self):
        from conftest import vocab

        with pytest.raises(VocabularyMismatchError):
            parse_wire(self.stream(self.record()), vocabulary=vocab(2))

    def test_malformed_line_reports_position(self):
        with pytest.raises(ParseError, match="line 2"):
            parse_wire([json.dumps({"classes": ["a"]}), "{broken"])

    def test_write_then_parse_round_trip(self, tmp_path):
        rng = rng_for(24)
        original = random_label_set(rng, n_images=3, max_labels=6)
        path = tmp_path / "stream.jsonl"
        write_wire(original, path, model_tag="demo")
        back = parse_wire(path)
        assert back.vocabulary.names == original.vocabulary.names
        assert full_multiset(back) == full_multiset(original)

    def test_record_order_is_insensitive(self):
        records = [self.record("a"), self.record("b")]
        fwd = parse_wire(self.stream(*records))
        rev = parse_wire(self.stream(*reversed(records)))
        assert full_multiset(fwd) == full_multiset(rev)
        assert set(fwd.image_ids()) == set(rev.image_ids())
