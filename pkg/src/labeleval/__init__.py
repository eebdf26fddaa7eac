"""labeleval: evaluate auto-generated detection labels against references.

Core pieces: geometry/label types with IoU and confidence filtering,
annotation format parsers/writers (COCO, VOC, YOLO, wire), a greedy
class-aware matcher with precision/recall/F1, confidence-threshold
sweeps, per-class AP / mAP, and a labeling-cost model. The `labeleval`
CLI ties them into reproducible runs.
"""

from .costs import (
    CostAssumptions,
    CostReport,
    CostRow,
    al_cost,
    build_cost_report,
    human_hours,
    service_cost,
)
from .errors import (
    DuplicateRecordError,
    FormatError,
    InvalidGeometryError,
    LabelEvalError,
    MissingConfidenceError,
    ParseError,
    ReferentialIntegrityError,
    ValueRangeError,
    VocabularyError,
    VocabularyMismatchError,
)
from .formats import (
    DatasetManifest,
    load_dataset,
    parse_coco,
    parse_voc_xml,
    parse_wire,
    parse_yolo,
    write_coco,
    write_dataset,
    write_voc_xml,
    write_wire,
    write_yolo,
)
from .map_eval import (
    COCO_IOU_THRESHOLDS,
    EvalReport,
    average_precision,
    class_frequency,
    frequency_slice_map,
    mean_ap,
    percent_display,
)
from .matching import (
    MatchResult,
    MetricPoint,
    aggregate,
    audit_records,
    match_image,
    match_sets,
    metrics_from_tallies,
)
from .model import (
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
from .sweep import (
    DEFAULT_ALPHA_GRID,
    MetricCurve,
    best_f1,
    best_recall,
    curve_from_records,
    curve_to_csv,
    curve_to_records,
    sweep,
)

__version__ = "0.1.0"

__all__ = [
    "BoundingBox",
    "ClassVocabulary",
    "CostAssumptions",
    "CostReport",
    "CostRow",
    "COCO_IOU_THRESHOLDS",
    "DEFAULT_ALPHA_GRID",
    "DatasetManifest",
    "DuplicateRecordError",
    "EvalReport",
    "FormatError",
    "ImageRecord",
    "InvalidGeometryError",
    "LabelEvalError",
    "LabelSet",
    "MatchResult",
    "MetricCurve",
    "MetricPoint",
    "MissingConfidenceError",
    "ObjectLabel",
    "ParseError",
    "ReferentialIntegrityError",
    "ValueRangeError",
    "VocabularyError",
    "VocabularyMismatchError",
    "aggregate",
    "al_cost",
    "audit_records",
    "average_precision",
    "best_f1",
    "best_recall",
    "build_cost_report",
    "center_to_corners",
    "class_frequency",
    "corners_to_center",
    "curve_from_records",
    "curve_to_csv",
    "curve_to_records",
    "filter_by_confidence",
    "frequency_slice_map",
    "human_hours",
    "iou",
    "load_dataset",
    "match_image",
    "match_sets",
    "mean_ap",
    "metrics_from_tallies",
    "parse_coco",
    "parse_voc_xml",
    "parse_wire",
    "parse_yolo",
    "percent_display",
    "service_cost",
    "sweep",
    "write_coco",
    "write_dataset",
    "write_voc_xml",
    "write_wire",
    "write_yolo",
]
