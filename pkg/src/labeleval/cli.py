"""Command-line surface: convert, evaluate, sweep, map, cost, export, report.

Datasets are named as "format:path" specs (coco:ann.json, voc:xmldir,
yolo:datasetdir, wire:stream.jsonl). Every command is deterministic
given identical inputs and flags; exports carry a provenance sidecar
whose timestamp can be pinned with --pin-timestamp for byte-stable
outputs.

Exit codes: 0 success, 1 I/O failure, 2 validation failure.
"""

from __future__ import annotations

import argparse
import csv
import hashlib
import io
import json
import os
import sys
from datetime import datetime, timezone
from pathlib import Path

from . import __version__
from .costs import CostAssumptions, build_cost_report, report_to_csv as cost_csv
from .costs import report_to_table as cost_table
from .errors import LabelEvalError, VocabularyMismatchError
from .formats import (
    DatasetManifest,
    load_dataset,
    load_dataset_with_stats,
    write_dataset,
)
from .map_eval import (
    class_frequency,
    frequency_summary,
    mean_ap,
    report_to_csv as map_csv,
)
from .matching import (
    MatchResult,
    audit_records,
    match_sets,
    metrics_from_tallies,
)
from .model import filter_by_confidence
from .sweep import (
    DEFAULT_ALPHA_GRID,
    best_f1,
    best_recall,
    curve_from_records,
    curve_to_csv,
    curve_to_records,
    sweep,
)

OUT_DIR_ENV = "LABELEVAL_OUT"

EXIT_OK = 0
EXIT_IO = 1
EXIT_VALIDATION = 2


def main(argv=None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        args.func(args)
    except VocabularyMismatchError as e:
        print(f"error: {e}", file=sys.stderr)
        _print_vocab_diff(e)
        return EXIT_VALIDATION
    except (LabelEvalError, ValueError) as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def _print_vocab_diff(e: VocabularyMismatchError) -> None:
    left = set(e.left or ())
    right = set(e.right or ())
    only_left = sorted(left - right)
    only_right = sorted(right - left)
    if only_left:
        print(f"only in first:  {', '.join(only_left)}", file=sys.stderr)
    if only_right:
        print(f"only in second: {', '.join(only_right)}", file=sys.stderr)


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="labeleval",
        description="Evaluate auto-generated detection labels, sweep "
        "confidence thresholds, compute mAP, model labeling costs, and "
        "export filtered label sets.",
    )
    parser.add_argument(
        "--version", action="version", version=f"%(prog)s {__version__}"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_out(p):
        p.add_argument(
            "--out",
            default=None,
            help=f"output directory (default: ${OUT_DIR_ENV} or cwd)",
        )

    def add_ingest_flags(p):
        p.add_argument("--keep-crowd", action="store_true",
                       help="keep crowd-flagged annotations")
        p.add_argument("--no-convert-segmentation", action="store_true",
                       help="keep stored boxes instead of polygon hulls")
        p.add_argument("--exclude-difficult", action="store_true",
                       help="drop difficult-flagged objects")
        p.add_argument("--strict-vocab", action="store_true",
                       help="fail on unknown class names instead of extending")

    p = sub.add_parser("convert", help="rewrite a dataset in another format")
    p.add_argument("--in", dest="input", required=True, metavar="FMT:PATH")
    p.add_argument("--out-format", required=True, choices=("coco", "voc", "yolo", "wire"))
    add_ingest_flags(p)
    add_out(p)
    p.set_defaults(func=cmd_convert)

    p = sub.add_parser("evaluate", help="precision/recall/F1 at one threshold")
    p.add_argument("--auto", required=True, metavar="FMT:PATH")
    p.add_argument("--ref", required=True, metavar="FMT:PATH")
    p.add_argument("--alpha", type=float, default=0.0,
                   help="confidence threshold (strict >); 0 evaluates unfiltered")
    p.add_argument("--iou", type=float, default=0.5)
    p.add_argument("--audit", action="store_true",
                   help="also dump matched pairs as audit.jsonl")
    add_ingest_flags(p)
    add_out(p)
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("sweep", help="metric curve across thresholds")
    p.add_argument("--auto", required=True, metavar="FMT:PATH")
    p.add_argument("--ref", required=True, metavar="FMT:PATH")
    p.add_argument("--alphas", default=None,
                   help="comma-separated grid (default: built-in 15-point grid)")
    p.add_argument("--iou", type=float, default=0.5)
    p.add_argument("--model-tag", default="")
    p.add_argument("--dataset-tag", default="")
    add_ingest_flags(p)
    add_out(p)
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("map", help="per-class AP and mAP for predictions")
    p.add_argument("--pred", required=True, metavar="FMT:PATH")
    p.add_argument("--ref", required=True, metavar="FMT:PATH")
    p.add_argument("--iou-thresholds", default=None,
                   help="comma-separated (default: 0.50..0.95 step 0.05)")
    p.add_argument("--recall-points", type=int, default=101, choices=(11, 101))
    p.add_argument("--top-k", type=int, default=5,
                   help="slice size for the frequency summary")
    p.add_argument("--format", choices=("csv", "markdown"), default="csv")
    add_ingest_flags(p)
    add_out(p)
    p.set_defaults(func=cmd_map)

    p = sub.add_parser("cost", help="labeling cost comparison table")
    p.add_argument("--row", action="append", required=True,
                   metavar="NAME:CLASSES:OBJECTS:ALHOURS",
                   help="one dataset row; repeatable")
    p.add_argument("--seconds-per-box", default="7")
    p.add_argument("--cost-per-box", default="0.036")
    p.add_argument("--gpu-rate", default="0.93")
    p.add_argument("--format", choices=("csv", "markdown"), default="markdown")
    add_out(p)
    p.set_defaults(func=cmd_cost)

    p = sub.add_parser("export", help="filter auto-labels and write a training set")
    p.add_argument("--auto", required=True, metavar="FMT:PATH")
    p.add_argument("--alpha", type=float, required=True)
    p.add_argument("--out-format", required=True, choices=("coco", "voc", "yolo", "wire"))
    p.add_argument("--model-tag", default="")
    p.add_argument("--pin-timestamp", default=None,
                   help="fixed timestamp for the provenance sidecar")
    add_ingest_flags(p)
    add_out(p)
    p.set_defaults(func=cmd_export)

    p = sub.add_parser("report", help="summarize sweep curves")
    p.add_argument("--curve", action="append", required=True,
                   metavar="RECORDS.jsonl", help="curve record file; repeatable")
    p.add_argument("--format", choices=("csv", "markdown"), default="markdown")
    add_out(p)
    p.set_defaults(func=cmd_report)

    return parser


def _out_dir(args) -> Path:
    out = args.out or os.environ.get(OUT_DIR_ENV) or "."
    path = Path(out)
    path.mkdir(parents=True, exist_ok=True)
    return path


def _manifest(args, spec: str) -> DatasetManifest:
    return DatasetManifest.from_spec(
        spec,
        exclude_crowd=not getattr(args, "keep_crowd", False),
        convert_segmentation=not getattr(args, "no_convert_segmentation", False),
        include_difficult=not getattr(args, "exclude_difficult", False),
        strict=getattr(args, "strict_vocab", False),
    )


def _parse_alphas(text):
    return tuple(float(v) for v in text.split(",") if v.strip())


def cmd_convert(args) -> None:
    labels, stats = load_dataset_with_stats(_manifest(args, args.input))
    out_dir = _out_dir(args)
    written = write_dataset(labels, args.out_format, out_dir)
    report = {
        **stats.as_dict(),
        "format_in": args.input.partition(":")[0],
        "format_out": args.out_format,
        "written": str(written),
    }
    (out_dir / "conversion_report.json").write_text(
        json.dumps(report, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    print(
        f"converted {stats.labels_out}/{stats.labels_in} labels "
        f"({stats.crowd_dropped} crowd dropped, "
        f"{stats.segmentation_converted} segmentations converted) -> {written}"
    )


def cmd_evaluate(args) -> None:
    auto = load_dataset(_manifest(args, args.auto))
    ref = load_dataset(_manifest(args, args.ref))
    filtered = filter_by_confidence(auto, args.alpha) if args.alpha > 0 else auto
    tallies = match_sets(filtered, ref, args.iou)
    point = metrics_from_tallies(
        tallies, alpha=args.alpha, label_count=filtered.label_count
    )
    out_dir = _out_dir(args)

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("alpha", "label_count", "tp", "fp", "fn",
                     "precision", "recall", "f1"))
    writer.writerow([point.alpha, point.label_count, point.tp, point.fp,
                     point.fn, point.precision, point.recall, point.f1])
    (out_dir / "metrics.csv").write_text(buf.getvalue(), encoding="utf-8")

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(("class", "tp", "fp", "fn", "precision", "recall", "f1"))
    for c in sorted(tallies.per_class):
        ctp, cfp, cfn = tallies.per_class[c]
        cm = metrics_from_tallies(MatchResult(tp=ctp, fp=cfp, fn=cfn))
        writer.writerow([ref.vocabulary.names[c], ctp, cfp, cfn,
                         cm.precision, cm.recall, cm.f1])
    (out_dir / "metrics_per_class.csv").write_text(buf.getvalue(), encoding="utf-8")

    if args.audit:
        lines = [
            json.dumps(record, sort_keys=True)
            for record in audit_records(filtered, ref, args.iou)
        ]
        (out_dir / "audit.jsonl").write_text(
            "".join(line + "\n" for line in lines), encoding="utf-8"
        )

    print(
        f"alpha={point.alpha} labels={point.label_count} "
        f"P={point.precision:.3f} R={point.recall:.3f} F1={point.f1:.3f}"
    )


def cmd_sweep(args) -> None:
    auto = load_dataset(_manifest(args, args.auto))
    ref = load_dataset(_manifest(args, args.ref))
    alphas = _parse_alphas(args.alphas) if args.alphas else DEFAULT_ALPHA_GRID
    curve = sweep(
        auto, ref, alphas, args.iou,
        model_tag=args.model_tag, dataset_tag=args.dataset_tag,
    )
    out_dir = _out_dir(args)
    (out_dir / "curve.csv").write_text(curve_to_csv(curve), encoding="utf-8")
    (out_dir / "curve.jsonl").write_text(curve_to_records(curve), encoding="utf-8")
    alpha, point = best_f1(curve)
    print(
        f"{len(curve)} points -> {out_dir / 'curve.csv'}; "
        f"best F1 {point.f1:.3f} at alpha={alpha}"
    )


def cmd_map(args) -> None:
    pred = load_dataset(_manifest(args, args.pred))
    ref = load_dataset(_manifest(args, args.ref))
    thresholds = (
        _parse_alphas(args.iou_thresholds) if args.iou_thresholds else None
    )
    report = (
        mean_ap(pred, ref, thresholds, args.recall_points)
        if thresholds
        else mean_ap(pred, ref, recall_points=args.recall_points)
    )
    out_dir = _out_dir(args)
    (out_dir / "eval_report.csv").write_text(
        map_csv(report, ref.vocabulary), encoding="utf-8"
    )

    k = min(args.top_k, len(ref.vocabulary))
    top, bottom = class_frequency(ref, k)
    index_of = {n: i for i, n in enumerate(ref.vocabulary.names)}
    eligible = lambda pairs: [
        index_of[name] for name, _ in pairs if index_of[name] in report.per_class_ap
    ]
    top_idx, bottom_idx = eligible(top), eligible(bottom)
    base = report.map_at.get(0.5)
    if top_idx and bottom_idx and base is not None:
        summary = frequency_summary(
            report, ref.vocabulary, top_idx, bottom_idx,
            markdown=args.format == "markdown",
        )
        ext = "md" if args.format == "markdown" else "csv"
        (out_dir / f"frequency_summary.{ext}").write_text(summary, encoding="utf-8")
    parts = [
        f"mAP50={report.map50:.4f}" if report.map50 is not None else "mAP50=-",
        f"mAP75={report.map75:.4f}" if report.map75 is not None else "mAP75=-",
        f"mAP50-95={report.map50_95:.4f}" if report.map50_95 is not None else "mAP50-95=-",
    ]
    print(" ".join(parts) + f" -> {out_dir / 'eval_report.csv'}")


def cmd_cost(args) -> None:
    datasets = []
    for row in args.row:
        parts = row.split(":")
        if len(parts) != 4:
            raise ValueError(
                f"--row {row!r} is not NAME:CLASSES:OBJECTS:ALHOURS"
            )
        datasets.append((parts[0], int(parts[1]), int(parts[2]), parts[3]))
    assumptions = CostAssumptions(
        seconds_per_box=args.seconds_per_box,
        service_cost_per_box=args.cost_per_box,
        gpu_rate_per_hour=args.gpu_rate,
    )
    report = build_cost_report(datasets, assumptions)
    out_dir = _out_dir(args)
    if args.format == "markdown":
        text = cost_table(report)
        (out_dir / "cost_report.md").write_text(text, encoding="utf-8")
    else:
        text = cost_csv(report)
        (out_dir / "cost_report.csv").write_text(text, encoding="utf-8")
    print(text, end="")


def _sha256(path: Path) -> str:
    h = hashlib.sha256()
    h.update(path.read_bytes())
    return h.hexdigest()


def cmd_export(args) -> None:
    manifest = _manifest(args, args.auto)
    raw = load_dataset(manifest)
    filtered = filter_by_confidence(raw, args.alpha)
    out_dir = _out_dir(args)
    written = write_dataset(filtered, args.out_format, out_dir)

    root = manifest.path
    input_files = sorted(p for p in ([root] if root.is_file() else root.rglob("*")) if p.is_file())
    timestamp = args.pin_timestamp or datetime.now(timezone.utc).isoformat(
        timespec="seconds"
    )
    sidecar = {
        "tool": "labeleval",
        "version": __version__,
        "model_tag": args.model_tag,
        "alpha": args.alpha,
        "format": args.out_format,
        "labels_in": raw.label_count,
        "labels_out": filtered.label_count,
        "inputs": [
            {"path": str(p), "sha256": _sha256(p)} for p in input_files
        ],
        "generated_at": timestamp,
    }
    (out_dir / "provenance.json").write_text(
        json.dumps(sidecar, indent=2, sort_keys=True) + "\n", encoding="utf-8"
    )
    print(
        f"exported {filtered.label_count}/{raw.label_count} labels at "
        f"alpha={args.alpha} -> {written}"
    )


def cmd_report(args) -> None:
    rows = []
    for path in args.curve:
        curve = curve_from_records(Path(path).read_text(encoding="utf-8"))
        fa, fp = best_f1(curve)
        ra, rp = best_recall(curve)
        rows.append(
            (curve.model_tag or "-", curve.dataset_tag or "-",
             f"{fa}", f"{fp.f1:.3f}", f"{ra}", f"{rp.recall:.3f}")
        )
    header = ("model", "dataset", "best_f1_alpha", "best_f1",
              "best_recall_alpha", "best_recall")
    out_dir = _out_dir(args)
    if args.format == "markdown":
        widths = [max(len(header[i]), *(len(r[i]) for r in rows))
                  for i in range(len(header))]
        fmt = lambda cells: "| " + " | ".join(
            c.ljust(w) for c, w in zip(cells, widths)) + " |"
        lines = [fmt(header), fmt(["-" * w for w in widths])]
        lines += [fmt(r) for r in rows]
        text = "\n".join(lines) + "\n"
        (out_dir / "report.md").write_text(text, encoding="utf-8")
    else:
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
        text = buf.getvalue()
        (out_dir / "report.csv").write_text(text, encoding="utf-8")
    print(text, end="")


if __name__ == "__main__":
    sys.exit(main())
