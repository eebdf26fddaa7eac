"""Labeling-cost comparison: human annotation time, service cost, GPU cost.

All arithmetic is exact until display: money is decimal (products of
decimal inputs stay exact), hours are exact rationals because the
seconds-to-hours division does not terminate in base 10. Rounding
(half-up) happens only at display, so totals are computed from
unrounded row values. Auto-label wall-clock hours are measured
externally and enter as inputs.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, replace
from decimal import ROUND_HALF_UP, Decimal
from fractions import Fraction
from typing import Optional, Sequence, Union

Number = Union[int, float, str, Decimal]

SECONDS_PER_HOUR = 3600


def _dec(value: Number) -> Decimal:
    # Through str so float inputs like 0.036 mean the decimal they spell.
    return value if isinstance(value, Decimal) else Decimal(str(value))


@dataclass(frozen=True)
class CostAssumptions:
    """Rate parameters; defaults follow common annotation pricing."""

    seconds_per_box: Decimal = Decimal("7")
    service_cost_per_box: Decimal = Decimal("0.036")
    gpu_rate_per_hour: Decimal = Decimal("0.93")
    al_wall_hours: Decimal = Decimal("0")

    def __post_init__(self):
        for name in (
            "seconds_per_box",
            "service_cost_per_box",
            "gpu_rate_per_hour",
            "al_wall_hours",
        ):
            object.__setattr__(self, name, _dec(getattr(self, name)))
            if getattr(self, name) < 0:
                raise ValueError(f"negative {name}")


def human_hours(objects: int, assumptions: CostAssumptions) -> Fraction:
    """Exact annotation hours for `objects` boxes; display rounds to whole hours."""
    if objects < 0:
        raise ValueError(f"negative object count: {objects}")
    return (
        objects * Fraction(assumptions.seconds_per_box) / SECONDS_PER_HOUR
    )


def service_cost(objects: int, assumptions: CostAssumptions) -> Decimal:
    """Exact annotation-service cost; display rounds half-up to cents."""
    if objects < 0:
        raise ValueError(f"negative object count: {objects}")
    return objects * assumptions.service_cost_per_box


def al_cost(assumptions: CostAssumptions) -> Decimal:
    """Exact GPU rental cost for the assumed wall-clock hours."""
    return assumptions.al_wall_hours * assumptions.gpu_rate_per_hour


def round_cents(value: Decimal) -> Decimal:
    return value.quantize(Decimal("0.01"), rounding=ROUND_HALF_UP)


def round_hours(value: Union[Decimal, Fraction]) -> int:
    # Half away from zero on the exact value.
    f = Fraction(value)
    half = Fraction(1, 2)
    return int(f + half) if f >= 0 else -int(-f + half)


def display_money(value: Decimal) -> str:
    return f"${round_cents(value):,}"


@dataclass(frozen=True)
class CostRow:
    """One dataset's exact (unrounded) cost figures."""

    name: str
    classes: Optional[int]
    objects: int
    human_hours: Fraction
    service_cost: Decimal
    al_hours: Decimal
    al_cost: Decimal


@dataclass(frozen=True)
class CostReport:
    """Per-dataset rows plus a totals row summed before any rounding."""

    rows: tuple[CostRow, ...]
    total: CostRow


def build_cost_report(
    datasets: Sequence[tuple],
    assumptions: Optional[CostAssumptions] = None,
) -> CostReport:
    """Datasets are (name, classes, objects, al_wall_hours) tuples."""
    base = assumptions or CostAssumptions()
    rows = []
    for name, classes, objects, al_hours in datasets:
        a = replace(base, al_wall_hours=_dec(al_hours))
        rows.append(
            CostRow(
                name=name,
                classes=classes,
                objects=objects,
                human_hours=human_hours(objects, a),
                service_cost=service_cost(objects, a),
                al_hours=a.al_wall_hours,
                al_cost=al_cost(a),
            )
        )
    total = CostRow(
        name="Total",
        classes=None,
        objects=sum(r.objects for r in rows),
        human_hours=sum((r.human_hours for r in rows), Fraction(0)),
        service_cost=sum((r.service_cost for r in rows), Decimal(0)),
        al_hours=sum((r.al_hours for r in rows), Decimal(0)),
        al_cost=sum((r.al_cost for r in rows), Decimal(0)),
    )
    return CostReport(rows=tuple(rows), total=total)


def _display_row(row: CostRow) -> list[str]:
    return [
        row.name,
        str(row.classes) if row.classes is not None else "-",
        f"{row.objects:,}",
        f"{round_hours(row.human_hours):,}",
        display_money(row.service_cost),
        format(row.al_hours.normalize(), "f"),
        display_money(row.al_cost),
    ]


COST_COLUMNS = (
    "dataset",
    "classes",
    "objects",
    "human_hours",
    "service_cost",
    "al_hours",
    "al_cost",
)


def report_to_csv(report: CostReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(COST_COLUMNS)
    for row in (*report.rows, report.total):
        writer.writerow(_display_row(row))
    return buf.getvalue()


def report_to_table(report: CostReport) -> str:
    """Markdown table in the usual column order."""
    header = ("Dataset", "Classes", "Objects", "Hours",
              "Service Cost", "AL Hours", "AL Cost")
    body = [_display_row(r) for r in (*report.rows, report.total)]
    widths = [
        max(len(header[i]), *(len(row[i]) for row in body))
        for i in range(len(header))
    ]
    def fmt(cells):
        return "| " + " | ".join(c.ljust(w) for c, w in zip(cells, widths)) + " |"
    lines = [fmt(header), fmt(["-" * w for w in widths])]
    lines += [fmt(row) for row in body]
    return "\n".join(lines) + "\n"
