"""Labeling-cost comparison: human time vs annotation service vs GPU.

Run: python demos/05_labeling_costs.py
"""

from labeleval import CostAssumptions, build_cost_report
from labeleval.costs import report_to_table

# Defaults: 7 s of annotator time per box, $0.036 per box for a
# commercial service, $0.93/h to rent a capable GPU. Auto-label wall
# hours are measured, not derived, so they enter as inputs.
assumptions = CostAssumptions()

datasets = [
    # (name, classes, objects, measured auto-label wall hours)
    ("VOC", 20, 40_058, "0.06"),
    ("COCO", 80, 849_945, "0.45"),
    ("LVIS", 1_203, 1_270_141, "0.45"),
    ("BDD", 10, 1_286_871, "0.31"),
]

report = build_cost_report(datasets, assumptions)
print(report_to_table(report))

total = report.total
ratio_time = float(total.human_hours) / float(total.al_hours)
ratio_cost = float(total.service_cost) / float(total.al_cost)
print(f"auto-labeling is ~{ratio_time:,.0f}x faster than human annotation")
print(f"and ~{ratio_cost:,.0f}x cheaper than the annotation service")

# Rates are parameters; a pricier GPU barely moves the comparison.
pricey = CostAssumptions(gpu_rate_per_hour="4.50")
pricier = build_cost_report(datasets, pricey)
print(f"\nat $4.50/h the total AL cost is still only "
      f"${pricier.total.al_cost:.2f}")
