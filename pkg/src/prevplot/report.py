"""Assay report: every computed quantity for one assay in one place.

JSON output keeps full float precision and writes undefined values as
``null``. Markdown output is for people and uses the display conventions:
percentages rounded to whole percent, tests per detected case to the nearest
integer.
"""

from __future__ import annotations

import json
import math
from collections.abc import Sequence
from dataclasses import asdict, dataclass, field
from typing import Any

from .errors import Degenerate
from .metrics import (
    ConfidenceInterval,
    CostWeights,
    TestCharacteristics,
    TranslatedPerformance,
    breakeven_prevalence,
    translate,
)
from .roc import RocCurve
from .sweep import PrevalenceCurve, PrevalenceGrid, sweep

SCHEMA_VERSION = "1.0"

#: Sensitivity/specificity level of the 10-90-50 rule of thumb.
RULE_OF_THUMB_LEVEL = 0.90


@dataclass(frozen=True)
class Report:
    characteristics: TestCharacteristics
    headline: TranslatedPerformance
    curve: PrevalenceCurve
    roc: RocCurve | None = None
    narrative_fields: dict[str, Any] = field(default_factory=dict)


def build_report(
    chars: TestCharacteristics,
    marker_prev: float,
    grid: PrevalenceGrid | Sequence[float] | None = None,
    costs: CostWeights | None = None,
    roc: RocCurve | None = None,
) -> Report:
    """Sweep, headline translation at ``marker_prev``, breakeven and optional ROC."""
    curve = sweep(chars, grid, marker=marker_prev, costs=costs)
    headline = translate(chars, curve.marker_prevalence, costs)
    try:
        breakeven = breakeven_prevalence(chars.sensitivity, chars.specificity)
    except Degenerate:
        breakeven = None
    narrative = {
        "breakeven_prevalence": breakeven,
        "tests_per_detected_case_at_marker": headline.tests_per_detected_case,
        "meets_90_90": chars.sensitivity >= RULE_OF_THUMB_LEVEL and chars.specificity >= RULE_OF_THUMB_LEVEL,
        "most_positives_false_alarms": headline.false_alarm_rate is not None and headline.false_alarm_rate > 0.5,
        "marker_below_breakeven": breakeven is not None and headline.prevalence < breakeven,
    }
    return Report(chars, headline, curve, roc, narrative)


def _ci(ci: ConfidenceInterval | None):
    return None if ci is None else asdict(ci)


def _finite_or_none(x: float) -> float | None:
    return x if math.isfinite(x) else None


def report_to_dict(report: Report) -> dict[str, Any]:
    chars = report.characteristics
    curve = report.curve
    out: dict[str, Any] = {
        "schema_version": SCHEMA_VERSION,
        "characteristics": {
            "sensitivity": chars.sensitivity,
            "specificity": chars.specificity,
            "sensitivity_ci": _ci(chars.sensitivity_ci),
            "specificity_ci": _ci(chars.specificity_ci),
            "source_counts": None if chars.source_counts is None else asdict(chars.source_counts),
        },
        "headline": asdict(report.headline),
        "narrative": dict(report.narrative_fields),
        "curve": {
            "marker_prevalence": curve.marker_prevalence,
            "cost_weights": None if curve.cost_weights is None else asdict(curve.cost_weights),
            "points": [asdict(p) for p in curve.points],
        },
        "roc": None,
    }
    if report.roc is not None:
        roc = report.roc
        out["roc"] = {
            "auc": roc.auc,
            "auc_ci": _ci(roc.auc_ci),
            "n_diseased": roc.n_diseased,
            "n_healthy": roc.n_healthy,
            # the (0, 0) anchor has threshold +inf, which JSON cannot carry
            "points": [
                {
                    "threshold": _finite_or_none(p.threshold),
                    "true_positive_rate": p.true_positive_rate,
                    "false_positive_rate": p.false_positive_rate,
                }
                for p in roc.points
            ],
        }
    return out


def report_to_json(report: Report) -> str:
    return json.dumps(report_to_dict(report), indent=2, allow_nan=False) + "\n"


def pct(x: float | None) -> str:
    """Whole-percent display form; ``n/a`` for undefined values."""
    return "n/a" if x is None else f"{x * 100:.0f}%"


def whole(x: float | None) -> str:
    return "n/a" if x is None else f"{x:.0f}"


def report_to_markdown(report: Report) -> str:
    chars = report.characteristics
    h = report.headline
    n = report.narrative_fields
    lines = ["# Assay performance report", "", "## Test characteristics", ""]

    def with_ci(value: float, ci: ConfidenceInterval | None) -> str:
        if ci is None:
            return pct(value)
        return f"{pct(value)} ({ci.confidence_level * 100:g}% CI: {pct(ci.lower)} to {pct(ci.upper)})"

    lines.append(f"- Sensitivity: {with_ci(chars.sensitivity, chars.sensitivity_ci)}")
    lines.append(f"- Specificity: {with_ci(chars.specificity, chars.specificity_ci)}")
    if chars.source_counts is not None:
        cm = chars.source_counts
        lines.append(
            f"- Validation counts: TP {cm.true_positives}, FP {cm.false_positives}, "
            f"FN {cm.false_negatives}, TN {cm.true_negatives}"
        )
    if report.roc is not None:
        roc = report.roc
        auc = f"- ROC AUC: {roc.auc:.2f}"
        if roc.auc_ci is not None:
            auc += f" ({roc.auc_ci.confidence_level * 100:g}% CI: {roc.auc_ci.lower:.2f}, {roc.auc_ci.upper:.2f})"
        lines.append(auc + f" from {roc.n_diseased} diseased and {roc.n_healthy} healthy samples")

    lines += ["", f"## Performance at prevalence {pct(h.prevalence)}", ""]
    lines += ["| Quantity | Value |", "| --- | --- |"]
    rows = [
        ("False alarms (share of positive tests)", pct(h.false_alarm_rate)),
        ("Missed cases (share of negative tests)", pct(h.missed_case_rate)),
        ("Positive predictive value", pct(h.ppv)),
        ("Negative predictive value", pct(h.npv)),
        ("Tests per detected case", whole(h.tests_per_detected_case)),
        ("Share of patients testing positive", pct(h.positive_test_rate)),
        ("Accuracy", pct(h.accuracy)),
    ]
    if h.expected_cost is not None:
        rows.append(("Expected misclassification cost per person", f"{h.expected_cost:.4g}"))
    lines += [f"| {k} | {v} |" for k, v in rows]

    lines += ["", "## Summary", ""]
    if h.false_alarm_rate is not None:
        lines.append(f"At a prevalence of {pct(h.prevalence)}, {pct(h.false_alarm_rate)} of all positive tests will be false alarms.")
    if h.tests_per_detected_case is not None:
        lines.append(f"{whole(h.tests_per_detected_case)} tests will be needed to identify each new case.")
    be = n.get("breakeven_prevalence")
    if be is not None:
        lines.append(
            f"Below a prevalence of {100 * be:.1f}% most positive tests are false alarms"
            + (" (the marker prevalence is below this)." if n.get("marker_below_breakeven") else ".")
        )
    if report.curve.cost_weights is not None:
        cw = report.curve.cost_weights
        lines.append(
            f"Costs weighted at {cw.cost_per_false_alarm:g} per false alarm and "
            f"{cw.cost_per_missed_case:g} per missed case."
        )
    return "\n".join(lines) + "\n"
