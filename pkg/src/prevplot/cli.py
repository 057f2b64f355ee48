"""Command-line interface.

Subcommands: ``metrics``, ``sweep``, ``roc`` and ``report``. Exit status is 0
on success, 1 for domain or data errors (bad counts, malformed CSV, unwritable
output) and 2 for usage errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path

from . import __version__
from .errors import DiagnosticError
from .ingest import CsvIngestConfig, read_samples_csv
from .metrics import (
    ConfusionMatrix,
    CostWeights,
    TestCharacteristics,
    characteristics_from_matrix,
    translate,
)
from .plots import PlotOptions, render_prevalence_plot, render_roc_plot
from .report import build_report, pct, report_to_json, report_to_markdown, whole
from .roc import analyze_roc, characteristics_at_point, youden_optimal_point
from .sweep import PrevalenceGrid, curve_to_table, sweep, table_to_csv


def probability_arg(text: str) -> float:
    """Parse ``0.06`` or ``6%`` as a probability."""
    s = text.strip()
    try:
        value = float(s[:-1]) / 100 if s.endswith("%") else float(s)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number or percentage") from None
    if not 0.0 <= value <= 1.0:
        raise argparse.ArgumentTypeError(f"{text!r} must be in [0, 1] (or 0%-100%)")
    return value


def confidence_arg(text: str) -> float:
    value = probability_arg(text)
    if value in (0.0, 1.0):
        raise argparse.ArgumentTypeError(f"confidence level must be strictly between 0 and 1, got {text!r}")
    return value


def count_arg(text: str) -> int:
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not an integer count") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"count must be non-negative, got {value}")
    return value


def cost_arg(text: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"{text!r} is not a number") from None
    if not value >= 0 or value == float("inf"):
        raise argparse.ArgumentTypeError(f"cost must be a finite non-negative number, got {text!r}")
    return value


def grid_arg(text: str) -> list[float]:
    return [probability_arg(part) for part in text.split(",") if part.strip()]


# ---------------------------------------------------------------------------
# shared argument groups
# ---------------------------------------------------------------------------


def _characteristics_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("test characteristics (give --sens/--spec or all four counts)")
    g.add_argument("--sens", type=probability_arg, help="sensitivity, e.g. 0.97 or 97%%")
    g.add_argument("--spec", type=probability_arg, help="specificity, e.g. 0.92 or 92%%")
    for name in ("tp", "fp", "fn", "tn"):
        g.add_argument(f"--{name}", type=count_arg, help=f"{name.upper()} count from a validation study")
    return p


def _confidence_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--confidence", type=confidence_arg, default=0.95, help="confidence level (default 0.95)")
    return p


def _costs_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--cost-fa", type=cost_arg, help="cost of one false alarm")
    p.add_argument("--cost-md", type=cost_arg, help="cost of one missed diagnosis")
    return p


def _grid_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    p.add_argument("--steps", type=int, default=None, help="number of grid points from 0 to 1 (default 101)")
    p.add_argument("--grid", type=grid_arg, help="explicit comma-separated prevalence grid, strictly increasing")
    return p


def _ingest_parent() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(add_help=False)
    g = p.add_argument_group("CSV input")
    g.add_argument("--score-column", default="score", help="score column name (or 0-based index with --no-header)")
    g.add_argument("--label-column", default="label", help="label column name (or 0-based index with --no-header)")
    g.add_argument("--positive-label", default="1", help="label value marking a diseased sample (default '1')")
    g.add_argument("--delimiter", default=",", help="field delimiter (default ',')")
    g.add_argument("--no-header", action="store_true", help="the file has no header row")
    g.add_argument("--invert-scores", action="store_true", help="lower scores are more disease-like")
    return p


def _characteristics(parser, args, required: bool = True) -> TestCharacteristics | None:
    counts = [args.tp, args.fp, args.fn, args.tn]
    have_rates = args.sens is not None or args.spec is not None
    have_counts = any(c is not None for c in counts)
    if have_rates and have_counts:
        parser.error("give either --sens/--spec or --tp/--fp/--fn/--tn, not both")
    if have_counts:
        if any(c is None for c in counts):
            parser.error("--tp, --fp, --fn and --tn must all be given")
        return characteristics_from_matrix(ConfusionMatrix(*counts), args.confidence)
    if have_rates:
        if args.sens is None or args.spec is None:
            parser.error("--sens and --spec must both be given")
        return TestCharacteristics(args.sens, args.spec)
    if required:
        parser.error("test characteristics required: --sens and --spec, or --tp --fp --fn --tn")
    return None


def _costs(args) -> CostWeights | None:
    if args.cost_fa is None and args.cost_md is None:
        return None
    return CostWeights(args.cost_fa or 0.0, args.cost_md or 0.0)


def _grid(parser, args):
    if args.grid is not None and args.steps is not None:
        parser.error("--grid and --steps are mutually exclusive")
    if args.grid is not None:
        if len(args.grid) < 2:
            parser.error("--grid needs at least 2 points")
        return args.grid
    steps = 101 if args.steps is None else args.steps
    if steps < 2:
        parser.error(f"--steps must be at least 2 (grid needs both endpoints), got {steps}")
    return PrevalenceGrid(0.0, 1.0, steps)


def _ingest_config(parser, args) -> CsvIngestConfig:
    try:
        return CsvIngestConfig(
            score_column=args.score_column,
            label_column=args.label_column,
            positive_label=args.positive_label,
            delimiter=args.delimiter,
            has_header=not args.no_header,
            invert_scores=args.invert_scores,
        )
    except ValueError as exc:
        parser.error(str(exc))


def _emit(text: str | bytes, out_file: str | None) -> None:
    if out_file is None or out_file == "-":
        buffer = getattr(sys.stdout, "buffer", None)
        if isinstance(text, bytes) and buffer is not None:
            sys.stdout.flush()
            buffer.write(text)
            buffer.flush()
        else:
            sys.stdout.write(text.decode("utf-8") if isinstance(text, bytes) else text)
        return
    path = Path(out_file)
    if isinstance(text, bytes):
        path.write_bytes(text)
    else:
        path.write_text(text, encoding="utf-8")


def _num(x: float | None) -> str:
    return "undefined" if x is None else repr(x)


# ---------------------------------------------------------------------------
# subcommands
# ---------------------------------------------------------------------------


def cmd_metrics(parser, args) -> int:
    chars = _characteristics(parser, args)
    perf = translate(chars, args.prev, _costs(args))
    if args.json:
        payload = {"characteristics": _chars_dict(chars), "performance": asdict(perf)}
        sys.stdout.write(json.dumps(payload, indent=2, allow_nan=False) + "\n")
        return 0
    rows = [
        ("Sensitivity", pct(chars.sensitivity), chars.sensitivity),
        ("Specificity", pct(chars.specificity), chars.specificity),
        ("Prevalence", pct(perf.prevalence), perf.prevalence),
        ("False alarm rate", pct(perf.false_alarm_rate), perf.false_alarm_rate),
        ("Missed case rate", pct(perf.missed_case_rate), perf.missed_case_rate),
        ("PPV", pct(perf.ppv), perf.ppv),
        ("NPV", pct(perf.npv), perf.npv),
        ("Tests per detected case", whole(perf.tests_per_detected_case), perf.tests_per_detected_case),
        ("Positive test rate", pct(perf.positive_test_rate), perf.positive_test_rate),
        ("Accuracy", pct(perf.accuracy), perf.accuracy),
    ]
    if perf.expected_cost is not None:
        rows.append(("Expected cost per person", f"{perf.expected_cost:.4g}", perf.expected_cost))
    for label, shown, exact in rows:
        sys.stdout.write(f"{label:<24}: {shown:>6}  ({_num(exact)})\n")
    return 0


def _chars_dict(chars: TestCharacteristics) -> dict:
    return {
        "sensitivity": chars.sensitivity,
        "specificity": chars.specificity,
        "sensitivity_ci": None if chars.sensitivity_ci is None else asdict(chars.sensitivity_ci),
        "specificity_ci": None if chars.specificity_ci is None else asdict(chars.specificity_ci),
    }


def cmd_sweep(parser, args) -> int:
    chars = _characteristics(parser, args)
    curve = sweep(chars, _grid(parser, args), marker=args.marker, costs=_costs(args))
    if args.out == "csv":
        _emit(table_to_csv(curve_to_table(curve)), args.out_file)
    elif args.out == "json":
        payload = {
            "characteristics": _chars_dict(chars),
            "marker_prevalence": curve.marker_prevalence,
            "cost_weights": None if curve.cost_weights is None else asdict(curve.cost_weights),
            "rows": curve_to_table(curve),
        }
        _emit(json.dumps(payload, indent=2, allow_nan=False) + "\n", args.out_file)
    else:
        _emit(render_prevalence_plot(curve, PlotOptions(title="False alarms and missed cases by prevalence")), args.out_file)
    return 0


def cmd_roc(parser, args) -> int:
    if args.report_dir is not None and args.prev is None:
        parser.error("--report-dir requires --prev")
    config = _ingest_config(parser, args)
    samples = read_samples_csv(args.input, config)
    roc = analyze_roc(samples, args.confidence)
    best = youden_optimal_point(roc)
    chars = characteristics_at_point(best, samples, args.confidence)

    if args.json:
        payload = {
            "auc": roc.auc,
            "auc_ci": None if roc.auc_ci is None else asdict(roc.auc_ci),
            "n_diseased": roc.n_diseased,
            "n_healthy": roc.n_healthy,
            "youden_threshold": best.threshold,
            "characteristics": _chars_dict(chars),
        }
        sys.stdout.write(json.dumps(payload, indent=2) + "\n")
    else:
        ci = roc.auc_ci
        ci_text = "n/a (needs 2+ samples per class)" if ci is None else f"[{ci.lower:.4f}, {ci.upper:.4f}]"
        sys.stdout.write(f"Samples         : {roc.n_diseased} diseased, {roc.n_healthy} healthy\n")
        sys.stdout.write(f"AUC             : {roc.auc!r}\n")
        sys.stdout.write(f"{args.confidence * 100:g}% CI (DeLong): {ci_text}\n")
        sys.stdout.write(f"Youden threshold: score >= {best.threshold!r}\n")
        sys.stdout.write(f"Sensitivity     : {pct(chars.sensitivity)} ({chars.sensitivity!r})\n")
        sys.stdout.write(f"Specificity     : {pct(chars.specificity)} ({chars.specificity!r})\n")

    if args.svg:
        _emit(render_roc_plot(roc), args.svg)
    if args.report_dir is not None:
        _write_report(args, chars, roc, grid=PrevalenceGrid(), out_dir=Path(args.report_dir), plots=True)
    return 0


def _write_report(args, chars, roc, grid, out_dir: Path, plots: bool) -> None:
    report = build_report(chars, args.prev, grid, _costs(args), roc)
    out_dir.mkdir(parents=True, exist_ok=True)
    written = []
    for name, text in (("report.json", report_to_json(report)), ("report.md", report_to_markdown(report))):
        (out_dir / name).write_text(text, encoding="utf-8")
        written.append(out_dir / name)
    if plots:
        (out_dir / "prevalence.svg").write_bytes(render_prevalence_plot(report.curve))
        written.append(out_dir / "prevalence.svg")
        if roc is not None:
            (out_dir / "roc.svg").write_bytes(render_roc_plot(roc))
            written.append(out_dir / "roc.svg")
    for path in written:
        sys.stdout.write(f"wrote {path}\n")


def cmd_report(parser, args) -> int:
    roc = None
    chars = _characteristics(parser, args, required=args.roc_input is None)
    if args.roc_input is not None:
        samples = read_samples_csv(args.roc_input, _ingest_config(parser, args))
        roc = analyze_roc(samples, args.confidence)
        if chars is None:
            chars = characteristics_at_point(youden_optimal_point(roc), samples, args.confidence)
    _write_report(args, chars, roc, _grid(parser, args), Path(args.out_dir), args.plots)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="prevplot",
        description="Translate assay sensitivity and specificity into prevalence-dependent clinical performance.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")
    chars, conf, costs, grid, ingest = (
        _characteristics_parent(),
        _confidence_parent(),
        _costs_parent(),
        _grid_parent(),
        _ingest_parent(),
    )

    p = sub.add_parser("metrics", parents=[chars, conf, costs], help="performance at one prevalence")
    p.add_argument("--prev", type=probability_arg, required=True, help="prevalence, e.g. 0.06 or 6%%")
    p.add_argument("--json", action="store_true", help="print JSON instead of a table")
    p.set_defaults(handler=cmd_metrics, subparser=p)

    p = sub.add_parser("sweep", parents=[chars, conf, costs, grid], help="performance across a prevalence grid")
    p.add_argument("--marker", type=probability_arg, help="prevalence to mark on the plot")
    p.add_argument("--out", choices=("csv", "json", "svg"), default="csv", help="output format (default csv)")
    p.add_argument("--out-file", help="write to this file instead of stdout")
    p.set_defaults(handler=cmd_sweep, subparser=p)

    p = sub.add_parser("roc", parents=[ingest, conf, costs], help="ROC curve, AUC and DeLong CI from scored samples")
    p.add_argument("--input", required=True, help="CSV file of scores and labels")
    p.add_argument("--json", action="store_true", help="print JSON instead of text")
    p.add_argument("--svg", help="write an ROC plot to this SVG file")
    p.add_argument("--report-dir", help="also write a report using the Youden-point characteristics")
    p.add_argument("--prev", type=probability_arg, help="marker prevalence for --report-dir")
    p.set_defaults(handler=cmd_roc, subparser=p)

    p = sub.add_parser("report", parents=[chars, conf, costs, grid, ingest], help="write report.json and report.md")
    p.add_argument("--prev", type=probability_arg, required=True, help="marker prevalence, e.g. 0.06 or 6%%")
    p.add_argument("--roc-input", help="CSV of scored samples; adds ROC analysis to the report")
    p.add_argument("--out-dir", default=".", help="directory for report files (default: current directory)")
    p.add_argument("--plots", action="store_true", help="also write prevalence.svg (and roc.svg)")
    p.set_defaults(handler=cmd_report, subparser=p)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return args.handler(args.subparser, args)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    except (DiagnosticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
