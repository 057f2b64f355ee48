"""Standalone SVG prevalence and ROC plots.

Documents are written by hand rather than through a plotting library so that
output is byte-for-byte deterministic and the geometry is easy to check:
data are drawn inside ``<rect id="plot-area">`` with a linear map from the
data range to that rectangle, and each data series is a ``<polyline>`` with a
stable ``id``.
"""

from __future__ import annotations

from dataclasses import dataclass
from xml.sax.saxutils import escape

from .errors import EmptyCurve
from .roc import RocCurve
from .sweep import PrevalenceCurve

FALSE_ALARM_ID = "false-alarm-rate"
MISSED_CASE_ID = "missed-case-rate"
MARKER_ID = "prevalence-marker"
ROC_ID = "roc-curve"
DIAGONAL_ID = "chance-diagonal"
AUC_LABEL_ID = "auc-annotation"

_MARGIN = {"left": 70, "right": 24, "top": 44, "bottom": 62}
_FA_COLOUR = "#d62728"
_MC_COLOUR = "#1f77b4"


@dataclass(frozen=True)
class PlotOptions:
    width_px: int = 640
    height_px: int = 440
    title: str = "Prevalence plot"
    x_label: str = "Prevalence"
    y_label: str = "Rate"
    show_marker: bool = True
    percent_axes: bool = True

    def __post_init__(self):
        if self.width_px < 100 or self.height_px < 100:
            raise ValueError("plot width and height must each be at least 100 px")


@dataclass(frozen=True)
class Frame:
    """Linear map from data coordinates to pixel coordinates."""

    left: float
    top: float
    width: float
    height: float
    x_min: float
    x_max: float
    y_min: float = 0.0
    y_max: float = 1.0

    @classmethod
    def for_options(cls, opts: PlotOptions, x_min: float, x_max: float) -> Frame:
        return cls(
            left=_MARGIN["left"],
            top=_MARGIN["top"],
            width=opts.width_px - _MARGIN["left"] - _MARGIN["right"],
            height=opts.height_px - _MARGIN["top"] - _MARGIN["bottom"],
            x_min=x_min,
            x_max=x_max,
        )

    def px(self, x: float) -> float:
        return self.left + (x - self.x_min) / (self.x_max - self.x_min) * self.width

    def py(self, y: float) -> float:
        return self.top + (self.y_max - y) / (self.y_max - self.y_min) * self.height

    def data_x(self, px: float) -> float:
        return self.x_min + (px - self.left) / self.width * (self.x_max - self.x_min)

    def data_y(self, py: float) -> float:
        return self.y_max - (py - self.top) / self.height * (self.y_max - self.y_min)


def _f(v: float) -> str:
    s = f"{v:.2f}".rstrip("0").rstrip(".")
    return "0" if s == "-0" else s


def _tick_label(v: float, percent: bool) -> str:
    if percent:
        return f"{v * 100:.0f}%"
    return f"{v:.2f}".rstrip("0").rstrip(".")


def _polyline(frame: Frame, xs, ys, ident: str, colour: str) -> str:
    coords = " ".join(f"{_f(frame.px(x))},{_f(frame.py(y))}" for x, y in zip(xs, ys) if y is not None)
    return (
        f'<polyline id="{ident}" fill="none" stroke="{colour}" stroke-width="2" '
        f'stroke-linejoin="round" points="{coords}"/>'
    )


def _axes(frame: Frame, opts: PlotOptions) -> list[str]:
    out = [
        f'<rect id="plot-area" x="{_f(frame.left)}" y="{_f(frame.top)}" '
        f'width="{_f(frame.width)}" height="{_f(frame.height)}" fill="none" stroke="#444444"/>'
    ]
    bottom = frame.top + frame.height
    for i in range(6):
        x = frame.x_min + (frame.x_max - frame.x_min) * i / 5
        px = frame.px(x)
        out.append(f'<line x1="{_f(px)}" y1="{_f(bottom)}" x2="{_f(px)}" y2="{_f(bottom + 5)}" stroke="#444444"/>')
        out.append(
            f'<text x="{_f(px)}" y="{_f(bottom + 20)}" text-anchor="middle">'
            f"{escape(_tick_label(x, opts.percent_axes))}</text>"
        )
        y = i / 5
        py = frame.py(y)
        out.append(
            f'<line x1="{_f(frame.left - 5)}" y1="{_f(py)}" x2="{_f(frame.left)}" y2="{_f(py)}" stroke="#444444"/>'
        )
        out.append(
            f'<text x="{_f(frame.left - 9)}" y="{_f(py + 4)}" text-anchor="end">'
            f"{escape(_tick_label(y, opts.percent_axes))}</text>"
        )
    cx = frame.left + frame.width / 2
    cy = frame.top + frame.height / 2
    out.append(f'<text x="{_f(cx)}" y="{_f(opts.height_px - 14)}" text-anchor="middle">{escape(opts.x_label)}</text>')
    out.append(
        f'<text x="18" y="{_f(cy)}" text-anchor="middle" transform="rotate(-90 18 {_f(cy)})">'
        f"{escape(opts.y_label)}</text>"
    )
    out.append(
        f'<text x="{_f(opts.width_px / 2)}" y="26" text-anchor="middle" font-size="16">{escape(opts.title)}</text>'
    )
    return out


def _document(opts: PlotOptions, body: list[str]) -> bytes:
    head = [
        '<?xml version="1.0" encoding="UTF-8" standalone="no"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{opts.width_px}" '
        f'height="{opts.height_px}" viewBox="0 0 {opts.width_px} {opts.height_px}" '
        'font-family="Helvetica, Arial, sans-serif" font-size="12">',
        f"<title>{escape(opts.title)}</title>",
        f'<rect width="{opts.width_px}" height="{opts.height_px}" fill="#ffffff"/>',
    ]
    return ("\n".join(head + body + ["</svg>"]) + "\n").encode("utf-8")


def _legend(frame: Frame, entries: list[tuple[str, str]]) -> list[str]:
    out = []
    x = frame.left + frame.width - 170
    for i, (label, colour) in enumerate(entries):
        y = frame.top + 18 + 18 * i
        out.append(f'<line x1="{_f(x)}" y1="{_f(y)}" x2="{_f(x + 24)}" y2="{_f(y)}" stroke="{colour}" stroke-width="2"/>')
        out.append(f'<text x="{_f(x + 30)}" y="{_f(y + 4)}">{escape(label)}</text>')
    return out


def prevalence_frame(curve: PrevalenceCurve, opts: PlotOptions) -> Frame:
    """The data-to-pixel map :func:`render_prevalence_plot` uses for ``curve``."""
    if len(curve.points) < 2:
        raise EmptyCurve(f"a prevalence plot needs at least 2 points, got {len(curve.points)}")
    xs = curve.prevalences
    return Frame.for_options(opts, xs[0], xs[-1])


def render_prevalence_plot(curve: PrevalenceCurve, opts: PlotOptions | None = None) -> bytes:
    """False-alarm and missed-case rates against prevalence, as SVG bytes.

    Undefined values (0/0 at an end of the prevalence axis) leave a gap in
    the line rather than being drawn as zero. A vertical marker line is drawn
    at ``curve.marker_prevalence`` when it is set and ``opts.show_marker``.
    """
    opts = opts or PlotOptions()
    frame = prevalence_frame(curve, opts)
    xs = curve.prevalences
    body = _axes(frame, opts)
    if opts.show_marker and curve.marker_prevalence is not None:
        mx = frame.px(curve.marker_prevalence)
        label = _tick_label(curve.marker_prevalence, True) if opts.percent_axes else f"{curve.marker_prevalence:g}"
        body.append(
            f'<line id="{MARKER_ID}" x1="{_f(mx)}" y1="{_f(frame.top)}" x2="{_f(mx)}" '
            f'y2="{_f(frame.top + frame.height)}" stroke="#555555" stroke-dasharray="5,4"/>'
        )
        body.append(f'<text x="{_f(mx + 4)}" y="{_f(frame.top + 12)}">{escape(label)}</text>')
    body.append(_polyline(frame, xs, curve.series("false_alarm_rate"), FALSE_ALARM_ID, _FA_COLOUR))
    body.append(_polyline(frame, xs, curve.series("missed_case_rate"), MISSED_CASE_ID, _MC_COLOUR))
    body += _legend(frame, [("False alarms", _FA_COLOUR), ("Missed cases", _MC_COLOUR)])
    return _document(opts, body)


def roc_frame(opts: PlotOptions) -> Frame:
    return Frame.for_options(opts, 0.0, 1.0)


def auc_annotation(roc: RocCurve) -> str:
    text = f"AUC {roc.auc:.2f}"
    if roc.auc_ci is not None:
        text += f" ({roc.auc_ci.confidence_level * 100:g}% CI: {roc.auc_ci.lower:.2f}, {roc.auc_ci.upper:.2f})"
    return text


def render_roc_plot(roc: RocCurve, opts: PlotOptions | None = None) -> bytes:
    """ROC curve with the chance diagonal and an AUC annotation, as SVG bytes."""
    opts = opts or PlotOptions(title="ROC curve", x_label="1 - Specificity", y_label="Sensitivity")
    frame = roc_frame(opts)
    body = _axes(frame, opts)
    body.append(
        f'<line id="{DIAGONAL_ID}" x1="{_f(frame.px(0))}" y1="{_f(frame.py(0))}" '
        f'x2="{_f(frame.px(1))}" y2="{_f(frame.py(1))}" stroke="#999999" stroke-dasharray="4,4"/>'
    )
    body.append(_polyline(frame, roc.fpr, roc.tpr, ROC_ID, _MC_COLOUR))
    body.append(
        f'<text id="{AUC_LABEL_ID}" x="{_f(frame.px(0.95))}" y="{_f(frame.py(0.05))}" '
        f"text-anchor=\"end\">{escape(auc_annotation(roc))}</text>"
    )
    return _document(opts, body)


__all__ = [
    "PlotOptions",
    "Frame",
    "prevalence_frame",
    "roc_frame",
    "render_prevalence_plot",
    "render_roc_plot",
    "auc_annotation",
]
