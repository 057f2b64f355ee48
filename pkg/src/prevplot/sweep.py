"""Prevalence sweeps: clinical performance as a function of prevalence."""

from __future__ import annotations

import csv
import io
from collections.abc import Sequence
from dataclasses import dataclass

from .errors import InvalidGrid
from .metrics import (
    CostWeights,
    TestCharacteristics,
    TranslatedPerformance,
    expected_cost_per_person,
    probability,
    translate,
)

__all__ = [
    "CostWeights",
    "PrevalenceGrid",
    "PrevalenceCurve",
    "TABLE_COLUMNS",
    "sweep",
    "expected_cost_per_person",
    "cost_curve",
    "curve_to_table",
    "table_to_csv",
]

TABLE_COLUMNS = (
    "prevalence",
    "ppv",
    "npv",
    "false_alarm_rate",
    "missed_case_rate",
    "tests_per_detected_case",
    "positive_test_rate",
    "accuracy",
)
COST_COLUMN = "expected_cost"


@dataclass(frozen=True)
class PrevalenceGrid:
    """Linearly spaced prevalences from ``start`` to ``end`` inclusive.

    ``steps`` is the number of grid points, so the default grid is
    0, 0.01, ..., 1.
    """

    start: float = 0.0
    end: float = 1.0
    steps: int = 101

    def __post_init__(self):
        try:
            probability(self.start, "grid start")
            probability(self.end, "grid end")
        except ValueError as exc:
            raise InvalidGrid(str(exc)) from None
        if not self.start < self.end:
            raise InvalidGrid(f"grid start ({self.start}) must be below end ({self.end})")
        if isinstance(self.steps, bool) or not isinstance(self.steps, int) or self.steps < 2:
            raise InvalidGrid(f"grid needs at least 2 points, got steps={self.steps!r}")

    def points(self) -> list[float]:
        n = self.steps - 1
        span = self.end - self.start
        # i/n first keeps points like 6/100 bit-identical to the literal 0.06
        pts = [self.start + span * (i / n) for i in range(n)]
        pts.append(self.end)
        if any(b <= a for a, b in zip(pts, pts[1:])):
            raise InvalidGrid("grid too fine to be strictly increasing in floating point")
        return pts


def _grid_points(grid: PrevalenceGrid | Sequence[float]) -> list[float]:
    if isinstance(grid, PrevalenceGrid):
        return grid.points()
    try:
        pts = [probability(p, "grid point") for p in grid]
    except ValueError as exc:
        raise InvalidGrid(str(exc)) from None
    if len(pts) < 2:
        raise InvalidGrid(f"grid needs at least 2 points, got {len(pts)}")
    if any(b <= a for a, b in zip(pts, pts[1:])):
        raise InvalidGrid("grid points must be strictly increasing")
    return pts


@dataclass(frozen=True)
class PrevalenceCurve:
    characteristics: TestCharacteristics
    points: tuple[TranslatedPerformance, ...]
    marker_prevalence: float | None = None
    cost_weights: CostWeights | None = None

    @property
    def prevalences(self) -> list[float]:
        return [p.prevalence for p in self.points]

    def series(self, field: str) -> list[float | None]:
        return [getattr(p, field) for p in self.points]


def sweep(
    chars: TestCharacteristics,
    grid: PrevalenceGrid | Sequence[float] | None = None,
    marker: float | None = None,
    costs: CostWeights | None = None,
) -> PrevalenceCurve:
    """Translate ``chars`` at every prevalence of ``grid``.

    ``grid`` is a :class:`PrevalenceGrid` (default: 0 to 1 in 101 points) or an
    explicit strictly increasing sequence of prevalences. ``marker``, when
    given, must fall inside the grid's range.
    """
    pts = _grid_points(PrevalenceGrid() if grid is None else grid)
    if marker is not None:
        marker = probability(marker, "marker prevalence")
        if not pts[0] <= marker <= pts[-1]:
            raise InvalidGrid(f"marker prevalence {marker} lies outside the grid [{pts[0]}, {pts[-1]}]")
    return PrevalenceCurve(
        characteristics=chars,
        points=tuple(translate(chars, p, costs) for p in pts),
        marker_prevalence=marker,
        cost_weights=costs,
    )


def cost_curve(
    chars: TestCharacteristics,
    grid: PrevalenceGrid | Sequence[float],
    costs: CostWeights,
) -> list[tuple[float, float]]:
    """(prevalence, expected cost per person) across ``grid``. Affine in prevalence."""
    return [(p, expected_cost_per_person(chars, p, costs)) for p in _grid_points(grid)]


def curve_to_table(curve: PrevalenceCurve) -> list[dict[str, float | None]]:
    """One row per curve point. Undefined cells are ``None``.

    The ``expected_cost`` column is present only when the curve carries costs.
    """
    columns = list(TABLE_COLUMNS)
    if curve.cost_weights is not None:
        columns.append(COST_COLUMN)
    return [{c: getattr(p, c) for c in columns} for p in curve.points]


def table_to_csv(rows: list[dict[str, float | None]]) -> str:
    """Serialize table rows as CSV. Undefined cells are written as empty fields."""
    buf = io.StringIO()
    if not rows:
        return ""
    writer = csv.DictWriter(buf, fieldnames=list(rows[0]), lineterminator="\n")
    writer.writeheader()
    for row in rows:
        writer.writerow({k: "" if v is None else repr(float(v)) for k, v in row.items()})
    return buf.getvalue()
