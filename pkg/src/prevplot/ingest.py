"""Reading scored samples from CSV."""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass
from pathlib import Path
from typing import BinaryIO, TextIO

from .errors import MalformedRow, MissingColumn, NonNumericScore
from .roc import ScoredSample


@dataclass(frozen=True)
class CsvIngestConfig:
    """How to find scores and labels in a CSV file.

    Without a header, ``score_column`` and ``label_column`` are 0-based column
    indices given as strings (``"0"``, ``"1"``).
    """

    score_column: str = "score"
    label_column: str = "label"
    positive_label: str = "1"
    delimiter: str = ","
    has_header: bool = True
    invert_scores: bool = False

    def __post_init__(self):
        if self.score_column == self.label_column:
            raise ValueError("score and label columns must differ")
        if len(self.delimiter) != 1:
            raise ValueError(f"delimiter must be a single character, got {self.delimiter!r}")


def _column_index(name: str, header: list[str] | None) -> int:
    if header is None:
        try:
            idx = int(name)
        except ValueError:
            raise MissingColumn(f"without a header, columns must be 0-based indices, got {name!r}") from None
        if idx < 0:
            raise MissingColumn(f"column index must be non-negative, got {idx}")
        return idx
    try:
        return header.index(name)
    except ValueError:
        raise MissingColumn(f"column {name!r} not found in header {header}") from None


def parse_samples_csv(stream: BinaryIO | TextIO, config: CsvIngestConfig | None = None) -> list[ScoredSample]:
    """Parse one :class:`ScoredSample` per data row.

    Rows whose label equals ``config.positive_label`` are diseased; all other
    rows are healthy. Blank lines are skipped. Errors name the 1-based line
    number in the file.
    """
    config = config or CsvIngestConfig()
    if isinstance(stream, (io.RawIOBase, io.BufferedIOBase)) or "b" in getattr(stream, "mode", ""):
        stream = io.TextIOWrapper(stream, encoding="utf-8-sig", newline="")
    reader = csv.reader(stream, delimiter=config.delimiter)

    header = None
    if config.has_header:
        try:
            header = [h.strip() for h in next(reader)]
        except StopIteration:
            raise MissingColumn("CSV input is empty; expected a header row") from None
    score_idx = _column_index(config.score_column, header)
    label_idx = _column_index(config.label_column, header)
    width = None if header is None else len(header)
    needed = max(score_idx, label_idx) + 1

    samples = []
    try:
        for row in reader:
            line = reader.line_num
            if not row or all(not cell.strip() for cell in row):
                continue
            if width is not None and len(row) != width:
                raise MalformedRow(line, f"expected {width} fields, found {len(row)}")
            if len(row) < needed:
                raise MalformedRow(line, f"expected at least {needed} fields, found {len(row)}")
            raw = row[score_idx].strip()
            try:
                score = float(raw)
            except ValueError:
                raise NonNumericScore(line, f"non-numeric score {raw!r}") from None
            if not math.isfinite(score):
                raise NonNumericScore(line, f"score must be finite, got {raw!r}")
            if config.invert_scores:
                score = -score
            samples.append(ScoredSample(score, row[label_idx].strip() == config.positive_label))
    except csv.Error as exc:
        raise MalformedRow(reader.line_num, str(exc)) from None
    except UnicodeDecodeError as exc:
        raise MalformedRow(reader.line_num + 1, f"not valid UTF-8 ({exc.reason})") from None
    return samples


def read_samples_csv(path: str | Path, config: CsvIngestConfig | None = None) -> list[ScoredSample]:
    with open(path, encoding="utf-8-sig", newline="") as fh:
        return parse_samples_csv(fh, config)
