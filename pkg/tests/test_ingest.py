import io

import pytest

from prevplot.errors import MalformedRow, MissingColumn, NonNumericScore, OneClassOnly
from prevplot.ingest import CsvIngestConfig, parse_samples_csv
from prevplot.roc import empirical_roc

ALLERGY = CsvIngestConfig(positive_label="allergic")


def parse(text, config=ALLERGY):
    return parse_samples_csv(io.BytesIO(text.encode("utf-8")), config)


def test_basic():
    samples = parse("score,label\n0.9,allergic\n0.1,tolerant\n")
    assert [(s.score, s.diseased) for s in samples] == [(0.9, True), (0.1, False)]


def test_text_stream_accepted():
    samples = parse_samples_csv(io.StringIO("score,label\n2,1\n1,0\n"))
    assert [s.diseased for s in samples] == [True, False]


def test_empty_data_fails_downstream():
    samples = parse("score,label\n")
    assert samples == []
    with pytest.raises(OneClassOnly):
        empirical_roc(samples)


def test_non_numeric_names_row():
    rows = ["score,label"] + [f"{i},allergic" for i in range(5)] + ["abc,tolerant", "3,tolerant"]
    with pytest.raises(NonNumericScore) as exc:
        parse("\n".join(rows))
    assert exc.value.row == 7
    assert "row 7" in str(exc.value)
    assert isinstance(exc.value, MalformedRow)


def test_wrong_field_count():
    with pytest.raises(MalformedRow, match="row 3"):
        parse("score,label\n1,allergic\n2,allergic,extra\n")


def test_non_finite_rejected():
    with pytest.raises(NonNumericScore, match="row 2"):
        parse("score,label\ninf,allergic\n")


def test_missing_column():
    with pytest.raises(MissingColumn):
        parse("value,label\n1,allergic\n")


def test_empty_file():
    with pytest.raises(MissingColumn):
        parse("")


def test_invert_and_delimiter_and_columns():
    config = CsvIngestConfig(score_column="odd", label_column="grp", positive_label="case", delimiter=";", invert_scores=True)
    samples = parse("id;odd;grp\na;1.5;case\nb;-2;ctrl\n", config)
    assert [(s.score, s.diseased) for s in samples] == [(-1.5, True), (2.0, False)]


def test_no_header_uses_indices():
    config = CsvIngestConfig(score_column="1", label_column="0", positive_label="D", has_header=False)
    samples = parse("D,3\nH,1\n", config)
    assert [(s.score, s.diseased) for s in samples] == [(3.0, True), (1.0, False)]


def test_blank_lines_skipped():
    assert len(parse("score,label\n1,allergic\n\n2,tolerant\n")) == 2


def test_bom_tolerated():
    assert len(parse("﻿score,label\n1,allergic\n")) == 1


def test_config_validation():
    with pytest.raises(ValueError):
        CsvIngestConfig(score_column="x", label_column="x")
    with pytest.raises(ValueError):
        CsvIngestConfig(delimiter=";;")
