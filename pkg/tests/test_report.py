import json

import pytest

from conftest import mast_cell_samples
from prevplot.metrics import (
    CostWeights,
    TestCharacteristics,
    breakeven_prevalence,
    characteristics_from_matrix,
    ConfusionMatrix,
    translate,
)
from prevplot.report import SCHEMA_VERSION, build_report, report_to_json, report_to_markdown
from prevplot.roc import analyze_roc
from prevplot.sweep import PrevalenceGrid

MAST = TestCharacteristics(0.97, 0.92)


class TestBuildReport:
    def test_mast_cell_headline(self):
        r = build_report(MAST, 0.06)
        assert round(r.headline.false_alarm_rate, 2) == 0.56
        assert f"{r.headline.tests_per_detected_case:.0f}" == "17"
        assert r.headline.prevalence == r.curve.marker_prevalence == 0.06

    def test_rule_of_thumb(self):
        r = build_report(TestCharacteristics(0.9, 0.9), 0.10)
        assert r.headline.false_alarm_rate == pytest.approx(0.5, abs=1e-12)
        assert r.narrative_fields["meets_90_90"] is True
        assert r.narrative_fields["breakeven_prevalence"] == pytest.approx(0.1, abs=1e-12)

    def test_perfect_test(self):
        r = build_report(TestCharacteristics(1.0, 1.0), 0.3)
        assert r.headline.false_alarm_rate == 0 and r.headline.missed_case_rate == 0

    def test_degenerate_breakeven_is_none(self):
        r = build_report(TestCharacteristics(0.0, 1.0), 0.3)
        assert r.narrative_fields["breakeven_prevalence"] is None

    def test_deterministic(self):
        assert report_to_json(build_report(MAST, 0.06)) == report_to_json(build_report(MAST, 0.06))


class TestJson:
    def test_full_precision(self):
        doc = json.loads(report_to_json(build_report(MAST, 0.06)))
        assert doc["schema_version"] == SCHEMA_VERSION
        assert doc["headline"]["false_alarm_rate"] == pytest.approx(0.5637181409295352, abs=1e-12)

    def test_undefined_are_null(self):
        doc = json.loads(report_to_json(build_report(TestCharacteristics(0.9, 1.0), 0.5)))
        first = doc["curve"]["points"][0]
        assert first["prevalence"] == 0.0
        assert first["ppv"] is None and first["false_alarm_rate"] is None

    def test_round_trip_recompute(self):
        chars = characteristics_from_matrix(ConfusionMatrix(97, 8, 3, 92))
        r = build_report(chars, 0.06, PrevalenceGrid(0, 1, 51), CostWeights(10, 1000), analyze_roc(mast_cell_samples()))
        doc = json.loads(report_to_json(r))
        c = doc["characteristics"]
        again = TestCharacteristics(c["sensitivity"], c["specificity"])
        costs = CostWeights(**doc["curve"]["cost_weights"])
        head = translate(again, doc["headline"]["prevalence"], costs)
        for k, v in doc["headline"].items():
            assert v == pytest.approx(getattr(head, k), abs=1e-12)
        for pt in doc["curve"]["points"]:
            t = translate(again, pt["prevalence"], costs)
            for k, v in pt.items():
                expected = getattr(t, k)
                assert (v is None) == (expected is None)
                if v is not None:
                    assert v == pytest.approx(expected, abs=1e-12)
        assert doc["narrative"]["breakeven_prevalence"] == pytest.approx(
            breakeven_prevalence(again.sensitivity, again.specificity), abs=1e-12
        )
        assert doc["roc"]["points"][0]["threshold"] is None
        assert doc["roc"]["auc"] == pytest.approx(r.roc.auc, abs=0)
        assert doc["characteristics"]["source_counts"]["true_positives"] == 97


class TestMarkdown:
    def test_mast_cell(self):
        md = report_to_markdown(build_report(MAST, 0.06))
        assert "56%" in md and "17" in md

    def test_rule_of_thumb(self):
        md = report_to_markdown(build_report(TestCharacteristics(0.9, 0.9), 0.1))
        assert "50%" in md

    def test_with_roc_and_costs(self):
        roc = analyze_roc(mast_cell_samples())
        md = report_to_markdown(build_report(MAST, 0.06, costs=CostWeights(10, 1000), roc=roc))
        assert "ROC AUC" in md and "95% CI" in md
        assert "2.552" in md
