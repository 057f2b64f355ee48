import pytest

from conftest import mast_cell_samples
from prevplot.errors import EmptyCurve
from prevplot.metrics import ConfidenceInterval, TestCharacteristics
from prevplot.plots import PlotOptions, auc_annotation, render_prevalence_plot, render_roc_plot
from prevplot.roc import analyze_roc, empirical_roc, samples_from_arrays
from prevplot.sweep import PrevalenceCurve, PrevalenceGrid, sweep
from svg_helpers import SVG, by_id, parse, polyline_points, to_data

MAST = TestCharacteristics(0.97, 0.92)


@pytest.fixture
def mast_curve():
    return sweep(MAST, PrevalenceGrid(), marker=0.06)


class TestPrevalencePlot:
    def test_well_formed_single_root(self, mast_curve):
        root = parse(render_prevalence_plot(mast_curve))
        assert root.tag == SVG + "svg"

    def test_two_identified_polylines(self, mast_curve):
        root = parse(render_prevalence_plot(mast_curve))
        lines = list(root.iter(SVG + "polyline"))
        assert sorted(el.get("id") for el in lines) == ["false-alarm-rate", "missed-case-rate"]

    def test_marker_at_six_percent(self, mast_curve):
        root = parse(render_prevalence_plot(mast_curve))
        (marker,) = by_id(root, "prevalence-marker")
        x1, x2 = float(marker.get("x1")), float(marker.get("x2"))
        assert x1 == x2
        assert to_data(root, x1, 0)[0] == pytest.approx(0.06, abs=0.005)

    def test_no_marker_without_marker_prevalence(self):
        root = parse(render_prevalence_plot(sweep(MAST), PlotOptions(show_marker=True)))
        assert by_id(root, "prevalence-marker") == []

    def test_marker_suppressed_by_option(self, mast_curve):
        root = parse(render_prevalence_plot(mast_curve, PlotOptions(show_marker=False)))
        assert by_id(root, "prevalence-marker") == []

    def test_vertices_inverse_map_to_data(self, mast_curve):
        root = parse(render_prevalence_plot(mast_curve))
        (far,) = by_id(root, "false-alarm-rate")
        pts = polyline_points(far)
        defined = [p for p in mast_curve.points if p.false_alarm_rate is not None]
        assert len(pts) == len(defined)
        for i in (0, len(pts) // 3, len(pts) - 1):
            x, y = to_data(root, *pts[i])
            assert x == pytest.approx(defined[i].prevalence, abs=0.005)
            assert y == pytest.approx(defined[i].false_alarm_rate, abs=0.005)

    def test_undefined_endpoints_are_gaps(self):
        # spec 1 => no positive tests at prevalence 0; sens 1 => no negatives at prevalence 1
        curve = sweep(TestCharacteristics(1.0, 1.0), PrevalenceGrid(0, 1, 11))
        root = parse(render_prevalence_plot(curve))
        (far,) = by_id(root, "false-alarm-rate")
        (mcr,) = by_id(root, "missed-case-rate")
        assert len(polyline_points(far)) == 10
        assert len(polyline_points(mcr)) == 10
        assert to_data(root, *polyline_points(far)[0])[0] == pytest.approx(0.1, abs=0.005)

    def test_partial_grid_axis(self):
        curve = sweep(MAST, PrevalenceGrid(0.02, 0.2, 10), marker=0.06)
        root = parse(render_prevalence_plot(curve))
        (marker,) = by_id(root, "prevalence-marker")
        x = to_data(root, float(marker.get("x1")), 0, x_range=(0.02, 0.2))[0]
        assert x == pytest.approx(0.06, abs=0.005 * 0.18)

    def test_self_contained(self, mast_curve):
        doc = render_prevalence_plot(mast_curve)
        assert b"href" not in doc and b"url(" not in doc and b"<image" not in doc

    def test_deterministic(self, mast_curve):
        assert render_prevalence_plot(mast_curve) == render_prevalence_plot(sweep(MAST, PrevalenceGrid(), marker=0.06))

    def test_percent_axes(self, mast_curve):
        doc = render_prevalence_plot(mast_curve)
        assert b">100%<" in doc and b">0%<" in doc
        plain = render_prevalence_plot(mast_curve, PlotOptions(percent_axes=False))
        assert b">100%<" not in plain

    def test_title_escaped(self, mast_curve):
        root = parse(render_prevalence_plot(mast_curve, PlotOptions(title="A & B <test>")))
        assert root.find(SVG + "title").text == "A & B <test>"

    def test_empty_curve(self):
        curve = PrevalenceCurve(MAST, points=())
        with pytest.raises(EmptyCurve):
            render_prevalence_plot(curve)

    def test_options_minimum_size(self):
        with pytest.raises(ValueError):
            PlotOptions(width_px=50)


class TestRocPlot:
    def test_perfect_passes_top_left(self):
        roc = empirical_roc(samples_from_arrays([1, 2, 3, 4], [0, 0, 1, 1]))
        root = parse(render_roc_plot(roc))
        (line,) = by_id(root, "roc-curve")
        data = [to_data(root, *p) for p in polyline_points(line)]
        assert any(x == pytest.approx(0, abs=1e-3) and y == pytest.approx(1, abs=1e-3) for x, y in data)

    def test_chance_on_diagonal(self):
        roc = empirical_roc(samples_from_arrays([1, 1, 2, 2, 3, 3], [0, 1, 0, 1, 0, 1]))
        root = parse(render_roc_plot(roc))
        (line,) = by_id(root, "roc-curve")
        for x, y in (to_data(root, *p) for p in polyline_points(line)):
            assert x == pytest.approx(y, abs=0.005)
        assert len(by_id(root, "chance-diagonal")) == 1

    def test_annotation_includes_ci(self):
        roc = empirical_roc(mast_cell_samples())
        roc = type(roc)(roc.points, 0.99, roc.n_diseased, roc.n_healthy, ConfidenceInterval(0.96, 1.0))
        root = parse(render_roc_plot(roc))
        (label,) = by_id(root, "auc-annotation")
        assert "0.99" in label.text and "0.96" in label.text and "1.00" in label.text
        assert auc_annotation(roc) == label.text

    def test_deterministic(self):
        roc = analyze_roc(mast_cell_samples())
        assert render_roc_plot(roc) == render_roc_plot(analyze_roc(mast_cell_samples()))
