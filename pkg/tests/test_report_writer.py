"""
Tests for report_writer.py and console_view.py.
"""

# 🧱 Standard library
import io
import json
from dataclasses import replace

# 🧩 Third-party libraries
import pytest

# 🧠 First-party (project-specific)
from models.discovery_model import DiscoveryOutcome
from models.evaluation_model import SweepCell, score_graph
from models.graph_model import SummaryGraph
from models.scene_model import SceneLengthStats, Variant
from views.console_view import ConsoleView
from views.report_writer import (SUMMARY_COLUMNS, DETAIL_COLUMNS, summary_frame, detail_frame, plot_best_by_dataset,
                                 plot_f1_vs_alpha, plot_f1_vs_max_lag, write_table, read_table, emit_report,
                                 performance_path)

NODES = ("c0.a", "c1.a", "i0.a")
TRUTH = SummaryGraph(NODES, frozenset({("c0.a", "c1.a")}))
EXTRA = SummaryGraph(NODES, frozenset({("c0.a", "c1.a"), ("i0.a", "c0.a")}))


def _cell(method, alpha, max_lag, graphs, dataset="synth"):
    scores = tuple(replace(score_graph(graph, TRUTH, f"s{i}"), runtime_s=0.5 * i) for i, graph in enumerate(graphs))
    return SweepCell(method, dataset, Variant.ACCELERATION, alpha, max_lag, scores)


@pytest.fixture
def cells():
    return [
        _cell("mvgc", 0.01, 25, [TRUTH, TRUTH]),
        _cell("mvgc", 0.05, 25, [TRUTH, EXTRA]),
        _cell("mvgc", 0.05, 36, [EXTRA, SummaryGraph.empty(NODES)]),
        _cell("random", 0.01, 25, [EXTRA, SummaryGraph.empty(NODES)]),
    ]


def test_summary_and_detail_shapes(cells):
    summary = summary_frame(cells)
    detail = detail_frame(cells)
    assert list(summary.columns) == SUMMARY_COLUMNS
    assert list(detail.columns) == DETAIL_COLUMNS
    assert len(summary) == 4
    assert len(detail) == 8
    assert summary.loc[0, "mean_f1"] == 1.0


def test_summary_means_recompute_from_detail(cells, tmp_path):
    emit_report(cells, "csv", tmp_path)
    summary = read_table(tmp_path / "summary.csv")
    detail = read_table(tmp_path / "detail.csv")
    recomputed = detail.groupby(["method", "alpha", "max_lag"], sort=False)["f1"].mean().to_numpy()
    assert recomputed == pytest.approx(summary["mean_f1"].to_numpy(), abs=1e-12)


def test_best_by_dataset_picks_highest_mean(cells):
    best = plot_best_by_dataset(cells)
    rows = {row.method: row for row in best.itertuples()}
    assert rows["mvgc"].alpha == 0.01 and rows["mvgc"].mean_f1 == 1.0
    assert len(best) == 2


def test_curves_take_best_over_the_other_parameter(cells):
    alpha_curve = plot_f1_vs_alpha(cells)
    mvgc_05 = alpha_curve[(alpha_curve.method == "mvgc") & (alpha_curve.alpha == 0.05)]
    # best over lags 25 and 36 at alpha 0.05
    assert mvgc_05["mean_f1"].iloc[0] == pytest.approx(cells[1].mean_f1)
    lag_curve = plot_f1_vs_max_lag(cells)
    mvgc_25 = lag_curve[(lag_curve.method == "mvgc") & (lag_curve.max_lag == 25)]
    assert mvgc_25["mean_f1"].iloc[0] == 1.0
    assert set(lag_curve["n_datasets"]) == {1}


def test_empty_sweep_writes_header_only_tables(tmp_path):
    written = emit_report([], "csv", tmp_path)
    assert len(written) == 5
    assert (tmp_path / "summary.csv").read_text(encoding="utf-8") == ",".join(SUMMARY_COLUMNS) + "\n"
    assert (tmp_path / "plot_best_by_dataset.csv").read_text(encoding="utf-8").count("\n") == 1


def test_json_tables_have_columns_and_rows(cells, tmp_path):
    path = write_table(summary_frame(cells), tmp_path / "summary", "json")
    payload = json.loads(path.read_text(encoding="utf-8"))
    assert payload["columns"] == SUMMARY_COLUMNS
    assert len(payload["rows"]) == 4
    assert read_table(path).equals(read_table(write_table(summary_frame(cells), tmp_path / "again", "json")))
    with pytest.raises(ValueError):
        write_table(summary_frame(cells), tmp_path / "x", "xlsx")


def test_emit_report_writes_performance_and_graphs(cells, tmp_path):
    written = emit_report(cells, "csv", tmp_path, save_graphs=True)
    performance = performance_path(tmp_path, cells[2])
    assert performance == tmp_path / "performance" / "36" / "0.05" / "mvgc_synth_acceleration.txt"
    text = performance.read_text(encoding="utf-8")
    assert "n_scenes: 2" in text
    assert f"mean_f1: {cells[2].mean_f1!r}" in text
    graph_file = tmp_path / "graphs" / "synth" / "acceleration" / "25" / "0.01" / "random" / "s0.txt"
    assert graph_file.read_text(encoding="utf-8") == "c0.a -> c1.a\ni0.a -> c0.a\n"
    assert len(written) == 5 + 4 + 8


def test_emit_report_is_byte_identical_on_rerun(cells, tmp_path):
    emit_report(cells, "csv", tmp_path / "one")
    emit_report(cells, "csv", tmp_path / "two")
    for name in ("summary.csv", "detail.csv", "plot_f1_vs_alpha.csv"):
        assert (tmp_path / "one" / name).read_bytes() == (tmp_path / "two" / name).read_bytes()


def test_console_view_outcome_lists_edges_then_diagnostics():
    stream = io.StringIO()
    outcome = DiscoveryOutcome(TRUTH, diagnostics={"p_values": {"c0.a -> c1.a": 0.001}, "var_order": 2})
    ConsoleView(stream).show_outcome(outcome, "s1", "mvgc")
    lines = stream.getvalue().splitlines()
    assert lines[:3] == ["# scene: s1", "# method: mvgc", "c0.a -> c1.a"]
    assert "#   c0.a -> c1.a: 0.001" in lines
    assert lines[-1] == "# var_order: 2"


def test_console_view_abstention_and_stats():
    stream = io.StringIO()
    view = ConsoleView(stream)
    view.show_outcome(DiscoveryOutcome(SummaryGraph.empty(NODES), abstained=True), "s", "timino")
    view.show_stats(SceneLengthStats(2, 10, 20, 15.0, 15.0, 5.0, 1.0, 2.0, 1.5, 1.5, 0.5), "synth")
    view.show_summary([])
    text = stream.getvalue()
    assert "# abstained" in text
    assert "count" in text and "15.0000" in text
    assert text.rstrip().endswith("(no cells)")
