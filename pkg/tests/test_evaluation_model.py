"""
Tests for evaluation_model.py: scoring, cell aggregation, the sweep grid and the harness.
"""

# 🧱 Standard library
import itertools
from dataclasses import replace

# 🧩 Third-party libraries
import numpy as np
import pytest

# 🧠 First-party (project-specific)
from models.convoy_model import SceneGenConfig, generate_batch, generate_scene, convoy_ground_truth, variable_names
from models.discovery_model import MethodConfig
from models.errors import GraphError, UnknownMethodError, EmptySceneDirectoryError, ConfigError
from models.evaluation_model import (SceneScore, SweepCell, score_graph, failed_score, evaluate_scene,
                                     evaluate_method, lag_samples, sweep_grid, dataset_id, load_dataset,
                                     run_sweep)
from models.graph_model import SummaryGraph
from models.scene_model import Variant, save_scene_csv
from tests.conftest import make_scene, simulate_var

NODES = ("c0.v", "c1.v", "i0.v")
TRUTH = SummaryGraph(NODES, frozenset({("c0.v", "c1.v")}))
ALL_PAIRS = [(a, b) for a in NODES for b in NODES if a != b]


def _all_graphs():
    for mask in itertools.product([False, True], repeat=len(ALL_PAIRS)):
        yield SummaryGraph(NODES, frozenset(pair for pair, keep in zip(ALL_PAIRS, mask) if keep))


def _reference_f1(predicted: set, truth: set) -> float:
    tp = len(predicted & truth)
    if tp == 0:
        return 0.0
    precision = tp / len(predicted)
    recall = tp / len(truth)
    return 2 * precision * recall / (precision + recall)


def test_score_graph_worked_examples():
    perfect = score_graph(TRUTH, TRUTH)
    assert (perfect.tp, perfect.fp, perfect.fn, perfect.f1) == (1, 0, 0, 1.0)

    empty = score_graph(SummaryGraph.empty(NODES), TRUTH)
    assert (empty.tp, empty.fp, empty.fn, empty.f1) == (0, 0, 1, 0.0)

    noisy = score_graph(SummaryGraph(NODES, frozenset({("c0.v", "c1.v"), ("i0.v", "c1.v"), ("c1.v", "c0.v")})),
                        TRUTH)
    assert (noisy.tp, noisy.fp, noisy.fn) == (1, 2, 0)
    assert noisy.precision == pytest.approx(1 / 3)
    assert noisy.recall == 1.0
    assert noisy.f1 == pytest.approx(0.5)


def test_score_graph_matches_set_arithmetic_on_every_graph():
    truth = set(TRUTH.edges)
    for graph in _all_graphs():
        score = score_graph(graph, TRUTH)
        predicted = set(graph.edges)
        assert score.tp == len(predicted & truth)
        assert score.fp == len(predicted - truth)
        assert score.fn == len(truth - predicted)
        assert score.f1 == pytest.approx(_reference_f1(predicted, truth), abs=0)


def test_score_graph_ignores_self_loops():
    predicted = SummaryGraph(NODES, frozenset({("c0.v", "c1.v"), ("c0.v", "c0.v")}))
    assert score_graph(predicted, TRUTH).fp == 0


def test_score_graph_requires_same_nodes():
    with pytest.raises(GraphError):
        score_graph(SummaryGraph.empty(("a", "b", "c")), TRUTH)


def test_failed_score_counts_missed_truth():
    score = failed_score("s", TRUTH, "boom")
    assert (score.fn, score.f1, score.error_flag, score.error_message) == (1, 0.0, True, "boom")


def test_sweep_cell_aggregates_population_std():
    scores = [replace(score_graph(TRUTH, TRUTH, "b"), runtime_s=2.0),
              replace(score_graph(SummaryGraph.empty(NODES), TRUTH, "a"), runtime_s=4.0)]
    cell = SweepCell("pwgc", "synth", Variant.VELOCITY, 0.05, 25, tuple(scores))
    assert [s.scene_id for s in cell.scores] == ["a", "b"]
    assert cell.mean_f1 == pytest.approx(0.5)
    assert cell.std_f1 == pytest.approx(0.5)
    assert cell.mean_runtime == pytest.approx(3.0)
    assert cell.variant_name == "velocity"
    assert cell.n_errors == 0


def test_empty_sweep_cell_reports_zeros():
    cell = SweepCell("random", "d", None, 0.05, 25)
    assert (cell.n_scenes, cell.mean_f1, cell.std_f1, cell.variant_name) == (0, 0.0, 0.0, "")


def test_evaluate_scene_turns_method_failure_into_flagged_zero():
    short = make_scene(simulate_var(20, seed=1))
    score = evaluate_scene("mvgc", short, TRUTH, MethodConfig(max_lag=5), seed=0)
    assert score.error_flag
    assert score.f1 == 0.0
    assert "InsufficientSamplesError" in score.error_message


def test_evaluate_scene_without_runtime(var_scene):
    score = evaluate_scene("pwgc", var_scene, TRUTH, MethodConfig(alpha=0.001, max_lag=2), 0, record_runtime=False)
    assert score.runtime_s == 0.0
    assert score.f1 == 1.0
    assert score.predicted.edges == TRUTH.edges


def test_evaluate_method_unknown_identifier(var_scene):
    with pytest.raises(UnknownMethodError):
        evaluate_method("gc", [var_scene], TRUTH, MethodConfig())
    with pytest.raises(ConfigError):
        evaluate_method("pwgc", [], TRUTH, MethodConfig())


def test_evaluate_method_seeds_scenes_in_id_order():
    scenes = [make_scene(simulate_var(60, seed=i), f"s{i}") for i in (2, 0, 1)]
    cell = evaluate_method("random", scenes, TRUTH, MethodConfig(), seed=10, record_runtime=False)
    assert [s.scene_id for s in cell.scores] == ["s0", "s1", "s2"]
    again = evaluate_method("random", list(reversed(scenes)), TRUTH, MethodConfig(), seed=10, record_runtime=False)
    assert cell.scores == again.scores


def test_random_baseline_mean_f1_matches_enumeration():
    expected = float(np.mean([_reference_f1(set(g.edges), set(TRUTH.edges)) for g in _all_graphs()]))
    scene = make_scene(simulate_var(30, seed=0))
    trials = 10_000
    cell = evaluate_method("random", [replace(scene, scene_id=f"s{i:05d}") for i in range(trials)], TRUTH,
                           MethodConfig(), seed=0, record_runtime=False)
    sigma = cell.std_f1 / np.sqrt(trials)
    assert abs(cell.mean_f1 - expected) < 3 * sigma


def test_lag_samples_rounds_and_validates():
    assert lag_samples(2.5, 10.0) == 25
    assert lag_samples(3.6, 10.0) == 36
    assert lag_samples(4.9, 10.0) == 49
    with pytest.raises(ConfigError):
        lag_samples(0.01, 10.0)


def test_paper_grid_has_eight_points():
    grid = sweep_grid([0.001, 0.005, 0.01, 0.03, 0.05, 0.1], [2.5, 3.6, 4.9], 10.0, paper_grid=True)
    assert len(grid) == 8
    assert grid[:6] == [(0.001, 25), (0.005, 25), (0.01, 25), (0.03, 25), (0.05, 25), (0.1, 25)]
    assert grid[6:] == [(0.05, 36), (0.05, 49)]


def test_full_grid_is_cross_product():
    grid = sweep_grid([0.01, 0.05], [1.0, 2.0], 10.0)
    assert grid == [(0.01, 10), (0.01, 20), (0.05, 10), (0.05, 20)]
    with pytest.raises(ConfigError):
        sweep_grid([], [1.0], 10.0)


def test_load_dataset_filters_by_suffix_and_reads_truth(tmp_path):
    scene_v = make_scene(simulate_var(40, seed=1), "b")
    scene_a = make_scene(simulate_var(40, seed=2), "a", names=("c0.a", "c1.a", "i0.a"))
    save_scene_csv(scene_v, tmp_path / "b.csv")
    save_scene_csv(scene_a, tmp_path / "a.csv")
    (tmp_path / "truth.txt").write_text("i0.v -> c0.v\n", encoding="utf-8")

    scenes, truth = load_dataset(tmp_path, Variant.VELOCITY, 10.0)
    assert [scene.scene_id for scene in scenes] == ["b"]
    assert truth.edges == frozenset({("i0.v", "c0.v")})

    assert dataset_id(tmp_path) == tmp_path.name
    # truth.txt names velocity series, so it cannot describe the acceleration scenes
    with pytest.raises(GraphError):
        load_dataset(tmp_path, Variant.ACCELERATION, 10.0)

    (tmp_path / "truth.txt").unlink()
    scenes, truth = load_dataset(tmp_path, Variant.ACCELERATION, 10.0)
    assert [scene.variant for scene in scenes] == [Variant.ACCELERATION]
    assert truth.edges == frozenset({("c0.a", "c1.a")})


def test_load_dataset_prefers_variant_subdirectory(tmp_path):
    save_scene_csv(make_scene(simulate_var(40, seed=1), "x"), tmp_path / "velocity" / "x.csv")
    scenes, truth = load_dataset(tmp_path, Variant.VELOCITY, 10.0)
    assert [scene.scene_id for scene in scenes] == ["x"]
    assert truth.edges == TRUTH.edges
    with pytest.raises(EmptySceneDirectoryError):
        load_dataset(tmp_path, Variant.ACCELERATION, 10.0)


def test_run_sweep_cell_order_and_jobs_independence(tmp_path, small_gen_config):
    generate_batch(small_gen_config, 2, tmp_path / "synth")
    arguments = dict(methods=["random", "pwgc"], scene_dirs=[tmp_path / "synth"], variants=[Variant.VELOCITY],
                     alphas=[0.01, 0.05], max_lags_s=[0.5], base_seed=3, record_runtime=False)
    serial = run_sweep(jobs=1, **arguments)
    parallel = run_sweep(jobs=2, **arguments)
    assert [(c.method, c.alpha, c.max_lag_samples) for c in serial] == [
        ("random", 0.01, 5), ("random", 0.05, 5), ("pwgc", 0.01, 5), ("pwgc", 0.05, 5)]
    assert all(cell.dataset == "synth" and cell.n_scenes == 2 for cell in serial)
    assert [c.scores for c in serial] == [c.scores for c in parallel]


def test_run_sweep_rejects_bad_inputs(tmp_path):
    with pytest.raises(ConfigError):
        run_sweep([], [tmp_path], [Variant.VELOCITY], [0.05], [2.5])
    with pytest.raises(UnknownMethodError):
        run_sweep(["nope"], [tmp_path], [Variant.VELOCITY], [0.05], [2.5])
    with pytest.raises(EmptySceneDirectoryError):
        run_sweep(["random"], [tmp_path], [Variant.VELOCITY], [0.05], [2.5])


def test_scene_score_equality_ignores_predicted_graph():
    a = SceneScore("s", 1, 0, 0, 1.0, 1.0, 1.0, predicted=TRUTH)
    b = SceneScore("s", 1, 0, 0, 1.0, 1.0, 1.0)
    assert a == b


@pytest.fixture(scope="module")
def convoy_benchmark():
    """30 default convoy scenes per variant with fixed seeds."""
    batches = {}
    for offset, variant in enumerate(Variant):
        config = SceneGenConfig(variant=variant)
        batches[variant] = [generate_scene(replace(config, seed=1000 * (offset + 1) + i), f"scene_{i:04d}").scene
                            for i in range(30)]
    return batches


def _benchmark_f1(method, scenes):
    truth = convoy_ground_truth(scenes[0].variable_names)
    config = MethodConfig(alpha=0.05, max_lag=lag_samples(2.5, 10.0))
    return evaluate_method(method, scenes, truth, config, seed=0, jobs=-1, record_runtime=False).mean_f1


def test_benchmark_methods_beat_random_on_velocity_scenes(convoy_benchmark):
    scenes = convoy_benchmark[Variant.VELOCITY]
    assert scenes[0].variable_names == variable_names(Variant.VELOCITY)
    baseline = _benchmark_f1("random", scenes)
    for method in ("mvgc", "timino", "dynotears"):
        assert _benchmark_f1(method, scenes) > baseline, method


@pytest.mark.parametrize("method", ["mvgc", "timino"])
def test_benchmark_headline_f1_on_some_variant(convoy_benchmark, method):
    best = max(_benchmark_f1(method, scenes) for scenes in convoy_benchmark.values())
    assert best >= 0.80
