"""
📦 Module: evaluation_model.py

Scoring of discovered summary graphs and the parameter-sweep harness.

Responsibilities:
    - Count TP/FP/FN against ground truth and derive precision, recall and F1
    - Run a method over a scene set, turning per-scene failures into flagged zero scores
    - Expand method × dataset × variant × α × τ grids, optionally in the two-axis protocol
    - Keep every result ordering independent of the worker count
"""

# 🧱 Standard library
import time
from dataclasses import dataclass, field, replace
from pathlib import Path
from typing import Mapping, Sequence, Any

# 🧩 Third-party libraries
import numpy as np
from joblib import Parallel, delayed

# 🧠 First-party (project-specific)
from models.convoy_model import convoy_ground_truth
from models.discovery_model import MethodConfig
from models.errors import ConfigError, GraphError, EmptySceneDirectoryError, UnknownMethodError
from models.graph_model import SummaryGraph, read_edge_list
from models.method_registry import run_discovery, validate_method
from models.scene_model import TimeSeriesScene, Variant, load_scene_dir, load_scene_csv
from utils.logger import get_logger

TRUTH_FILE = "truth.txt"


@dataclass(frozen=True)
class SceneScore:
    """
    🎯 Score of one discovered graph.

    A zero denominator makes the corresponding ratio 0.
    """
    scene_id: str
    tp: int
    fp: int
    fn: int
    precision: float
    recall: float
    f1: float
    runtime_s: float = 0.0
    error_flag: bool = False
    error_message: str = ""
    predicted: SummaryGraph | None = field(default=None, compare=False)


def _ratio(numerator: int, denominator: int) -> float:
    return numerator / denominator if denominator > 0 else 0.0


def score_graph(predicted: SummaryGraph, truth: SummaryGraph, scene_id: str = "") -> SceneScore:
    """
    Compares directed non-self edges of two graphs over the same nodes.

    Raises:
        GraphError: Node sets differ.
    """
    if set(predicted.nodes) != set(truth.nodes):
        raise GraphError(f"Cannot score a graph over {list(predicted.nodes)} against truth over {list(truth.nodes)}")
    found = predicted.without_self_loops().edges
    expected = truth.without_self_loops().edges
    tp = len(found & expected)
    fp = len(found - expected)
    fn = len(expected - found)
    precision = _ratio(tp, tp + fp)
    recall = _ratio(tp, tp + fn)
    f1 = 2 * precision * recall / (precision + recall) if precision + recall > 0 else 0.0
    return SceneScore(scene_id, tp, fp, fn, precision, recall, f1, predicted=predicted)


def failed_score(scene_id: str, truth: SummaryGraph, message: str, runtime_s: float = 0.0) -> SceneScore:
    """Zero score for a scene whose discovery raised; every true edge counts as missed."""
    missed = len(truth.without_self_loops().edges)
    return SceneScore(scene_id, 0, 0, missed, 0.0, 0.0, 0.0, runtime_s, True, message)


@dataclass(frozen=True)
class SweepCell:
    """
    📊 Scores of one method at one (dataset, variant, α, τ) point.

    Scores are kept sorted by scene id; every aggregate is computed from them
    (population standard deviation).
    """
    method: str
    dataset: str
    variant: Variant | None
    alpha: float
    max_lag_samples: int
    scores: tuple[SceneScore, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "scores", tuple(sorted(self.scores, key=lambda s: s.scene_id)))

    @property
    def variant_name(self) -> str:
        return self.variant.value if self.variant is not None else ""

    @property
    def n_scenes(self) -> int:
        return len(self.scores)

    @property
    def n_errors(self) -> int:
        return sum(1 for score in self.scores if score.error_flag)

    def _column(self, name: str) -> np.ndarray:
        return np.array([getattr(score, name) for score in self.scores], dtype=np.float64)

    def _mean(self, name: str) -> float:
        return float(self._column(name).mean()) if self.scores else 0.0

    def _std(self, name: str) -> float:
        return float(self._column(name).std()) if self.scores else 0.0

    @property
    def mean_f1(self) -> float:
        return self._mean("f1")

    @property
    def std_f1(self) -> float:
        return self._std("f1")

    @property
    def mean_precision(self) -> float:
        return self._mean("precision")

    @property
    def std_precision(self) -> float:
        return self._std("precision")

    @property
    def mean_recall(self) -> float:
        return self._mean("recall")

    @property
    def std_recall(self) -> float:
        return self._std("recall")

    @property
    def mean_runtime(self) -> float:
        return self._mean("runtime_s")

    @property
    def std_runtime(self) -> float:
        return self._std("runtime_s")


def evaluate_scene(method: str, scene: TimeSeriesScene, truth: SummaryGraph, config: MethodConfig,
                   seed: int, record_runtime: bool = True) -> SceneScore:
    """
    Discovers and scores one scene. Any exception from the method becomes a flagged zero score.

    Runtime covers the discovery call only.
    """
    logger = get_logger("EvaluationHarness")
    start = time.perf_counter()
    try:
        outcome = run_discovery(method, scene, config, seed)
    except UnknownMethodError:
        raise
    except Exception as e:  # pylint: disable=broad-exception-caught
        elapsed = time.perf_counter() - start
        logger.exception("Metoda %s selhala na scéně %s (alpha=%s, tau=%d): %s",
                         method, scene.scene_id, config.alpha, config.max_lag, e)
        return failed_score(scene.scene_id, truth, f"{type(e).__name__}: {e}", elapsed if record_runtime else 0.0)
    elapsed = time.perf_counter() - start
    score = score_graph(outcome.graph, truth, scene.scene_id)
    return replace(score, runtime_s=elapsed if record_runtime else 0.0)


def _check_nodes(scenes: Sequence[TimeSeriesScene], truth: SummaryGraph) -> None:
    for scene in scenes:
        if set(scene.variable_names) != set(truth.nodes):
            raise GraphError(f"Scene {scene.scene_id} has variables {list(scene.variable_names)}, "
                             f"ground truth is over {list(truth.nodes)}")


def _ordered(scenes: Sequence[TimeSeriesScene]) -> list[TimeSeriesScene]:
    return sorted(scenes, key=lambda scene: scene.scene_id)


def evaluate_method(method: str, scenes: Sequence[TimeSeriesScene], truth: SummaryGraph, config: MethodConfig,
                    seed: int = 0, jobs: int = 1, dataset: str = "", variant: Variant | None = None,
                    record_runtime: bool = True) -> SweepCell:
    """
    Runs one method on every scene and aggregates the scores.

    Scenes are processed in scene-id order and scene i receives seed + i.

    Raises:
        UnknownMethodError: Method identifier not registered.
        ConfigError: No scenes.
        GraphError: A scene's variables differ from the truth's nodes.
    """
    validate_method(method)
    if not scenes:
        raise ConfigError("evaluate_method needs at least one scene")
    ordered = _ordered(scenes)
    _check_nodes(ordered, truth)
    scores = Parallel(n_jobs=jobs)(
        delayed(evaluate_scene)(method, scene, truth, config, seed + i, record_runtime)
        for i, scene in enumerate(ordered)
    )
    return SweepCell(method, dataset, variant, config.alpha, config.max_lag, tuple(scores))


def lag_samples(max_lag_s: float, sample_rate_hz: float) -> int:
    """
    Lag in seconds rounded to whole samples.

    Raises:
        ConfigError: Result below one sample.
    """
    samples = int(round(max_lag_s * sample_rate_hz))
    if samples < 1:
        raise ConfigError(f"max lag {max_lag_s} s is shorter than one sample at {sample_rate_hz} Hz")
    return samples


def sweep_grid(alphas: Sequence[float], max_lags_s: Sequence[float], sample_rate_hz: float,
               paper_grid: bool = False, fixed_alpha: float = 0.05,
               fixed_max_lag_s: float = 2.5) -> list[tuple[float, int]]:
    """
    (α, τ in samples) points of a sweep.

    With `paper_grid` α varies at the fixed lag and the lag varies at the fixed α; the shared
    point appears once. Otherwise the full cross product is returned. Order follows the inputs.
    """
    if not alphas or not max_lags_s:
        raise ConfigError("A sweep needs at least one alpha and one max lag")
    if paper_grid:
        points = [(float(a), lag_samples(fixed_max_lag_s, sample_rate_hz)) for a in alphas]
        points += [(float(fixed_alpha), lag_samples(s, sample_rate_hz)) for s in max_lags_s]
    else:
        points = [(float(a), lag_samples(s, sample_rate_hz)) for a in alphas for s in max_lags_s]
    return list(dict.fromkeys(points))


def dataset_id(dataset_dir: Path | str) -> str:
    """Dataset identifier: the directory's name."""
    return Path(dataset_dir).resolve().name


def load_dataset(dataset_dir: Path | str, variant: Variant,
                 sample_rate_hz: float) -> tuple[list[TimeSeriesScene], SummaryGraph]:
    """
    Scenes of one variant and the dataset's ground truth.

    Scenes come from `<dir>/<variant>/*.csv` when that directory exists, otherwise from CSVs
    directly in `<dir>` whose header suffix matches the variant. `<dir>/truth.txt` overrides
    the convoy ground truth.

    Raises:
        EmptySceneDirectoryError: No scenes for the variant.
    """
    dataset_dir = Path(dataset_dir)
    variant_dir = dataset_dir / variant.value
    if variant_dir.is_dir():
        scenes = load_scene_dir(variant_dir, sample_rate_hz)
    else:
        files = sorted(dataset_dir.glob("*.csv")) if dataset_dir.is_dir() else []
        scenes = [scene for scene in (load_scene_csv(path, sample_rate_hz) for path in files)
                  if Variant.infer(scene.variable_names) is variant]
        if not scenes:
            raise EmptySceneDirectoryError(dataset_dir)

    scenes = [replace(scene, variant=variant) for scene in _ordered(scenes)]
    truth_path = dataset_dir / TRUTH_FILE
    if truth_path.is_file():
        truth = read_edge_list(truth_path, scenes[0].variable_names)
    else:
        truth = convoy_ground_truth(scenes[0].variable_names)
    return scenes, truth


def run_sweep(methods: Sequence[str], scene_dirs: Sequence[Path | str], variants: Sequence[Variant],
              alphas: Sequence[float], max_lags_s: Sequence[float], base_seed: int = 0,
              paper_grid: bool = False, fixed_alpha: float = 0.05, fixed_max_lag_s: float = 2.5,
              sample_rate_hz: float = 10.0, method_params: Mapping[str, Mapping[str, Any]] | None = None,
              jobs: int = 1, record_runtime: bool = True) -> list[SweepCell]:
    """
    🧪 One cell per method × dataset × variant × (α, τ), in that nesting order.

    All scene evaluations of the sweep go to a single worker pool; cells are rebuilt from the
    results afterwards, so neither order nor content depends on `jobs`.

    Raises:
        ConfigError: Empty method, dataset or variant list, or an invalid grid.
        UnknownMethodError: Unregistered method identifier.
        EmptySceneDirectoryError: A dataset has no scenes for a requested variant.
    """
    logger = get_logger("EvaluationHarness")
    if not methods:
        raise ConfigError("The method list is empty")
    if not scene_dirs:
        raise ConfigError("The scene directory list is empty")
    if not variants:
        raise ConfigError("The variant list is empty")
    for method in methods:
        validate_method(method)
    method_params = method_params or {}
    grid = sweep_grid(alphas, max_lags_s, sample_rate_hz, paper_grid, fixed_alpha, fixed_max_lag_s)

    datasets = []
    for scene_dir in scene_dirs:
        for variant in variants:
            scenes, truth = load_dataset(scene_dir, variant, sample_rate_hz)
            _check_nodes(scenes, truth)
            datasets.append((dataset_id(scene_dir), variant, scenes, truth))
            logger.info("Načten dataset %s (%s): %d scén", dataset_id(scene_dir), variant.value, len(scenes))

    cells = []
    tasks = []
    for method in methods:
        for name, variant, scenes, truth in datasets:
            for alpha, max_lag in grid:
                config = MethodConfig(alpha, max_lag, method_params.get(method, {}))
                cells.append((method, name, variant, alpha, max_lag, len(scenes)))
                tasks.extend((method, scene, truth, config, base_seed + i) for i, scene in enumerate(scenes))

    logger.info("Sweep: %d buněk, %d úloh, jobs=%d", len(cells), len(tasks), jobs)
    scores = Parallel(n_jobs=jobs)(
        delayed(evaluate_scene)(method, scene, truth, config, seed, record_runtime)
        for method, scene, truth, config, seed in tasks
    )

    result = []
    offset = 0
    for method, name, variant, alpha, max_lag, count in cells:
        result.append(SweepCell(method, name, variant, alpha, max_lag, tuple(scores[offset:offset + count])))
        offset += count
    return result
