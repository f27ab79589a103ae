"""
📦 Module: scene_model.py

Time-series scenes: the unit every discovery method and every evaluation consumes.

Responsibilities:
    - Define the immutable TimeSeriesScene and its Acceleration/Velocity variant
    - Read and write the scene CSV interchange format
    - Provide the preprocessing transforms (trailing moving average, linear resampling)
    - Stack lagged regressors into design matrices with a fixed column order
    - Summarize scene lengths across a directory
"""

# 🧱 Standard library
import math
from dataclasses import dataclass, field
from enum import Enum
from pathlib import Path
from typing import Sequence

# 🧩 Third-party libraries
import numpy as np
import pandas as pd

# 🧠 First-party (project-specific)
from models.errors import SceneFormatError, EmptySceneDirectoryError, InsufficientSamplesError, CausalToolkitError


class Variant(Enum):
    """
    🚗 Which kinematic quantity a scene records for every agent.
    """
    ACCELERATION = "acceleration"
    VELOCITY = "velocity"

    @property
    def suffix(self) -> str:
        """Column-name suffix used in scene headers ("a" or "v")."""
        return "a" if self is Variant.ACCELERATION else "v"

    @classmethod
    def parse(cls, text: str) -> "Variant":
        """
        Accepts "acceleration"/"velocity" as well as the one-letter suffixes.

        Raises:
            ValueError: Unrecognized variant text.
        """
        cleaned = text.strip().lower()
        for variant in cls:
            if cleaned in (variant.value, variant.suffix):
                return variant
        raise ValueError(f"Unknown variant '{text}' (expected acceleration or velocity)")

    @classmethod
    def infer(cls, variable_names: Sequence[str]) -> "Variant | None":
        """
        Infers the variant from header suffixes; None when the names do not agree.
        """
        suffixes = {name.rsplit(".", 1)[-1] for name in variable_names if "." in name}
        if len(suffixes) != 1 or len(variable_names) == 0:
            return None
        suffix = suffixes.pop()
        for variant in cls:
            if variant.suffix == suffix and all("." in name for name in variable_names):
                return variant
        return None


@dataclass(frozen=True, eq=False)
class TimeSeriesScene:
    """
    🎞️ Named multivariate time series sampled at a fixed rate.

    Rows are time steps, columns follow `variable_names`. The value matrix is
    copied on construction and marked read-only.

    Args:
        scene_id (str): Identifier, usually the CSV file stem.
        variable_names (tuple[str, ...]): Unique column names.
        sample_rate_hz (float): Sampling frequency.
        values (np.ndarray): T×N matrix of finite float64.
        variant (Variant | None): Inferred from the names when omitted.
    """
    scene_id: str
    variable_names: tuple[str, ...]
    sample_rate_hz: float
    values: np.ndarray
    variant: Variant | None = field(default=None)

    def __post_init__(self):
        names = tuple(str(name) for name in self.variable_names)
        matrix = np.array(self.values, dtype=np.float64, copy=True)
        if matrix.ndim == 1:
            matrix = matrix.reshape(-1, 1)

        if matrix.ndim != 2 or matrix.shape[1] != len(names):
            raise SceneFormatError(
                f"Scene '{self.scene_id}' has {matrix.shape[-1] if matrix.ndim else 0} columns "
                f"but {len(names)} variable names")
        if len(set(names)) != len(names):
            raise SceneFormatError(f"Scene '{self.scene_id}' has duplicate variable names")
        if matrix.shape[0] < 2:
            raise InsufficientSamplesError(2, matrix.shape[0], f"scene '{self.scene_id}'")
        if not self.sample_rate_hz > 0 or not math.isfinite(self.sample_rate_hz):
            raise SceneFormatError(f"Scene '{self.scene_id}' needs a positive sample rate")
        if not np.all(np.isfinite(matrix)):
            raise SceneFormatError(f"Scene '{self.scene_id}' contains NaN or infinite values")

        matrix.setflags(write=False)
        object.__setattr__(self, "variable_names", names)
        object.__setattr__(self, "values", matrix)
        object.__setattr__(self, "sample_rate_hz", float(self.sample_rate_hz))
        if self.variant is None:
            object.__setattr__(self, "variant", Variant.infer(names))

    @property
    def n_samples(self) -> int:
        """T"""
        return self.values.shape[0]

    @property
    def n_variables(self) -> int:
        """N"""
        return self.values.shape[1]

    @property
    def duration_s(self) -> float:
        """Length of the scene in seconds, T / rate."""
        return self.n_samples / self.sample_rate_hz

    def index_of(self, name: str) -> int:
        """
        Column index of a variable name.

        Raises:
            KeyError: Name not in the scene.
        """
        try:
            return self.variable_names.index(name)
        except ValueError:
            raise KeyError(f"Variable '{name}' not in scene '{self.scene_id}'") from None

    def centered(self) -> np.ndarray:
        """Column-wise mean-centered copy of the values."""
        return self.values - self.values.mean(axis=0, keepdims=True)

    def with_values(self, values: np.ndarray, sample_rate_hz: float | None = None) -> "TimeSeriesScene":
        """New scene sharing id, names and variant with replaced values (and optionally rate)."""
        return TimeSeriesScene(
            scene_id=self.scene_id,
            variable_names=self.variable_names,
            sample_rate_hz=self.sample_rate_hz if sample_rate_hz is None else sample_rate_hz,
            values=values,
            variant=self.variant,
        )


# --- CSV interchange ---
def load_scene_csv(path: Path | str, sample_rate_hz: float, scene_id: str | None = None) -> TimeSeriesScene:
    """
    Reads a scene CSV: header of variable names, then one row of decimal reals per sample.

    Parsed line by line instead of with pd.read_csv so every error can name the failing line.

    Args:
        path (Path | str): CSV file.
        sample_rate_hz (float): Rate the file was recorded at.
        scene_id (str | None): Defaults to the file stem.

    Returns:
        TimeSeriesScene: Matrix equal to the file contents row-for-row.

    Raises:
        SceneFormatError: Empty file, empty body, wrong row length or non-numeric cell.
    """
    path = Path(path)
    with open(path, encoding="utf-8-sig") as f:
        lines = f.read().splitlines()

    if not lines or not lines[0].strip():
        raise SceneFormatError("missing header row", path, 1)

    header = [name.strip() for name in lines[0].split(",")]
    if any(not name for name in header):
        raise SceneFormatError("empty variable name in header", path, 1)

    rows = []
    for line_number, line in enumerate(lines[1:], start=2):
        if not line.strip():
            continue
        cells = line.split(",")
        if len(cells) != len(header):
            raise SceneFormatError(
                f"expected {len(header)} cells, found {len(cells)}", path, line_number)
        try:
            row = [float(cell) for cell in cells]
        except ValueError:
            raise SceneFormatError(f"non-numeric cell in '{line}'", path, line_number) from None
        if not all(math.isfinite(value) for value in row):
            raise SceneFormatError("non-finite value", path, line_number)
        rows.append(row)

    if not rows:
        raise SceneFormatError("file has a header but no samples", path)

    return TimeSeriesScene(
        scene_id=scene_id if scene_id is not None else path.stem,
        variable_names=tuple(header),
        sample_rate_hz=sample_rate_hz,
        values=np.array(rows, dtype=np.float64),
    )


def save_scene_csv(scene: TimeSeriesScene, path: Path | str) -> None:
    """
    Writes a scene with shortest round-trip float formatting and LF line endings.

    Args:
        scene (TimeSeriesScene): Scene to write.
        path (Path | str): Destination file; parent directories are created.
    """
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    lines = [",".join(scene.variable_names)]
    lines.extend(",".join(repr(float(value)) for value in row) for row in scene.values)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write("\n".join(lines) + "\n")


def list_scene_files(directory: Path | str) -> list[Path]:
    """
    Sorted CSV files directly inside a directory.

    Raises:
        EmptySceneDirectoryError: Directory missing or without CSV files.
    """
    directory = Path(directory)
    files = sorted(directory.glob("*.csv")) if directory.is_dir() else []
    if not files:
        raise EmptySceneDirectoryError(directory)
    return files


def load_scene_dir(directory: Path | str, sample_rate_hz: float) -> list[TimeSeriesScene]:
    """Loads every CSV in a directory, ordered by file name."""
    return [load_scene_csv(path, sample_rate_hz) for path in list_scene_files(directory)]


# --- Preprocessing ---
def moving_average(scene: TimeSeriesScene, window: int) -> TimeSeriesScene:
    """
    Trailing moving average; the first samples average over what is available.

    Raises:
        ValueError: window < 1.
    """
    if window < 1:
        raise ValueError(f"Moving-average window must be >= 1, got {window}")
    frame = pd.DataFrame(scene.values)
    smoothed = frame.rolling(window=window, min_periods=1).mean().to_numpy()
    return scene.with_values(smoothed)


def resample_linear(scene: TimeSeriesScene, target_rate_hz: float) -> TimeSeriesScene:
    """
    Linear interpolation onto a new grid starting at t = 0, truncated at the last original sample.

    Args:
        scene (TimeSeriesScene): Source scene.
        target_rate_hz (float): Output rate.

    Returns:
        TimeSeriesScene: Resampled scene at target_rate_hz.

    Raises:
        ValueError: Non-positive target rate.
        InsufficientSamplesError: Output would hold fewer than two samples.
    """
    if not target_rate_hz > 0:
        raise ValueError(f"Target rate must be positive, got {target_rate_hz}")

    source_times = np.arange(scene.n_samples) / scene.sample_rate_hz
    last_time = source_times[-1]
    # 1e-9 absorbs round-off so that an exact multiple of the new period is kept
    n_out = int(math.floor(last_time * target_rate_hz + 1e-9)) + 1
    if n_out < 2:
        raise InsufficientSamplesError(2, n_out, f"resampling '{scene.scene_id}' to {target_rate_hz} Hz")

    target_times = np.minimum(np.arange(n_out) / target_rate_hz, last_time)
    columns = [np.interp(target_times, source_times, scene.values[:, j]) for j in range(scene.n_variables)]
    return scene.with_values(np.column_stack(columns), sample_rate_hz=target_rate_hz)


# --- Lagged regressors ---
def lagged_matrix(values: np.ndarray, target_idx: Sequence[int], predictor_idx: Sequence[int],
                  max_lag: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Array-level core of lagged_design.

    Column `p * max_lag + (lag - 1)` of the design holds predictor p at that lag;
    row r corresponds to time max_lag + r.
    """
    n_samples = values.shape[0]
    if max_lag < 1:
        raise ValueError(f"max_lag must be >= 1, got {max_lag}")
    if max_lag >= n_samples:
        raise InsufficientSamplesError(max_lag + 1, n_samples, "lagged design")
    if len(target_idx) == 0 or len(predictor_idx) == 0:
        raise ValueError("lagged design needs at least one target and one predictor")

    n_rows = n_samples - max_lag
    design = np.empty((n_rows, len(predictor_idx) * max_lag), dtype=np.float64)
    for p, column in enumerate(predictor_idx):
        for lag in range(1, max_lag + 1):
            design[:, p * max_lag + lag - 1] = values[max_lag - lag:n_samples - lag, column]
    response = values[max_lag:, list(target_idx)]
    return design, response


def lagged_design(scene: TimeSeriesScene, targets: Sequence[str], predictors: Sequence[str],
                  max_lag: int) -> tuple[np.ndarray, np.ndarray]:
    """
    Stacks lagged predictor values against present target values.

    Args:
        scene (TimeSeriesScene): Source data.
        targets (Sequence[str]): Response variable names.
        predictors (Sequence[str]): Regressor variable names.
        max_lag (int): τ in samples.

    Returns:
        tuple[np.ndarray, np.ndarray]: Design (T−τ)×(|predictors|·τ), predictor-major then lag 1..τ,
        and response (T−τ)×|targets|.
    """
    target_idx = [scene.index_of(name) for name in targets]
    predictor_idx = [scene.index_of(name) for name in predictors]
    return lagged_matrix(scene.values, target_idx, predictor_idx, max_lag)


# --- Scene length statistics ---
@dataclass(frozen=True)
class SceneLengthStats:
    """
    📏 Length summary over a set of scenes.
    """
    count: int
    min_samples: int
    max_samples: int
    mean_samples: float
    median_samples: float
    std_samples: float
    min_duration_s: float
    max_duration_s: float
    mean_duration_s: float
    median_duration_s: float
    std_duration_s: float


def scene_length_stats(scenes: Sequence[TimeSeriesScene]) -> SceneLengthStats:
    """
    Count, extremes, mean, median and population standard deviation of scene lengths.

    Raises:
        CausalToolkitError: No scenes given.
    """
    if not scenes:
        raise CausalToolkitError("Scene length statistics need at least one scene")
    samples = np.array([scene.n_samples for scene in scenes], dtype=np.float64)
    durations = np.array([scene.duration_s for scene in scenes], dtype=np.float64)
    return SceneLengthStats(
        count=len(scenes),
        min_samples=int(samples.min()),
        max_samples=int(samples.max()),
        mean_samples=float(samples.mean()),
        median_samples=float(np.median(samples)),
        std_samples=float(samples.std()),
        min_duration_s=float(durations.min()),
        max_duration_s=float(durations.max()),
        mean_duration_s=float(durations.mean()),
        median_duration_s=float(np.median(durations)),
        std_duration_s=float(durations.std()),
    )
