"""
📦 Module: report_writer.py

Writes sweep results to disk.

Responsibilities:
    - Summary table (one row per cell) and detail table (one row per scene score), CSV or JSON
    - Plot-data tables: best cell per dataset, F1 against α and against τ
    - Per-cell plaintext performance files and optional per-scene discovered graphs
"""

# 🧱 Standard library
import json
from pathlib import Path
from typing import Sequence

# 🧩 Third-party libraries
import pandas as pd

# 🧠 First-party (project-specific)
from models.evaluation_model import SweepCell
from models.graph_model import write_edge_list
from utils.logger import get_logger

REPORT_FORMATS = ("csv", "json")

SUMMARY_COLUMNS = ["method", "dataset", "variant", "alpha", "max_lag", "n_scenes",
                   "mean_f1", "std_f1", "mean_precision", "mean_recall", "mean_runtime_s"]
CELL_COLUMNS = ["method", "dataset", "variant", "alpha", "max_lag"]
DETAIL_COLUMNS = CELL_COLUMNS + ["scene_id", "tp", "fp", "fn", "precision", "recall", "f1",
                                 "runtime_s", "error_flag"]
BEST_COLUMNS = ["method", "dataset", "variant", "alpha", "max_lag", "mean_f1"]
ALPHA_CURVE_COLUMNS = ["method", "alpha", "mean_f1", "n_datasets"]
LAG_CURVE_COLUMNS = ["method", "max_lag", "mean_f1", "n_datasets"]


def _cell_ids(cell: SweepCell) -> list:
    return [cell.method, cell.dataset, cell.variant_name, cell.alpha, cell.max_lag_samples]


def summary_frame(cells: Sequence[SweepCell]) -> pd.DataFrame:
    """One row per cell, in cell order."""
    rows = [_cell_ids(cell) + [cell.n_scenes, cell.mean_f1, cell.std_f1, cell.mean_precision,
                               cell.mean_recall, cell.mean_runtime] for cell in cells]
    return pd.DataFrame(rows, columns=SUMMARY_COLUMNS)


def detail_frame(cells: Sequence[SweepCell]) -> pd.DataFrame:
    """One row per scene score; cells in order, scenes sorted by id."""
    rows = [_cell_ids(cell) + [s.scene_id, s.tp, s.fp, s.fn, s.precision, s.recall, s.f1,
                               s.runtime_s, s.error_flag]
            for cell in cells for s in cell.scores]
    return pd.DataFrame(rows, columns=DETAIL_COLUMNS)


def plot_best_by_dataset(cells: Sequence[SweepCell]) -> pd.DataFrame:
    """
    Best cell (highest mean F1, first on ties) per method, dataset and variant.
    """
    frame = summary_frame(cells)
    if frame.empty:
        return pd.DataFrame(columns=BEST_COLUMNS)
    best = frame.loc[frame.groupby(["method", "dataset", "variant"], sort=False)["mean_f1"].idxmax()]
    return best[BEST_COLUMNS].reset_index(drop=True)


def _curve(cells: Sequence[SweepCell], axis: str, columns: list[str]) -> pd.DataFrame:
    """
    Mean over datasets (dataset × variant) of the best mean F1 at each value of `axis`,
    the best being taken over the other parameter.
    """
    frame = summary_frame(cells)
    if frame.empty:
        return pd.DataFrame(columns=columns)
    best = frame.groupby(["method", "dataset", "variant", axis], sort=False)["mean_f1"].max().reset_index()
    curve = best.groupby(["method", axis], sort=False)["mean_f1"].agg(["mean", "size"]).reset_index()
    curve.columns = columns
    return curve


def plot_f1_vs_alpha(cells: Sequence[SweepCell]) -> pd.DataFrame:
    """F1 against α per method."""
    return _curve(cells, "alpha", ALPHA_CURVE_COLUMNS)


def plot_f1_vs_max_lag(cells: Sequence[SweepCell]) -> pd.DataFrame:
    """F1 against τ (samples) per method."""
    return _curve(cells, "max_lag", LAG_CURVE_COLUMNS)


def write_table(frame: pd.DataFrame, path_stem: Path, fmt: str) -> Path:
    """
    Writes a table as `<stem>.csv` or `<stem>.json` ({"columns": [...], "rows": [[...], ...]}).

    Raises:
        ValueError: Unknown format.
    """
    if fmt not in REPORT_FORMATS:
        raise ValueError(f"Unknown report format '{fmt}' (expected one of {', '.join(REPORT_FORMATS)})")
    path = path_stem.with_suffix(f".{fmt}")
    path.parent.mkdir(parents=True, exist_ok=True)
    if fmt == "csv":
        frame.to_csv(path, index=False, lineterminator="\n")
    else:
        split = frame.to_dict(orient="split")
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            json.dump({"columns": list(split["columns"]), "rows": split["data"]}, f, indent=2)
            f.write("\n")
    return path


def read_table(path: Path | str) -> pd.DataFrame:
    """Reads a table written by write_table."""
    path = Path(path)
    if path.suffix == ".json":
        with open(path, encoding="utf-8") as f:
            payload = json.load(f)
        return pd.DataFrame(payload["rows"], columns=payload["columns"])
    return pd.read_csv(path)


def performance_text(cell: SweepCell) -> str:
    """Plaintext aggregate block of one cell."""
    lines = [
        f"method: {cell.method}",
        f"dataset: {cell.dataset}",
        f"variant: {cell.variant_name}",
        f"alpha: {cell.alpha!r}",
        f"max_lag: {cell.max_lag_samples}",
        f"n_scenes: {cell.n_scenes}",
        f"errored_scenes: {cell.n_errors}",
        f"mean_f1: {cell.mean_f1!r}",
        f"std_f1: {cell.std_f1!r}",
        f"mean_precision: {cell.mean_precision!r}",
        f"std_precision: {cell.std_precision!r}",
        f"mean_recall: {cell.mean_recall!r}",
        f"std_recall: {cell.std_recall!r}",
        f"mean_runtime_s: {cell.mean_runtime!r}",
        f"std_runtime_s: {cell.std_runtime!r}",
    ]
    return "\n".join(lines) + "\n"


def performance_path(report_dir: Path, cell: SweepCell) -> Path:
    return (report_dir / "performance" / str(cell.max_lag_samples) / repr(cell.alpha)
            / f"{cell.method}_{cell.dataset}_{cell.variant_name}.txt")


def graph_dir(report_dir: Path, cell: SweepCell) -> Path:
    return (report_dir / "graphs" / cell.dataset / cell.variant_name / str(cell.max_lag_samples)
            / repr(cell.alpha) / cell.method)


def emit_report(cells: Sequence[SweepCell], fmt: str, report_dir: Path | str, save_graphs: bool = False) -> list[Path]:
    """
    📝 Writes every report file of a sweep.

    Args:
        cells (Sequence[SweepCell]): Sweep result in output order.
        fmt (str): "csv" or "json" for the tables.
        report_dir (Path | str): Destination; created when missing.
        save_graphs (bool): Also write each scene's discovered graph.

    Returns:
        list[Path]: Files written, tables first.
    """
    logger = get_logger("ReportWriter")
    report_dir = Path(report_dir)
    report_dir.mkdir(parents=True, exist_ok=True)

    written = [
        write_table(summary_frame(cells), report_dir / "summary", fmt),
        write_table(detail_frame(cells), report_dir / "detail", fmt),
        write_table(plot_best_by_dataset(cells), report_dir / "plot_best_by_dataset", fmt),
        write_table(plot_f1_vs_alpha(cells), report_dir / "plot_f1_vs_alpha", fmt),
        write_table(plot_f1_vs_max_lag(cells), report_dir / "plot_f1_vs_max_lag", fmt),
    ]

    for cell in cells:
        path = performance_path(report_dir, cell)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            f.write(performance_text(cell))
        written.append(path)

        if save_graphs:
            for score in cell.scores:
                if score.predicted is not None:
                    graph_path = graph_dir(report_dir, cell) / f"{score.scene_id}.txt"
                    write_edge_list(score.predicted, graph_path)
                    written.append(graph_path)

    logger.info("Report zapsán do %s: %d souborů, %d buněk", report_dir, len(written), len(cells))
    return written
