"""
📦 Module: console_view.py

Renders command results on stdout.

Responsibilities:
    - Print discovered edge lists with their per-edge diagnostics
    - Print sweep summaries, scene-length statistics and generated file locations
"""

# 🧱 Standard library
import sys
from dataclasses import asdict
from typing import Any, Sequence, TextIO

# 🧩 Third-party libraries
import pandas as pd

# 🧠 First-party (project-specific)
from models.discovery_model import DiscoveryOutcome, edge_key
from models.evaluation_model import SweepCell
from models.scene_model import SceneLengthStats
from views.report_writer import summary_frame


class ConsoleView:
    """
    🖥️ Plain-text output of the command-line tool.

    Output is a pure function of its inputs, so reruns print identical text.
    """

    def __init__(self, stream: TextIO | None = None):
        self._stream = stream

    @property
    def stream(self) -> TextIO:
        return self._stream if self._stream is not None else sys.stdout

    def line(self, text: str = ""):
        print(text, file=self.stream)

    def show_outcome(self, outcome: DiscoveryOutcome, scene_id: str, method: str):
        """
        Edge list first, then per-edge values and the remaining diagnostics.
        """
        self.line(f"# scene: {scene_id}")
        self.line(f"# method: {method}")
        if outcome.abstained:
            self.line("# abstained: no graph could be committed to")
        for source, target in outcome.graph.sorted_edges():
            self.line(edge_key(source, target))

        per_edge = outcome.diagnostics.get("p_values") or outcome.diagnostics.get("scores") or {}
        label = "p_value" if "p_values" in outcome.diagnostics else "score"
        if per_edge:
            self.line(f"# {label} per edge")
            for key in sorted(per_edge):
                self.line(f"#   {key}: {per_edge[key]:.6g}")
        for key in sorted(outcome.diagnostics):
            if key in ("p_values", "scores"):
                continue
            self.line(f"# {key}: {self._format(outcome.diagnostics[key])}")

    @staticmethod
    def _format(value: Any) -> str:
        if isinstance(value, float):
            return f"{value:.6g}"
        if isinstance(value, dict):
            return ", ".join(f"{k}={ConsoleView._format(v)}" for k, v in sorted(value.items(), key=lambda kv: str(kv[0])))
        if isinstance(value, (list, tuple)):
            return "[" + ", ".join(ConsoleView._format(v) for v in value) + "]"
        return str(value)

    def show_summary(self, cells: Sequence[SweepCell]):
        """Summary table of a sweep."""
        frame = summary_frame(cells)
        if frame.empty:
            self.line("(no cells)")
            return
        with pd.option_context("display.max_rows", None, "display.width", 200):
            self.line(frame.to_string(index=False, float_format=lambda v: f"{v:.4f}"))

    def show_stats(self, stats: SceneLengthStats, directory: str):
        """Scene-length statistics as aligned key/value lines."""
        self.line(f"# scene directory: {directory}")
        values = asdict(stats)
        width = max(len(key) for key in values)
        for key, value in values.items():
            text = f"{value:.4f}" if isinstance(value, float) else str(value)
            self.line(f"{key:<{width}}  {text}")

    def show_path(self, label: str, path):
        self.line(f"{label}: {path}")
