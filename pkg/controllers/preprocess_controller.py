"""
📦 Module: preprocess_controller.py

Handles the `preprocess` and `scene-stats` commands.

Responsibilities:
    - Smooth and/or resample a scene file or a directory of scenes, keeping file names
    - Print scene-length statistics of a directory
"""

# 🧱 Standard library
import argparse
from pathlib import Path

# 🧠 First-party (project-specific)
from controllers.base_controller import BaseController, EXIT_OK, EXIT_FAILURE
from models.scene_model import (TimeSeriesScene, list_scene_files, load_scene_csv, load_scene_dir,
                                moving_average, resample_linear, save_scene_csv, scene_length_stats)
from utils.path_validation import PathValidator


class PreprocessController(BaseController):
    """
    🧹 Applies the moving average, then the resampling, to every input scene.
    """
    title = "Preprocess"

    def transform(self, scene: TimeSeriesScene, smooth_window: int | None,
                  target_rate_hz: float | None) -> TimeSeriesScene:
        """Each step runs only when requested."""
        if smooth_window is not None:
            scene = moving_average(scene, smooth_window)
        if target_rate_hz is not None:
            scene = resample_linear(scene, target_rate_hz)
        return scene

    def _run(self, args: argparse.Namespace) -> int:
        source = Path(args.input)
        if not PathValidator({"input": source}, self.messenger).validate():
            return EXIT_FAILURE
        if args.sample_rate_hz is not None:
            self.config.override("Discovery", "sample_rate_hz", args.sample_rate_hz)
        rate = self.config.get("Discovery", "sample_rate_hz")

        if source.is_dir():
            pairs = [(path, Path(args.output) / path.name) for path in list_scene_files(source)]
        else:
            output = Path(args.output)
            pairs = [(source, output / source.name if output.is_dir() else output)]

        for in_path, out_path in pairs:
            scene = self.transform(load_scene_csv(in_path, rate), args.smooth_window, args.target_rate_hz)
            save_scene_csv(scene, out_path)
            self.logger.info("Předzpracováno %s → %s (%d vzorků)", in_path, out_path, scene.n_samples)

        self.view.show_path("processed", f"{len(pairs)} scene(s) → {args.output}")
        return EXIT_OK


class SceneStatsController(BaseController):
    """
    📏 Prints count, min, max, mean, median and std of scene lengths.
    """
    title = "Scene stats"

    def _run(self, args: argparse.Namespace) -> int:
        if args.sample_rate_hz is not None:
            self.config.override("Discovery", "sample_rate_hz", args.sample_rate_hz)
        scenes = load_scene_dir(args.scene_dir, self.config.get("Discovery", "sample_rate_hz"))
        self.view.show_stats(scene_length_stats(scenes), str(args.scene_dir))
        return EXIT_OK
