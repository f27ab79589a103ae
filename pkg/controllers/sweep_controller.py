"""
📦 Module: sweep_controller.py

Handles the `sweep` command: the benchmark grid over methods, datasets, variants, α and τ.

Responsibilities:
    - Merge sweep flags and the report-directory environment override into the configuration
    - Validate the scene directories, run the sweep and write every report file
"""

# 🧱 Standard library
import argparse
from pathlib import Path

# 🧠 First-party (project-specific)
from controllers.base_controller import BaseController, EXIT_OK, EXIT_FAILURE
from models.errors import ConfigError
from models.evaluation_model import run_sweep
from models.method_registry import validate_method
from models.pcmci_model import log_min_lag_notice
from models.scene_model import Variant
from utils.path_validation import PathValidator
from utils.resources import resolve_path
from utils.run_config import RUN_CONFIG_FILE
from utils.validators import parse_str_list, parse_jobs
from views.report_writer import emit_report, REPORT_FORMATS

SWEEP_FLAGS = ("methods", "variants", "alphas", "max_lags_s", "paper_grid", "fixed_alpha", "fixed_max_lag_s",
               "report_format", "save_graphs", "record_runtime")


class SweepController(BaseController):
    """
    🧪 Runs a parameter sweep and writes the report directory.

    Scenes whose method fails are part of the results; the exit status only reflects
    whether the harness itself completed.
    """
    title = "Sweep"

    def _apply_flags(self, args: argparse.Namespace):
        for key in SWEEP_FLAGS:
            self.config.override("Sweep", key, getattr(args, key, None))
        if args.jobs is not None:
            self.config.override("Sweep", "jobs", parse_jobs(args.jobs))
        for key in ("sample_rate_hz", "seed"):
            self.config.override("Discovery", key, getattr(args, key, None))
        if args.report_dir is not None:
            self.config.override("Paths", "report_dir", args.report_dir)
        self.config.apply_environment()

    def _run(self, args: argparse.Namespace) -> int:
        self._apply_flags(args)
        sweep = self.config.values["Sweep"]
        methods = [validate_method(method) for method in sweep["methods"]]
        if not methods:
            raise ConfigError("The method list is empty")
        variants = [Variant.parse(variant) for variant in sweep["variants"]]
        if sweep["report_format"] not in REPORT_FORMATS:
            raise ConfigError(f"report_format must be one of {', '.join(REPORT_FORMATS)}")

        scene_dirs = [Path(item) for item in parse_str_list(args.scene_dirs, "scene-dirs")]
        validator = PathValidator({f"scene_dir[{i}]": path for i, path in enumerate(scene_dirs)}, self.messenger)
        if not validator.validate():
            return EXIT_FAILURE
        if "pcmci" in methods:
            log_min_lag_notice()

        cells = run_sweep(
            methods=methods,
            scene_dirs=scene_dirs,
            variants=variants,
            alphas=sweep["alphas"],
            max_lags_s=sweep["max_lags_s"],
            base_seed=self.config.get("Discovery", "seed"),
            paper_grid=sweep["paper_grid"],
            fixed_alpha=sweep["fixed_alpha"],
            fixed_max_lag_s=sweep["fixed_max_lag_s"],
            sample_rate_hz=self.config.get("Discovery", "sample_rate_hz"),
            method_params=self.config.all_method_params(),
            jobs=sweep["jobs"],
            record_runtime=sweep["record_runtime"],
        )

        report_dir = resolve_path(self.config.get("Paths", "report_dir"))
        emit_report(cells, sweep["report_format"], report_dir, save_graphs=sweep["save_graphs"])
        self.config.write_run_config(report_dir / RUN_CONFIG_FILE, self.version, "sweep")

        errored = sum(cell.n_errors for cell in cells)
        if errored:
            self.logger.warning("Sweep dokončen, %d scén skončilo chybou metody", errored)
        self.view.show_summary(cells)
        self.view.show_path("report", report_dir)
        self.view.show_path("fingerprint", self.config.fingerprint(self.version))
        return EXIT_OK
