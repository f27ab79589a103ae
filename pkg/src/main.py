#!/usr/bin/env python3
"""
🎬 Command-line launcher of ConvoyCD, the temporal causal-discovery benchmark for convoy scenes.

Responsible for preparing logging, loading the layered configuration, parsing the
command line and dispatching to the command controllers.

Version:
    1.0.0
"""

__version__ = "1.0.0"

# 🧱 Standard library
import argparse
import sys
from pathlib import Path

# 🧠 First-party (project-specific)
from controllers.base_controller import EXIT_FAILURE
from controllers.discover_controller import DiscoverController
from controllers.generate_controller import GenerateController, GENERATION_FLAGS
from controllers.preprocess_controller import PreprocessController, SceneStatsController
from controllers.sweep_controller import SweepController
from models.errors import ConfigError
from models.method_registry import METHOD_IDS
from utils.config_checker import ConfigFileChecker
from utils.ensure_logs_dir import ensure_logs_dir
from utils.logger import get_logger
from utils.messenger import Messenger
from utils.resources import get_config_path
from utils.run_config import RunConfig, default_values, format_value
from utils.system_info import log_system_info

CONTROLLERS = {
    "generate": GenerateController,
    "discover": DiscoverController,
    "sweep": SweepController,
    "preprocess": PreprocessController,
    "scene-stats": SceneStatsController,
}


def _flag(name: str) -> str:
    return "--" + name.replace("_", "-")


def _default_help(section: str, key: str, text: str = "") -> str:
    value = format_value(default_values()[section][key])
    return f"{text} (default: {value if value else 'unset'})".strip()


def build_parser() -> argparse.ArgumentParser:
    """
    Parser with one sub-command per controller.

    Config-backed flags default to None so that an unset flag never hides a config-file value;
    their help text shows the built-in default.
    """
    parser = argparse.ArgumentParser(
        prog="convoycd",
        description="Temporal causal discovery on two-agent convoy scenes.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("--config", default=None,
                        help="INI configuration file; config.ini beside the launcher is used when present")
    commands = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    # 🚗 generate
    generate = commands.add_parser("generate", help="generate synthetic convoy scenes")
    generate.add_argument("--out-dir", required=True, help="directory receiving scene CSVs and manifest.ini")
    generate.add_argument("--count", default=None, help=_default_help("Generation", "count", "number of scenes"))
    generate.add_argument("--jobs", default=None, help=_default_help("Generation", "jobs", "worker processes (-1: all CPUs)"))
    for key in GENERATION_FLAGS:
        generate.add_argument(_flag(key), dest=key, default=None, help=_default_help("Generation", key))

    # 🔍 discover
    discover = commands.add_parser("discover", help="run one method on one scene")
    discover.add_argument("--method", required=True, help=f"one of: {', '.join(METHOD_IDS)}")
    discover.add_argument("--scene", required=True, help="scene CSV file")
    discover.add_argument("--alpha", default=None, help=_default_help("Discovery", "alpha", "significance level"))
    discover.add_argument("--max-lag-s", default=None, help=_default_help("Discovery", "max_lag_s", "maximum lag in seconds"))
    discover.add_argument("--sample-rate-hz", default=None, help=_default_help("Discovery", "sample_rate_hz"))
    discover.add_argument("--seed", default=None, help=_default_help("Discovery", "seed", "seed of randomized methods"))
    discover.add_argument("--param", action="append", default=None, metavar="KEY=VALUE",
                          help="method parameter, repeatable (e.g. lambda_a=0.1)")
    discover.add_argument("--graph-out", default=None, help="write the graph as an edge-list text file")

    # 🧪 sweep
    sweep = commands.add_parser("sweep", help="run the benchmark grid and write reports")
    sweep.add_argument("--scene-dirs", required=True, help="comma-separated dataset directories")
    sweep.add_argument("--methods", default=None, help=_default_help("Sweep", "methods"))
    sweep.add_argument("--variants", default=None, help=_default_help("Sweep", "variants"))
    sweep.add_argument("--alphas", default=None, help=_default_help("Sweep", "alphas"))
    sweep.add_argument("--max-lags-s", default=None, help=_default_help("Sweep", "max_lags_s"))
    sweep.add_argument("--paper-grid", action=argparse.BooleanOptionalAction, default=None,
                       help=_default_help("Sweep", "paper_grid", "vary alpha at the fixed lag and the lag at the fixed alpha"))
    sweep.add_argument("--fixed-alpha", default=None, help=_default_help("Sweep", "fixed_alpha"))
    sweep.add_argument("--fixed-max-lag-s", default=None, help=_default_help("Sweep", "fixed_max_lag_s"))
    sweep.add_argument("--report-dir", default=None,
                       help=_default_help("Paths", "report_dir", "report directory, overridden by CONVOYCD_REPORT_DIR"))
    sweep.add_argument("--report-format", default=None, help=_default_help("Sweep", "report_format", "csv or json"))
    sweep.add_argument("--save-graphs", action=argparse.BooleanOptionalAction, default=None,
                       help=_default_help("Sweep", "save_graphs", "write every discovered graph"))
    sweep.add_argument("--no-runtime", dest="record_runtime", action="store_const", const=False, default=None,
                       help="write runtime fields as 0.0")
    sweep.add_argument("--sample-rate-hz", default=None, help=_default_help("Discovery", "sample_rate_hz"))
    sweep.add_argument("--seed", default=None, help=_default_help("Discovery", "seed", "base seed"))
    sweep.add_argument("--jobs", default=None, help=_default_help("Sweep", "jobs", "worker processes (-1: all CPUs)"))

    # 🧹 preprocess
    preprocess = commands.add_parser("preprocess", help="smooth and/or resample scenes")
    preprocess.add_argument("--input", required=True, help="scene CSV file or directory")
    preprocess.add_argument("--output", required=True, help="output file or directory")
    preprocess.add_argument("--smooth-window", type=int, default=None, help="trailing moving-average window")
    preprocess.add_argument("--target-rate-hz", type=float, default=None, help="resample to this rate")
    preprocess.add_argument("--sample-rate-hz", default=None, help=_default_help("Discovery", "sample_rate_hz", "source rate"))

    # 📏 scene-stats
    stats = commands.add_parser("scene-stats", help="print scene-length statistics")
    stats.add_argument("--scene-dir", required=True, help="directory of scene CSVs")
    stats.add_argument("--sample-rate-hz", default=None, help=_default_help("Discovery", "sample_rate_hz"))

    return parser


class AppLauncher:
    """
    🎯 Orchestrates one command run: logging, configuration, dispatch.
    """

    def __init__(self, version: str):
        """
        Args:
            version (str): Application version string.
        """
        self.version = version
        self.logger = get_logger("Main")
        self.messenger = Messenger()

    def run(self, argv: list[str] | None = None) -> int:
        """
        Parses the command line and executes the command.

        Returns:
            int: 0 on success, 1 on failure; argparse exits with 2 on usage errors.
        """
        ensure_logs_dir()
        self._add_blank_line_to_log()
        parser = build_parser()
        args = parser.parse_args(argv)
        if args.command == "preprocess" and args.smooth_window is None and args.target_rate_hz is None:
            parser.error("preprocess needs --smooth-window and/or --target-rate-hz")

        log_system_info(self.version)
        self.logger.info("Příkaz: %s", " ".join(argv if argv is not None else sys.argv[1:]))
        try:
            config = RunConfig.load(self._config_path(args))
        except ConfigError as e:
            self.logger.error("Neplatná konfigurace: %s", e)
            self.messenger.error(str(e), "Config")
            return EXIT_FAILURE

        controller = CONTROLLERS[args.command](config, self.version)
        status = controller.execute(args)
        self.logger.info("Příkaz %s dokončen se stavem %d", args.command, status)
        return status

    def _config_path(self, args: argparse.Namespace) -> Path | None:
        """
        Explicit --config must exist; otherwise config.ini beside the launcher when present.
        """
        if args.config:
            ConfigFileChecker(args.config).check_exists_or_exit()
            return Path(args.config)
        default = get_config_path("config.ini")
        return default if default.is_file() else None

    def _add_blank_line_to_log(self):
        """
        Adds a blank line to the TXT log for visual separation.
        """
        try:
            with open(ensure_logs_dir() / "app.txt", "a", encoding="utf-8") as f:
                f.write("\n")
        except (OSError, IOError) as e:
            self.logger.warning("Nepodařilo se zapsat prázdný řádek do logu: %s", e)


def main(argv: list[str] | None = None) -> int:
    """
    Entry point for the ConvoyCD command line.
    """
    launcher = AppLauncher(__version__)
    return launcher.run(argv)


if __name__ == "__main__":
    try:
        sys.exit(main())
    except Exception as startup_error:  # pylint: disable=broad-exception-caught
        startup_logger = get_logger("Main")
        startup_logger.exception("Neočekávaná chyba při běhu aplikace: %s", startup_error)
        Messenger().error("Unexpected error, see logs/app.txt.", "Main")
        sys.exit(1)
