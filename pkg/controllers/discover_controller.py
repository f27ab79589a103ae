"""
📦 Module: discover_controller.py

Handles the `discover` command: one method on one scene file.

Responsibilities:
    - Load the scene and build the method configuration from config and flags
    - Print the edge list and diagnostics, optionally write the graph file
"""

# 🧱 Standard library
import argparse
from pathlib import Path

# 🧠 First-party (project-specific)
from controllers.base_controller import BaseController, EXIT_OK
from models.discovery_model import MethodConfig
from models.errors import ConfigError
from models.evaluation_model import lag_samples
from models.graph_model import write_edge_list
from models.method_registry import run_discovery, validate_method
from models.pcmci_model import log_min_lag_notice
from models.scene_model import load_scene_csv
from utils.run_config import method_section


def parse_params(pairs: list[str] | None) -> list[tuple[str, str]]:
    """
    KEY=VALUE flags.

    Raises:
        ConfigError: Entry without '='.
    """
    parsed = []
    for pair in pairs or []:
        key, sep, value = pair.partition("=")
        if not sep or not key.strip():
            raise ConfigError(f"Method parameter must be KEY=VALUE, got '{pair}'")
        parsed.append((key.strip(), value.strip()))
    return parsed


class DiscoverController(BaseController):
    """
    🔍 Runs a discovery method on a single scene.
    """
    title = "Discover"

    def _run(self, args: argparse.Namespace) -> int:
        method = validate_method(args.method)
        for key in ("alpha", "max_lag_s", "sample_rate_hz", "seed"):
            self.config.override("Discovery", key, getattr(args, key, None))
        for key, value in parse_params(args.param):
            self.config.override(method_section(method), key, value)

        rate = self.config.get("Discovery", "sample_rate_hz")
        scene = load_scene_csv(Path(args.scene), rate)
        method_config = MethodConfig(
            alpha=self.config.get("Discovery", "alpha"),
            max_lag=lag_samples(self.config.get("Discovery", "max_lag_s"), scene.sample_rate_hz),
            method_params=self.config.method_params(method),
        )

        self.logger.info("Discovery %s na scéně %s (alpha=%s, tau=%d)", method, scene.scene_id,
                         method_config.alpha, method_config.max_lag)
        if method == "pcmci":
            log_min_lag_notice()
        outcome = run_discovery(method, scene, method_config, self.config.get("Discovery", "seed"))
        self.view.show_outcome(outcome, scene.scene_id, method)

        if args.graph_out:
            write_edge_list(outcome.graph, args.graph_out)
            self.logger.info("Graf zapsán do %s", args.graph_out)
        return EXIT_OK
