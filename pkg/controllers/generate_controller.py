"""
📦 Module: generate_controller.py

Handles the `generate` command: synthetic convoy batches.

Responsibilities:
    - Merge generation flags into the run configuration
    - Generate the batch, write run_config.ini beside it and print the manifest path
"""

# 🧱 Standard library
import argparse
from dataclasses import fields
from pathlib import Path

# 🧠 First-party (project-specific)
from controllers.base_controller import BaseController, EXIT_OK
from models.convoy_model import SceneGenConfig, generate_batch
from utils.run_config import RUN_CONFIG_FILE
from utils.validators import parse_jobs

# 💡 Generation keys settable from the command line, besides count/jobs
GENERATION_FLAGS = tuple(f.name for f in fields(SceneGenConfig))


class GenerateController(BaseController):
    """
    🚗 Writes `count` scene CSVs plus manifest.ini into the output directory.
    """
    title = "Generate"

    def _run(self, args: argparse.Namespace) -> int:
        for key in GENERATION_FLAGS + ("count",):
            self.config.override("Generation", key, getattr(args, key, None))
        if args.jobs is not None:
            self.config.override("Generation", "jobs", parse_jobs(args.jobs))

        scene_config = self.config.scene_gen_config()
        count = self.config.get("Generation", "count")
        jobs = self.config.get("Generation", "jobs")
        out_dir = Path(args.out_dir)

        self.logger.info("Generuji %d scén (%s, seed %d) do %s", count, scene_config.variant.value,
                         scene_config.seed, out_dir)
        generate_batch(scene_config, count, out_dir, jobs=jobs)
        self.config.write_run_config(out_dir / RUN_CONFIG_FILE, self.version, "generate")
        self.view.show_path("manifest", out_dir / "manifest.ini")
        return EXIT_OK
