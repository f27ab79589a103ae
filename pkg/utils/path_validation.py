"""
📦 Module: path_validation.py

Checks that input paths named by a command exist before any work starts.

Responsibilities:
    - Check existence of each named file or directory
    - Log missing entries and notify the user via Messenger
"""

# 🧱 Standard library
from pathlib import Path

# 🧠 First-party
from utils.logger import get_logger
from utils.messenger import Messenger


class PathValidator:
    """
    🧭 Validates the input paths of one command.

    Missing entries are collected in `missing` as (key, path) pairs.
    """

    def __init__(self, paths: dict[str, Path | str], messenger: Messenger | None = None):
        """
        Args:
            paths (dict[str, Path | str]): Label → path to check, e.g. {"scene_dir": "synth/"}.
            messenger (Messenger, optional): Notice sink; stderr by default.
        """
        self.paths = {key: Path(value) for key, value in paths.items()}
        self.logger = get_logger("PathValidator")
        self.messenger = messenger or Messenger()
        self.missing: list[tuple[str, Path]] = []

    def validate(self) -> bool:
        """
        Validates the existence of all paths.

        Returns:
            bool: True if all paths exist, False otherwise.
        """
        self.missing = []
        for key, path in self.paths.items():
            if not path.exists():
                self.logger.warning("Cesta nebo soubor neexistuje: %s → %s", key, path)
                self.missing.append((key, path))

        if self.missing:
            listed = ", ".join(f"{key}={path}" for key, path in self.missing)
            self.messenger.error(f"Missing input path(s): {listed}", "Path Validation")
            return False

        self.logger.info("Všechny vstupní cesty existují.")
        return True
