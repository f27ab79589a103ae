"""
📦 Module: config_checker.py

Utility for ensuring that an explicitly requested configuration file exists.
"""

# 🧱 Standard library
import sys
from pathlib import Path

# 🧠 First-party (project-specific)
from utils.logger import get_logger
from utils.messenger import Messenger


class ConfigFileChecker:
    """
    🧭 Checks for the presence of the configuration file.

    If the file is missing, logs the issue, notifies the user, and exits with status 1.
    """

    def __init__(self, config_path: Path | str):
        """
        Args:
            config_path (Path | str): Configuration file to verify.
        """
        self.config_path = Path(config_path)
        self.logger = get_logger("ConfigFileChecker")
        self.messenger = Messenger()

    def check_exists_or_exit(self):
        """
        Verifies that the configuration file exists; exits with status 1 otherwise.
        """
        if not self.config_path.is_file():
            self.logger.error("Konfigurační soubor chybí: %s", self.config_path)
            self.messenger.error(f"Configuration file not found: {self.config_path}", "ConfigFileChecker")
            sys.exit(1)
        else:
            self.logger.info("Konfigurační soubor nalezen: %s", self.config_path)
