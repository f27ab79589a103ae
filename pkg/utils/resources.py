"""
📦 Module: resources.py

Path helpers shared by the launcher, the config layer and the logger.

Responsibilities:
- Provide writable paths beside the launched script (logs, default config)
- Resolve config-defined paths (absolute or relative to the working directory)
"""

# 🧱 Standard library
import sys
from pathlib import Path


def get_writable_path(relative_path: str) -> Path:
    """
    Returns writable path relative to the launched script's location.
    Used for logs and the default config file.
    """
    return Path(sys.argv[0]).resolve().parent / relative_path


def get_config_path(filename: str = "config.ini") -> Path:
    """
    Returns absolute path to the configuration file.
    Defaults to 'config.ini' beside the launched script.
    """
    return get_writable_path(filename)


def resolve_path(config_value: str | Path) -> Path:
    """
    Resolves a config-defined path; relative values are taken from the working directory.
    """
    path = Path(config_value).expanduser()
    if path.is_absolute():
        return path
    return Path.cwd() / path
