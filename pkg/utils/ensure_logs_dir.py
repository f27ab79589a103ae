"""
📦 Module: ensure_logs_dir.py

Ensures that the logs directory exists and is writable.

Responsibilities:
    - Resolve the log directory (environment override or logs/ beside the launcher)
    - Create the directory if it doesn't exist
"""

# 🧱 Standard library
from pathlib import Path

# 🧠 First-party (project-specific)
from utils.logger import log_dir


def ensure_logs_dir() -> Path:
    """
    Ensures that the logs directory exists. If not, creates it.

    Returns:
        Path: The log directory.
    """
    logs_path = log_dir()
    logs_path.mkdir(parents=True, exist_ok=True)
    return logs_path
