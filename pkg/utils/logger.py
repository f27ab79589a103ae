"""
📦 Module: logger.py

Utility for initializing and configuring application-wide logging.

Responsibilities:
    - Provide rotating log handlers for both plain-text and JSON formats
    - Format logs with timestamps, levels, and logger names
    - Resolve the log directory (CONVOYCD_LOG_DIR overrides logs/ beside the launcher)

Used by every model, controller and view for consistent logging.
"""

# 🧱 Standard library
import json
import logging
import os
from pathlib import Path
from logging.handlers import RotatingFileHandler

# 🧠 First-party (project-specific)
from utils.resources import get_writable_path

LOG_DIR_ENV = "CONVOYCD_LOG_DIR"


# --- Custom JSON formatter ---
class JsonFormatter(logging.Formatter):
    """
    🧾 Custom formatter for logging in JSON format.

    Formats log records with timestamp, level, logger name, and message.
    """

    def format(self, record):  # noqa
        log_record = {
            "timestamp": self.formatTime(record),
            "level": record.levelname,
            "module": record.name,
            "message": record.getMessage()
        }
        if record.exc_info:
            log_record["exception"] = self.formatException(record.exc_info)
        return json.dumps(log_record, ensure_ascii=False)


def log_dir() -> Path:
    """
    Directory receiving app.txt and app.json.

    Returns:
        Path: $CONVOYCD_LOG_DIR when set, else logs/ beside the launched script.
    """
    override = os.environ.get(LOG_DIR_ENV)
    if override:
        return Path(override)
    return get_writable_path("logs")


# --- Logger initialization ---
def get_logger(name: str) -> logging.Logger:
    """
    Initializes and returns a logger with both TXT and JSON rotating handlers.

    Args:
        name (str): Name of the logger (usually the owning class).

    Returns:
        logging.Logger: Configured logger instance.
    """
    logger = logging.getLogger(name)
    if logger.hasHandlers():
        return logger

    directory = log_dir()
    # 🛡️ Ensure the existence of a folder
    directory.mkdir(parents=True, exist_ok=True)

    logger.setLevel(logging.DEBUG)

    # 📌 TXT log with rotation
    txt_handler = RotatingFileHandler(directory / "app.txt", maxBytes=100_000_000, backupCount=5, encoding="utf-8")
    txt_formatter = logging.Formatter("%(asctime)s | %(levelname)-7s | %(name)-23s | %(message)s")
    txt_handler.setFormatter(txt_formatter)
    logger.addHandler(txt_handler)

    # 📌 JSON log with rotation
    json_handler = RotatingFileHandler(directory / "app.json", maxBytes=100_000_000, backupCount=5, encoding="utf-8")
    json_handler.setFormatter(JsonFormatter())
    logger.addHandler(json_handler)

    return logger
