"""
📦 Module: system_info.py

Logs basic system information at application startup.

Responsibilities:
    - Retrieve the computer name and Python version
    - Log versions of the numerical libraries the results depend on
"""

# 🧱 Standard library
import platform

# 🧩 Third-party libraries
import joblib
import numpy
import pandas
import scipy

# 🧠 First-party
from utils.logger import get_logger


def library_versions() -> dict[str, str]:
    """Versions of the interpreter and of the numerical stack."""
    return {
        "python": platform.python_version(),
        "numpy": numpy.__version__,
        "scipy": scipy.__version__,
        "pandas": pandas.__version__,
        "joblib": joblib.__version__,
    }


def log_system_info(version: str):
    """
    Logs application version, computer name and library versions.

    Args:
        version (str): Current version of the application.
    """
    logger = get_logger("SystemInfo")

    # 📌 PC Name
    try:
        computer_name = platform.node() or "Neznámý"
    except OSError:
        computer_name = "Neznámý"

    versions = " | ".join(f"{name} {value}" for name, value in library_versions().items())
    logger.info("Aplikace v%s spuštěna | PC: %s | %s", version, computer_name, versions)
