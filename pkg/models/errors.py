"""
📦 Module: errors.py

Domain exceptions shared by every ConvoyCD layer.

Responsibilities:
    - Provide one base class so controllers can catch every domain failure at once
    - Carry the structured context (row, required sample count, best iterate) callers need
"""

# 🧱 Standard library
from pathlib import Path


class CausalToolkitError(Exception):
    """
    🧯 Base class of every error raised by the toolkit's models.
    """


class ConfigError(CausalToolkitError):
    """
    ⚙️ Invalid generation, method or run configuration.
    """


class UnknownMethodError(ConfigError):
    """
    ❓ Method identifier outside the registry.

    Args:
        method (str): The rejected identifier.
        valid (tuple[str, ...]): Identifiers the registry accepts.
    """

    def __init__(self, method: str, valid: tuple[str, ...]):
        self.method = method
        self.valid = valid
        super().__init__(f"Unknown method '{method}'. Valid identifiers: {', '.join(valid)}")


class SceneFormatError(CausalToolkitError):
    """
    📄 Scene CSV that cannot be parsed.

    Args:
        message (str): What went wrong.
        path (Path | None): Offending file.
        row (int | None): 1-based line number in the file, header is line 1.
    """

    def __init__(self, message: str, path: Path | None = None, row: int | None = None):
        self.path = path
        self.row = row
        location = ""
        if path is not None:
            location = f"{path}"
            if row is not None:
                location += f", row {row}"
            location += ": "
        super().__init__(f"{location}{message}")


class EmptySceneDirectoryError(CausalToolkitError):
    """
    📂 Directory that holds no scene files.
    """

    def __init__(self, directory: Path | str):
        self.directory = Path(directory)
        super().__init__(f"No scene CSV files found in {self.directory}")


class InsufficientSamplesError(CausalToolkitError):
    """
    📉 Too few time steps for the requested fit.

    Args:
        required (int): Smallest admissible sample count.
        actual (int): Sample count received.
        context (str): Which procedure asked.
    """

    def __init__(self, required: int, actual: int, context: str = ""):
        self.required = required
        self.actual = actual
        prefix = f"{context}: " if context else ""
        super().__init__(f"{prefix}needs at least {required} samples, got {actual}")


class DegenerateDataError(CausalToolkitError):
    """
    🕳️ Zero-variance series, singular covariance block or similar numerical dead end.
    """

    def __init__(self, detail: str):
        self.detail = detail
        super().__init__(detail)


class ConvergenceError(CausalToolkitError):
    """
    🔁 Iterative solver hit its iteration cap.

    Args:
        message (str): Description of the solver that gave up.
        best_iterate: Best solution seen before giving up.
        iterations (int): Sweeps performed.
    """

    def __init__(self, message: str, best_iterate=None, iterations: int = 0):
        self.best_iterate = best_iterate
        self.iterations = iterations
        super().__init__(message)


class GraphError(CausalToolkitError):
    """
    🕸️ Graph with endpoints outside its node list, or graphs over different nodes.
    """
