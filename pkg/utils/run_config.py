"""
📦 Module: run_config.py

Layered run configuration: built-in defaults < INI file < command-line flags < environment.

Responsibilities:
    - Hold the built-in defaults of every section (generation, discovery, methods, sweep, paths)
    - Read INI files with configparser and convert values to the defaults' types
    - Produce the canonical text form and its fingerprint for report traceability
    - Build SceneGenConfig and per-method parameter dicts from the merged values
"""

# 🧱 Standard library
import configparser
import hashlib
import io
import os
from dataclasses import fields
from pathlib import Path
from typing import Any

# 🧠 First-party (project-specific)
from models.convoy_model import SceneGenConfig
from models.dynotears_model import DEFAULT_LAMBDA_A, DEFAULT_THRESHOLD_A, DEFAULT_MAX_ITER, DEFAULT_TOL
from models.errors import ConfigError
from models.method_registry import METHOD_IDS
from models.random_model import DEFAULT_EDGE_LIKELIHOOD
from models.scene_model import Variant
from utils.logger import get_logger
from utils.validators import (parse_bool, parse_int, parse_optional_int, parse_float, parse_str_list,
                              parse_float_list, parse_range)

REPORT_DIR_ENV = "CONVOYCD_REPORT_DIR"
RUN_CONFIG_FILE = "run_config.ini"
DEFAULT_ALPHAS = [0.001, 0.005, 0.01, 0.03, 0.05, 0.1]
DEFAULT_MAX_LAGS_S = [2.5, 3.6, 4.9]

# 💡 Location and parallelism never change results
NON_CANONICAL = {("Paths", "report_dir"), ("Sweep", "jobs"), ("Generation", "jobs")}

# 💡 Sections whose unknown keys are passed through to the method untouched
METHOD_SECTIONS = {method: method.capitalize() for method in METHOD_IDS}


def method_section(method: str) -> str:
    """INI section holding a method's parameters ("mvgc" → "Mvgc")."""
    return METHOD_SECTIONS.get(method, method.capitalize())


def _generation_defaults() -> dict[str, Any]:
    defaults = SceneGenConfig()
    values: dict[str, Any] = {f.name: getattr(defaults, f.name) for f in fields(SceneGenConfig)}
    values["count"] = 100
    values["jobs"] = 1
    return values


def default_values() -> dict[str, dict[str, Any]]:
    """
    Built-in defaults as typed Python values, one dict per INI section.

    A default of None marks an optional integer.
    """
    sections: dict[str, dict[str, Any]] = {
        "Generation": _generation_defaults(),
        "Discovery": {"alpha": 0.05, "max_lag_s": 2.5, "sample_rate_hz": 10.0, "seed": 0},
        "Pwgc": {},
        "Mvgc": {"order_selection": "fixed"},
        "Varlingam": {},
        "Timino": {},
        "Pcmci": {"max_conds_dim": None},
        "Dynotears": {"lambda_a": DEFAULT_LAMBDA_A, "threshold_a": DEFAULT_THRESHOLD_A,
                      "max_iter": DEFAULT_MAX_ITER, "tol": DEFAULT_TOL},
        "Random": {"edge_likelihood": DEFAULT_EDGE_LIKELIHOOD},
        "Sweep": {
            "methods": list(METHOD_IDS),
            "variants": [variant.value for variant in Variant],
            "alphas": list(DEFAULT_ALPHAS),
            "max_lags_s": list(DEFAULT_MAX_LAGS_S),
            "paper_grid": False,
            "fixed_alpha": 0.05,
            "fixed_max_lag_s": 2.5,
            "jobs": 1,
            "report_format": "csv",
            "save_graphs": False,
            "record_runtime": True,
        },
        "Paths": {"report_dir": "reports"},
    }
    return sections


def format_value(value: Any) -> str:
    """INI text of a typed value: floats via repr, sequences comma-joined, booleans lower-case."""
    if value is None:
        return ""
    if isinstance(value, Variant):
        return value.value
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, float):
        return repr(value)
    if isinstance(value, (list, tuple)):
        return ", ".join(format_value(item) for item in value)
    return str(value)


def parse_like(default: Any, raw: str, key: str) -> Any:
    """
    Converts INI text to the type of the default value.

    Raises:
        ConfigError: Text does not fit the type.
    """
    if default is None:
        return parse_optional_int(raw, key)
    if isinstance(default, Variant):
        try:
            return Variant.parse(raw)
        except ValueError as e:
            raise ConfigError(f"Invalid value for '{key}': {e}") from None
    if isinstance(default, bool):
        return parse_bool(raw, key)
    if isinstance(default, int):
        return parse_int(raw, key)
    if isinstance(default, float):
        return parse_float(raw, key)
    if isinstance(default, tuple):
        return parse_range(raw, key)
    if isinstance(default, list):
        if default and isinstance(default[0], float):
            return parse_float_list(raw, key)
        return parse_str_list(raw, key)
    return str(raw).strip()


class RunConfig:
    """
    ⚙️ Merged configuration of one command run.

    Values are stored typed; unknown keys are rejected except inside method sections,
    where they are kept as text and handed to the method.
    """

    def __init__(self, values: dict[str, dict[str, Any]] | None = None):
        self.values = values if values is not None else default_values()
        self.source: Path | None = None
        self.logger = get_logger("RunConfig")

    # --- Loading ---
    @classmethod
    def load(cls, path: Path | str | None = None) -> "RunConfig":
        """
        Defaults overlaid with an INI file when given.

        Raises:
            ConfigError: Unreadable file, unknown section or key, or a value of the wrong type.
        """
        config = cls()
        if path is None:
            return config

        parser = configparser.ConfigParser()
        parser.optionxform = str  # 💡 Ensures letter size is maintained
        try:
            with open(path, encoding="utf-8") as f:
                parser.read_file(f)
        except (OSError, configparser.Error) as e:
            raise ConfigError(f"Cannot read configuration file {path}: {e}") from e

        for section in parser.sections():
            if section == "Run":
                continue
            for key, raw in parser.items(section, raw=True):
                config.set_text(section, key, raw)
        config.source = Path(path)
        config.logger.info("Načtena konfigurace: %s", path)
        return config

    def set_text(self, section: str, key: str, raw: str) -> None:
        """
        Stores an INI text value, converted to the default's type.

        Raises:
            ConfigError: Unknown section, unknown key outside method sections, or bad value.
        """
        if section not in self.values:
            raise ConfigError(f"Unknown configuration section [{section}]")
        defaults = default_values()[section]
        name = f"{section}.{key}"
        if key in defaults:
            self.values[section][key] = parse_like(defaults[key], raw, name)
        elif section in METHOD_SECTIONS.values():
            self.values[section][key] = str(raw).strip()
        else:
            raise ConfigError(f"Unknown configuration key '{key}' in [{section}]")

    def override(self, section: str, key: str, value: Any) -> None:
        """
        Applies a command-line value; None means "flag not given".

        Text values are parsed like INI text, typed values are stored as they are.
        """
        if value is None:
            return
        if isinstance(value, str):
            self.set_text(section, key, value)
        else:
            if section not in self.values:
                raise ConfigError(f"Unknown configuration section [{section}]")
            self.values[section][key] = value

    def apply_environment(self) -> None:
        """CONVOYCD_REPORT_DIR replaces [Paths] report_dir when set."""
        report_dir = os.environ.get(REPORT_DIR_ENV)
        if report_dir:
            self.values["Paths"]["report_dir"] = report_dir
            self.logger.info("Adresář reportů převzat z %s: %s", REPORT_DIR_ENV, report_dir)

    # --- Access ---
    def get(self, section: str, key: str) -> Any:
        try:
            return self.values[section][key]
        except KeyError:
            raise ConfigError(f"Missing configuration value {section}.{key}") from None

    def scene_gen_config(self) -> SceneGenConfig:
        """
        Raises:
            ConfigError: Generation values violate SceneGenConfig's constraints.
        """
        section = self.values["Generation"]
        return SceneGenConfig(**{f.name: section[f.name] for f in fields(SceneGenConfig)})

    def method_params(self, method: str) -> dict[str, Any]:
        """Parameters handed to MethodConfig for `method`."""
        return dict(self.values.get(method_section(method), {}))

    def all_method_params(self) -> dict[str, dict[str, Any]]:
        return {method: self.method_params(method) for method in METHOD_IDS}

    # --- Canonical form ---
    def to_parser(self, canonical: bool = False) -> configparser.ConfigParser:
        """ConfigParser holding the values; `canonical` sorts everything and drops run-location keys."""
        parser = configparser.ConfigParser()
        parser.optionxform = str
        sections = sorted(self.values) if canonical else list(self.values)
        for section in sections:
            keys = sorted(self.values[section]) if canonical else list(self.values[section])
            parser[section] = {
                key: format_value(self.values[section][key])
                for key in keys if not (canonical and (section, key) in NON_CANONICAL)
            }
        return parser

    def canonical_text(self) -> str:
        """Sorted INI text of every value that influences results."""
        buffer = io.StringIO()
        self.to_parser(canonical=True).write(buffer)
        return buffer.getvalue()

    def fingerprint(self, version: str) -> str:
        """First 16 hex digits of SHA-256 over the canonical text and the version."""
        digest = hashlib.sha256((self.canonical_text() + f"version = {version}\n").encode("utf-8"))
        return digest.hexdigest()[:16]

    def write_run_config(self, path: Path | str, version: str, command: str) -> Path:
        """
        Writes canonical values plus a [Run] section with command, version and fingerprint.
        """
        parser = self.to_parser(canonical=True)
        parser["Run"] = {"command": command, "version": version, "fingerprint": self.fingerprint(version)}
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            parser.write(f)
        return path

    def write_defaults(self, path: Path | str) -> Path:
        """Writes every value in section order, e.g. for the shipped config.ini."""
        path = Path(path)
        with open(path, "w", encoding="utf-8", newline="\n") as f:
            self.to_parser().write(f)
        return path
