"""
📦 Module: validators.py

Parses and validates the text values that arrive from config files and command-line flags.

Every parser raises ConfigError naming the offending key, so a bad value is reported
the same way whether it came from config.ini or from a flag.
"""

# 🧱 Standard library
import math

# 🧠 First-party
from models.errors import ConfigError

TRUE_WORDS = ("1", "true", "yes", "on")
FALSE_WORDS = ("0", "false", "no", "off")


def _fail(key: str, raw, expected: str) -> ConfigError:
    return ConfigError(f"Invalid value for '{key}': {raw!r} (expected {expected})")


def parse_bool(raw: str, key: str = "value") -> bool:
    """Accepts true/false, yes/no, on/off and 1/0 in any case."""
    cleaned = str(raw).strip().lower()
    if cleaned in TRUE_WORDS:
        return True
    if cleaned in FALSE_WORDS:
        return False
    raise _fail(key, raw, "a boolean")


def parse_int(raw: str, key: str = "value") -> int:
    try:
        return int(str(raw).strip())
    except ValueError:
        raise _fail(key, raw, "an integer") from None


def parse_optional_int(raw: str, key: str = "value") -> int | None:
    """Empty text means "not set"."""
    if str(raw).strip() == "":
        return None
    return parse_int(raw, key)


def parse_float(raw: str, key: str = "value") -> float:
    try:
        value = float(str(raw).strip())
    except ValueError:
        raise _fail(key, raw, "a number") from None
    if not math.isfinite(value):
        raise _fail(key, raw, "a finite number")
    return value


def parse_str_list(raw: str, key: str = "value") -> list[str]:
    """
    Comma-separated identifiers; blanks are dropped.

    Raises:
        ConfigError: Nothing left after splitting.
    """
    items = [item.strip() for item in str(raw).split(",") if item.strip()]
    if not items:
        raise _fail(key, raw, "a non-empty comma-separated list")
    return items


def parse_float_list(raw: str, key: str = "value") -> list[float]:
    """Comma-separated numbers, e.g. "0.01, 0.05"."""
    return [parse_float(item, key) for item in parse_str_list(raw, key)]


def parse_range(raw: str, key: str = "value") -> tuple[float, float]:
    """
    "low, high" pair.

    Raises:
        ConfigError: Not exactly two numbers, or low > high.
    """
    values = parse_float_list(raw, key)
    if len(values) != 2 or values[0] > values[1]:
        raise _fail(key, raw, "'low, high' with low <= high")
    return values[0], values[1]


def parse_jobs(raw: str, key: str = "jobs") -> int:
    """Worker count: a positive integer or -1 for every CPU."""
    jobs = parse_int(raw, key)
    if jobs == 0 or jobs < -1:
        raise _fail(key, raw, "a positive integer or -1")
    return jobs
