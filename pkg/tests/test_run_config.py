"""
Tests for run_config.py and validators.py.
"""

# 🧱 Standard library
import configparser
from pathlib import Path

# 🧩 Third-party libraries
import pytest

# 🧠 First-party (project-specific)
from models.convoy_model import SceneGenConfig
from models.errors import ConfigError
from models.scene_model import Variant
from utils.run_config import RunConfig, default_values, format_value, parse_like, method_section, REPORT_DIR_ENV
from utils.validators import parse_bool, parse_float_list, parse_range, parse_jobs, parse_optional_int

ROOT = Path(__file__).resolve().parent.parent


def _write(path, text):
    path.write_text(text, encoding="utf-8")
    return path


@pytest.mark.parametrize("shipped", ["settings/config.ini", "src/config.ini"])
def test_shipped_config_equals_defaults(shipped):
    loaded = RunConfig.load(ROOT / shipped)
    assert loaded.values == default_values()


def test_defaults_build_the_default_generator_config():
    assert RunConfig().scene_gen_config() == SceneGenConfig()


def test_file_values_are_typed(tmp_path):
    path = _write(tmp_path / "c.ini", "[Discovery]\nalpha = 0.01\n[Generation]\nvariant = velocity\n"
                                      "duration_range_s = 20, 30\n[Pcmci]\nmax_conds_dim = 3\n"
                                      "[Sweep]\nmethods = pwgc, random\npaper_grid = yes\n")
    config = RunConfig.load(path)
    assert config.get("Discovery", "alpha") == 0.01
    assert config.get("Generation", "variant") is Variant.VELOCITY
    assert config.get("Generation", "duration_range_s") == (20.0, 30.0)
    assert config.method_params("pcmci") == {"max_conds_dim": 3}
    assert config.get("Sweep", "methods") == ["pwgc", "random"]
    assert config.get("Sweep", "paper_grid") is True


@pytest.mark.parametrize("text", [
    "[Nowhere]\nx = 1\n",
    "[Discovery]\nbeta = 1\n",
    "[Discovery]\nalpha = high\n",
    "[Generation]\nduration_range_s = 30, 20\n",
    "not an ini file",
])
def test_bad_files_raise_config_error(tmp_path, text):
    with pytest.raises(ConfigError):
        RunConfig.load(_write(tmp_path / "bad.ini", text))


def test_method_sections_pass_unknown_keys_through(tmp_path):
    config = RunConfig.load(_write(tmp_path / "c.ini", "[Dynotears]\nwarm_start = on\n"))
    assert config.method_params("dynotears")["warm_start"] == "on"
    assert method_section("mvgc") == "Mvgc"


def test_flags_override_file_and_environment_overrides_flags(tmp_path, monkeypatch):
    config = RunConfig.load(_write(tmp_path / "c.ini", "[Discovery]\nalpha = 0.01\n[Paths]\nreport_dir = a\n"))
    config.override("Discovery", "alpha", "0.1")
    config.override("Discovery", "seed", None)
    config.override("Paths", "report_dir", "b")
    assert config.get("Discovery", "alpha") == 0.1
    assert config.get("Discovery", "seed") == 0

    monkeypatch.setenv(REPORT_DIR_ENV, str(tmp_path / "env"))
    config.apply_environment()
    assert config.get("Paths", "report_dir") == str(tmp_path / "env")


def test_fingerprint_ignores_location_and_parallelism():
    base = RunConfig()
    moved = RunConfig()
    moved.override("Paths", "report_dir", "/elsewhere")
    moved.override("Sweep", "jobs", 8)
    moved.override("Generation", "jobs", 4)
    assert base.fingerprint("1.0.0") == moved.fingerprint("1.0.0")
    assert len(base.fingerprint("1.0.0")) == 16

    changed = RunConfig()
    changed.override("Discovery", "alpha", 0.01)
    assert changed.fingerprint("1.0.0") != base.fingerprint("1.0.0")
    assert base.fingerprint("1.0.1") != base.fingerprint("1.0.0")


def test_run_config_file_reloads_to_the_same_fingerprint(tmp_path):
    config = RunConfig()
    config.override("Sweep", "alphas", "0.01, 0.05")
    path = config.write_run_config(tmp_path / "run_config.ini", "1.0.0", "sweep")

    written = configparser.ConfigParser()
    written.optionxform = str
    written.read(path, encoding="utf-8")
    assert written["Run"]["fingerprint"] == config.fingerprint("1.0.0")
    assert "report_dir" not in written["Paths"]
    assert RunConfig.load(path).fingerprint("1.0.0") == config.fingerprint("1.0.0")


def test_canonical_text_is_sorted():
    sections = [line for line in RunConfig().canonical_text().splitlines() if line.startswith("[")]
    assert sections == sorted(sections)


def test_format_value_and_parse_like_agree():
    for section, values in default_values().items():
        for key, value in values.items():
            assert parse_like(value, format_value(value), f"{section}.{key}") == value


def test_validators():
    assert parse_bool("On") is True and parse_bool("0") is False
    assert parse_float_list("0.001, 0.01") == [0.001, 0.01]
    assert parse_range("1,2") == (1.0, 2.0)
    assert parse_optional_int("  ") is None
    assert parse_jobs("-1") == -1
    for parser, raw in ((parse_bool, "maybe"), (parse_jobs, "0"), (parse_range, "1"), (parse_float_list, ",")):
        with pytest.raises(ConfigError):
            parser(raw)
