"""
Shared pytest fixtures: isolated log directory, seeded data and small generated scenes.
"""

# 🧱 Standard library
import os
import tempfile

# 💡 Must happen before any project module creates a logger
os.environ.setdefault("CONVOYCD_LOG_DIR", tempfile.mkdtemp(prefix="convoycd-logs-"))

# 🧩 Third-party libraries
import numpy as np  # noqa: E402
import pytest  # noqa: E402

# 🧠 First-party (project-specific)
from models.convoy_model import SceneGenConfig  # noqa: E402
from models.scene_model import TimeSeriesScene, Variant  # noqa: E402

VAR_NAMES = ("c0.v", "c1.v", "i0.v")


def simulate_var(n_samples: int, seed: int, coupling: float = 0.8, noise: str = "gauss") -> np.ndarray:
    """
    Three-variable VAR(1): c0 drives c1 at lag 1, i0 is independent.
    """
    rng = np.random.default_rng(seed)
    burn_in = 50
    total = n_samples + burn_in
    if noise == "uniform":
        shocks = rng.uniform(-np.sqrt(3.0), np.sqrt(3.0), size=(total, 3))
    else:
        shocks = rng.standard_normal((total, 3))
    x = np.zeros((total, 3))
    for t in range(1, total):
        x[t, 0] = 0.5 * x[t - 1, 0] + shocks[t, 0]
        x[t, 1] = 0.4 * x[t - 1, 1] + coupling * x[t - 1, 0] + shocks[t, 1]
        x[t, 2] = 0.5 * x[t - 1, 2] + shocks[t, 2]
    return x[burn_in:]


def make_scene(values: np.ndarray, scene_id: str = "scene", names=VAR_NAMES, rate: float = 10.0) -> TimeSeriesScene:
    return TimeSeriesScene(scene_id, tuple(names), rate, values)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def var_scene():
    """500-sample VAR scene with the single true edge c0.v -> c1.v."""
    return make_scene(simulate_var(500, seed=7), "var")


@pytest.fixture
def small_gen_config():
    """Short scenes with few actions, fast enough for batch tests."""
    return SceneGenConfig(variant=Variant.VELOCITY, duration_range_s=(20.0, 25.0),
                          convoy_actions=4, independent_actions=4, seed=3)
