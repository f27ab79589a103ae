"""
Tests for dynotears_model.py.
"""

# 🧩 Third-party libraries
import numpy as np

# 🧠 First-party (project-specific)
from models.discovery_model import MethodConfig
from models.dynotears_model import dynotears_fit, dynotears_discover
from tests.conftest import make_scene

ROTATION_A1 = np.array([
    [0.8, -0.8, 0.0, 0.0],
    [0.8, 0.8, 0.0, 0.0],
    [0.0, 0.0, -0.8, 0.8],
    [0.0, 0.0, -0.8, -0.8],
])
NAMES = ("a", "b", "c", "d")


def _noiseless_var(n_samples: int) -> np.ndarray:
    values = np.zeros((n_samples, 4))
    values[0] = [1.0, 0.5, -0.3, 1.0]
    for t in range(1, n_samples):
        values[t] = ROTATION_A1 @ values[t - 1]
    return values


def test_dynotears_recovers_noiseless_var():
    values = _noiseless_var(200)
    fit = dynotears_fit(values, 1, max_iter=1000)
    np.testing.assert_allclose(fit.coefficients.at_lag(1), ROTATION_A1, atol=0.02)

    outcome = dynotears_discover(make_scene(values, names=NAMES),
                                 MethodConfig(max_lag=1, method_params={"max_iter": 1000}))
    expected = {(NAMES[j], NAMES[i]) for i in range(4) for j in range(4) if i != j and ROTATION_A1[i, j] != 0.0}
    assert outcome.graph.edges == frozenset(expected)


def test_dynotears_objective_never_increases(var_scene):
    fit = dynotears_fit(var_scene.centered(), 2)
    trace = np.array(fit.objective_trace)
    assert np.all(np.diff(trace) <= 1e-12 * np.abs(trace[:-1]))


def test_dynotears_all_zero_scene_gives_empty_graph():
    outcome = dynotears_discover(make_scene(np.zeros((50, 3))), MethodConfig(max_lag=2))
    assert outcome.graph.edges == frozenset()
    assert np.all(outcome.lagged.matrices == 0.0)
    assert outcome.diagnostics["converged"] is True


def test_dynotears_large_penalty_shrinks_everything(var_scene):
    outcome = dynotears_discover(var_scene, MethodConfig(max_lag=2, method_params={"lambda_a": 1e6}))
    assert outcome.graph.edges == frozenset()


def test_dynotears_ignores_alpha(var_scene):
    low = dynotears_discover(var_scene, MethodConfig(alpha=0.001, max_lag=2))
    high = dynotears_discover(var_scene, MethodConfig(alpha=0.5, max_lag=2))
    assert low.graph == high.graph
    assert ("c0.v", "c1.v") in low.graph.edges


def test_dynotears_flags_iteration_cap(var_scene):
    outcome = dynotears_discover(var_scene, MethodConfig(max_lag=2, method_params={"max_iter": 1, "tol": 0.0}))
    assert outcome.diagnostics["converged"] is False
    assert outcome.diagnostics["iterations"] == 1
