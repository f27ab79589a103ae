"""
Tests for granger_model.py (PWGC and MVGC).
"""

# 🧩 Third-party libraries
import numpy as np
import pytest

# 🧠 First-party (project-specific)
from models.discovery_model import MethodConfig
from models.errors import ConfigError, InsufficientSamplesError
from models.granger_model import pwgc_discover, mvgc_discover, select_var_order
from tests.conftest import make_scene, simulate_var

TRUE_EDGE = frozenset({("c0.v", "c1.v")})


def _chain(n_samples: int, seed: int) -> np.ndarray:
    """x -> m -> y, each link at lag 1."""
    rng = np.random.default_rng(seed)
    noise = rng.standard_normal((n_samples + 20, 3))
    values = np.zeros_like(noise)
    for t in range(1, values.shape[0]):
        values[t, 0] = 0.5 * values[t - 1, 0] + noise[t, 0]
        values[t, 1] = 0.8 * values[t - 1, 0] + noise[t, 1]
        values[t, 2] = 0.8 * values[t - 1, 1] + noise[t, 2]
    return values[20:]


def test_pwgc_finds_the_single_driver(var_scene):
    outcome = pwgc_discover(var_scene, MethodConfig(alpha=0.001, max_lag=2))
    assert outcome.graph.edges == TRUE_EDGE
    assert outcome.graph.nodes == var_scene.variable_names
    assert len(outcome.diagnostics["p_values"]) == 6
    assert outcome.diagnostics["p_values"]["c0.v -> c1.v"] < 1e-6


def test_pwgc_alpha_one_gives_complete_graph(var_scene):
    outcome = pwgc_discover(var_scene, MethodConfig(alpha=1.0, max_lag=2))
    assert len(outcome.graph.edges) == 6


def test_pwgc_edges_grow_with_alpha(var_scene):
    strict = pwgc_discover(var_scene, MethodConfig(alpha=0.001, max_lag=3)).graph.edges
    loose = pwgc_discover(var_scene, MethodConfig(alpha=0.2, max_lag=3)).graph.edges
    assert strict <= loose


def test_pwgc_needs_enough_samples():
    scene = make_scene(simulate_var(25, seed=1))
    with pytest.raises(InsufficientSamplesError) as info:
        pwgc_discover(scene, MethodConfig(alpha=0.05, max_lag=10))
    assert "31" in str(info.value)


def test_mvgc_finds_the_single_driver(var_scene):
    outcome = mvgc_discover(var_scene, MethodConfig(alpha=0.001, max_lag=2))
    assert outcome.graph.edges == TRUE_EDGE
    assert outcome.lagged.max_lag == 2
    assert outcome.lagged.at_lag(1)[1, 0] == pytest.approx(0.8, abs=0.1)


def test_mvgc_separates_mediated_influence():
    values = _chain(1000, seed=11)
    scene = make_scene(values, names=("x", "m", "y"))
    mvgc_edges = mvgc_discover(scene, MethodConfig(alpha=0.01, max_lag=2)).graph.edges
    pwgc_edges = pwgc_discover(scene, MethodConfig(alpha=0.01, max_lag=2)).graph.edges
    assert {("x", "m"), ("m", "y")} <= mvgc_edges
    assert ("x", "y") not in mvgc_edges
    assert ("x", "y") in pwgc_edges


def test_mvgc_aic_order_selection(var_scene):
    outcome = mvgc_discover(var_scene, MethodConfig(alpha=0.001, max_lag=4,
                                                    method_params={"order_selection": "aic"}))
    assert outcome.diagnostics["var_order"] == outcome.lagged.max_lag
    assert set(outcome.diagnostics["aic"]) == {1, 2, 3, 4}
    assert outcome.graph.edges == TRUE_EDGE


def test_select_var_order_prefers_true_order():
    order, scores = select_var_order(simulate_var(2000, seed=5), 3)
    assert order == 1
    assert scores[1] == min(scores.values())


def test_mvgc_rejects_unknown_order_selection(var_scene):
    with pytest.raises(ConfigError):
        mvgc_discover(var_scene, MethodConfig(max_lag=2, method_params={"order_selection": "bic"}))


def test_granger_false_positive_rate_on_independent_series():
    pairwise = multivariate = tests = 0
    for seed in range(150):
        rng = np.random.default_rng(1000 + seed)
        shocks = rng.standard_normal((350, 3))
        values = np.zeros_like(shocks)
        for t in range(1, 350):
            values[t] = 0.5 * values[t - 1] + shocks[t]
        scene = make_scene(values[50:])
        config = MethodConfig(alpha=0.05, max_lag=2)
        pairwise += len(pwgc_discover(scene, config).graph.edges)
        multivariate += len(mvgc_discover(scene, config).graph.edges)
        tests += 6
    # each of the six directed pairs is a null test at level 0.05
    assert 0.025 <= pairwise / tests <= 0.08
    assert 0.025 <= multivariate / tests <= 0.08
