"""
📦 Module: dynotears_model.py

DYNOTEARS restricted to lagged effects.

Responsibilities:
    - Minimize squared reconstruction loss plus an elementwise ℓ1 penalty on the lag matrices
    - Solve target by target with capped cyclic coordinate descent
    - Threshold the coefficients into a summary graph and report convergence
"""

# 🧱 Standard library
from dataclasses import dataclass

# 🧩 Third-party libraries
import numpy as np

# 🧠 First-party (project-specific)
from models.discovery_model import MethodConfig, DiscoveryOutcome, edge_key, require_samples
from models.graph_model import LaggedCoefficients
from models.scene_model import TimeSeriesScene, lagged_matrix
from models.stats_kernels import coordinate_descent
from utils.logger import get_logger

DEFAULT_LAMBDA_A = 0.05
DEFAULT_THRESHOLD_A = 0.01
DEFAULT_MAX_ITER = 100
DEFAULT_TOL = 1e-10


@dataclass(frozen=True, eq=False)
class DynotearsFit:
    """
    📉 Penalized lag coefficients and the objective after every sweep.

    Args:
        coefficients (LaggedCoefficients): Estimated A_1..A_τ.
        objective_trace (tuple[float, ...]): Total objective before the first sweep and after each sweep.
        converged (bool): Every target met the tolerance within the sweep cap.
        iterations (int): Largest sweep count over targets.
    """
    coefficients: LaggedCoefficients
    objective_trace: tuple[float, ...]
    converged: bool
    iterations: int


def dynotears_fit(values: np.ndarray, max_lag: int, lambda_a: float = DEFAULT_LAMBDA_A,
                  max_iter: int = DEFAULT_MAX_ITER, tol: float = DEFAULT_TOL) -> DynotearsFit:
    """
    Minimizes (1 / 2n)·‖Y − Σ X_{t−l} A_lᵀ‖² + λ_A·Σ|a| with n = T − τ.

    The lagged design and the response are centered column by column, so an exact linear
    recursion stays exact after centering. The objective separates over targets; each target
    runs its own coordinate descent and the per-sweep totals are summed, a finished target
    contributing its final value.
    """
    n_variables = values.shape[1]
    all_variables = list(range(n_variables))
    design, responses = lagged_matrix(np.asarray(values, dtype=np.float64), all_variables, all_variables, max_lag)
    design = design - design.mean(axis=0)
    responses = responses - responses.mean(axis=0)
    n_obs = design.shape[0]

    # scaling the loss by n is the same as scaling the penalty by n
    penalties = np.full(design.shape[1], lambda_a * n_obs)
    rows = np.zeros((n_variables, design.shape[1]))
    traces = []
    converged = True
    iterations = 0
    for target in all_variables:
        result = coordinate_descent(design, responses[:, target], penalties, max_iter=max_iter,
                                    objective_tol=tol, coefficient_tol=0.0)
        rows[target] = result.coefficients
        traces.append(np.asarray(result.objective_trace) / n_obs)
        converged = converged and result.converged
        iterations = max(iterations, result.iterations)

    length = max(len(trace) for trace in traces)
    padded = [np.concatenate([trace, np.full(length - len(trace), trace[-1])]) for trace in traces]
    total = np.sum(padded, axis=0)
    return DynotearsFit(
        coefficients=LaggedCoefficients.from_design_coefficients(rows, max_lag),
        objective_trace=tuple(float(v) for v in total),
        converged=converged,
        iterations=iterations,
    )


def dynotears_discover(scene: TimeSeriesScene, config: MethodConfig) -> DiscoveryOutcome:
    """
    🧮 DYNOTEARS on lagged effects only; α is not used.

    Method params:
        lambda_a (0.05), threshold_a (0.01), max_iter (100), tol (1e-10).

    Edge x -> y iff max over lags of |a^{y,x}| exceeds threshold_a. Hitting the sweep cap
    keeps the last (best) iterate and sets `converged` to False in the diagnostics.
    """
    logger = get_logger("DynotearsDiscovery")
    tau = config.max_lag
    require_samples(scene, tau + 10, "dynotears")

    lambda_a = config.param("lambda_a", DEFAULT_LAMBDA_A, float)
    threshold = config.param("threshold_a", DEFAULT_THRESHOLD_A, float)
    max_iter = config.param("max_iter", DEFAULT_MAX_ITER, int)
    tol = config.param("tol", DEFAULT_TOL, float)

    fit = dynotears_fit(scene.centered(), tau, lambda_a, max_iter, tol)
    if not fit.converged:
        logger.warning("DYNOTEARS %s: nedokonvergováno za %d iterací, použita poslední iterace",
                       scene.scene_id, max_iter)

    strength = fit.coefficients.strength()
    names = scene.variable_names
    return DiscoveryOutcome(
        graph=fit.coefficients.to_graph(names, threshold),
        lagged=fit.coefficients,
        diagnostics={
            "converged": fit.converged,
            "iterations": fit.iterations,
            "objective": fit.objective_trace[-1],
            "scores": {edge_key(names[j], names[i]): float(strength[i, j])
                       for i in range(len(names)) for j in range(len(names)) if i != j},
        },
    )
