"""
📦 Module: granger_model.py

Pairwise and multivariate Granger causality.

Responsibilities:
    - PWGC: per ordered pair, nested F-test of "own lags" against "own lags + cause lags"
    - MVGC: full VAR per target, Wald chi-squared on each cause's lag block, BH correction
    - Optional AIC selection of the VAR order for MVGC
"""

# 🧱 Standard library
import math

# 🧩 Third-party libraries
import numpy as np
from scipy import linalg

# 🧠 First-party (project-specific)
from models.discovery_model import MethodConfig, DiscoveryOutcome, edge_key, require_samples
from models.errors import DegenerateDataError, ConfigError
from models.graph_model import SummaryGraph, LaggedCoefficients
from models.scene_model import TimeSeriesScene, lagged_matrix
from models.stats_kernels import ols_fit, f_test_nested, wald_chi2_block, bh_fdr
from utils.logger import get_logger

ORDER_SELECTIONS = ("fixed", "aic")


def pwgc_discover(scene: TimeSeriesScene, config: MethodConfig) -> DiscoveryOutcome:
    """
    📈 Pairwise Granger causality, no multiple-testing correction.

    Edge x -> y iff the F-test p-value of adding x's lags to y's autoregression is <= α.
    """
    logger = get_logger("PwgcDiscovery")
    tau = config.max_lag
    require_samples(scene, 2 * tau + 10, "pwgc")

    values = scene.centered()
    names = scene.variable_names
    n_obs = scene.n_samples - tau
    p_values: dict[str, float] = {}
    edges = set()

    for y in range(scene.n_variables):
        own_design, response = lagged_matrix(values, [y], [y], tau)
        rss_restricted = ols_fit(own_design, response[:, 0]).rss
        for x in range(scene.n_variables):
            if x == y:
                continue
            full_design, _ = lagged_matrix(values, [y], [y, x], tau)
            rss_full = ols_fit(full_design, response[:, 0]).rss
            result = f_test_nested(rss_restricted, rss_full, tau, 2 * tau, n_obs)
            p_values[edge_key(names[x], names[y])] = result.p_value
            if result.p_value <= config.alpha:
                edges.add((names[x], names[y]))

    logger.debug("PWGC %s: %d hran z %d testů", scene.scene_id, len(edges), len(p_values))
    return DiscoveryOutcome(SummaryGraph(names, frozenset(edges)), diagnostics={"p_values": p_values})


def _lag_columns(n_variables: int, max_lag: int, order: int) -> list[int]:
    return [v * max_lag + lag - 1 for v in range(n_variables) for lag in range(1, order + 1)]


def select_var_order(values: np.ndarray, max_lag: int) -> tuple[int, dict[int, float]]:
    """
    VAR order in 1..τ minimizing AIC = n·log det Σ̂ + 2·N²·p on the common sample t = τ..T−1.

    Returns:
        tuple[int, dict[int, float]]: Selected order and the AIC of every order tried.
    """
    n_variables = values.shape[1]
    all_variables = list(range(n_variables))
    design, response = lagged_matrix(values, all_variables, all_variables, max_lag)
    n_obs = design.shape[0]
    scores: dict[int, float] = {}
    for order in range(1, max_lag + 1):
        residuals = ols_fit(design[:, _lag_columns(n_variables, max_lag, order)], response).residuals
        sign, logdet = np.linalg.slogdet(residuals.T @ residuals / n_obs)
        scores[order] = n_obs * logdet + 2 * n_variables ** 2 * order if sign > 0 else math.inf
    best = min(scores, key=lambda order: (scores[order], order))
    return best, scores


def mvgc_discover(scene: TimeSeriesScene, config: MethodConfig) -> DiscoveryOutcome:
    """
    📊 Multivariate Granger causality.

    For each target the full VAR over every variable's lags is fitted once; each
    candidate cause's lag block gets a Wald chi-squared test and all N(N−1) p-values
    go through Benjamini-Hochberg at α.

    Method params:
        order_selection: "fixed" (order τ) or "aic".

    Raises:
        DegenerateDataError: Singular coefficient covariance, naming the collinear block.
    """
    logger = get_logger("MvgcDiscovery")
    tau = config.max_lag
    n_variables = scene.n_variables
    require_samples(scene, n_variables * tau + 10, "mvgc")

    selection = config.param("order_selection", "fixed", str).lower()
    if selection not in ORDER_SELECTIONS:
        raise ConfigError(f"order_selection must be one of {', '.join(ORDER_SELECTIONS)}, got '{selection}'")

    values = scene.centered()
    names = scene.variable_names
    all_variables = list(range(n_variables))
    full_design, responses = lagged_matrix(values, all_variables, all_variables, tau)

    diagnostics: dict = {}
    order = tau
    if selection == "aic":
        order, scores = select_var_order(values, tau)
        diagnostics["var_order"] = order
        diagnostics["aic"] = scores
        logger.info("MVGC %s: AIC zvolilo řád VAR %d z %d", scene.scene_id, order, tau)

    design = full_design[:, _lag_columns(n_variables, tau, order)]
    n_obs, n_params = design.shape
    if n_obs <= n_params:
        raise DegenerateDataError(f"VAR with {n_params} parameters needs more than {n_obs} rows")
    gram_inverse = linalg.pinvh(design.T @ design)

    coefficient_rows = np.zeros((n_variables, n_variables * order))
    keys: list[tuple[str, str]] = []
    p_list: list[float] = []
    for y in all_variables:
        fit = ols_fit(design, responses[:, y])
        coefficient_rows[y] = fit.coefficients
        covariance = (fit.rss / (n_obs - n_params)) * gram_inverse
        for x in all_variables:
            if x == y:
                continue
            block = range(x * order, (x + 1) * order)
            try:
                result = wald_chi2_block(fit.coefficients, covariance, block)
            except DegenerateDataError as e:
                raise DegenerateDataError(
                    f"Collinear lag block of '{names[x]}' when explaining '{names[y]}' in scene "
                    f"'{scene.scene_id}'") from e
            keys.append((names[x], names[y]))
            p_list.append(result.p_value)

    rejected = bh_fdr(p_list, config.alpha) if p_list else frozenset()
    edges = frozenset(keys[i] for i in rejected)
    diagnostics["p_values"] = {edge_key(*key): p for key, p in zip(keys, p_list)}

    logger.debug("MVGC %s: %d hran po BH korekci", scene.scene_id, len(edges))
    return DiscoveryOutcome(
        graph=SummaryGraph(names, edges),
        lagged=LaggedCoefficients.from_design_coefficients(coefficient_rows, order),
        diagnostics=diagnostics,
    )
