"""
📦 Module: lingam_model.py

VarLiNGAM: VAR fit, DirectLiNGAM ordering of the innovations, adaptive-lasso pruning.

Responsibilities:
    - Order residual series by pairwise non-Gaussian independence (log-cosh entropy contrast)
    - Estimate the instantaneous matrix B₀ along that order and correct the lag matrices
    - Prune each target's lagged coefficients with a BIC-selected adaptive lasso
    - Emit a summary graph from the surviving lagged coefficients only
"""

# 🧱 Standard library
import math

# 🧩 Third-party libraries
import numpy as np
from scipy import stats

# 🧠 First-party (project-specific)
from models.discovery_model import MethodConfig, DiscoveryOutcome, require_samples
from models.errors import DegenerateDataError, ConvergenceError
from models.graph_model import LaggedCoefficients, ResidualSeries
from models.scene_model import TimeSeriesScene, lagged_matrix
from models.stats_kernels import ols_fit, adaptive_lasso, pilot_weights, default_lambda_grid
from utils.logger import get_logger

# Maximum-entropy approximation constants for the log-cosh / Gaussian-derivative contrasts
ENTROPY_K1 = 79.047
ENTROPY_K2 = 7.4129
ENTROPY_GAMMA = 0.37457


def _standardize(u: np.ndarray) -> np.ndarray:
    std = u.std()
    if std == 0.0 or not math.isfinite(std):
        raise DegenerateDataError("Zero-variance residual series in DirectLiNGAM ordering")
    return (u - u.mean()) / std


def entropy_approximation(u: np.ndarray) -> float:
    """Differential-entropy approximation of a standardized sample."""
    log_cosh = np.logaddexp(u, -u) - math.log(2.0)
    return float((1.0 + math.log(2.0 * math.pi)) / 2.0
                 - ENTROPY_K1 * (np.mean(log_cosh) - ENTROPY_GAMMA) ** 2
                 - ENTROPY_K2 * np.mean(u * np.exp(-u ** 2 / 2.0)) ** 2)


def _residual(xi: np.ndarray, xj: np.ndarray) -> np.ndarray:
    return xi - (np.mean((xi - xi.mean()) * (xj - xj.mean())) / np.var(xj)) * xj


def mutual_information_difference(xi_std: np.ndarray, xj_std: np.ndarray) -> float:
    """
    Pairwise likelihood-ratio proxy: positive when xi -> xj is the more plausible direction.
    """
    ri_j = _residual(xi_std, xj_std)
    rj_i = _residual(xj_std, xi_std)
    return (entropy_approximation(xj_std) + entropy_approximation(_standardize(ri_j))) \
        - (entropy_approximation(xi_std) + entropy_approximation(_standardize(rj_i)))


def direct_lingam_order(residuals: np.ndarray) -> list[int]:
    """
    DirectLiNGAM causal order of the columns of a residual matrix.

    At each step the remaining variable whose pairwise comparisons against all others
    show the least evidence of being caused is placed next, and every other remaining
    variable is replaced by its residual against it.

    Returns:
        list[int]: Column indices, causes first.

    Raises:
        DegenerateDataError: A residual column has zero variance.
    """
    working = np.array(residuals, dtype=np.float64, copy=True)
    remaining = list(range(working.shape[1]))
    order: list[int] = []
    while remaining:
        if len(remaining) == 1:
            order.append(remaining.pop())
            break
        standardized = {i: _standardize(working[:, i]) for i in remaining}
        scores = []
        for i in remaining:
            penalty = 0.0
            for j in remaining:
                if i != j:
                    penalty += min(0.0, mutual_information_difference(standardized[i], standardized[j])) ** 2
            scores.append(-penalty)
        chosen = remaining[int(np.argmax(scores))]
        for i in remaining:
            if i != chosen:
                working[:, i] = _residual(working[:, i], working[:, chosen])
        remaining.remove(chosen)
        order.append(chosen)
    return order


def instantaneous_matrix(residuals: np.ndarray, order: list[int]) -> np.ndarray:
    """B₀ by regressing each residual on the residuals earlier in the causal order."""
    n_variables = residuals.shape[1]
    b0 = np.zeros((n_variables, n_variables))
    for position, target in enumerate(order):
        ancestors = order[:position]
        if ancestors:
            b0[target, ancestors] = ols_fit(residuals[:, ancestors], residuals[:, target]).coefficients
    return b0


def _prune_target(design: np.ndarray, response: np.ndarray) -> tuple[np.ndarray, bool]:
    means = design.mean(axis=0)
    scales = design.std(axis=0)
    scales[scales == 0.0] = 1.0
    standardized = (design - means) / scales
    target_scale = response.std()
    if target_scale == 0.0:
        raise DegenerateDataError("Zero-variance target in adaptive-lasso pruning")
    target = (response - response.mean()) / target_scale

    weights = pilot_weights(standardized, target)
    grid = default_lambda_grid(standardized, target, weights)
    converged = True
    try:
        fit = adaptive_lasso(standardized, target, weights, grid)
    except ConvergenceError as e:
        fit = e.best_iterate
        converged = False

    coefficients = np.zeros(design.shape[1])
    survivors = sorted(fit.active_set)
    if survivors:
        coefficients[survivors] = ols_fit(design[:, survivors] - means[survivors], response - response.mean()).coefficients
    return coefficients, converged


def varlingam_discover(scene: TimeSeriesScene, config: MethodConfig) -> DiscoveryOutcome:
    """
    🔬 VarLiNGAM discovery.

    Steps: OLS VAR of order τ, DirectLiNGAM order of its residuals, B₀ by regression,
    corrected lag matrices (I − B₀)·Â, adaptive-lasso pruning per target over the
    instantaneous ancestors and every lagged variable. Only lagged coefficients reach the graph.

    Raises:
        DegenerateDataError: Zero-variance residuals.
    """
    logger = get_logger("VarLingamDiscovery")
    tau = config.max_lag
    n_variables = scene.n_variables
    require_samples(scene, n_variables * tau + 10, "varlingam")

    values = scene.centered()
    names = scene.variable_names
    all_variables = list(range(n_variables))
    design, responses = lagged_matrix(values, all_variables, all_variables, tau)

    var_fit = ols_fit(design, responses)
    innovations = ResidualSeries(var_fit.residuals, model_df=n_variables * tau)
    residuals = innovations.values
    var_lagged = LaggedCoefficients.from_design_coefficients(var_fit.coefficients.T, tau)

    gaussian = bool(all(stats.jarque_bera(residuals[:, i]).pvalue > 0.05 for i in all_variables))
    if gaussian:
        logger.warning("VarLiNGAM %s: rezidua vypadají gaussovsky, pořadí není identifikovatelné", scene.scene_id)

    order = direct_lingam_order(residuals)
    b0 = instantaneous_matrix(residuals, order)
    corrected = np.einsum("ij,ljk->lik", np.eye(n_variables) - b0, var_lagged.matrices)

    pruned = np.zeros_like(corrected)
    all_converged = True
    for target in all_variables:
        ancestors = order[:order.index(target)]
        predictors = np.column_stack([responses[:, ancestors], design]) if ancestors else design
        coefficients, converged = _prune_target(predictors, responses[:, target])
        all_converged = all_converged and converged
        # design columns are source-major, lag 1..τ
        lag_part = coefficients[len(ancestors):].reshape(n_variables, tau)
        pruned[:, target, :] = lag_part.T
        logger.debug("VarLiNGAM %s: %s má %d přeživších zpožděných koeficientů",
                     scene.scene_id, names[target], int(np.count_nonzero(lag_part)))

    if not all_converged:
        logger.warning("VarLiNGAM %s: adaptivní lasso nedokonvergovalo, použita nejlepší iterace", scene.scene_id)

    lagged = LaggedCoefficients(pruned)
    return DiscoveryOutcome(
        graph=lagged.to_graph(names),
        lagged=lagged,
        diagnostics={
            "causal_order": [names[i] for i in order],
            "instantaneous": b0.tolist(),
            "corrected_strength": np.abs(corrected).max(axis=0).tolist(),
            "gaussian_innovations": gaussian,
            "pruning_converged": all_converged,
        },
    )
