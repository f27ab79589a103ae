"""
📦 Module: stats_kernels.py

Statistical and numerical primitives shared by the discovery methods.

Responsibilities:
    - Ordinary least squares with a rank-revealing minimum-norm solver
    - Nested F-test, Wald chi-squared block test, Fisher-z test
    - Partial correlation and the lagged cross-covariance independence test
    - Benjamini-Hochberg step-up rejection
    - Weighted lasso by cyclic coordinate descent and BIC-selected adaptive lasso

All functions are pure and safe to call from concurrent workers.
"""

# 🧱 Standard library
import math
from dataclasses import dataclass
from typing import NamedTuple, Sequence

# 🧩 Third-party libraries
import numpy as np
from scipy import linalg, stats

# 🧠 First-party (project-specific)
from models.errors import DegenerateDataError, InsufficientSamplesError, ConvergenceError

FLOAT_MAX = float(np.finfo(np.float64).max)
PILOT_FLOOR = 1e-8


@dataclass(frozen=True)
class TestResult:
    """
    🧪 Outcome of a hypothesis test.

    Args:
        statistic (float): Finite test statistic.
        p_value (float): In [0, 1].
        dof (tuple[float, ...]): Degrees of freedom as the test defines them.
    """
    __test__ = False  # not a pytest class

    statistic: float
    p_value: float
    dof: tuple[float, ...]


@dataclass(frozen=True)
class IndependenceResult(TestResult):
    """
    🔀 Cross-covariance test outcome with the lag that carried the strongest dependence.
    """
    dominant_lag: int = 0
    independent: bool = True


@dataclass(frozen=True, eq=False)
class SparseFit:
    """
    🪶 Selected weighted-lasso fit.

    Args:
        coefficients (np.ndarray): Coefficient vector.
        active_set (frozenset[int]): Indices of nonzero coefficients.
        penalty (float): λ that produced the fit.
        bic (float): Bayesian information criterion of the fit.
    """
    coefficients: np.ndarray
    active_set: frozenset[int]
    penalty: float
    bic: float = math.nan


class OlsFit(NamedTuple):
    """Least-squares solution, residuals and residual sum of squares."""
    coefficients: np.ndarray
    residuals: np.ndarray
    rss: float | np.ndarray


class CoordinateDescentResult(NamedTuple):
    """Weighted-lasso iterate with its per-sweep objective values."""
    coefficients: np.ndarray
    objective_trace: tuple[float, ...]
    converged: bool
    iterations: int


def _clip_probability(p: float) -> float:
    return float(min(max(p, 0.0), 1.0))


# --- Least squares ---
def ols_fit(design: np.ndarray, response: np.ndarray) -> OlsFit:
    """
    Minimum-norm least squares through an SVD-based solver.

    Args:
        design (np.ndarray): n×k regressors.
        response (np.ndarray): Length-n vector or n×m matrix.

    Returns:
        OlsFit: Coefficients, residuals and rss (per column for a matrix response).

    Raises:
        DegenerateDataError: Empty or non-finite design.
    """
    design = np.asarray(design, dtype=np.float64)
    response = np.asarray(response, dtype=np.float64)
    if design.ndim == 1:
        design = design.reshape(-1, 1)
    if design.size == 0 or design.shape[0] == 0:
        raise DegenerateDataError("Least squares needs a non-empty design")
    if not (np.all(np.isfinite(design)) and np.all(np.isfinite(response))):
        raise DegenerateDataError("Least squares needs finite data")

    coefficients, _, _, _ = linalg.lstsq(design, response, lapack_driver="gelsd")
    residuals = response - design @ coefficients
    rss = np.sum(residuals ** 2, axis=0)
    if response.ndim == 1:
        rss = float(rss)
    return OlsFit(coefficients, residuals, rss)


# --- Hypothesis tests ---
def f_test_nested(rss_restricted: float, rss_full: float, extra_params: int, full_model_df: int,
                  n_obs: int) -> TestResult:
    """
    F-test of a restricted model nested in a full one.

    F = ((rss_r − rss_f) / q) / (rss_f / (n − k)). A full model that fits no worse than the
    restricted one gives F = 0, p = 1; a perfect full fit gives p = 0.

    Raises:
        ValueError: q < 1 or negative rss.
        InsufficientSamplesError: n_obs <= full_model_df.
    """
    if extra_params < 1:
        raise ValueError(f"F-test needs at least one extra parameter, got {extra_params}")
    if n_obs <= full_model_df:
        raise InsufficientSamplesError(full_model_df + 1, n_obs, "F-test")
    if rss_restricted < 0 or rss_full < 0:
        raise ValueError("Residual sums of squares must be non-negative")

    dof = (float(extra_params), float(n_obs - full_model_df))
    if rss_restricted <= rss_full:
        return TestResult(0.0, 1.0, dof)
    if rss_full == 0.0:
        return TestResult(FLOAT_MAX, 0.0, dof)

    statistic = ((rss_restricted - rss_full) / extra_params) / (rss_full / (n_obs - full_model_df))
    p_value = stats.f.sf(statistic, dof[0], dof[1])
    return TestResult(float(min(statistic, FLOAT_MAX)), _clip_probability(p_value), dof)


def wald_chi2_block(coefficients: np.ndarray, covariance: np.ndarray, block: Sequence[int]) -> TestResult:
    """
    Wald test that a block of coefficients is jointly zero.

    Args:
        coefficients (np.ndarray): Full coefficient vector.
        covariance (np.ndarray): Its covariance matrix.
        block (Sequence[int]): Indices under test.

    Returns:
        TestResult: statistic cᵀΣ⁻¹c, chi-squared upper tail with dof = |block|.

    Raises:
        DegenerateDataError: Block covariance singular (collinear lags).
    """
    index = np.asarray(list(block), dtype=int)
    if index.size == 0:
        raise ValueError("Wald test needs a non-empty block")
    c = np.asarray(coefficients, dtype=np.float64)[index]
    sigma = np.asarray(covariance, dtype=np.float64)[np.ix_(index, index)]
    sigma = (sigma + sigma.T) / 2.0

    eigenvalues = linalg.eigvalsh(sigma)
    largest = float(np.max(np.abs(eigenvalues))) if eigenvalues.size else 0.0
    if largest == 0.0 or eigenvalues.min() <= largest * 1e-12:
        raise DegenerateDataError(f"Singular covariance for coefficient block {index.tolist()}")

    statistic = float(c @ linalg.solve(sigma, c, assume_a="pos"))
    statistic = max(statistic, 0.0)
    p_value = stats.chi2.sf(statistic, index.size)
    return TestResult(min(statistic, FLOAT_MAX), _clip_probability(p_value), (float(index.size),))


def _residualize(vector: np.ndarray, conditioning: np.ndarray | None) -> np.ndarray:
    centered = vector - vector.mean()
    if conditioning is None or conditioning.shape[1] == 0:
        return centered
    design = np.column_stack([np.ones(vector.shape[0]), conditioning])
    return ols_fit(design, vector).residuals


def partial_correlation(x: np.ndarray, y: np.ndarray, conditioning: np.ndarray | None = None) -> float:
    """
    Pearson correlation of the residuals of x and y after regressing both on [1, Z].

    Raises:
        InsufficientSamplesError: n <= |Z| + 2.
        DegenerateDataError: Residual variance vanishes.
    """
    x = np.asarray(x, dtype=np.float64)
    y = np.asarray(y, dtype=np.float64)
    if x.shape != y.shape or x.ndim != 1:
        raise ValueError("partial_correlation needs two vectors of equal length")
    z = None
    if conditioning is not None:
        z = np.asarray(conditioning, dtype=np.float64)
        if z.ndim == 1:
            z = z.reshape(-1, 1)
        if z.shape[0] != x.shape[0]:
            raise ValueError("Conditioning matrix must have one row per sample")
    n_conditioned = 0 if z is None else z.shape[1]
    if x.shape[0] <= n_conditioned + 2:
        raise InsufficientSamplesError(n_conditioned + 3, x.shape[0], "partial correlation")

    rx = _residualize(x, z)
    ry = _residualize(y, z)
    norm_x = float(np.linalg.norm(rx))
    norm_y = float(np.linalg.norm(ry))
    scale_x = float(np.linalg.norm(x - x.mean()))
    scale_y = float(np.linalg.norm(y - y.mean()))
    if norm_x <= 1e-10 * scale_x or norm_y <= 1e-10 * scale_y or norm_x == 0.0 or norm_y == 0.0:
        raise DegenerateDataError("Zero-variance residuals in partial correlation")
    return float(np.clip(rx @ ry / (norm_x * norm_y), -1.0, 1.0))


def fisher_z_test(rho: float, n_obs: int, n_conditioned: int) -> TestResult:
    """
    Two-sided Fisher-z test of a (partial) correlation.

    Raises:
        InsufficientSamplesError: n − |Z| − 3 <= 0.
    """
    dof = n_obs - n_conditioned - 3
    if dof <= 0:
        raise InsufficientSamplesError(n_conditioned + 4, n_obs, "Fisher-z test")
    if abs(rho) >= 1.0:
        return TestResult(math.copysign(FLOAT_MAX, rho), 0.0, (float(dof),))
    z = math.sqrt(dof) * math.atanh(rho)
    p_value = 2.0 * stats.norm.sf(abs(z))
    return TestResult(float(z), _clip_probability(p_value), (float(dof),))


def bh_fdr(p_values: Sequence[float], alpha: float) -> frozenset[int]:
    """
    Benjamini-Hochberg step-up procedure.

    Args:
        p_values (Sequence[float]): Values in [0, 1].
        alpha (float): FDR level in (0, 1].

    Returns:
        frozenset[int]: Indices of rejected hypotheses.
    """
    if not 0.0 < alpha <= 1.0:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    p = np.asarray(p_values, dtype=np.float64)
    if p.size == 0:
        return frozenset()
    if np.any((p < 0.0) | (p > 1.0)) or not np.all(np.isfinite(p)):
        raise ValueError("p-values must lie in [0, 1]")

    m = p.size
    order = np.argsort(p, kind="stable")
    thresholds = alpha * np.arange(1, m + 1) / m
    passing = np.nonzero(p[order] <= thresholds)[0]
    if passing.size == 0:
        return frozenset()
    cutoff = p[order][passing[-1]]
    return frozenset(int(i) for i in np.nonzero(p <= cutoff)[0])


def cross_covariance_independence(a: np.ndarray, b: np.ndarray, max_lag: int, alpha: float) -> IndependenceResult:
    """
    Lagged cross-covariance test with Bonferroni aggregation over lags −τ..τ.

    Lag k >= 0 pairs a[t] with b[t + k]. Each lag's normalized cross-covariance is tested
    with Fisher-z on its overlap; the overall p is the smallest lag p times 2τ+1, capped at 1.

    Raises:
        DegenerateDataError: Either series is constant.
        InsufficientSamplesError: Overlap at lag τ too short for the Fisher-z test.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    n = a.shape[0]
    if a.shape != b.shape or a.ndim != 1:
        raise ValueError("cross_covariance_independence needs two vectors of equal length")
    if max_lag < 0:
        raise ValueError("max_lag must be non-negative")
    if n - max_lag <= 3:
        raise InsufficientSamplesError(max_lag + 4, n, "cross-covariance test")
    if np.ptp(a) == 0.0 or np.ptp(b) == 0.0:
        raise DegenerateDataError("Constant series in cross-covariance test")

    best_p = 1.0
    best_lag = 0
    best_z = 0.0
    for lag in range(-max_lag, max_lag + 1):
        if lag >= 0:
            left, right = a[:n - lag], b[lag:]
        else:
            left, right = a[-lag:], b[:n + lag]
        left = left - left.mean()
        right = right - right.mean()
        denominator = math.sqrt(float(left @ left) * float(right @ right))
        if denominator == 0.0:
            continue
        rho = float(np.clip(left @ right / denominator, -1.0, 1.0))
        result = fisher_z_test(rho, left.shape[0], 0)
        if result.p_value < best_p or (result.p_value == best_p and abs(result.statistic) > abs(best_z)):
            best_p, best_lag, best_z = result.p_value, lag, result.statistic

    n_lags = 2 * max_lag + 1
    overall = min(best_p * n_lags, 1.0)
    return IndependenceResult(
        statistic=float(best_z),
        p_value=overall,
        dof=(float(n_lags),),
        dominant_lag=best_lag,
        independent=overall > alpha,
    )


# --- Sparse regression ---
def lasso_objective(design: np.ndarray, response: np.ndarray, coefficients: np.ndarray,
                    penalties: np.ndarray) -> float:
    """½‖y − Xβ‖² + Σ penalty_j |β_j|"""
    residual = response - design @ coefficients
    return float(0.5 * residual @ residual + penalties @ np.abs(coefficients))


def coordinate_descent(design: np.ndarray, response: np.ndarray, penalties: np.ndarray,
                       start: np.ndarray | None = None, max_iter: int = 1000, objective_tol: float = 0.0,
                       coefficient_tol: float = 1e-10) -> CoordinateDescentResult:
    """
    Cyclic coordinate descent with soft-thresholding on ½‖y − Xβ‖² + Σ penalty_j |β_j|.

    A sweep visits every coordinate once. The loop stops when the relative objective
    decrease of a sweep is at most `objective_tol`, or when the largest coefficient step is
    at most `coefficient_tol` times the largest coefficient magnitude.

    Returns:
        CoordinateDescentResult: Last iterate (the best, as sweeps never increase the objective),
        objective before the first sweep and after each sweep, convergence flag, sweeps done.
    """
    design = np.asarray(design, dtype=np.float64)
    response = np.asarray(response, dtype=np.float64)
    penalties = np.asarray(penalties, dtype=np.float64)
    n_features = design.shape[1]
    beta = np.zeros(n_features) if start is None else np.array(start, dtype=np.float64)
    column_norms = np.einsum("ij,ij->j", design, design)
    residual = response - design @ beta

    def objective() -> float:
        return float(0.5 * residual @ residual + penalties @ np.abs(beta))

    trace = [objective()]
    for sweep in range(1, max_iter + 1):
        largest_step = 0.0
        for j in range(n_features):
            norm_j = column_norms[j]
            old = beta[j]
            if norm_j == 0.0:
                new = 0.0
            else:
                rho = design[:, j] @ residual + norm_j * old
                new = math.copysign(max(abs(rho) - penalties[j], 0.0), rho) / norm_j
            if new != old:
                residual -= design[:, j] * (new - old)
                beta[j] = new
                largest_step = max(largest_step, abs(new - old))

        trace.append(objective())
        decrease = trace[-2] - trace[-1]
        scale = max(abs(trace[-2]), np.finfo(np.float64).tiny)
        magnitude = float(np.max(np.abs(beta))) if n_features else 0.0
        objective_settled = objective_tol > 0.0 and decrease <= objective_tol * scale
        if objective_settled or largest_step <= coefficient_tol * magnitude:
            return CoordinateDescentResult(beta, tuple(trace), True, sweep)

    return CoordinateDescentResult(beta, tuple(trace), False, max_iter)


def default_lambda_grid(design: np.ndarray, response: np.ndarray, weights: np.ndarray,
                        n_lambdas: int = 20, ratio: float = 1e-4) -> np.ndarray:
    """
    Log-spaced descending λ grid starting at the smallest λ that zeroes every coefficient.
    """
    weights = np.asarray(weights, dtype=np.float64)
    lambda_max = float(np.max(np.abs(np.asarray(design).T @ np.asarray(response)) / weights))
    if lambda_max <= 0.0:
        return np.array([0.0])
    return np.geomspace(lambda_max, lambda_max * ratio, n_lambdas)


def pilot_weights(design: np.ndarray, response: np.ndarray) -> np.ndarray:
    """Adaptive-lasso weights 1 / max(|β_OLS|, 1e-8)."""
    pilot = ols_fit(design, response).coefficients
    return 1.0 / np.maximum(np.abs(pilot), PILOT_FLOOR)


def _bic(rss: float, n_obs: int, n_active: int) -> float:
    floor = np.finfo(np.float64).tiny * n_obs
    return float(n_obs * math.log(max(rss, floor) / n_obs) + n_active * math.log(n_obs))


def adaptive_lasso(design: np.ndarray, response: np.ndarray, initial_weights: np.ndarray,
                   lambda_grid: Sequence[float], max_iter: int = 1000, tol: float = 1e-10) -> SparseFit:
    """
    Weighted-ℓ1 least squares along a λ grid, selected by BIC.

    λ values are visited in descending order with warm starts; ties in BIC go to the
    earlier (sparser) fit.

    Args:
        design (np.ndarray): n×k regressors.
        response (np.ndarray): Length-n target.
        initial_weights (np.ndarray): Strictly positive per-coefficient weights.
        lambda_grid (Sequence[float]): Non-empty, non-negative penalties.
        max_iter (int): Coordinate-descent sweep cap per λ.
        tol (float): Relative coefficient-step tolerance.

    Returns:
        SparseFit: The BIC-selected fit.

    Raises:
        ConvergenceError: The selected fit hit the sweep cap; `best_iterate` holds it.
    """
    design = np.asarray(design, dtype=np.float64)
    response = np.asarray(response, dtype=np.float64)
    weights = np.asarray(initial_weights, dtype=np.float64)
    grid = sorted((float(value) for value in lambda_grid), reverse=True)
    if not grid:
        raise ValueError("adaptive_lasso needs a non-empty lambda grid")
    if weights.shape != (design.shape[1],) or np.any(weights <= 0.0) or not np.all(np.isfinite(weights)):
        raise ValueError("adaptive_lasso weights must be finite, strictly positive, one per column")
    if any(value < 0.0 for value in grid):
        raise ValueError("lambda values must be non-negative")

    n_obs = design.shape[0]
    best: SparseFit | None = None
    best_converged = True
    start = np.zeros(design.shape[1])
    for penalty in grid:
        result = coordinate_descent(design, response, penalty * weights, start=start,
                                    max_iter=max_iter, coefficient_tol=tol)
        start = result.coefficients.copy()
        residual = response - design @ result.coefficients
        active = frozenset(int(i) for i in np.nonzero(result.coefficients)[0])
        fit = SparseFit(result.coefficients.copy(), active, penalty, _bic(float(residual @ residual), n_obs, len(active)))
        if best is None or fit.bic < best.bic:
            best, best_converged = fit, result.converged

    if not best_converged:
        raise ConvergenceError(f"Adaptive lasso did not converge at λ={best.penalty:g} within {max_iter} sweeps",
                               best_iterate=best, iterations=max_iter)
    return best
