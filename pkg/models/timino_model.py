"""
📦 Module: timino_model.py

Linear TiMINo: iterative sink identification by residual independence.

Responsibilities:
    - Fit each candidate on the lags of the remaining variables and test its residuals
      against the pre-whitened remaining series
    - Place the most independent candidate at the bottom of the hierarchy
    - Prune parents that independence does not need
    - Abstain when no candidate yields independent residuals
"""

# 🧩 Third-party libraries
import numpy as np

# 🧠 First-party (project-specific)
from models.discovery_model import MethodConfig, DiscoveryOutcome, require_samples
from models.graph_model import SummaryGraph
from models.scene_model import TimeSeriesScene, lagged_matrix
from models.stats_kernels import ols_fit, cross_covariance_independence
from utils.logger import get_logger


def _residuals(values: np.ndarray, target: int, inputs: list[int], max_lag: int) -> np.ndarray:
    design, response = lagged_matrix(values, [target], inputs, max_lag)
    return ols_fit(design, response[:, 0]).residuals


def _innovations(values: np.ndarray, variable: int, max_lag: int) -> np.ndarray:
    """Residuals of an AR(τ) fit of one series on its own lags."""
    return _residuals(values, variable, [variable], max_lag)


def residual_independence(values: np.ndarray, target: int, inputs: list[int], tested: list[int],
                          max_lag: int, alpha: float) -> float:
    """
    Smallest cross-covariance p-value between the residuals of `target` (fitted on the lags
    of `inputs`) and the innovations of each series in `tested`; 1.0 when nothing is tested.

    Tested series are pre-whitened by their own AR(τ) fit, so a persistent (velocity-like)
    series is compared through its innovations. Both sides cover times τ..T−1.
    """
    residuals = _residuals(values, target, inputs, max_lag)
    minimum = 1.0
    for other in tested:
        result = cross_covariance_independence(residuals, _innovations(values, other, max_lag), max_lag, alpha)
        minimum = min(minimum, result.p_value)
    return minimum


def timino_discover(scene: TimeSeriesScene, config: MethodConfig) -> DiscoveryOutcome:
    """
    🪜 TiMINo with linear predictors and the cross-covariance independence test.

    Each stage fits every remaining candidate on the lags of all remaining variables, itself
    included, and tests its residuals against the innovations of every other remaining series.
    The candidate with the highest minimum p-value (lower index on ties) becomes the next sink
    if that minimum exceeds α; its parents are the other remaining variables. A parent is then
    dropped whenever refitting without it keeps every residual test above α.
    """
    logger = get_logger("TiminoDiscovery")
    tau = config.max_lag
    alpha = config.alpha
    require_samples(scene, scene.n_variables * tau + 10, "timino")

    values = scene.centered()
    names = scene.variable_names
    remaining = list(range(scene.n_variables))
    sinks: list[int] = []
    stage_p_values: list[dict[str, float]] = []
    parents: dict[int, list[int]] = {}

    while remaining:
        scores = {}
        for candidate in remaining:
            others = [v for v in remaining if v != candidate]
            scores[candidate] = residual_independence(values, candidate, remaining, others, tau, alpha)
        stage_p_values.append({names[v]: p for v, p in scores.items()})

        best = max(remaining, key=lambda v: (scores[v], -v))
        if scores[best] <= alpha:
            logger.info("TiMINo %s: žádný kandidát nemá nezávislá rezidua (max p=%.4g), metoda se zdržuje",
                        scene.scene_id, scores[best])
            return DiscoveryOutcome(
                graph=SummaryGraph.empty(names),
                diagnostics={"sink_order": [names[v] for v in sinks], "stage_p_values": stage_p_values},
                abstained=True,
            )

        tested = [v for v in remaining if v != best]
        kept = list(tested)
        for parent in tested:
            reduced = [v for v in kept if v != parent]
            p_value = residual_independence(values, best, [best] + reduced, tested, tau, alpha)
            if p_value > alpha:
                kept = reduced
        parents[best] = kept
        sinks.append(best)
        remaining.remove(best)

    edges = frozenset((names[parent], names[child]) for child, found in parents.items() for parent in found)
    logger.debug("TiMINo %s: pořadí propadů %s, %d hran", scene.scene_id, [names[v] for v in sinks], len(edges))
    return DiscoveryOutcome(
        graph=SummaryGraph(names, edges),
        diagnostics={
            "sink_order": [names[v] for v in sinks],
            "stage_p_values": stage_p_values,
            "parents": {names[child]: [names[p] for p in found] for child, found in parents.items()},
        },
    )
