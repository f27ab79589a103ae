"""
📦 Module: pcmci_model.py

PCMCI with partial-correlation tests.

Responsibilities:
    - Phase 1: PC1-style lagged parent selection per target
    - Phase 2: momentary conditional independence tests conditioned on both endpoints' parents
    - Benjamini-Hochberg over all link p-values and collapse to a summary graph
"""

# 🧩 Third-party libraries
import numpy as np

# 🧠 First-party (project-specific)
from models.discovery_model import MethodConfig, DiscoveryOutcome, edge_key, require_samples
from models.errors import DegenerateDataError, InsufficientSamplesError
from models.graph_model import SummaryGraph
from models.scene_model import TimeSeriesScene
from models.stats_kernels import TestResult, partial_correlation, fisher_z_test, bh_fdr
from utils.logger import get_logger

LaggedNode = tuple[int, int]


class LaggedSeries:
    """
    🗂️ Lagged views of a centered value matrix on the common sample t = 2τ..T−1.

    The doubled window leaves room for the parents of a cause shifted by the tested lag.
    """

    def __init__(self, values: np.ndarray, max_lag: int):
        self.values = values
        self.max_lag = max_lag
        self.start = 2 * max_lag
        self.stop = values.shape[0]

    @property
    def n_obs(self) -> int:
        """Rows in every view."""
        return self.stop - self.start

    def column(self, node: LaggedNode) -> np.ndarray:
        """Series `variable` at `lag` aligned with the present rows."""
        variable, lag = node
        return self.values[self.start - lag:self.stop - lag, variable]

    def matrix(self, nodes: list[LaggedNode]) -> np.ndarray | None:
        """Columns for a conditioning set, None when empty."""
        if not nodes:
            return None
        return np.column_stack([self.column(node) for node in nodes])


def conditional_test(series: LaggedSeries, cause: LaggedNode, effect: LaggedNode,
                     conditions: list[LaggedNode]) -> tuple[float, TestResult]:
    """
    Partial correlation and Fisher-z test of cause ⟂ effect | conditions.

    Raises:
        DegenerateDataError / InsufficientSamplesError: From the kernels.
    """
    rho = partial_correlation(series.column(cause), series.column(effect), series.matrix(conditions))
    return rho, fisher_z_test(rho, series.n_obs, len(conditions))


def _guarded_test(series: LaggedSeries, cause: LaggedNode, effect: LaggedNode,
                  conditions: list[LaggedNode], logger, scene_id: str) -> tuple[float, float]:
    try:
        rho, result = conditional_test(series, cause, effect, conditions)
    except (DegenerateDataError, InsufficientSamplesError) as e:
        logger.warning("PCMCI %s: degenerovaný test %s -> %s (%d podmínek), bráno jako nezávislé: %s",
                       scene_id, cause, effect, len(conditions), e)
        return 0.0, 1.0
    return rho, result.p_value


def pcmci_condition_selection(series: LaggedSeries, alpha: float, max_conds_dim: int | None = None,
                              scene_id: str = "") -> dict[int, list[LaggedNode]]:
    """
    PC1 parent selection for every target.

    Candidates are all (variable, lag) pairs with lag 1..τ. For conditioning size p = 0, 1, ...
    each candidate is tested once, conditioned on the p strongest other candidates; those with
    p-value > α are removed after the pass and the rest are re-sorted by |partial correlation|.
    The loop ends after a pass without removals, when fewer than p + 1 candidates remain or
    when p exceeds `max_conds_dim`.

    Returns:
        dict[int, list[LaggedNode]]: Parents per target, strongest first.
    """
    logger = get_logger("PcmciDiscovery")
    n_variables = series.values.shape[1]
    parents: dict[int, list[LaggedNode]] = {}
    for target in range(n_variables):
        effect = (target, 0)
        candidates = [(v, lag) for v in range(n_variables) for lag in range(1, series.max_lag + 1)]
        strength = {node: np.inf for node in candidates}
        size = 0
        while len(candidates) - 1 >= size and (max_conds_dim is None or size <= max_conds_dim):
            rejected = []
            for node in candidates:
                conditions = [other for other in candidates if other != node][:size]
                rho, p_value = _guarded_test(series, node, effect, conditions, logger, scene_id)
                strength[node] = abs(rho)
                if p_value > alpha:
                    rejected.append(node)
            candidates.sort(key=lambda node: -strength[node])
            if not rejected:
                break
            candidates = [node for node in candidates if node not in rejected]
            size += 1
        parents[target] = candidates
    return parents


def pcmci_mci(series: LaggedSeries, parents: dict[int, list[LaggedNode]],
              scene_id: str = "") -> dict[tuple[int, int, int], float]:
    """
    Momentary conditional independence p-values for every link (cause, lag) -> target.

    Each test conditions on the target's parents without the tested link and on the cause's
    parents shifted by the tested lag.

    Returns:
        dict[tuple[int, int, int], float]: p-value keyed by (cause, lag, target).
    """
    logger = get_logger("PcmciDiscovery")
    n_variables = series.values.shape[1]
    p_values: dict[tuple[int, int, int], float] = {}
    for target in range(n_variables):
        for cause in range(n_variables):
            for lag in range(1, series.max_lag + 1):
                link = (cause, lag)
                conditions = [node for node in parents.get(target, []) if node != link]
                for variable, parent_lag in parents.get(cause, []):
                    shifted = (variable, parent_lag + lag)
                    if shifted not in conditions and shifted != link:
                        conditions.append(shifted)
                _, p_value = _guarded_test(series, link, (target, 0), conditions, logger, scene_id)
                p_values[(cause, lag, target)] = p_value
    return p_values


def summarize_links(p_values: dict[tuple[int, int, int], float], alpha: float,
                    names: tuple[str, ...]) -> frozenset[tuple[str, str]]:
    """BH over every link p-value; edge x -> y when some lag survives and x ≠ y."""
    keys = list(p_values)
    rejected = bh_fdr([p_values[key] for key in keys], alpha) if keys else frozenset()
    return frozenset(
        (names[keys[i][0]], names[keys[i][2]]) for i in rejected if keys[i][0] != keys[i][2]
    )


def log_min_lag_notice():
    """Logs, once per command, that lag 0 links are not part of the summary graph."""
    get_logger("PcmciDiscovery").info("PCMCI: minimální zpoždění 0 se nevyhodnocuje, souhrnný graf pokrývá zpoždění 1..tau")


def pcmci_discover(scene: TimeSeriesScene, config: MethodConfig) -> DiscoveryOutcome:
    """
    🧩 PCMCI: PC1 condition selection followed by MCI tests and BH correction.

    Phase 1 uses the same α as the final correction. Lag 0 is never evaluated, the summary
    graph only speaks about lags 1..τ.

    Method params:
        max_conds_dim: cap on the Phase-1 conditioning size (unrestricted by default).
    """
    tau = config.max_lag
    require_samples(scene, max(scene.n_variables * tau, 2 * tau) + 10, "pcmci")
    max_conds_dim = config.param("max_conds_dim", None, int)

    series = LaggedSeries(scene.centered(), tau)
    names = scene.variable_names
    parents = pcmci_condition_selection(series, config.alpha, max_conds_dim, scene.scene_id)
    link_p_values = pcmci_mci(series, parents, scene.scene_id)
    edges = summarize_links(link_p_values, config.alpha, names)

    edge_p_values: dict[str, float] = {}
    for (cause, _, target), p_value in link_p_values.items():
        if cause != target:
            key = edge_key(names[cause], names[target])
            edge_p_values[key] = min(p_value, edge_p_values.get(key, 1.0))

    return DiscoveryOutcome(
        graph=SummaryGraph(names, edges),
        diagnostics={
            "p_values": edge_p_values,
            "parents": {names[t]: [f"{names[v]}(t-{lag})" for v, lag in found] for t, found in parents.items()},
        },
    )
