"""
📦 Module: random_model.py

Coin-flip baseline: every ordered pair of distinct variables becomes an edge with probability 0.5.
"""

# 🧩 Third-party libraries
import numpy as np

# 🧠 First-party (project-specific)
from models.discovery_model import MethodConfig, DiscoveryOutcome
from models.graph_model import SummaryGraph
from models.scene_model import TimeSeriesScene

DEFAULT_EDGE_LIKELIHOOD = 0.5


def random_discover(scene: TimeSeriesScene, config: MethodConfig, seed: int) -> DiscoveryOutcome:
    """
    🎲 Seeded random graph; pairs are drawn in (source, target) node order.

    Method params:
        edge_likelihood (0.5).
    """
    likelihood = config.param("edge_likelihood", DEFAULT_EDGE_LIKELIHOOD, float)
    rng = np.random.default_rng(seed)
    names = scene.variable_names
    edges = set()
    for source in names:
        for target in names:
            if source != target and rng.random() < likelihood:
                edges.add((source, target))
    return DiscoveryOutcome(SummaryGraph(names, frozenset(edges)), diagnostics={"seed": seed})
