"""
📦 Module: discovery_model.py

Types shared by every discovery method.

Responsibilities:
    - MethodConfig: significance level, maximum lag and method-specific parameters
    - DiscoveryOutcome: summary graph plus optional coefficients and diagnostics
    - Small guards used by all methods (sample-count checks, edge keys)
"""

# 🧱 Standard library
from dataclasses import dataclass, field
from typing import Any, Callable, Mapping, TypeVar

# 🧠 First-party (project-specific)
from models.errors import ConfigError, GraphError, InsufficientSamplesError
from models.graph_model import SummaryGraph, LaggedCoefficients, EDGE_SEPARATOR
from models.scene_model import TimeSeriesScene

T = TypeVar("T")


@dataclass(frozen=True)
class MethodConfig:
    """
    🎛️ Parameters of one discovery run.

    Args:
        alpha (float): Significance level in (0, 1].
        max_lag (int): τ in samples, >= 1.
        method_params (Mapping[str, Any]): Method-specific settings; unknown keys are ignored.
    """
    alpha: float = 0.05
    max_lag: int = 25
    method_params: Mapping[str, Any] = field(default_factory=dict)

    def __post_init__(self):
        if not 0.0 < self.alpha <= 1.0:
            raise ConfigError(f"alpha must lie in (0, 1], got {self.alpha}")
        if int(self.max_lag) != self.max_lag or self.max_lag < 1:
            raise ConfigError(f"max_lag must be a positive integer, got {self.max_lag}")
        object.__setattr__(self, "max_lag", int(self.max_lag))
        object.__setattr__(self, "method_params", dict(self.method_params))

    def param(self, name: str, default: T, cast: Callable[[Any], T] | None = None) -> T:
        """
        Reads a method parameter, falling back to the default.

        Raises:
            ConfigError: Value cannot be converted.
        """
        if name not in self.method_params or self.method_params[name] in (None, ""):
            return default
        converter = cast if cast is not None else type(default)
        try:
            return converter(self.method_params[name])
        except (TypeError, ValueError) as e:
            raise ConfigError(f"Invalid value for method parameter '{name}': {self.method_params[name]!r}") from e


@dataclass(frozen=True, eq=False)
class DiscoveryOutcome:
    """
    🧭 Result of one discovery call.

    Args:
        graph (SummaryGraph): Discovered summary graph over the scene's variables.
        lagged (LaggedCoefficients | None): Coefficients behind the graph, when the method has them.
        diagnostics (dict[str, Any]): Per-edge p-values or scores and method flags.
        abstained (bool): The method refused to commit to a graph; the graph is then empty.
    """
    graph: SummaryGraph
    lagged: LaggedCoefficients | None = None
    diagnostics: dict[str, Any] = field(default_factory=dict)
    abstained: bool = False

    def __post_init__(self):
        if self.abstained and self.graph.edges:
            raise GraphError("An abstaining method cannot emit edges")


def edge_key(source: str, target: str) -> str:
    """Diagnostics key for an edge, in edge-list notation."""
    return f"{source}{EDGE_SEPARATOR}{target}"


def require_samples(scene: TimeSeriesScene, exclusive_minimum: int, context: str) -> None:
    """
    Ensures T > exclusive_minimum.

    Raises:
        InsufficientSamplesError: Scene too short; the message states the minimum T.
    """
    if scene.n_samples <= exclusive_minimum:
        raise InsufficientSamplesError(exclusive_minimum + 1, scene.n_samples, context)
