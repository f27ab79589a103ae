"""
📦 Module: graph_model.py

Graph-shaped results of discovery: summary graphs, lagged coefficient stacks and residuals.

Responsibilities:
    - Hold directed summary graphs over named variables
    - Read and write the "src -> dst" edge-list text format
    - Hold per-lag coefficient matrices and regression residuals
"""

# 🧱 Standard library
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

# 🧩 Third-party libraries
import numpy as np

# 🧠 First-party (project-specific)
from models.errors import GraphError

EDGE_SEPARATOR = " -> "


@dataclass(frozen=True)
class SummaryGraph:
    """
    🕸️ Directed graph with one node per time series.

    An edge (x, y) means x influences y at some lag inside the window. Self-loops
    may be stored; the evaluation path strips them.

    Args:
        nodes (tuple[str, ...]): Variable names in scene order.
        edges (frozenset[tuple[str, str]]): Ordered (source, target) pairs.
    """
    nodes: tuple[str, ...]
    edges: frozenset[tuple[str, str]] = frozenset()

    def __post_init__(self):
        object.__setattr__(self, "nodes", tuple(self.nodes))
        object.__setattr__(self, "edges", frozenset((str(a), str(b)) for a, b in self.edges))
        known = set(self.nodes)
        if len(known) != len(self.nodes):
            raise GraphError("Summary graph nodes must be unique")
        for source, target in self.edges:
            if source not in known or target not in known:
                raise GraphError(f"Edge {source}{EDGE_SEPARATOR}{target} references an unknown node")

    @classmethod
    def empty(cls, nodes: Iterable[str]) -> "SummaryGraph":
        """Graph over `nodes` without edges."""
        return cls(tuple(nodes), frozenset())

    def without_self_loops(self) -> "SummaryGraph":
        """Copy without (x, x) edges."""
        return SummaryGraph(self.nodes, frozenset(e for e in self.edges if e[0] != e[1]))

    def sorted_edges(self) -> list[tuple[str, str]]:
        """Edges ordered by node position, source first."""
        position = {name: i for i, name in enumerate(self.nodes)}
        return sorted(self.edges, key=lambda e: (position[e[0]], position[e[1]]))

    def to_edge_list(self) -> str:
        """One "src -> dst" line per edge, in node order."""
        return "".join(f"{a}{EDGE_SEPARATOR}{b}\n" for a, b in self.sorted_edges())

    @classmethod
    def from_edge_list(cls, text: str, nodes: Iterable[str]) -> "SummaryGraph":
        """
        Parses the edge-list format; blank lines and '#' comments are skipped.

        Raises:
            GraphError: Malformed line or unknown endpoint.
        """
        edges = set()
        for number, raw in enumerate(text.splitlines(), start=1):
            line = raw.strip()
            if not line or line.startswith("#"):
                continue
            if EDGE_SEPARATOR.strip() not in line:
                raise GraphError(f"Line {number} is not an edge: '{line}'")
            source, target = (part.strip() for part in line.split(EDGE_SEPARATOR.strip(), 1))
            edges.add((source, target))
        return cls(tuple(nodes), frozenset(edges))


def write_edge_list(graph: SummaryGraph, path: Path | str) -> None:
    """Writes a graph as UTF-8 edge-list text."""
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", encoding="utf-8", newline="\n") as f:
        f.write(graph.to_edge_list())


def read_edge_list(path: Path | str, nodes: Iterable[str]) -> SummaryGraph:
    """Reads an edge-list file over the given nodes."""
    with open(path, encoding="utf-8") as f:
        return SummaryGraph.from_edge_list(f.read(), nodes)


@dataclass(frozen=True, eq=False)
class LaggedCoefficients:
    """
    📚 Stack of τ coefficient matrices.

    `matrices[lag - 1][i, j]` is the effect of variable j at that lag on variable i now.
    """
    matrices: np.ndarray

    def __post_init__(self):
        stack = np.array(self.matrices, dtype=np.float64, copy=True)
        if stack.ndim != 3 or stack.shape[0] < 1 or stack.shape[1] != stack.shape[2]:
            raise GraphError(f"Lagged coefficients need shape (τ, N, N), got {stack.shape}")
        if not np.all(np.isfinite(stack)):
            raise GraphError("Lagged coefficients must be finite")
        stack.setflags(write=False)
        object.__setattr__(self, "matrices", stack)

    @property
    def max_lag(self) -> int:
        """τ"""
        return self.matrices.shape[0]

    @property
    def n_variables(self) -> int:
        """N"""
        return self.matrices.shape[1]

    def at_lag(self, lag: int) -> np.ndarray:
        """A_lag for lag in 1..τ."""
        if not 1 <= lag <= self.max_lag:
            raise IndexError(f"Lag {lag} outside 1..{self.max_lag}")
        return self.matrices[lag - 1]

    def strength(self) -> np.ndarray:
        """N×N matrix of max_lag |a^{i,j}|."""
        return np.abs(self.matrices).max(axis=0)

    def to_graph(self, nodes: Iterable[str], threshold: float = 0.0, include_self: bool = False) -> SummaryGraph:
        """
        Summary graph with edge j -> i whenever some |a^{i,j}| exceeds the threshold.
        """
        nodes = tuple(nodes)
        strength = self.strength()
        edges = {
            (nodes[j], nodes[i])
            for i in range(self.n_variables)
            for j in range(self.n_variables)
            if strength[i, j] > threshold and (include_self or i != j)
        }
        return SummaryGraph(nodes, frozenset(edges))

    @classmethod
    def from_design_coefficients(cls, rows: np.ndarray, max_lag: int) -> "LaggedCoefficients":
        """
        Builds the stack from per-target coefficient rows laid out like a lagged design
        (predictor-major, lag 1..τ), one row per target over all N predictors.
        """
        rows = np.asarray(rows, dtype=np.float64)
        n_targets = rows.shape[0]
        stack = rows.reshape(n_targets, -1, max_lag).transpose(2, 0, 1)
        return cls(stack)


@dataclass(frozen=True, eq=False)
class ResidualSeries:
    """
    🧮 Residuals of a per-target regression, T−τ rows.
    """
    values: np.ndarray
    model_df: int

    def __post_init__(self):
        matrix = np.array(self.values, dtype=np.float64, copy=True)
        if matrix.ndim == 1:
            matrix = matrix.reshape(-1, 1)
        if not np.all(np.isfinite(matrix)):
            raise GraphError("Residuals must be finite")
        matrix.setflags(write=False)
        object.__setattr__(self, "values", matrix)
