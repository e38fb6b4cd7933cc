"""Edge-weighted graph instances for the generalized dominating set problem.

A vertex j is *satisfied* by an occupation pattern when it is occupied
itself or when the occupied neighbors i supply enough weight:
sum_i w_{i,j} >= theta_j.  Thresholds are stored per vertex as residuals
so that decimation (occupying a vertex and discounting its contribution)
and the plain uniform-threshold problem share one representation; a
residual theta_j <= 0 means the constraint of j is already satisfied.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .errors import GraphParseError, InputError

# Slack for threshold comparisons: a sum within this distance below the
# threshold still counts as reaching it.  Ties count as satisfied, and the
# slack keeps float accumulation from flipping honest ties.
THRESHOLD_TOL = 1e-9


@dataclass
class WeightedGraph:
    """A graph with an ordered weight pair on every edge.

    ``edges[t] = (i, j, w_ij, w_ji)`` where ``w_ij`` is the weight vertex i
    contributes toward the constraint of vertex j (and vice versa).  At most
    one edge per unordered pair, no self loops, all weights >= 0.
    """

    n_vertices: int
    edges: list[tuple[int, int, float, float]]
    theta: np.ndarray  # residual threshold per vertex, float64
    occupied: np.ndarray = field(default=None)  # bool per vertex

    def __post_init__(self):
        if self.n_vertices < 0:
            raise InputError("n_vertices must be >= 0")
        self.theta = np.asarray(self.theta, dtype=np.float64)
        if self.theta.shape != (self.n_vertices,):
            raise InputError("theta must have one entry per vertex")
        if self.occupied is None:
            self.occupied = np.zeros(self.n_vertices, dtype=bool)
        seen = set()
        for i, j, wij, wji in self.edges:
            if i == j:
                raise InputError(f"self-loop at vertex {i}")
            if not (0 <= i < self.n_vertices and 0 <= j < self.n_vertices):
                raise InputError(f"edge ({i},{j}) has vertex id out of range")
            if wij < 0 or wji < 0:
                raise InputError(f"edge ({i},{j}) has a negative weight")
            key = (i, j) if i < j else (j, i)
            if key in seen:
                raise InputError(f"duplicate edge ({i},{j})")
            seen.add(key)
        self._neighbors = None

    @classmethod
    def uniform(cls, n_vertices: int, edges: Iterable[tuple[int, int, float, float]],
                theta: float) -> "WeightedGraph":
        """Build a graph with the same threshold at every vertex."""
        return cls(n_vertices, list(edges), np.full(n_vertices, float(theta)))

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def neighbors(self, i: int) -> list[tuple[int, float, float]]:
        """Neighbors of i as ``(j, w_ij, w_ji)`` with w_ij the weight i sends to j."""
        return self._adjacency()[i]

    def degree(self, i: int) -> int:
        return len(self._adjacency()[i])

    def _adjacency(self):
        if self._neighbors is None:
            adj = [[] for _ in range(self.n_vertices)]
            for i, j, wij, wji in self.edges:
                adj[i].append((j, wij, wji))
                adj[j].append((i, wji, wij))
            self._neighbors = adj
        return self._neighbors

    def in_weight_total(self) -> np.ndarray:
        """Total weight each vertex could receive if all neighbors occupied."""
        total = np.zeros(self.n_vertices)
        for i, j, wij, wji in self.edges:
            total[j] += wij
            total[i] += wji
        return total

    def occupy_and_reduce(self, i: int) -> "WeightedGraph":
        """Mark i occupied and discount its contribution from neighbor thresholds.

        Neighbors whose residual drops to <= 0 are thereby satisfied; they stay
        in the instance as candidate dominators.  Mutates the graph in place and
        returns it.  Raises if i is already occupied.
        """
        if self.occupied[i]:
            raise InputError(f"vertex {i} is already occupied")
        self.occupied[i] = True
        for j, wij, _wji in self.neighbors(i):
            self.theta[j] -= wij
        return self

    def is_pristine(self) -> bool:
        """True when nothing has been occupied and thresholds are uniform."""
        return (not self.occupied.any()) and (
            self.n_vertices == 0 or np.all(self.theta == self.theta[0]))

    def copy(self) -> "WeightedGraph":
        return WeightedGraph(self.n_vertices, list(self.edges),
                             self.theta.copy(), self.occupied.copy())


@dataclass(frozen=True)
class DominatingSet:
    """A set of occupied vertices presented as a solver result."""

    members: frozenset[int]
    size: int
    relative_size: float

    @classmethod
    def from_members(cls, members: Iterable[int], n_vertices: int) -> "DominatingSet":
        mem = frozenset(int(m) for m in members)
        if n_vertices <= 0 and mem:
            raise InputError("members on an empty graph")
        if any(m < 0 or m >= n_vertices for m in mem):
            raise InputError("member id out of range")
        rel = len(mem) / n_vertices if n_vertices else 0.0
        return cls(mem, len(mem), rel)

    def indicator(self, n_vertices: int) -> np.ndarray:
        config = np.zeros(n_vertices, dtype=np.int8)
        config[list(self.members)] = 1
        return config


def is_satisfying(graph: WeightedGraph, config: Sequence[int]) -> bool:
    """Check that every vertex is occupied or receives enough neighbor weight.

    ``config`` is a 0/1 state per vertex.  A vertex whose residual threshold
    is <= 0 is satisfied unconditionally.
    """
    c = np.asarray(config)
    if c.shape != (graph.n_vertices,):
        raise InputError(
            f"configuration length {c.shape} does not match {graph.n_vertices} vertices")
    received = np.zeros(graph.n_vertices)
    for i, j, wij, wji in graph.edges:
        if c[i]:
            received[j] += wij
        if c[j]:
            received[i] += wji
    ok = (c != 0) | (received >= graph.theta - THRESHOLD_TOL)
    return bool(ok.all())


def occupy_and_reduce(graph: WeightedGraph, i: int) -> WeightedGraph:
    """Module-level alias for :meth:`WeightedGraph.occupy_and_reduce`."""
    return graph.occupy_and_reduce(i)


def save_graph(graph: WeightedGraph, path) -> None:
    """Write an instance in the TSV format read back by :func:`load_graph`.

    Two header lines ``#N<TAB>n`` and ``#theta<TAB>t`` followed by one edge
    per line ``i<TAB>j<TAB>w_ij<TAB>w_ji``.  Only pristine graphs (uniform
    thresholds, nothing occupied) can be serialized.
    """
    if not graph.is_pristine():
        raise InputError("only pristine uniform-threshold graphs can be saved")
    theta = float(graph.theta[0]) if graph.n_vertices else 0.0
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(f"#N\t{graph.n_vertices}\n")
        fh.write(f"#theta\t{theta!r}\n")
        for i, j, wij, wji in graph.edges:
            fh.write(f"{i}\t{j}\t{wij!r}\t{wji!r}\n")


def load_graph(path) -> WeightedGraph:
    """Parse the TSV instance format; errors carry the offending line number."""
    n = None
    theta = None
    edges: list[tuple[int, int, float, float]] = []
    seen: set[tuple[int, int]] = set()
    with open(path, "r", encoding="utf-8") as fh:
        for lineno, raw in enumerate(fh, start=1):
            line = raw.strip()
            if not line:
                continue
            if line.startswith("#"):
                parts = line[1:].split()
                if not parts:
                    raise GraphParseError("empty header line", lineno)
                key = parts[0]
                if key == "N":
                    try:
                        n = int(parts[1])
                    except (IndexError, ValueError):
                        raise GraphParseError("bad #N header", lineno) from None
                elif key == "theta":
                    try:
                        theta = float(parts[1])
                    except (IndexError, ValueError):
                        raise GraphParseError("bad #theta header", lineno) from None
                # unknown headers are ignored so the format can grow
                continue
            parts = line.split()
            if len(parts) != 4:
                raise GraphParseError(
                    f"expected 'i j w_ij w_ji', got {len(parts)} fields", lineno)
            try:
                i, j = int(parts[0]), int(parts[1])
                wij, wji = float(parts[2]), float(parts[3])
            except ValueError:
                raise GraphParseError("non-numeric field", lineno) from None
            if n is None:
                raise GraphParseError("edge before #N header", lineno)
            if i == j:
                raise GraphParseError(f"self-loop at vertex {i}", lineno)
            if not (0 <= i < n and 0 <= j < n):
                raise GraphParseError(f"vertex id out of range in edge ({i},{j})", lineno)
            if wij < 0 or wji < 0:
                raise GraphParseError(f"negative weight on edge ({i},{j})", lineno)
            key2 = (i, j) if i < j else (j, i)
            if key2 in seen:
                raise GraphParseError(f"duplicate edge ({i},{j})", lineno)
            seen.add(key2)
            edges.append((i, j, wij, wji))
    if n is None:
        raise GraphParseError("missing #N header", 1)
    if theta is None:
        raise GraphParseError("missing #theta header", 1)
    return WeightedGraph.uniform(n, edges, theta)
