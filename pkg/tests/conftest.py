"""Shared test helpers: small random structures with fixed seeds."""

import heapq

import numpy as np
import pytest

from gmds.graph import WeightedGraph

BENCHMARK_VALUES = (0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0)


def random_tree(n: int, rng: np.random.Generator,
                values=BENCHMARK_VALUES, theta: float = 1.0) -> WeightedGraph:
    """Uniform random labelled tree (random code sequence) with symmetric weights."""
    if n == 1:
        return WeightedGraph.uniform(1, [], theta)
    if n == 2:
        pairs = [(0, 1)]
    else:
        seq = rng.integers(0, n, size=n - 2)
        degree = np.ones(n, dtype=int)
        for s in seq:
            degree[s] += 1
        leaves = [i for i in range(n) if degree[i] == 1]
        heapq.heapify(leaves)
        pairs = []
        for s in seq:
            leaf = heapq.heappop(leaves)
            pairs.append((leaf, int(s)))
            degree[s] -= 1
            if degree[s] == 1:
                heapq.heappush(leaves, int(s))
        pairs.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    edges = []
    for u, v in pairs:
        w = float(rng.choice(values)) * theta
        edges.append((u, v, w, w))
    return WeightedGraph.uniform(n, edges, theta)


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
