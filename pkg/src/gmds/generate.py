"""Erdos-Renyi instance generation with configurable edge-weight laws."""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import InputError
from .graph import WeightedGraph

_PROB_TOL = 1e-12


@dataclass(frozen=True)
class WeightDistribution:
    """Discrete law for the ordered weight pair (w_ij, w_ji) of an edge.

    ``atoms`` is the one-sided marginal law; ``pair_atoms`` is the joint law
    actually sampled.  For a symmetric law the pair is (v, v) with one draw;
    for a generic asymmetric law the two sides are drawn independently; the
    :meth:`oriented` constructor instead couples them as (v, 0) or (0, v),
    which is how a directed instance is encoded as a weight pair.
    """

    atoms: tuple[tuple[float, float], ...]
    symmetric: bool
    pair_atoms: tuple[tuple[tuple[float, float], float], ...] = field(default=None)

    def __post_init__(self):
        total = sum(p for _, p in self.atoms)
        if abs(total - 1.0) > _PROB_TOL:
            raise InputError(f"atom probabilities sum to {total}, not 1")
        if any(v < 0 for v, _ in self.atoms) or any(p < 0 for _, p in self.atoms):
            raise InputError("atom values and probabilities must be >= 0")
        if self.pair_atoms is None:
            if self.symmetric:
                pairs = tuple(((v, v), p) for v, p in self.atoms)
            else:
                pairs = tuple(((a, b), pa * pb)
                              for a, pa in self.atoms for b, pb in self.atoms)
            object.__setattr__(self, "pair_atoms", pairs)
        ptotal = sum(p for _, p in self.pair_atoms)
        if abs(ptotal - 1.0) > _PROB_TOL:
            raise InputError(f"pair probabilities sum to {ptotal}, not 1")

    @classmethod
    def oriented(cls, theta: float) -> "WeightDistribution":
        """Each edge carries theta in exactly one direction, chosen fairly."""
        if theta <= 0:
            raise InputError("theta must be > 0")
        t = float(theta)
        return cls(atoms=((t, 0.5), (0.0, 0.5)), symmetric=False,
                   pair_atoms=(((t, 0.0), 0.5), ((0.0, t), 0.5)))

    @classmethod
    def constant(cls, value: float) -> "WeightDistribution":
        """Every weight equals ``value`` in both directions."""
        return cls(atoms=((float(value), 1.0),), symmetric=True)

    def sample_pairs(self, rng: np.random.Generator, m: int) -> tuple[np.ndarray, np.ndarray]:
        """Draw m ordered weight pairs; returns (w_ij, w_ji) arrays."""
        probs = np.array([p for _, p in self.pair_atoms])
        idx = rng.choice(len(self.pair_atoms), size=m, p=probs)
        ab = np.array([pair for pair, _ in self.pair_atoms])
        return ab[idx, 0].copy(), ab[idx, 1].copy()

    def receiving_values(self) -> tuple[float, ...]:
        """Distinct values the second pair component can take (with p > 0)."""
        vals = sorted({b for (_, b), p in self.pair_atoms if p > 0})
        return tuple(vals)


def benchmark_weight_distribution(theta: float) -> WeightDistribution:
    """Symmetric seven-value law on {0.4, ..., 1.0} * theta.

    The extreme values 0.4*theta and 1.0*theta carry probability 1/12 each,
    the five interior values 1/6 each.
    """
    if theta <= 0:
        raise InputError("theta must be > 0")
    values = [0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]
    probs = [1 / 12, 1 / 6, 1 / 6, 1 / 6, 1 / 6, 1 / 6, 1 / 12]
    atoms = tuple((v * theta, p) for v, p in zip(values, probs))
    return WeightDistribution(atoms=atoms, symmetric=True)


def uniform_support_distribution(theta: float) -> WeightDistribution:
    """Equal-probability symmetric law on the same {0.4, ..., 1.0} * theta support."""
    if theta <= 0:
        raise InputError("theta must be > 0")
    values = [0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0]
    atoms = tuple((v * theta, 1 / 7) for v in values)
    return WeightDistribution(atoms=atoms, symmetric=True)


def named_weight_distribution(name: str, theta: float) -> WeightDistribution:
    """Resolve a weight-family name as used by the command line.

    ``paper``          seven-value symmetric benchmark law,
    ``uniform``        equal-probability law on the same support,
    ``mds-undirected`` all weights equal to theta,
    ``mds-directed``   theta in exactly one direction per edge.
    """
    families = {
        "paper": benchmark_weight_distribution,
        "uniform": uniform_support_distribution,
        "mds-undirected": lambda t: WeightDistribution.constant(t),
        "mds-directed": WeightDistribution.oriented,
    }
    if name not in families:
        raise InputError(f"unknown weight family {name!r}")
    return families[name](theta)


def generate_er(n: int, c: float, dist: WeightDistribution, seed: int,
                theta: float = 1.0) -> WeightedGraph:
    """Erdos-Renyi instance with M = round(c*n/2) distinct edges.

    Pairs are drawn uniformly with rejection of repeats and self-loops, so
    the construction fixes the edge count rather than the edge probability.
    Deterministic for a given seed (PCG64 stream).
    """
    if n < 2:
        raise InputError("n must be >= 2")
    if c < 0 or c > n - 1:
        raise InputError("mean degree c must lie in [0, n-1]")
    m = int(round(c * n / 2.0))
    max_edges = n * (n - 1) // 2
    if m > max_edges:
        raise InputError(f"M={m} exceeds the {max_edges} available pairs")

    rng = np.random.Generator(np.random.PCG64(seed))
    chosen: list[tuple[int, int]] = []
    seen: set[int] = set()
    while len(chosen) < m:
        batch = max(1024, 2 * (m - len(chosen)))
        us = rng.integers(0, n, size=batch)
        vs = rng.integers(0, n, size=batch)
        for u, v in zip(us, vs):
            if u == v:
                continue
            a, b = (u, v) if u < v else (v, u)
            key = int(a) * n + int(b)
            if key in seen:
                continue
            seen.add(key)
            chosen.append((int(a), int(b)))
            if len(chosen) == m:
                break

    w_ij, w_ji = dist.sample_pairs(rng, m)
    edges = [(i, j, float(w_ij[t]), float(w_ji[t]))
             for t, (i, j) in enumerate(chosen)]
    return WeightedGraph.uniform(n, edges, theta)
