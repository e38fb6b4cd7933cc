"""Brute-force ground truth on small instances.

Exact minimum dominating sets and exact Gibbs-measure quantities,
used as the oracle side of solver tests.  Hard size caps keep these
routines honest: they refuse instances they cannot enumerate.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import SizeLimitError
from .graph import THRESHOLD_TOL, DominatingSet, WeightedGraph

_ENUM_CAP = 16   # plain enumeration up to here
_MDS_CAP = 24    # branch and bound up to here
_THERMO_CAP = 20


@dataclass(frozen=True)
class ExactThermo:
    """Exact partition function and derived densities at one beta."""

    Z: float
    marginals: np.ndarray  # occupation probability per vertex
    rho: float
    f: float               # nan at beta = 0
    s: float


def _satisfying_mask(graph: WeightedGraph, n: int) -> tuple[np.ndarray, np.ndarray]:
    """All-configuration satisfiability scan; returns (mask, occupied-count)."""
    configs = np.arange(1 << n, dtype=np.int64)
    sat = np.ones(configs.shape, dtype=bool)
    adj = [graph.neighbors(j) for j in range(n)]
    for j in range(n):
        wsum = np.zeros(configs.shape)
        for k, _wjk, wkj in adj[j]:
            wsum += wkj * ((configs >> k) & 1)
        bit_j = ((configs >> j) & 1).astype(bool)
        sat &= bit_j | (wsum >= graph.theta[j] - THRESHOLD_TOL)
    n1 = np.bitwise_count(configs)
    return sat, n1


def exact_thermo(graph: WeightedGraph, beta: float) -> ExactThermo:
    """Sum the constrained Gibbs measure over all 2^n configurations.

    Each satisfying configuration contributes exp(-beta * occupied count).
    At beta = 0 the free energy is undefined (reported as nan) and the
    entropy is ln(number of satisfying configurations) / n.
    """
    n = graph.n_vertices
    if n > _THERMO_CAP:
        raise SizeLimitError(f"exact_thermo refuses n={n} > {_THERMO_CAP}")
    sat, n1 = _satisfying_mask(graph, n)
    weights = np.where(sat, np.exp(-beta * n1), 0.0)
    Z = float(weights.sum())
    if Z <= 0:
        # no satisfying configuration at all; cannot happen for theta-connected
        # instances since all-occupied always satisfies, but guard anyway
        return ExactThermo(0.0, np.zeros(n), math.nan, math.nan, math.nan)
    configs = np.arange(1 << n, dtype=np.int64)
    marg = np.empty(n)
    for j in range(n):
        bit_j = ((configs >> j) & 1).astype(np.float64)
        marg[j] = float((weights * bit_j).sum()) / Z
    rho = float(marg.mean()) if n else 0.0
    if beta == 0:
        s = math.log(Z) / n
        f = math.nan
    else:
        f = -math.log(Z) / (beta * n)
        s = (rho - f) * beta
    return ExactThermo(Z, marg, rho, f, s)


def exact_mds(graph: WeightedGraph) -> tuple[int, DominatingSet]:
    """Smallest satisfying occupation set, by enumeration or branch and bound."""
    n = graph.n_vertices
    if n > _MDS_CAP:
        raise SizeLimitError(f"exact_mds refuses n={n} > {_MDS_CAP}")
    if n == 0:
        return 0, DominatingSet.from_members([], 0)
    if n <= _ENUM_CAP:
        members = _mds_enumerate(graph, n)
    else:
        members = _mds_branch_bound(graph, n)
    ds = DominatingSet.from_members(members, n)
    return ds.size, ds


def _mds_enumerate(graph: WeightedGraph, n: int) -> list[int]:
    sat, n1 = _satisfying_mask(graph, n)
    n1 = np.where(sat, n1, n + 1)
    best = int(n1.argmin())  # ties resolve to the smallest configuration code
    return [j for j in range(n) if (best >> j) & 1]


def _mds_branch_bound(graph: WeightedGraph, n: int) -> list[int]:
    theta = graph.theta.copy()
    adj = [graph.neighbors(j) for j in range(n)]
    pending = graph.in_weight_total()
    received = np.zeros(n)
    tol = THRESHOLD_TOL
    max_cover = 1 + max((len(a) for a in adj), default=0)

    # visit high-degree vertices first; occupancy decisions there cut deepest
    order = sorted(range(n), key=lambda v: (-len(adj[v]), v))

    best_set = _greedy_cover(graph, n)
    best_size = len(best_set)

    chosen: list[int] = []
    state = np.zeros(n, dtype=np.int8)  # 0 undecided, 1 occupied, 2 empty

    def satisfied(j: int) -> bool:
        return state[j] == 1 or received[j] >= theta[j] - tol

    def unsat_count() -> int:
        return sum(0 if satisfied(j) else 1 for j in range(n))

    def rec(pos: int):
        nonlocal best_size, best_set
        if len(chosen) >= best_size:
            return
        if pos == n:
            # feasibility was enforced along the way, so this is a cover
            best_size = len(chosen)
            best_set = list(chosen)
            return
        lb = math.ceil(unsat_count() / max_cover)
        if len(chosen) + lb >= best_size:
            return
        v = order[pos]

        # branch: occupy v
        state[v] = 1
        chosen.append(v)
        for k, wvk, _ in adj[v]:
            received[k] += wvk
            pending[k] -= wvk
        rec(pos + 1)
        for k, wvk, _ in adj[v]:
            received[k] -= wvk
            pending[k] += wvk
        chosen.pop()

        # branch: leave v empty, if its constraint can still be met
        state[v] = 2
        for k, wvk, _ in adj[v]:
            pending[k] -= wvk
        feasible = received[v] + pending[v] >= theta[v] - tol
        if feasible:
            for k, wvk, _ in adj[v]:
                if state[k] == 2 and received[k] + pending[k] < theta[k] - tol:
                    feasible = False
                    break
        if feasible:
            rec(pos + 1)
        for k, wvk, _ in adj[v]:
            pending[k] += wvk
        state[v] = 0

    rec(0)
    return sorted(best_set)


def _greedy_cover(graph: WeightedGraph, n: int) -> list[int]:
    """Any valid cover, used as the initial branch-and-bound incumbent."""
    theta = graph.theta
    received = np.zeros(n)
    occupied = np.zeros(n, dtype=bool)
    tol = THRESHOLD_TOL

    def n_unsat() -> np.ndarray:
        return ~(occupied | (received >= theta - tol))

    chosen = []
    while n_unsat().any():
        unsat = n_unsat()
        best_v, best_gain = -1, -1
        for v in range(n):
            if occupied[v]:
                continue
            gain = 1 if unsat[v] else 0
            for k, wvk, _ in graph.neighbors(v):
                if unsat[k] and received[k] + wvk >= theta[k] - tol:
                    gain += 1
            if gain > best_gain:
                best_v, best_gain = v, gain
        occupied[best_v] = True
        chosen.append(best_v)
        for k, wvk, _ in graph.neighbors(best_v):
            received[k] += wvk
    return chosen
