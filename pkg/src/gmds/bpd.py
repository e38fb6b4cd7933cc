"""Decimation guided by cavity marginals.

Alternates a few message-passing sweeps with permanently occupying the
vertices of highest occupation marginal, discounting their weight from
neighbor thresholds, until every constraint is satisfied.  Convergence of
the sweeps is never required; the marginals only rank candidates.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .bp import BpState, _vertex_stats
from .errors import InputError
from .graph import THRESHOLD_TOL, DominatingSet, WeightedGraph, is_satisfying


@dataclass
class BpdConfig:
    """Knobs of the decimation loop.

    ``occupy_fraction`` is the share of remaining candidates occupied per
    round (at least one vertex).  ``bp_sweeps_per_round`` bounds the sweeps
    between occupations; sweeping stops early once the residual falls below
    ``tol``.
    """

    beta: float = 8.0
    occupy_fraction: float = 0.01
    bp_sweeps_per_round: int = 10
    tol: float = 1e-7
    seed: int = 0
    damping: float = 0.0
    grid: float | None = None

    def __post_init__(self):
        if not 0 < self.occupy_fraction <= 1:
            raise InputError("occupy_fraction must lie in (0, 1]")
        if self.beta <= 0:
            raise InputError("beta must be > 0")
        if self.bp_sweeps_per_round < 1:
            raise InputError("bp_sweeps_per_round must be >= 1")


@dataclass(frozen=True)
class BpdResult:
    """Occupation order (the dominating set, in decimation order) and stats."""

    order: tuple[int, ...]
    rounds: int
    dominating_set: DominatingSet = field(compare=False, default=None)


def bpd_solve(graph: WeightedGraph, config: BpdConfig | None = None) -> DominatingSet:
    """Construct a valid dominating set; the result is checked before return."""
    return bpd_run(graph, config).dominating_set


def bpd_rank_order(graph: WeightedGraph, config: BpdConfig | None = None) -> list[int]:
    """The order in which decimation occupied vertices.

    The full list is exactly the member set of :func:`bpd_solve` under the
    same configuration, so prefixes of it realize word-budgeted selection.
    """
    return list(bpd_run(graph, config).order)


def bpd_run(graph: WeightedGraph, config: BpdConfig | None = None) -> BpdResult:
    cfg = config or BpdConfig()
    n = graph.n_vertices
    if n == 0:
        return BpdResult((), 0, DominatingSet.from_members([], 0))

    state = BpState(graph, cfg.beta, cfg.grid, seed=cfg.seed)
    theta = state.theta_res             # residual thresholds, mutated below
    occupied = graph.occupied.copy()
    order: list[int] = []

    adj = [graph.neighbors(i) for i in range(n)]

    def occupy(v: int) -> None:
        occupied[v] = True
        state.active_vertex[v] = False
        order.append(v)
        for p in range(state._out_ptr[v], state._out_ptr[v + 1]):
            e2 = int(state._out_eid[p])
            state.active_edge[e2] = False
            state.active_edge[e2 ^ 1] = False
        for k, wvk, _ in adj[v]:
            theta[k] -= wvk

    # vertices that cannot be covered even by all neighbors must self-occupy
    potential = np.zeros(n)
    for i, j, wij, wji in graph.edges:
        if not occupied[i] and not occupied[j]:
            potential[j] += wij
            potential[i] += wji
    for v in range(n):
        if not occupied[v] and theta[v] > THRESHOLD_TOL and potential[v] < theta[v] - THRESHOLD_TOL:
            occupy(v)

    def unsatisfied_exists() -> bool:
        return bool(((~occupied) & (theta > THRESHOLD_TOL)).any())

    rounds = 0
    while unsatisfied_exists():
        rounds += 1
        state.refresh_theta_units()
        for _ in range(cfg.bp_sweeps_per_round):
            if state.sweep(cfg.damping) < cfg.tol:
                break
        q1, _ = _vertex_stats(state)
        candidates = np.flatnonzero(~occupied)
        take = max(1, math.ceil(cfg.occupy_fraction * candidates.size))
        ranking = candidates[np.argsort(-q1[candidates], kind="stable")]
        for v in ranking[:take]:
            occupy(int(v))
            if not unsatisfied_exists():
                break

    members = np.flatnonzero(occupied)
    ds = DominatingSet.from_members(members, n)
    if not is_satisfying(graph, ds.indicator(n)):
        raise AssertionError("decimation produced a non-dominating set")
    return BpdResult(tuple(order), rounds, ds)
