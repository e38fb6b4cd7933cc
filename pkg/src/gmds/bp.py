"""Replica-symmetric belief propagation on weighted dominating-set instances.

A cavity message on the directed edge i->j is the joint law of the endpoint
states with the constraint of j removed.  It has three independent entries
(m00, m01, m1): sender empty with receiver empty / receiver occupied, and
sender occupied (the receiver state is then irrelevant, so the two occupied
entries coincide).  Normalization is m00 + m01 + 2*m1 = 1.

The update for i->j combines the incoming messages of the other neighbors of
i through a threshold-counting sum: the total probability weight of neighbor
occupation patterns whose weighted contribution reaches the residual
threshold of i.  That sum is a capped subset-sum dynamic program over a
weight grid, exact when weights are grid multiples.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import InputError, InsufficientDataError
from .graph import WeightedGraph

NORM_TOL = 1e-10


@dataclass(frozen=True)
class CavityMessage:
    """The three independent components of a directed-edge cavity message."""

    m00: float
    m01: float
    m1: float

    def __post_init__(self):
        if min(self.m00, self.m01, self.m1) < -NORM_TOL:
            raise InputError("message components must be non-negative")
        norm = self.m00 + self.m01 + 2.0 * self.m1
        if abs(norm - 1.0) > NORM_TOL:
            raise InputError(f"message normalization {norm} != 1")

    @classmethod
    def uniform(cls) -> "CavityMessage":
        return cls(0.25, 0.25, 0.25)


@dataclass(frozen=True)
class ThermoDensities:
    """Densities measured from one message-passing state.

    ``s == (rho - f) * beta`` by construction for beta > 0; at beta = 0 the
    free energy is undefined (nan) and the entropy is computed directly.
    """

    beta: float
    rho: float
    f: float
    s: float
    converged: bool
    residual: float


def threshold_exceed_sum(contributors, theta_res, grid):
    """Probability-weighted count of contributor subsets reaching a threshold.

    ``contributors`` is a sequence of (occ_factor, emp_factor, weight).  The
    returned value is the sum over all binary occupation patterns of the
    indicator that the occupied weights total at least ``theta_res``, each
    pattern weighted by the product of its per-contributor factors.  A
    non-positive ``theta_res`` short-circuits to the full factor product
    (every pattern qualifies; a sum equal to the threshold also qualifies).

    Computed by a dynamic program over cumulative weight, quantized to
    ``grid`` units and capped at the threshold, so the cost is
    O(len(contributors) * theta_res / grid).  Exact whenever the weights are
    integer multiples of ``grid``; other weights are rounded to the nearest
    grid point.  Arithmetic follows the input types (floats, Fractions, ...).
    """
    if grid <= 0:
        raise InputError("grid must be > 0")
    if theta_res <= 0:
        total = 1
        for occ, emp, _w in contributors:
            total = total * (occ + emp)
        return total
    T = int(math.ceil(theta_res / grid - 1e-9))
    if T < 1:
        T = 1
    dp = [0] * (T + 1)
    dp[0] = 1
    for occ, emp, w in contributors:
        wu = int(round(w / grid))
        for u in range(T, -1, -1):
            v = dp[u]
            if v != 0:
                t = min(T, u + wu)
                if t == u:
                    dp[u] = v * (occ + emp)
                else:
                    dp[t] = dp[t] + v * occ
                    dp[u] = v * emp
    return dp[T]


class BpState:
    """Messages plus the edge layout of one graph at one inverse temperature.

    The state owns per-vertex residual thresholds and activity masks so the
    decimation solver can freeze vertices without rebuilding the layout.
    """

    def __init__(self, graph: WeightedGraph, beta: float, grid: float | None = None,
                 seed: int = 0):
        if beta < 0:
            raise InputError("beta must be >= 0")
        self.graph = graph
        self.beta = float(beta)
        self.seed = int(seed)
        self._stream_idx = 0
        n = graph.n_vertices
        m = graph.n_edges
        if grid is None:
            scale = max(
                float(graph.theta.max()) if n else 0.0,
                max((max(wij, wji) for _, _, wij, wji in graph.edges), default=0.0),
            )
            grid = scale / 10.0 if scale > 0 else 0.1
        if grid <= 0:
            raise InputError("grid must be > 0")
        self.grid = float(grid)

        src = np.empty(2 * m, dtype=np.int64)
        dst = np.empty(2 * m, dtype=np.int64)
        w_peer = np.empty(2 * m)  # weight the far endpoint sends back to src
        for t, (i, j, wij, wji) in enumerate(graph.edges):
            e = 2 * t
            src[e], dst[e], w_peer[e] = i, j, wji
            src[e + 1], dst[e + 1], w_peer[e + 1] = j, i, wij
        order = np.argsort(src, kind="stable")
        self._out_eid = order.astype(np.int64)
        counts = np.bincount(src, minlength=n) if m else np.zeros(n, dtype=np.int64)
        self._out_ptr = np.zeros(n + 1, dtype=np.int64)
        np.cumsum(counts, out=self._out_ptr[1:])
        self._src = src
        self._dst = dst
        self._w_peer = w_peer
        self._units_peer = np.round(w_peer / self.grid).astype(np.int64)

        self.theta_res = graph.theta.astype(np.float64).copy()
        self.active_vertex = ~graph.occupied.copy()
        self.active_edge = self.active_vertex[src] & self.active_vertex[dst]
        self.refresh_theta_units()
        t_max = int(self.theta_units.max()) if n else 0
        self._scratch = np.zeros(t_max + 2)

        self.messages = np.full((2 * m, 3), 0.25)
        self.converged = False
        self.residual = math.inf
        self.sweeps_done = 0
        self._edge_index: dict[tuple[int, int], int] | None = None

    # -- bookkeeping -------------------------------------------------------

    def reseed(self, seed: int) -> None:
        self.seed = int(seed)
        self._stream_idx = 0

    def next_stream_seed(self) -> int:
        """Kernel seed derived from (state seed, sweep counter).

        The compiled RNG state is process-global; reseeding every sweep from
        an object-local counter keeps trajectories independent of any other
        solver running in the same process.
        """
        self._stream_idx += 1
        return (self.seed * 1_000_003 + self._stream_idx * 7_919) % (2**31 - 1)

    def refresh_theta_units(self) -> None:
        units = np.ceil(self.theta_res / self.grid - 1e-9)
        self.theta_units = np.maximum(units, 0).astype(np.int64)

    def edge_id(self, i: int, j: int) -> int:
        if self._edge_index is None:
            self._edge_index = {}
            for e in range(self._src.shape[0]):
                self._edge_index[(int(self._src[e]), int(self._dst[e]))] = e
        try:
            return self._edge_index[(i, j)]
        except KeyError:
            raise InputError(f"no directed edge {i}->{j}") from None

    def message(self, i: int, j: int) -> CavityMessage:
        e = self.edge_id(i, j)
        return CavityMessage(*self.messages[e])

    def exp_mb(self) -> float:
        return math.exp(-self.beta)

    def n_active_vertices(self) -> int:
        return int(self.active_vertex.sum())

    # -- iteration ---------------------------------------------------------

    def sweep(self, damping: float = 0.0) -> float:
        """One asynchronous pass over active edges in a fresh random order."""
        order = np.flatnonzero(self.active_edge).astype(np.int64)
        _kernels.seed_rng(self.next_stream_seed())
        _kernels.shuffle_inplace(order)
        residual = _kernels.bp_sweep(
            self.messages, self._out_ptr, self._out_eid, self._src,
            self._units_peer, self.theta_units, self.exp_mb(), damping,
            self.active_edge, order, self._scratch)
        self.sweeps_done += 1
        self.residual = float(residual)
        return self.residual

    def run(self, max_sweeps: int, tol: float, damping: float = 0.0) -> bool:
        for _ in range(max_sweeps):
            if self.sweep(damping) < tol:
                self.converged = True
                return True
        self.converged = False
        return False


def run_bp(graph: WeightedGraph, beta: float, max_sweeps: int = 200,
           tol: float = 1e-7, damping: float = 0.0, seed: int = 0,
           grid: float | None = None) -> tuple[BpState, bool, float]:
    """Iterate the cavity update from the uniform message until stable.

    Sweeps are asynchronous in a seeded random edge order with optional
    damping (new = (1-damping)*update + damping*old).  Non-convergence is a
    legitimate outcome and is reported, not raised.
    """
    if max_sweeps < 1:
        raise InputError("max_sweeps must be >= 1")
    if tol <= 0:
        raise InputError("tol must be > 0")
    if not 0 <= damping < 1:
        raise InputError("damping must lie in [0, 1)")
    state = BpState(graph, beta, grid, seed=seed)
    state.run(max_sweeps, tol, damping)
    return state, state.converged, state.residual


def update_message(state: BpState, i: int, j: int) -> CavityMessage:
    """Recompute the message i->j from the current state (reference path).

    This mirrors the compiled sweep kernel in plain Python and is used for
    spot checks; it does not modify the state.
    """
    e = state.edge_id(i, j)
    contributors = []
    prod1 = 1.0
    for p in range(state._out_ptr[i], state._out_ptr[i + 1]):
        e2 = int(state._out_eid[p])
        if e2 == e or not state.active_edge[e2]:
            continue
        r = e2 ^ 1
        m00, m01, m1 = state.messages[r]
        contributors.append((m1, m00, float(state._w_peer[e2])))
        prod1 *= m1 + m01
    theta = float(state.theta_res[i])
    m00 = threshold_exceed_sum(contributors, theta, state.grid)
    w_back = round(float(state._w_peer[e]) / state.grid) * state.grid
    m01 = threshold_exceed_sum(contributors, theta - w_back, state.grid)
    m1 = state.exp_mb() * prod1
    z = m00 + m01 + 2.0 * m1
    if z <= 0 or not math.isfinite(z):
        return CavityMessage.uniform()
    return CavityMessage(m00 / z, m01 / z, m1 / z)


def marginal(state: BpState, j: int) -> tuple[float, float]:
    """Occupation marginal (q0, q1) of vertex j under the current messages."""
    contributors = []
    prod1 = 1.0
    for p in range(state._out_ptr[j], state._out_ptr[j + 1]):
        e2 = int(state._out_eid[p])
        if not state.active_edge[e2]:
            continue
        r = e2 ^ 1
        m00, m01, m1 = state.messages[r]
        contributors.append((m1, m00, float(state._w_peer[e2])))
        prod1 *= m1 + m01
    z0 = threshold_exceed_sum(contributors, float(state.theta_res[j]), state.grid)
    z1 = state.exp_mb() * prod1
    z = z0 + z1
    if z <= 0:
        return 0.5, 0.5
    return z0 / z, z1 / z


def marginals(state: BpState) -> np.ndarray:
    """Occupation marginal q1 for every vertex (0 for inactive vertices)."""
    q1, _ = _vertex_stats(state)
    return q1


def _vertex_stats(state: BpState) -> tuple[np.ndarray, np.ndarray]:
    n = state.graph.n_vertices
    q1 = np.zeros(n)
    lnz = np.zeros(n)
    _kernels.vertex_stats(
        state.messages, state._out_ptr, state._out_eid, state._units_peer,
        state.theta_units, state.exp_mb(), state.active_edge,
        state.active_vertex, state._scratch, q1, lnz)
    return q1, lnz


def densities(state: BpState) -> ThermoDensities:
    """Occupation, free-energy and entropy densities of the current state.

    Vertex and edge contributions follow the Bethe decomposition of the
    log partition function; convergence of the state is propagated, not
    required.  Densities are per active vertex.
    """
    n_active = state.n_active_vertices()
    if n_active == 0:
        raise InputError("no active vertices to measure")
    q1, lnzv = _vertex_stats(state)
    sum_lnze, _ = _kernels.edge_lnz_sum(state.messages, state.active_edge)
    rho = float(q1[state.active_vertex].mean())
    sum_lnzv = float(lnzv[state.active_vertex].sum())
    beta = state.beta
    if beta == 0:
        s = (sum_lnzv - float(sum_lnze)) / n_active
        f = math.nan
    else:
        f = -(sum_lnzv - float(sum_lnze)) / (beta * n_active)
        s = (rho - f) * beta
    return ThermoDensities(beta, rho, f, s, state.converged, state.residual)


def scan_beta(graph: WeightedGraph, betas, max_sweeps: int = 1000,
              tol: float = 1e-7, damping: float = 0.0, seed: int = 0,
              grid: float | None = None, warm_start: bool = True,
              stop_on_divergence: bool = False) -> list[ThermoDensities]:
    """Run belief propagation over a grid of beta values.

    With ``warm_start`` each run continues from the previous fixed point,
    which tracks the solution branch with far fewer sweeps than restarting
    from the uniform message.  ``stop_on_divergence`` truncates the scan at
    the first non-converged point.
    """
    betas = [float(b) for b in betas]
    results: list[ThermoDensities] = []
    state: BpState | None = None
    for k, beta in enumerate(betas):
        if state is None or not warm_start:
            state = BpState(graph, beta, grid, seed=seed + k)
        else:
            state = _rebeta(state, beta, seed + k)
        state.run(max_sweeps, tol, damping)
        results.append(densities(state))
        if stop_on_divergence and not state.converged:
            break
    return results


def _rebeta(state: BpState, beta: float, seed: int) -> BpState:
    state.beta = float(beta)
    state.converged = False
    state.residual = math.inf
    state.reseed(seed)
    return state


@dataclass(frozen=True)
class Rho0Estimate:
    """Minimum occupation density read off the entropy zero crossing."""

    rho0: float
    beta_at_zero: float
    extrapolated: bool
    points: tuple[ThermoDensities, ...]


def estimate_rho0(graph: WeightedGraph, beta_schedule, max_sweeps: int = 1000,
                  tol: float = 1e-7, damping: float = 0.0, seed: int = 0,
                  grid: float | None = None, warm_start: bool = True) -> Rho0Estimate:
    """Locate the occupation density where the entropy density reaches zero.

    Runs belief propagation along an increasing beta schedule, keeping the
    converged points, and interpolates the entropy zero crossing linearly on
    the (rho, s) curve.  If iteration stops converging while s is still
    positive, the last two points are extrapolated instead and the result is
    flagged.  The schedule is abandoned at the first non-converged beta.
    """
    schedule = [float(b) for b in beta_schedule]
    if sorted(schedule) != schedule:
        raise InputError("beta schedule must be increasing")
    points: list[ThermoDensities] = []
    state: BpState | None = None
    for k, beta in enumerate(schedule):
        if state is None or not warm_start:
            state = BpState(graph, beta, grid, seed=seed + k)
        else:
            state = _rebeta(state, beta, seed + k)
        state.run(max_sweeps, tol, damping)
        if not state.converged:
            break
        points.append(densities(state))
        if points[-1].s <= 0:
            break
    return rho0_from_points(points)


def rho0_from_points(points) -> Rho0Estimate:
    """Shared crossing/extrapolation logic for instance and ensemble scans."""
    if len(points) < 2:
        raise InsufficientDataError(
            f"need at least 2 converged scan points, have {len(points)}")
    for a, b in zip(points, points[1:]):
        if a.s > 0 >= b.s:
            t = a.s / (a.s - b.s)
            rho0 = a.rho + t * (b.rho - a.rho)
            beta0 = a.beta + t * (b.beta - a.beta)
            return Rho0Estimate(rho0, beta0, False, tuple(points))
    a, b = points[-2], points[-1]
    if not b.s < a.s:
        raise InsufficientDataError("entropy is not decreasing; cannot extrapolate")
    t = a.s / (a.s - b.s)
    rho0 = a.rho + t * (b.rho - a.rho)
    beta0 = a.beta + t * (b.beta - a.beta)
    return Rho0Estimate(rho0, beta0, True, tuple(points))
