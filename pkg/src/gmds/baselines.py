"""Comparison selectors on sentence graphs: PageRank and Affinity Propagation."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InputError
from .graph import WeightedGraph

# stands in for minus infinity in the similarity matrix; vertices can only
# choose graph neighbors (or themselves) as exemplars
NO_EDGE = -1e30


@dataclass(frozen=True)
class PageRankResult:
    scores: np.ndarray
    converged: bool
    iterations: int
    residual: float


def pagerank(graph: WeightedGraph, p: float = 0.85, tol: float = 1e-12,
             max_iters: int = 1000) -> PageRankResult:
    """Weighted random-walk importance with uniform teleport.

    Fixed point of P_i = (1-p)/N + p * sum_j P_j w_{j,i} / (sum_k w_{j,k}),
    where j runs over the neighbors of i.  Vertices with zero outgoing
    weight redistribute their mass uniformly.  Scores form a probability
    vector at every iteration.
    """
    if not 0 <= p < 1:
        raise InputError("jump probability p must lie in [0, 1)")
    n = graph.n_vertices
    if n == 0:
        raise InputError("empty graph")
    srcs, dsts, wts = [], [], []
    for i, j, wij, wji in graph.edges:
        if wij > 0:
            srcs.append(i)
            dsts.append(j)
            wts.append(wij)
        if wji > 0:
            srcs.append(j)
            dsts.append(i)
            wts.append(wji)
    srcs = np.asarray(srcs, dtype=np.int64)
    dsts = np.asarray(dsts, dtype=np.int64)
    wts = np.asarray(wts)
    out_weight = np.zeros(n)
    np.add.at(out_weight, srcs, wts)
    dangling = out_weight <= 0
    frac = np.zeros(len(wts))
    if len(wts):
        frac = wts / out_weight[srcs]

    scores = np.full(n, 1.0 / n)
    residual = math.inf
    for it in range(1, max_iters + 1):
        incoming = np.zeros(n)
        if len(wts):
            np.add.at(incoming, dsts, scores[srcs] * frac)
        teleport = (1.0 - p) / n + p * scores[dangling].sum() / n
        new = teleport + p * incoming
        residual = float(np.abs(new - scores).sum())
        scores = new
        if residual < tol:
            return PageRankResult(scores, True, it, residual)
    return PageRankResult(scores, False, max_iters, residual)


def pagerank_select(scores: np.ndarray, fraction: float) -> list[int]:
    """Vertex ids of the top ceil(fraction * N) scores, ties by lowest id."""
    if not 0 < fraction <= 1:
        raise InputError("fraction must lie in (0, 1]")
    scores = np.asarray(scores)
    k = math.ceil(fraction * scores.shape[0])
    order = np.argsort(-scores, kind="stable")
    return sorted(int(v) for v in order[:k])


@dataclass
class ApState:
    """Dense responsibility/availability matrices of one AP run."""

    responsibilities: np.ndarray
    availabilities: np.ndarray
    self_preference: float


@dataclass(frozen=True)
class ApResult:
    exemplars: tuple[int, ...]
    converged: bool
    iterations: int
    state: ApState


def affinity_propagation(graph: WeightedGraph, self_preference: float = 0.0,
                         damping: float = 0.5, max_iters: int = 500,
                         stable_window: int = 30, jitter: float = 1e-12
                         ) -> ApResult:
    """Exemplar clustering by responsibility/availability message passing.

    Similarities are the graph weights (missing pairs effectively minus
    infinity) with ``self_preference`` on the diagonal.  Messages start from
    zero and are damped; iteration stops once the exemplar set (vertices
    with positive self responsibility + availability) is unchanged for
    ``stable_window`` rounds.  Symmetric inputs make the update degenerate,
    so a deterministic jitter of relative size ``jitter`` is added to the
    similarities, as is conventional for this algorithm.
    """
    if not 0 <= damping < 1:
        raise InputError("damping must lie in [0, 1)")
    n = graph.n_vertices
    if n == 0:
        raise InputError("empty graph")
    S = np.full((n, n), NO_EDGE)
    for i, j, wij, wji in graph.edges:
        S[i, j] = wij
        S[j, i] = wji
    np.fill_diagonal(S, self_preference)
    if jitter:
        finite = np.abs(S[S > NO_EDGE / 2])
        scale = jitter * (float(finite.max()) + 1.0) if finite.size else jitter
        rng = np.random.default_rng(0)
        S = S + scale * rng.standard_normal((n, n))

    R = np.zeros((n, n))
    A = np.zeros((n, n))
    exemplars: tuple[int, ...] = ()
    stable = 0
    idx = np.arange(n)
    for it in range(1, max_iters + 1):
        # responsibilities: r_ij = s_ij - max_{k != j} (a_ik + s_ik)
        AS = A + S
        top = AS.argmax(axis=1)
        first = AS[idx, top]
        AS[idx, top] = -np.inf
        second = AS.max(axis=1) if n > 1 else np.full(n, -np.inf)
        AS[idx, top] = first
        # the max over an empty candidate set acts as minus infinity; clip at
        # the finite sentinel so later sums stay NaN-free
        second = np.maximum(second, NO_EDGE)
        best_excl = np.where(
            np.arange(n)[None, :] == top[:, None], second[:, None], first[:, None])
        R = damping * R + (1.0 - damping) * (S - best_excl)

        # availabilities: a_ij = min(0, r_jj + sum_{k != i,j} max(0, r_kj))
        Rp = np.maximum(R, 0.0)
        np.fill_diagonal(Rp, R.diagonal())
        colsum = Rp.sum(axis=0)
        Anew = colsum[None, :] - Rp
        diag = Anew.diagonal().copy()
        Anew = np.minimum(Anew, 0.0)
        np.fill_diagonal(Anew, diag)
        A = damping * A + (1.0 - damping) * Anew

        current = tuple(int(v) for v in np.flatnonzero(R.diagonal() + A.diagonal() > 0))
        if current == exemplars:
            stable += 1
            if stable >= stable_window:
                return ApResult(current, True, it, ApState(R, A, self_preference))
        else:
            stable = 0
            exemplars = current
    return ApResult(exemplars, False, max_iters, ApState(R, A, self_preference))
