"""Compiled inner loops for message passing and population dynamics.

Messages live in a (2M, 3) float64 array with columns (m00, m01, m1):
the joint cavity probabilities of (sender, receiver) states (0,0), (0,1)
and 1,* (the two occupied-sender entries coincide and are stored once).
Directed edges are paired so that ``e ^ 1`` is the reverse of ``e``.

Threshold counting uses a capped subset-sum dynamic program on a weight
grid: state u holds the probability weight of partial sums of u grid
units, saturating at the cap T (u = T means "threshold reached").  It is
exact whenever edge weights are integer multiples of the grid.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def seed_rng(seed):
    np.random.seed(seed)


@njit(cache=True)
def shuffle_inplace(arr):
    np.random.shuffle(arr)


@njit(cache=True)
def bp_sweep(msg, out_ptr, out_eid, src, units_peer, theta_units,
             exp_mb, damping, active_edge, order, scratch):
    """One asynchronous pass over the edges in ``order``; returns max change."""
    max_change = 0.0
    for oi in range(order.shape[0]):
        e = order[oi]
        i = src[e]
        T = theta_units[i]
        for u in range(T + 1):
            scratch[u] = 0.0
        scratch[0] = 1.0
        prod1 = 1.0
        for p in range(out_ptr[i], out_ptr[i + 1]):
            e2 = out_eid[p]
            if e2 == e or not active_edge[e2]:
                continue
            r = e2 ^ 1
            occ = msg[r, 2]
            emp = msg[r, 0]
            prod1 *= msg[r, 2] + msg[r, 1]
            wu = units_peer[e2]
            for u in range(T, -1, -1):
                v = scratch[u]
                if v != 0.0:
                    t = u + wu
                    if t > T:
                        t = T
                    if t == u:
                        scratch[u] = v * (occ + emp)
                    else:
                        scratch[t] += v * occ
                        scratch[u] = v * emp
        m00 = scratch[T]
        t01 = T - units_peer[e]
        if t01 < 0:
            t01 = 0
        m01 = 0.0
        for u in range(t01, T + 1):
            m01 += scratch[u]
        m1 = exp_mb * prod1
        z = m00 + m01 + 2.0 * m1
        if z > 0.0 and np.isfinite(z):
            n00 = m00 / z
            n01 = m01 / z
            n1 = m1 / z
        else:
            n00 = 0.25
            n01 = 0.25
            n1 = 0.25
        if damping > 0.0:
            n00 = (1.0 - damping) * n00 + damping * msg[e, 0]
            n01 = (1.0 - damping) * n01 + damping * msg[e, 1]
            n1 = (1.0 - damping) * n1 + damping * msg[e, 2]
        ch = abs(n00 - msg[e, 0])
        c2 = abs(n01 - msg[e, 1])
        if c2 > ch:
            ch = c2
        c2 = abs(n1 - msg[e, 2])
        if c2 > ch:
            ch = c2
        if ch > max_change:
            max_change = ch
        msg[e, 0] = n00
        msg[e, 1] = n01
        msg[e, 2] = n1
    return max_change


@njit(cache=True)
def vertex_stats(msg, out_ptr, out_eid, units_peer, theta_units,
                 exp_mb, active_edge, active_vertex, scratch, q1, lnz):
    """Occupation marginal q1 and log vertex normalizer for active vertices."""
    n = out_ptr.shape[0] - 1
    for j in range(n):
        if not active_vertex[j]:
            q1[j] = 0.0
            lnz[j] = 0.0
            continue
        T = theta_units[j]
        for u in range(T + 1):
            scratch[u] = 0.0
        scratch[0] = 1.0
        prod1 = 1.0
        for p in range(out_ptr[j], out_ptr[j + 1]):
            e2 = out_eid[p]
            if not active_edge[e2]:
                continue
            r = e2 ^ 1
            occ = msg[r, 2]
            emp = msg[r, 0]
            prod1 *= msg[r, 2] + msg[r, 1]
            wu = units_peer[e2]
            for u in range(T, -1, -1):
                v = scratch[u]
                if v != 0.0:
                    t = u + wu
                    if t > T:
                        t = T
                    if t == u:
                        scratch[u] = v * (occ + emp)
                    else:
                        scratch[t] += v * occ
                        scratch[u] = v * emp
        z0 = scratch[T]
        z1 = exp_mb * prod1
        z = z0 + z1
        if z > 0.0:
            q1[j] = z1 / z
            lnz[j] = np.log(z)
        else:
            q1[j] = 0.5
            lnz[j] = -np.inf


@njit(cache=True)
def edge_lnz_sum(msg, active_edge):
    """Sum of log edge normalizers over active undirected edges."""
    total = 0.0
    count = 0
    for e in range(0, msg.shape[0], 2):
        if active_edge[e] and active_edge[e + 1]:
            z = (msg[e, 0] * msg[e + 1, 0]
                 + msg[e, 1] * msg[e + 1, 2]
                 + msg[e, 2] * msg[e + 1, 1]
                 + msg[e, 2] * msg[e + 1, 2])
            total += np.log(z)
            count += 1
    return total, count


# ---------------------------------------------------------------------------
# population dynamics
#
# Members are stratified by the weight their receiving endpoint would send
# back (the value entering the m01 threshold), because that value is
# correlated with the weight the member contributes when it is consumed.
# stratum_ptr delimits the strata inside the member array; for each pair
# atom k: pair_cum[k] is the cumulative probability, pair_in_units[k] the
# grid units of the weight consumed downstream, pair_out_units[k] the units
# of the return weight, pair_stratum[k] the stratum holding such members.
# ---------------------------------------------------------------------------


@njit(cache=True)
def _draw_pair(pair_cum):
    u = np.random.random()
    for k in range(pair_cum.shape[0]):
        if u < pair_cum[k]:
            return k
    return pair_cum.shape[0] - 1


@njit(cache=True)
def _pop_build(members, stratum_ptr, pair_cum, pair_in_units, pair_stratum,
               deg, T, exp_mb, scratch):
    """Draw ``deg`` contributors and run the threshold DP; returns (D_cap_fullsum..., prod1).

    Fills ``scratch[0..T]`` with the partial-sum distribution and returns the
    product of (m1 + m01) over the drawn contributors.
    """
    for u in range(T + 1):
        scratch[u] = 0.0
    scratch[0] = 1.0
    prod1 = 1.0
    for _ in range(deg):
        k = _draw_pair(pair_cum)
        s = pair_stratum[k]
        lo = stratum_ptr[s]
        hi = stratum_ptr[s + 1]
        idx = lo + int(np.random.random() * (hi - lo))
        if idx >= hi:
            idx = hi - 1
        occ = members[idx, 2]
        emp = members[idx, 0]
        prod1 *= members[idx, 2] + members[idx, 1]
        wu = pair_in_units[k]
        for u in range(T, -1, -1):
            v = scratch[u]
            if v != 0.0:
                t = u + wu
                if t > T:
                    t = T
                if t == u:
                    scratch[u] = v * (occ + emp)
                else:
                    scratch[t] += v * occ
                    scratch[u] = v * emp
    return prod1


@njit(cache=True)
def pop_sweep(members, stratum_ptr, pair_cum, pair_in_units, pair_out_units,
              pair_stratum, c, T, exp_mb, scratch, n_updates):
    """``n_updates`` single-member replacements with uniformly chosen targets.

    Random (rather than cyclic) replacement keeps a stochastic mix of member
    ages, which damps the collective oscillations a full-turnover pass
    develops near the instability at large beta.
    """
    for _ in range(n_updates):
        k_out = _draw_pair(pair_cum)
        deg = np.random.poisson(c)
        prod1 = _pop_build(members, stratum_ptr, pair_cum, pair_in_units,
                           pair_stratum, deg, T, exp_mb, scratch)
        m00 = scratch[T]
        t01 = T - pair_out_units[k_out]
        if t01 < 0:
            t01 = 0
        m01 = 0.0
        for u in range(t01, T + 1):
            m01 += scratch[u]
        m1 = exp_mb * prod1
        z = m00 + m01 + 2.0 * m1
        if z > 0.0 and np.isfinite(z):
            n00 = m00 / z
            n01 = m01 / z
            n1 = m1 / z
        else:
            n00 = 0.25
            n01 = 0.25
            n1 = 0.25
        s_out = pair_stratum[k_out]
        lo = stratum_ptr[s_out]
        hi = stratum_ptr[s_out + 1]
        tgt = lo + int(np.random.random() * (hi - lo))
        if tgt >= hi:
            tgt = hi - 1
        members[tgt, 0] = n00
        members[tgt, 1] = n01
        members[tgt, 2] = n1


@njit(cache=True)
def pop_measure(members, stratum_ptr, pair_cum, pair_in_units, pair_stratum,
                pair_rev_stratum, c, T, exp_mb, scratch, n_samples):
    """Monte-Carlo vertex and edge estimators on a frozen population.

    Returns (sum q1, sum ln z_vertex, sum ln z_edge, n_samples).
    """
    sum_q1 = 0.0
    sum_lnzv = 0.0
    sum_lnze = 0.0
    for _ in range(n_samples):
        # vertex term: full degree is Poissonian
        deg = np.random.poisson(c)
        prod1 = _pop_build(members, stratum_ptr, pair_cum, pair_in_units,
                           pair_stratum, deg, T, exp_mb, scratch)
        z0 = scratch[T]
        z1 = exp_mb * prod1
        z = z0 + z1
        sum_q1 += z1 / z
        sum_lnzv += np.log(z)

        # edge term: the two opposite messages see swapped pair components
        k = _draw_pair(pair_cum)
        sa = pair_stratum[k]
        lo = stratum_ptr[sa]
        hi = stratum_ptr[sa + 1]
        ia = lo + int(np.random.random() * (hi - lo))
        if ia >= hi:
            ia = hi - 1
        sb = pair_rev_stratum[k]
        lo = stratum_ptr[sb]
        hi = stratum_ptr[sb + 1]
        ib = lo + int(np.random.random() * (hi - lo))
        if ib >= hi:
            ib = hi - 1
        ze = (members[ia, 0] * members[ib, 0]
              + members[ia, 1] * members[ib, 2]
              + members[ia, 2] * members[ib, 1]
              + members[ia, 2] * members[ib, 2])
        sum_lnze += np.log(ze)
    return sum_q1, sum_lnzv, sum_lnze
