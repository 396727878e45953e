"""Mesh-agnostic discrete optimizers: s-t max-flow / min-cut (Dinic) and
multi-label energy minimization by alpha-expansion.

The kernels are plain array code compiled with numba when available
(set POLYCUBELABEL_NO_NUMBA=1 to force the pure-python fallback; results are
identical, just slower). Capacities are float64; disallowed assignments are
encoded as BIG rather than inf so residual arithmetic never produces NaN.
"""

from __future__ import annotations

import os

import numpy as np

try:
    if os.environ.get("POLYCUBELABEL_NO_NUMBA"):
        raise ImportError("numba disabled by environment")
    from numba import njit

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover - exercised via env flag
    HAVE_NUMBA = False

    def njit(*args, **kwargs):
        if args and callable(args[0]):
            return args[0]

        def wrap(f):
            return f

        return wrap


BIG = 1e18
_EPS = 1e-12


@njit(cache=True)
def _dinic(n_nodes, head, nxt, to, cap, s, t):
    """Max flow on a paired-arc graph; mutates cap to the residual."""
    flow = 0.0
    level = np.empty(n_nodes, dtype=np.int64)
    iters = np.empty(n_nodes, dtype=np.int64)
    queue = np.empty(n_nodes, dtype=np.int64)
    path = np.empty(n_nodes + 1, dtype=np.int64)
    while True:
        for i in range(n_nodes):
            level[i] = -1
        level[s] = 0
        queue[0] = s
        qh, qt = 0, 1
        while qh < qt:
            u = queue[qh]
            qh += 1
            e = head[u]
            while e != -1:
                v = to[e]
                if cap[e] > _EPS and level[v] < 0:
                    level[v] = level[u] + 1
                    queue[qt] = v
                    qt += 1
                e = nxt[e]
        if level[t] < 0:
            return flow
        for i in range(n_nodes):
            iters[i] = head[i]
        u = s
        plen = 0
        while True:
            if u == t:
                bottleneck = 1e300
                for k in range(plen):
                    if cap[path[k]] < bottleneck:
                        bottleneck = cap[path[k]]
                for k in range(plen):
                    cap[path[k]] -= bottleneck
                    cap[path[k] ^ 1] += bottleneck
                flow += bottleneck
                u = s
                plen = 0
                continue
            e = iters[u]
            while e != -1:
                v = to[e]
                if cap[e] > _EPS and level[v] == level[u] + 1:
                    break
                e = nxt[e]
            iters[u] = e
            if e == -1:
                level[u] = -1  # dead end in this phase
                if plen == 0:
                    break
                plen -= 1
                u = s if plen == 0 else to[path[plen - 1]]
                iters[u] = nxt[iters[u]]
            else:
                path[plen] = e
                plen += 1
                u = to[e]


@njit(cache=True)
def _source_side(n_nodes, head, nxt, to, cap, s):
    side = np.zeros(n_nodes, dtype=np.bool_)
    queue = np.empty(n_nodes, dtype=np.int64)
    side[s] = True
    queue[0] = s
    qh, qt = 0, 1
    while qh < qt:
        u = queue[qh]
        qh += 1
        e = head[u]
        while e != -1:
            v = to[e]
            if cap[e] > _EPS and not side[v]:
                side[v] = True
                queue[qt] = v
                qt += 1
            e = nxt[e]
    return side


def min_st_cut(n_nodes, edges, capacities, s, t):
    """Minimum s-t cut of a directed graph.

    Returns ``(cut_value, source_side)`` where ``source_side`` is a bool
    array over nodes; the value is recomputed from the partition so it is
    an exact sum of the given capacities.
    """
    edges = np.ascontiguousarray(edges, dtype=np.int64).reshape(-1, 2)
    capacities = np.ascontiguousarray(capacities, dtype=np.float64)
    m = len(edges)
    head = np.full(n_nodes, -1, dtype=np.int64)
    nxt = np.empty(2 * m, dtype=np.int64)
    to = np.empty(2 * m, dtype=np.int64)
    cap = np.empty(2 * m, dtype=np.float64)
    for k in range(m):
        u, v = edges[k]
        to[2 * k] = v
        cap[2 * k] = capacities[k]
        nxt[2 * k] = head[u]
        head[u] = 2 * k
        to[2 * k + 1] = u
        cap[2 * k + 1] = 0.0
        nxt[2 * k + 1] = head[v]
        head[v] = 2 * k + 1
    _dinic(n_nodes, head, nxt, to, cap, s, t)
    side = _source_side(n_nodes, head, nxt, to, cap, s)
    value = float(capacities[side[edges[:, 0]] & ~side[edges[:, 1]]].sum())
    return value, side


@njit(cache=True)
def _push_arc(head, nxt, to, cap, cnt, u, v, c):
    """Append arc u->v with capacity c plus its zero reverse (id cnt^1)."""
    to[cnt] = v
    cap[cnt] = c
    nxt[cnt] = head[u]
    head[u] = cnt
    cnt += 1
    to[cnt] = u
    cap[cnt] = 0.0
    nxt[cnt] = head[v]
    head[v] = cnt
    return cnt + 1


@njit(cache=True)
def _potts_energy(costs, pairs, weights, labels):
    e = 0.0
    for i in range(len(labels)):
        e += costs[i, labels[i]]
    for k in range(len(pairs)):
        if labels[pairs[k, 0]] != labels[pairs[k, 1]]:
            e += weights[k]
    return e


@njit(cache=True)
def _expansion_move(costs, pairs, weights, cur, alpha):
    """One alpha-expansion move; returns the bool array of switched nodes.

    Binary variable x_i: 0 keeps cur[i] (source side), 1 takes alpha (sink
    side). Pairwise Potts terms are decomposed as
    E = A + (C-A) x_u + (D-C) x_v + (B+C-A-D)(1-x_u) x_v with
    A = E(0,0), B = E(0,1), C = E(1,0), D = E(1,1) = 0.
    """
    n = costs.shape[0]
    m = pairs.shape[0]
    s = n
    t = n + 1
    max_arcs = 4 * n + 6 * m
    head = np.full(n + 2, -1, dtype=np.int64)
    nxt = np.empty(max_arcs, dtype=np.int64)
    to = np.empty(max_arcs, dtype=np.int64)
    cap = np.empty(max_arcs, dtype=np.float64)
    cnt = 0

    for i in range(n):
        # s->i cut when i switches; i->t cut when i stays
        cnt = _push_arc(head, nxt, to, cap, cnt, s, i, costs[i, alpha])
        cnt = _push_arc(head, nxt, to, cap, cnt, i, t, costs[i, cur[i]])

    for k in range(m):
        u, v = pairs[k, 0], pairs[k, 1]
        w = weights[k]
        a = w if cur[u] != cur[v] else 0.0
        b = w if cur[u] != alpha else 0.0
        c = w if cur[v] != alpha else 0.0
        if b + c - a > 0.0:
            cnt = _push_arc(head, nxt, to, cap, cnt, u, v, b + c - a)
        if c > a:
            cnt = _push_arc(head, nxt, to, cap, cnt, s, u, c - a)
        elif a > c:
            cnt = _push_arc(head, nxt, to, cap, cnt, u, t, a - c)
        if c > 0.0:
            cnt = _push_arc(head, nxt, to, cap, cnt, v, t, c)

    _dinic(n + 2, head, nxt, to, cap, s, t)
    side = _source_side(n + 2, head, nxt, to, cap, s)
    return ~side[:n]


def potts_energy(costs, pairs, weights, labels) -> float:
    """Sum of data costs plus pair weights across label discontinuities."""
    costs = np.minimum(np.ascontiguousarray(costs, dtype=np.float64), BIG)
    pairs = np.ascontiguousarray(pairs, dtype=np.int64).reshape(-1, 2)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    labels = np.ascontiguousarray(labels, dtype=np.int64)
    return float(_potts_energy(costs, pairs, weights, labels))


def alpha_expansion(costs, pairs, weights, init=None, max_sweeps=100):
    """Minimize a Potts energy over n_labels labels.

    costs: (n, L) data term (use BIG / inf to forbid an assignment);
    pairs: (m, 2) node pairs; weights: (m,) discontinuity penalties.
    Sweeps the labels in increasing order, accepting strict improvements,
    until a full sweep changes nothing. Returns (labels, energy).
    """
    costs = np.minimum(np.ascontiguousarray(costs, dtype=np.float64), BIG)
    pairs = np.ascontiguousarray(pairs, dtype=np.int64).reshape(-1, 2)
    weights = np.ascontiguousarray(weights, dtype=np.float64)
    n, n_labels = costs.shape
    if init is None:
        cur = np.argmin(costs, axis=1).astype(np.int64)
    else:
        cur = np.ascontiguousarray(init, dtype=np.int64).copy()
    energy = float(_potts_energy(costs, pairs, weights, cur))
    for _ in range(max_sweeps):
        improved = False
        for alpha in range(n_labels):
            switch = _expansion_move(costs, pairs, weights, cur, alpha)
            if not switch.any():
                continue
            cand = np.where(switch, alpha, cur)
            cand_energy = float(_potts_energy(costs, pairs, weights, cand))
            if cand_energy < energy - 1e-9:
                cur, energy = cand, cand_energy
                improved = True
        if not improved:
            break
    return cur, energy
