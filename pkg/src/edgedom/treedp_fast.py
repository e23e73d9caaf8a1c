"""Array-based value-only sweep for huge trees, JIT-compiled with numba.

Same four-state recurrence as ``treedp``, restated over flat int32 arrays.
Edges are renumbered in BFS-discovery order so every edge's children form a
contiguous block and the bottom-up sweep touches memory sequentially; the
adjacency CSR stores neighbor vertices directly so the BFS needs one less
indirection per step.  Falls back to plain Python when numba is
unavailable; callers needing witnesses use the pure sweep in ``treedp``.
"""

from __future__ import annotations

import math
from typing import Tuple

import numpy as np

from .graphs import Graph

try:
    from numba import njit
except ImportError:  # pragma: no cover - numba is a declared dependency
    njit = None

INF = 10 ** 9  # saturating int32 sentinel; values never exceed the edge count


def _kernel_py(n, eu, ev):  # the numba source; also runnable as plain Python
    m = eu.shape[0]
    deg = np.zeros(n, dtype=np.int32)
    for e in range(m):
        deg[eu[e]] += 1
        deg[ev[e]] += 1
    vptr = np.zeros(n + 1, dtype=np.int32)
    for v in range(n):
        vptr[v + 1] = vptr[v] + deg[v]
    nbr = np.empty(2 * m, dtype=np.int32)
    fill = vptr[:-1].copy()
    for e in range(m):
        a, b = eu[e], ev[e]
        nbr[fill[a]] = b
        fill[a] += 1
        nbr[fill[b]] = a
        fill[b] += 1

    root = 0
    for v in range(n):
        if deg[v] == 1:
            root = v
            break

    # BFS from the root leaf; edges get ids in discovery order, so the
    # children of edge d sit in the contiguous block [cs[d], cs[d] + cq[d]).
    visited = np.zeros(n, dtype=np.uint8)
    qv = np.empty(n, dtype=np.int32)       # vertex queue
    qup = np.empty(n, dtype=np.int32)      # discovery id of the edge into it
    cs = np.zeros(m, dtype=np.int32)
    cq = np.zeros(m, dtype=np.int32)
    visited[root] = 1
    qv[0] = root
    qup[0] = -1
    head, tail, nxt = 0, 1, 0
    while head < tail:
        v = qv[head]
        up = qup[head]
        head += 1
        first = nxt
        for t in range(vptr[v], vptr[v + 1]):
            u = nbr[t]
            if visited[u]:
                continue
            visited[u] = 1
            qv[tail] = u
            qup[tail] = nxt
            tail += 1
            nxt += 1
        if up >= 0:
            cs[up] = first
            cq[up] = nxt - first

    vals = np.empty((m, 4), dtype=np.int32)  # g1, g0, g1bar, g0bar per edge
    for d in range(m - 1, -1, -1):
        q = cq[d]
        if q == 0:
            vals[d, 0] = INF
            vals[d, 1] = INF
            vals[d, 2] = 1
            vals[d, 3] = 0
            continue
        S = 0
        sum_g0 = 0
        sm_fin = 0
        inf_m = 0
        d1 = INF
        d2 = INF
        minA = INF  # g1_j - m_j over children with both finite
        minC = INF  # g1_j over children with m_j infinite
        for j in range(cs[d], cs[d] + q):
            a = vals[j, 0]
            b = vals[j, 1]
            cc = vals[j, 2]
            dd = vals[j, 3]
            th = a
            if b < th:
                th = b
            if cc < th:
                th = cc
            if dd < th:
                th = dd
            S += th
            sum_g0 += b
            if sum_g0 > INF:
                sum_g0 = INF
            mj = b if b < dd else dd
            if mj >= INF:
                inf_m += 1
            else:
                sm_fin += mj
            prov = a if a < cc else cc
            u = prov - th if prov < INF else INF
            if u < d1:
                d2 = d1
                d1 = u
            elif u < d2:
                d2 = u
            if a < INF:
                if mj < INF:
                    if a - mj < minA:
                        minA = a - mj
                else:
                    if a < minC:
                        minC = a
        v1 = 1 + S + d1
        if v1 > INF:
            v1 = INF
        costB = INF
        if inf_m == 0 and minA < INF:
            costB = sm_fin + minA
        if inf_m == 1 and minC < INF:
            alt = sm_fin + minC
            if alt < costB:
                costB = alt
        v0 = costB
        if q >= 2 and d1 < INF and d2 < INF:
            alt = S + d1 + d2
            if alt < v0:
                v0 = alt
        if v0 > INF:
            v0 = INF
        vb1 = INF if inf_m > 0 else 1 + sm_fin
        if vb1 > INF:
            vb1 = INF
        vals[d, 0] = v1
        vals[d, 1] = v0
        vals[d, 2] = vb1
        vals[d, 3] = sum_g0

    best = vals[0, 0] if vals[0, 0] < vals[0, 1] else vals[0, 1]
    return int(best) if best < INF else -1


_kernel = njit(cache=True)(_kernel_py) if njit is not None else None


def gamma_t_value_arrays(n: int, eu: np.ndarray, ev: np.ndarray):
    """gamma'_t of the tree given by endpoint arrays; ``inf`` when m == 1."""
    fn = _kernel if _kernel is not None else _kernel_py
    res = fn(n, eu, ev)
    return math.inf if res < 0 else int(res)


def graph_arrays(g: Graph) -> Tuple[int, np.ndarray, np.ndarray]:
    n = g.num_vertices
    pos = {v: i for i, v in enumerate(g.vertices)}
    eu = np.fromiter((pos[u] for u, _ in g.edges), dtype=np.int32, count=g.num_edges)
    ev = np.fromiter((pos[v] for _, v in g.edges), dtype=np.int32, count=g.num_edges)
    return n, eu, ev


def warmup() -> None:
    """Trigger the JIT compile on a toy input so timings exclude it."""
    eu = np.array([0, 1, 2], dtype=np.int32)
    ev = np.array([1, 2, 3], dtype=np.int32)
    gamma_t_value_arrays(4, eu, ev)
