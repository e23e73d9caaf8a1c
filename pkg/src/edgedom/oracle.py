"""Exponential-time exact oracles and verification predicates.

Everything here is meant to validate the fast algorithms, so it favours
obviously-correct formulations: predicates are direct translations of the
definitions, and the minimum-set solvers do iterative deepening over the
cardinality with a disjoint-candidate packing bound.  All operations are
pure functions over immutable inputs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Iterator, List, Optional, Tuple

from .errors import InvalidInputError, OracleTooLargeError
from .graphs import INFINITY, EdgeSet, Graph, SolveResult

DEFAULT_ORACLE_CAP = 24


def _as_ids(g: Graph, f) -> frozenset:
    if isinstance(f, EdgeSet):
        if f.graph is not g:
            raise InvalidInputError("edge set references a different graph")
        return f.ids
    ids = frozenset(f)
    for i in ids:
        if not isinstance(i, int) or not 0 <= i < g.num_edges:
            raise InvalidInputError(f"edge id {i!r} not in graph")
    return ids


def _mask_of(ids: Iterable[int]) -> int:
    m = 0
    for i in ids:
        m |= 1 << i
    return m


def is_edge_dominating(g: Graph, f) -> bool:
    """True iff every edge of ``g`` outside ``f`` shares an endpoint with ``f``."""
    ids = _as_ids(g, f)
    nbr = g.edge_neighbor_masks()
    fmask = _mask_of(ids)
    covered = fmask
    for i in ids:
        covered |= nbr[i]
    return covered == (1 << g.num_edges) - 1 if g.num_edges else True


def is_total_edge_dominating(g: Graph, f) -> bool:
    """True iff every edge of ``g`` shares an endpoint with a distinct ``f`` member."""
    ids = _as_ids(g, f)
    nbr = g.edge_neighbor_masks()
    covered = 0
    for i in ids:
        covered |= nbr[i]
    return covered == (1 << g.num_edges) - 1 if g.num_edges else True


# -- structural invariants -----------------------------------------------------

def diameter(g: Graph):
    """Maximum shortest-path distance over vertex pairs (BFS from every vertex)."""
    if not g.is_connected():
        raise InvalidInputError("diameter requires a connected graph")
    if g.num_vertices <= 1:
        return 0
    best = 0
    for v in g.vertices:
        dist = g.bfs_distances(v)
        best = max(best, max(dist.values()))
    return best


def girth(g: Graph):
    """Length of a shortest cycle, ``inf`` for forests.

    For each edge (u, v), the shortest cycle through it is 1 plus the
    u-v distance avoiding that edge; take the minimum over edges.
    """
    from collections import deque

    best = INFINITY
    for eid, (u, v) in enumerate(g.edges):
        dist = {u: 0}
        queue = deque([u])
        while queue:
            w = queue.popleft()
            if w == v:
                break
            for e in g.adjacency[w]:
                if e == eid:
                    continue
                x = g.other_end(e, w)
                if x not in dist:
                    dist[x] = dist[w] + 1
                    queue.append(x)
        if v in dist:
            best = min(best, dist[v] + 1)
    return best


def is_bipartite(g: Graph) -> bool:
    color = {}
    for start in g.vertices:
        if start in color:
            continue
        color[start] = 0
        stack = [start]
        while stack:
            v = stack.pop()
            for e in g.adjacency[v]:
                u = g.other_end(e, v)
                if u not in color:
                    color[u] = color[v] ^ 1
                    stack.append(u)
                elif color[u] == color[v]:
                    return False
    return True


@dataclass(frozen=True)
class StructuralReport:
    bipartite: bool
    max_degree: int
    girth: "int | float"
    diameter: "int | float"


def structural_report(g: Graph) -> StructuralReport:
    """Independently computed basic invariants (bipartite via 2-coloring BFS)."""
    max_deg = max((g.degree(v) for v in g.vertices), default=0)
    diam = diameter(g) if g.is_connected() else INFINITY
    return StructuralReport(is_bipartite(g), max_deg, girth(g), diam)


# -- minimum-set search ---------------------------------------------------------

def _cover_masks(g: Graph, total: bool) -> Tuple[List[int], List[int]]:
    """(what adding edge f covers, what can cover element e) as bitmasks."""
    nbr = g.edge_neighbor_masks()
    if total:
        return nbr, nbr
    closed = [nbr[i] | (1 << i) for i in range(g.num_edges)]
    return closed, closed


def _packing_bound(uncovered: int, cand_of: List[int], m: int) -> int:
    """Count elements with pairwise-disjoint candidate sets: each needs its own edge."""
    items = []
    u = uncovered
    while u:
        low = u & -u
        e = low.bit_length() - 1
        items.append((cand_of[e].bit_count(), cand_of[e]))
        u ^= low
    items.sort()
    used = 0
    count = 0
    for _, cands in items:
        if cands & used == 0:
            count += 1
            used |= cands
    return count


def _search(budget: int, fmask: int, uncovered: int,
            covers: List[int], cand_of: List[int], m: int) -> Optional[int]:
    """Depth-first search for a cover of size <= budget; returns an edge mask."""
    if uncovered == 0:
        return fmask
    if budget <= 0:
        return None
    if _packing_bound(uncovered, cand_of, m) > budget:
        return None
    # Branch on the uncovered element with the fewest candidates.
    best_e, best_c = -1, None
    u = uncovered
    while u:
        low = u & -u
        e = low.bit_length() - 1
        u ^= low
        c = cand_of[e] & ~fmask
        if best_c is None or c.bit_count() < best_c.bit_count():
            best_e, best_c = e, c
            if best_c == 0:
                return None
    cands = []
    c = best_c
    while c:
        low = c & -c
        f = low.bit_length() - 1
        c ^= low
        cands.append((-(covers[f] & uncovered).bit_count(), f))
    cands.sort()
    for _, f in cands:
        res = _search(budget - 1, fmask | (1 << f), uncovered & ~covers[f],
                      covers, cand_of, m)
        if res is not None:
            return res
    return None


def _brute_min(g: Graph, total: bool, cap: int) -> SolveResult:
    if not g.is_connected():
        raise InvalidInputError("oracle requires a connected graph")
    m = g.num_edges
    if m > cap:
        raise OracleTooLargeError(f"{m} edges exceeds oracle cap {cap}")
    if m == 0:
        return SolveResult(0, EdgeSet(g, ()))
    full = (1 << m) - 1
    covers, cand_of = _cover_masks(g, total)
    if total and any(cand_of[e] == 0 for e in range(m)):
        return SolveResult(INFINITY, None)  # some edge has no neighbor (K2)
    start = _packing_bound(full, cand_of, m)
    for k in range(max(start, 1), m + 1):
        res = _search(k, 0, full, covers, cand_of, m)
        if res is not None:
            ids = [i for i in range(m) if res >> i & 1]
            return SolveResult(len(ids), EdgeSet(g, ids))
    return SolveResult(INFINITY, None)


def brute_min_ed(g: Graph, cap: int = DEFAULT_ORACLE_CAP) -> SolveResult:
    """Minimum edge dominating set by iterative deepening with pruning."""
    return _brute_min(g, total=False, cap=cap)


def brute_min_ted(g: Graph, cap: int = DEFAULT_ORACLE_CAP) -> SolveResult:
    """Minimum total edge dominating set; value is ``inf`` when none exists."""
    return _brute_min(g, total=True, cap=cap)


def enumerate_min_sets(g: Graph, total: bool,
                       cap: int = DEFAULT_ORACLE_CAP) -> Iterator[frozenset]:
    """Yield every minimum ED-set (or TED-set) as a frozenset of edge ids.

    Exhaustive over size-gamma subsets, so only usable at oracle scale.
    """
    opt = _brute_min(g, total, cap)
    if opt.value is INFINITY or opt.value == math.inf:
        return
    pred = is_total_edge_dominating if total else is_edge_dominating
    for combo in combinations(range(g.num_edges), int(opt.value)):
        if pred(g, combo):
            yield frozenset(combo)


def exists_min_set_avoiding_leaf_edges(g: Graph, total: bool,
                                       cap: int = DEFAULT_ORACLE_CAP) -> bool:
    """Does some minimum (T)ED-set avoid all edges incident to a leaf?"""
    if not g.is_connected():
        raise InvalidInputError("requires a connected graph")
    leaf = frozenset(g.leaf_edge_ids())
    return any(not (s & leaf) for s in enumerate_min_sets(g, total, cap))


def brute_state_values(g: Graph, eid: int) -> Tuple:
    """The four constrained optima for edge ``eid`` of ``g``, by enumeration.

    Returns (in-and-dominated, out-and-dominated, in-but-isolated,
    out-and-undominated) minima, ``inf`` for an empty family:
      * TED-sets containing the edge,
      * TED-sets excluding it,
      * ED-sets where it is the unique isolated member,
      * sets totally dominating every other edge while leaving it untouched.
    """
    m = g.num_edges
    nbr = g.edge_neighbor_masks()
    full = (1 << m) - 1
    ebit = 1 << eid
    best = [INFINITY, INFINITY, INFINITY, INFINITY]
    for fmask in range(1 << m):
        size = fmask.bit_count()
        covered = 0
        for i in range(m):
            if fmask >> i & 1:
                covered |= nbr[i]
        if covered == full:  # a TED-set of g
            which = 0 if fmask & ebit else 1
            if size < best[which]:
                best[which] = size
        if fmask & ebit and not (nbr[eid] & fmask):
            # eid isolated in f; every other member partnered; ED overall
            others_ok = all(nbr[i] & fmask for i in range(m)
                            if fmask >> i & 1 and i != eid)
            if others_ok and (covered | fmask) == full and size < best[2]:
                best[2] = size
        if not (fmask & ebit) and not (nbr[eid] & fmask):
            # totally dominates g minus the edge, which stays undominated
            if covered & ~ebit == full & ~ebit and size < best[3]:
                best[3] = size
    return tuple(best)
