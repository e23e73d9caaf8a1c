"""Linear-time total edge domination on trees via a four-state bottom-up DP.

Each edge of a leaf-rooted tree carries four values for its subtree: the
minimum sizes of (a) TED-sets containing the edge, (b) TED-sets excluding
it, (c) ED-sets where it is the unique isolated member, and (d) sets that
totally dominate everything below while leaving the edge untouched.
``combine`` merges children into their parent edge by a constrained
min-cost state assignment; ``combine_casewise`` is the equivalent explicit
case split kept for cross-checking.

A companion three-state DP (``gamma_tree``) computes the plain edge
domination number of a tree; both report witnesses reconstructed from the
recorded per-edge optimal child assignments.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import InvalidInputError, InvalidRootError, NotATreeError
from .graphs import EdgeSet, Graph, SolveResult, vertex_key

INF = 1 << 40  # internal sentinel; public values use math.inf

# state indices: edge in set & dominated / out & dominated /
# in set & isolated / out & undominated
IN_DOM, OUT_DOM, IN_ISO, OUT_UNDOM = 0, 1, 2, 3


def _to_int(x) -> int:
    return INF if x == math.inf else int(x)


def _to_pub(x: int):
    return math.inf if x >= INF else x


def _sat(x: int) -> int:
    return INF if x >= INF else x


@dataclass(frozen=True)
class FourValues:
    """Subtree optima (g1, g0, g1bar, g0bar); ``math.inf`` marks an empty family."""

    g1: "int | float"
    g0: "int | float"
    g1bar: "int | float"
    g0bar: "int | float"

    def as_tuple(self) -> Tuple:
        return (self.g1, self.g0, self.g1bar, self.g0bar)


def leaf_base_values() -> FourValues:
    """Values of a bare edge: no TED-set exists, {e} is isolated, {} leaves e alone."""
    return FourValues(math.inf, math.inf, 1, 0)


STATE_NAMES = ("in", "out", "in-isolated", "out-undominated")


@dataclass(frozen=True)
class ChildSummary:
    """A child's cheapest cost and the states attaining it."""

    theta: "int | float"
    attainers: frozenset

    @classmethod
    def of(cls, child: FourValues) -> "ChildSummary":
        t = min(child.as_tuple())
        return cls(t, frozenset(
            name for name, v in zip(STATE_NAMES, child.as_tuple()) if v == t))


def _combine_core(t0: Tuple[int, int, int, int],
                  kids: Sequence[Tuple[int, int, int, int]]):
    """Merge child 4-tuples under a parent edge.

    Returns the parent 4-tuple plus, per state, the chosen per-child state
    list (None when that state is infeasible).  Feasibility, with the parent
    edge written e and children meeting e at its lower endpoint:
      g1:    e in the set; children unconstrained, but if e is isolated on
             the root side some child must also be in the set.
      g0:    e excluded; children that end isolated or undominated need a
             sibling in the set (a distinct one), and so does e itself when
             the root side leaves it undominated.
      g1bar: e in the set and isolated, so no child may be in the set.
      g0bar: e excluded and undominated, so children must be self-dominated
             without touching e: all in the plain excluded state.
    """
    q = len(kids)
    S = 0            # sum of per-child minima (always finite)
    theta = [0] * q
    pref = [0] * q   # preferred state attaining theta
    up = [0] * q     # cost to lift child j to a set-member state
    m_val = [0] * q  # min(out-dominated, out-undominated)
    m_state = [0] * q
    sum_m = 0
    sum_g0 = 0
    d1 = d2 = INF    # two smallest lift costs
    d1_j = -1
    for j, (a, b, c, d) in enumerate(kids):
        th = min(a, b, c, d)
        theta[j] = th
        S += th
        if a == th:
            pref[j] = IN_DOM
        elif b == th:
            pref[j] = OUT_DOM
        elif c == th:
            pref[j] = IN_ISO
        else:
            pref[j] = OUT_UNDOM
        prov = a if a < c else c
        u = _sat(prov - th) if prov < INF else INF
        up[j] = u
        if u < d1:
            d2 = d1
            d1, d1_j = u, j
        elif u < d2:
            d2 = u
        if b <= d:
            m_val[j], m_state[j] = b, OUT_DOM
        else:
            m_val[j], m_state[j] = d, OUT_UNDOM
        sum_m = _sat(sum_m + m_val[j])
        sum_g0 = _sat(sum_g0 + b)

    def provider_state(j):
        a, _, c, _ = kids[j]
        return IN_DOM if a <= c else IN_ISO

    # g1: parent edge in the set.
    cand_a = _sat(t0[0] + S)                       # dominated from the root side
    cand_b = _sat(_sat(t0[2] + S) + d1)            # isolated there; a child repairs
    g1 = min(cand_a, cand_b)
    choice1 = None
    if g1 < INF:
        states = list(pref)
        if cand_b <= cand_a:
            if not any(states[j] in (IN_DOM, IN_ISO) for j in range(q)):
                states[d1_j] = provider_state(d1_j)
        choice1 = states

    # g0: parent edge excluded.
    t0_out = min(t0[1], t0[3])
    cost_A = _sat(t0[1] + sum_g0)                  # no provider: all children excluded-dominated
    cost_B = INF                                   # exactly one provider, in a dominated state
    best_k = -1
    inf_m = sum(1 for j in range(q) if m_val[j] >= INF)
    fin_m = sum(v for v in m_val if v < INF)
    for k in range(q):
        a = kids[k][0]
        if a >= INF:
            continue
        others_inf = inf_m - (1 if m_val[k] >= INF else 0)
        if others_inf:
            continue
        rest = fin_m - (m_val[k] if m_val[k] < INF else 0)
        c = a + rest
        if c < cost_B:
            cost_B, best_k = c, k
    cost_B = _sat(_sat(t0_out) + cost_B) if cost_B < INF and t0_out < INF else INF
    cost_C = _sat(_sat(t0_out + S) + _sat(d1 + d2)) if q >= 2 else INF
    g0 = min(cost_A, cost_B, cost_C)
    choice0 = None
    if g0 < INF:
        if g0 == cost_A:
            choice0 = [OUT_DOM] * q
        elif g0 == cost_B:
            choice0 = [m_state[j] for j in range(q)]
            choice0[best_k] = IN_DOM
        else:
            choice0 = list(pref)
            lifted = [j for j in range(q) if choice0[j] in (IN_DOM, IN_ISO)]
            need = 2 - len(lifted)
            if need > 0:
                rest = sorted((up[j], j) for j in range(q) if j not in lifted)
                for _, j in rest[:need]:
                    choice0[j] = provider_state(j)

    # g1bar: parent edge in the set and isolated.
    g1bar = _sat(t0[2] + sum_m)
    choice1b = list(m_state) if g1bar < INF else None

    # g0bar: parent edge excluded and undominated.
    g0bar = _sat(t0[3] + sum_g0)
    choice0b = [OUT_DOM] * q if g0bar < INF else None

    return (g1, g0, g1bar, g0bar), (choice1, choice0, choice1b, choice0b)


def combine(t0: FourValues, children: Sequence[FourValues]) -> FourValues:
    """Four values of a parent edge from its root-side part and its children."""
    if not children:
        raise InvalidInputError("combine requires at least one child")
    vals, _ = _combine_core(
        tuple(_to_int(x) for x in t0.as_tuple()),
        [tuple(_to_int(x) for x in c.as_tuple()) for c in children],
    )
    return FourValues(*(_to_pub(v) for v in vals))


def combine_casewise(t0: FourValues, children: Sequence[FourValues]) -> FourValues:
    """Explicit case-split form of ``combine`` (child minima classified by
    which state attains them).  Kept verbatim for differential testing; the
    two-lift branches assume the relevant quantities are finite."""
    if not children:
        raise InvalidInputError("combine requires at least one child")
    kids = [tuple(_to_int(x) for x in c.as_tuple()) for c in children]
    tt = tuple(_to_int(x) for x in t0.as_tuple())
    summaries = [ChildSummary.of(c) for c in children]
    theta = [_to_int(s.theta) for s in summaries]
    S = sum(theta)
    A1 = [j for j, s in enumerate(summaries) if STATE_NAMES[0] in s.attainers]
    A2 = [j for j, s in enumerate(summaries) if STATE_NAMES[1] in s.attainers]
    A3 = [j for j, s in enumerate(summaries) if STATE_NAMES[2] in s.attainers]
    A4 = [j for j, s in enumerate(summaries) if STATE_NAMES[3] in s.attainers]

    if A1 or A3:
        g1 = _sat(min(tt[0], tt[2]) + S)
    else:
        g1 = _sat(min(tt[0], _sat(tt[2] + 1)) + S)

    if A1 or len(A3) >= 2:
        g0 = _sat(min(tt[1], tt[3]) + S)
    elif (not A1 and len(A3) == 1) or (not A1 and not A3 and A2 and A4):
        g0 = _sat(_sat(min(tt[1], tt[3]) + S) + 1)
    elif not A1 and not A3 and not A4:
        g0 = _sat(min(tt[1], _sat(tt[3] + 1)) + S)
    elif any(kids[j][0] - kids[j][3] == 1 for j in A4):
        g0 = _sat(_sat(min(tt[1], tt[3]) + S) + 1)
    else:
        g0 = _sat(_sat(min(tt[1], tt[3]) + S) + 2)

    g1bar = _sat(tt[2] + sum(min(k[1], k[3]) for k in kids))
    g0bar = _sat(tt[3] + sum(k[1] for k in kids))
    return FourValues(*(_to_pub(v) for v in (g1, g0, g1bar, g0bar)))


# -- rooted trees ---------------------------------------------------------------

class RootedTree:
    """A tree rooted at a leaf, with edges in bottom-up processing order.

    ``parent`` maps each edge id to the adjacent edge toward the root (None
    for the root edge); ``children_neighbors`` maps each edge to the edges
    meeting it at its endpoint away from the root, ascending by edge id.
    """

    __slots__ = ("underlying", "root", "edge_order", "parent",
                 "children_neighbors", "child_vertex")

    def __init__(self, underlying: Graph, root, edge_order: List[int],
                 parent: Dict[int, Optional[int]],
                 children_neighbors: Dict[int, Tuple[int, ...]],
                 child_vertex: Dict[int, object]):
        self.underlying = underlying
        self.root = root
        self.edge_order = edge_order
        self.parent = parent
        self.children_neighbors = children_neighbors
        self.child_vertex = child_vertex


def build_rooted(g: Graph, root=None) -> RootedTree:
    """Root a tree at a leaf (the lowest-id leaf when ``root`` is None)."""
    if g.num_edges == 0 or not g.is_tree():
        raise NotATreeError("input must be a connected acyclic graph with an edge")
    if root is None:
        root = min(g.leaves(), key=vertex_key)
    elif root not in g.adjacency:
        raise InvalidRootError(f"vertex {root!r} not in graph")
    elif g.degree(root) != 1:
        raise InvalidRootError(f"root {root!r} is not a leaf")

    level = {root: 0}
    queue = deque([root])
    order_v = [root]
    while queue:
        v = queue.popleft()
        for e in g.adjacency[v]:
            u = g.other_end(e, v)
            if u not in level:
                level[u] = level[v] + 1
                queue.append(u)
                order_v.append(u)

    child_vertex: Dict[int, object] = {}
    edge_level: Dict[int, int] = {}
    up_edge: Dict[object, int] = {}
    for eid, (u, v) in enumerate(g.edges):
        lo, hi = (u, v) if level[u] < level[v] else (v, u)
        child_vertex[eid] = hi
        edge_level[eid] = level[hi]
        up_edge[hi] = eid

    parent: Dict[int, Optional[int]] = {}
    for eid, (u, v) in enumerate(g.edges):
        w = u if level[u] < level[v] else v
        parent[eid] = up_edge.get(w)
    children: Dict[int, Tuple[int, ...]] = {
        eid: tuple(sorted(f for f in g.adjacency[child_vertex[eid]] if f != eid))
        for eid in range(g.num_edges)
    }
    edge_order = sorted(range(g.num_edges), key=lambda e: (-edge_level[e], e))
    return RootedTree(g, root, edge_order, parent, children, child_vertex)


# -- the two sweeps -------------------------------------------------------------

_BASE4 = (INF, INF, 1, 0)


def _sweep_four(rt: RootedTree, record: bool):
    vals: Dict[int, Tuple[int, int, int, int]] = {}
    choices: Dict[int, tuple] = {}
    for e in rt.edge_order:
        kids = rt.children_neighbors[e]
        if not kids:
            vals[e] = _BASE4
            if record:
                choices[e] = ([], [], [], [])
        else:
            vals[e], ch = _combine_core(_BASE4, [vals[k] for k in kids])
            if record:
                choices[e] = ch
    return vals, choices


def four_values_by_edge(rt: RootedTree) -> Dict[int, FourValues]:
    """DP values of every edge's subtree (for invariant checks)."""
    vals, _ = _sweep_four(rt, record=False)
    return {e: FourValues(*(_to_pub(v) for v in t)) for e, t in vals.items()}


def _unwind(rt: RootedTree, choices, root_state: int, member_states) -> List[int]:
    picked = []
    stack = [(rt.edge_order[-1], root_state)]
    while stack:
        e, s = stack.pop()
        if s in member_states:
            picked.append(e)
        states = choices[e][s]
        for k, ks in zip(rt.children_neighbors[e], states):
            stack.append((k, ks))
    return picked


def gamma_t_tree(rt: RootedTree, witness: bool = True) -> SolveResult:
    """Total edge domination number of a tree (``inf`` for a single edge)."""
    vals, choices = _sweep_four(rt, record=witness)
    root = rt.edge_order[-1]
    g1, g0 = vals[root][IN_DOM], vals[root][OUT_DOM]
    value = min(g1, g0)
    if value >= INF:
        return SolveResult(math.inf, None)
    if not witness:
        return SolveResult(value, None)
    state = IN_DOM if g1 <= g0 else OUT_DOM
    ids = _unwind(rt, choices, state, (IN_DOM, IN_ISO))
    return SolveResult(value, EdgeSet(rt.underlying, ids))


# three-state DP for the plain edge domination number
_IN, _DOM, _UNDOM = 0, 1, 2
_BASE3 = (1, INF, 0)


def _combine3(kids: Sequence[Tuple[int, int, int]]):
    q = len(kids)
    S = 0
    pref = [0] * q
    d1, d1_j = INF, -1
    sum_d = 0
    for j, (a, b, c) in enumerate(kids):
        th = min(a, b, c)
        S += th
        pref[j] = _IN if a == th else (_DOM if b == th else _UNDOM)
        u = _sat(a - th) if a < INF else INF
        if u < d1:
            d1, d1_j = u, j
        sum_d = _sat(sum_d + b)
    vi = _sat(1 + S)
    ci = list(pref)
    vd = _sat(S + d1)
    cd = None
    if vd < INF:
        cd = list(pref)
        if _IN not in cd:
            cd[d1_j] = _IN
    vu = sum_d
    cu = [_DOM] * q if vu < INF else None
    return (vi, vd, vu), (ci, cd, cu)


def gamma_tree(rt: RootedTree, witness: bool = True) -> SolveResult:
    """Edge domination number of a tree by an analogous three-state sweep."""
    vals: Dict[int, Tuple[int, int, int]] = {}
    choices: Dict[int, tuple] = {}
    for e in rt.edge_order:
        kids = rt.children_neighbors[e]
        if not kids:
            vals[e] = _BASE3
            choices[e] = ([], [], [])
        else:
            vals[e], choices[e] = _combine3([vals[k] for k in kids])
    root = rt.edge_order[-1]
    vi, vd = vals[root][_IN], vals[root][_DOM]
    value = min(vi, vd)
    if not witness:
        return SolveResult(value, None)
    state = _IN if vi <= vd else _DOM
    ids = _unwind(rt, choices, state, (_IN,))
    return SolveResult(value, EdgeSet(rt.underlying, ids))
