"""Constructive families of trees with extremal total-vs-plain edge domination.

Two labelled-tree families are built inductively:

* vertex labels C/L, grown from a labelled P4 by grafting a fresh P4 onto a
  guarded L-vertex or hanging a leaf off a C-vertex; members satisfy
  gamma'_t = 2 gamma', and the C-C edges form a minimum ED-set;
* edge labels S/L1/L2, grown from any diameter-4 tree by five attachment
  operations keyed to a vertex partition (A1/A2/B/C by incident S-edges);
  members satisfy gamma'_t = gamma', and the S-edges form a minimum TED-set.

Appliers are pure: the input tree is untouched and a new tree is returned.
Vertex classes are recomputed from scratch on every query, since the
operations move vertices between classes.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import (
    InvalidInputError,
    InvalidLabelledTreeError,
    InvalidCertificateError,
    NotATreeError,
    OperationInapplicableError,
)
from .graphs import EdgeSet, Graph, _canon_pair, vertex_key
from . import oracle
from .treedp import build_rooted, gamma_t_tree, gamma_tree

C, L = "C", "L"
S, L1, L2 = "S", "L1", "L2"


# ---------------------------------------------------------------------------
# vertex-labelled trees (the doubling family)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class VertexLabelledTree:
    underlying: Graph
    labels: Dict  # vertex -> "C" | "L"

    def label(self, v) -> str:
        return self.labels[v]

    def _fresh_vertices(self, count: int) -> List[int]:
        taken = max((v for v in self.underlying.vertices if isinstance(v, int)),
                    default=-1)
        return [taken + 1 + i for i in range(count)]

    def check_labels(self) -> List[str]:
        """Violations of the family's label rules (empty when clean)."""
        g = self.underlying
        out = []
        if set(self.labels) != set(g.vertices) or \
                any(l not in (C, L) for l in self.labels.values()):
            return ["labels must assign C or L to every vertex"]
        if not g.is_tree():
            return ["underlying graph is not a tree"]
        for v in g.vertices:
            nbrs = g.neighbors(v)
            if g.degree(v) == 1 and self.labels[v] != L:
                out.append(f"leaf {v} not labelled L")
            if any(g.degree(u) == 1 for u in nbrs) and self.labels[v] != C:
                out.append(f"support vertex {v} not labelled C")
            if self.labels[v] == C:
                c_nbrs = sum(1 for u in nbrs if self.labels[u] == C)
                if c_nbrs != 1:
                    out.append(f"C-vertex {v} has {c_nbrs} C-neighbors (need 1)")
            else:
                if any(self.labels[u] == L for u in nbrs):
                    out.append(f"adjacent L-vertices at {v}")
        for (u, w) in g.edges:
            if self.labels[u] != C or self.labels[w] != C:
                continue
            for a, b in ((u, w), (w, u)):
                has_nonleaf_L = any(
                    self.labels[x] == L and g.degree(x) > 1
                    for x in g.neighbors(a))
                if has_nonleaf_L and not any(g.degree(x) == 1 for x in g.neighbors(b)):
                    out.append(f"C-C edge {a}-{b}: non-leaf L at {a} "
                               f"but no leaf at {b}")
        return out


def init_family_T() -> VertexLabelledTree:
    """The seed tree: a P4 labelled L, C, C, L."""
    g = Graph([(0, 1), (1, 2), (2, 3)])
    return VertexLabelledTree(g, {0: L, 1: C, 2: C, 3: L})


def _t_o1_guard(t: VertexLabelledTree, v) -> Optional[str]:
    """Failing clause of the graft guard at ``v``, or None when applicable."""
    g = t.underlying
    if t.labels.get(v) != L:
        return f"site {v} is not labelled L"
    dist = g.bfs_distances(v)
    for w in g.vertices:
        if dist.get(w) == 2 and t.labels[w] == C:
            if not any(g.degree(x) == 1 for x in g.neighbors(w)):
                return f"C-vertex {w} at distance 2 has no leaf neighbor"
    for u in g.neighbors(v):
        if t.labels[u] != C:
            continue
        partners = [w for w in g.neighbors(u) if t.labels[w] == C]
        for w in partners:
            # the site itself does not count as u's leaf
            u_has_leaf = any(g.degree(x) == 1 and x != v for x in g.neighbors(u))
            w_rest_leaves = all(g.degree(x) == 1
                                for x in g.neighbors(w) if x != u)
            if not (u_has_leaf or w_rest_leaves):
                return (f"C-C edge {w}-{u} at {v}: no spare leaf at {u} and "
                        f"non-leaf vertices beyond {w}")
    return None


def apply_T_O1(t: VertexLabelledTree, v) -> VertexLabelledTree:
    """Graft a fresh labelled P4 onto the L-vertex ``v`` (identified ends)."""
    clause = _t_o1_guard(t, v)
    if clause is not None:
        raise OperationInapplicableError(f"graft at {v!r}: {clause}", clause)
    p, q, r = t._fresh_vertices(3)
    g = Graph(list(t.underlying.edges) + [(v, p), (p, q), (q, r)])
    labels = dict(t.labels)
    labels.update({v: L, p: C, q: C, r: L})
    return VertexLabelledTree(g, labels)


def apply_T_O2(t: VertexLabelledTree, v) -> VertexLabelledTree:
    """Hang a new leaf (labelled L) off the C-vertex ``v``."""
    if t.labels.get(v) != C:
        raise OperationInapplicableError(
            f"pendant at {v!r}: site is not labelled C", "site not labelled C")
    (u,) = t._fresh_vertices(1)
    g = Graph(list(t.underlying.edges) + [(v, u)])
    labels = dict(t.labels)
    labels[u] = L
    return VertexLabelledTree(g, labels)


def cc_edge_set(t: VertexLabelledTree) -> EdgeSet:
    """All C-C edges; for family members this is a minimum ED-set."""
    bad = t.check_labels()
    if bad:
        raise InvalidLabelledTreeError("; ".join(bad))
    g = t.underlying
    ids = [i for i, (u, w) in enumerate(g.edges)
           if t.labels[u] == C and t.labels[w] == C]
    return EdgeSet(g, ids)


# ---------------------------------------------------------------------------
# edge-labelled trees (the equality family)
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class EdgeLabelledTree:
    underlying: Graph
    elabels: Dict  # canonical (u, v) pair -> "S" | "L1" | "L2"

    def label_of(self, u, v=None) -> str:
        if v is None:
            u, v = u
        return self.elabels[_canon_pair(u, v)]

    def label_by_id(self, eid: int) -> str:
        return self.elabels[self.underlying.edges[eid]]

    def s_count(self, v) -> int:
        g = self.underlying
        return sum(1 for e in g.adjacency[v] if self.label_by_id(e) == S)

    def _fresh_vertices(self, count: int) -> List[int]:
        taken = max((v for v in self.underlying.vertices if isinstance(v, int)),
                    default=-1)
        return [taken + 1 + i for i in range(count)]

    def _extended(self, new_edges: Sequence[Tuple], new_labels: Sequence[str]
                  ) -> "EdgeLabelledTree":
        g = Graph(list(self.underlying.edges) + list(new_edges))
        labels = dict(self.elabels)
        for pair, lab in zip(new_edges, new_labels):
            labels[_canon_pair(*pair)] = lab
        return EdgeLabelledTree(g, labels)

    def check_labels(self) -> List[str]:
        """Violations of the family's edge-label rules (empty when clean)."""
        g = self.underlying
        out = []
        if set(self.elabels) != set(g.edges) or \
                any(l not in (S, L1, L2) for l in self.elabels.values()):
            return ["labels must assign S, L1 or L2 to every edge"]
        if not g.is_tree():
            return ["underlying graph is not a tree"]
        scount = {v: self.s_count(v) for v in g.vertices}
        for eid, (u, v) in enumerate(g.edges):
            lab = self.label_by_id(eid)
            su, sv = scount[u], scount[v]
            if lab == L1:
                if not ((su == 1 and sv != 1) or (sv == 1 and su != 1)):
                    out.append(f"L1-edge {u}-{v} endpoint S-counts {su},{sv}")
            elif lab == L2:
                adj_s = sum(1 for e in set(g.adjacency[u]) | set(g.adjacency[v])
                            if e != eid and self.label_by_id(e) == S)
                if adj_s < 2:
                    out.append(f"L2-edge {u}-{v} adjacent to {adj_s} S-edges")
            if g.degree(u) == 1 or g.degree(v) == 1:
                if lab == S:
                    out.append(f"leaf edge {u}-{v} labelled S")
            if not any(self.label_by_id(e) == S
                       for e in set(g.adjacency[u]) | set(g.adjacency[v])
                       if e != eid) and lab != S:
                out.append(f"edge {u}-{v} not adjacent to any S-edge")
        out.extend(self._check_s_stars())
        return out

    def _check_s_stars(self) -> List[str]:
        g = self.underlying
        s_ids = [i for i in range(g.num_edges) if self.label_by_id(i) == S]
        comp = _edge_components(g, s_ids)
        out = []
        for edges in comp:
            if len(edges) < 2:
                out.append("an S-component is a single edge (need a nontrivial star)")
                continue
            if not _is_star(g, edges):
                out.append("an S-component is not a star")
        return out


def _edge_components(g: Graph, ids: Sequence[int]) -> List[List[int]]:
    idset = set(ids)
    seen = set()
    comps = []
    for start in ids:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            e = stack.pop()
            u, v = g.edges[e]
            for x in (u, v):
                for f in g.adjacency[x]:
                    if f in idset and f not in seen:
                        seen.add(f)
                        comp.append(f)
                        stack.append(f)
        comps.append(comp)
    return comps


def _is_star(g: Graph, edge_ids: Sequence[int]) -> bool:
    from collections import Counter
    cnt = Counter()
    for e in edge_ids:
        u, v = g.edges[e]
        cnt[u] += 1
        cnt[v] += 1
    return max(cnt.values()) == len(edge_ids)


def init_family_Tt(shape: Graph) -> EdgeLabelledTree:
    """Label a diameter-4 tree: non-leaf edges S, leaf edges L2 when they
    meet at least two non-leaf edges and L1 otherwise."""
    if not shape.is_tree():
        raise NotATreeError("seed shape must be a tree")
    if oracle.diameter(shape) != 4:
        raise InvalidInputError("seed shape must have diameter exactly 4")
    labels = {}
    nonleaf = set()
    for eid, (u, v) in enumerate(shape.edges):
        if shape.degree(u) > 1 and shape.degree(v) > 1:
            nonleaf.add(eid)
    for eid, (u, v) in enumerate(shape.edges):
        if eid in nonleaf:
            labels[shape.edges[eid]] = S
        else:
            adj = sum(1 for e in set(shape.adjacency[u]) | set(shape.adjacency[v])
                      if e != eid and e in nonleaf)
            labels[shape.edges[eid]] = L2 if adj >= 2 else L1
    return EdgeLabelledTree(shape, labels)


A1, A2, B = "A1", "A2", "B"
# class "C" reuses the vertex-label constant C


def vertex_class(t: EdgeLabelledTree, v) -> str:
    """A1/A2 by incident S-edge count, B when all incident edges are L2."""
    g = t.underlying
    sc = t.s_count(v)
    if sc == 1:
        return A1
    if sc >= 2:
        return A2
    if all(t.label_by_id(e) == L2 for e in g.adjacency[v]):
        return B
    return C


def apply_Tt_O1(t: EdgeLabelledTree, v) -> EdgeLabelledTree:
    """Pendant leaf at v in A1 (edge L1) or A2 (edge L2)."""
    cls = vertex_class(t, v)
    if cls not in (A1, A2):
        raise OperationInapplicableError(
            f"pendant at {v!r}: class {cls}, need A1 or A2", "class not in A1|A2")
    (u,) = t._fresh_vertices(1)
    return t._extended([(v, u)], [L1 if cls == A1 else L2])


def apply_Tt_O2(t: EdgeLabelledTree, v) -> EdgeLabelledTree:
    """Pendant 2-path at v in A2, labelled S then L1."""
    cls = vertex_class(t, v)
    if cls != A2:
        raise OperationInapplicableError(
            f"2-path at {v!r}: class {cls}, need A2", "class not A2")
    u1, u2 = t._fresh_vertices(2)
    return t._extended([(v, u1), (u1, u2)], [S, L1])


def _o3_guard(t: EdgeLabelledTree, v) -> Optional[str]:
    cls = vertex_class(t, v)
    if cls == A1:
        return "class is A1"
    if cls != C:
        return None
    g = t.underlying
    for e in g.adjacency[v]:
        if t.label_by_id(e) != L1:
            continue
        w = g.other_end(e, v)
        # the leaf edge certifying the swap must hang off the far endpoint
        if any(g.degree(g.other_end(f, w)) == 1
               for f in g.adjacency[w] if f != e):
            continue
        ok = False
        for f in g.adjacency[w]:
            if f == e or t.label_by_id(f) != L1:
                continue
            x = g.other_end(f, w)
            others = [h for h in g.adjacency[x] if h != f]
            if others and all(t.label_by_id(h) == L2 for h in others):
                ok = True
                break
        if not ok:
            return (f"L1-edge {v}-{w} has no certifying leaf edge or "
                    f"L1,L1,L2 path")
    return None


def apply_Tt_O3(t: EdgeLabelledTree, v) -> EdgeLabelledTree:
    """Join a fresh 5-path by its second vertex to v (not in A1; guarded in C)."""
    clause = _o3_guard(t, v)
    if clause is not None:
        raise OperationInapplicableError(f"5-path at {v!r}: {clause}", clause)
    u1, u2, u3, u4, u5 = t._fresh_vertices(5)
    return t._extended(
        [(v, u2), (u1, u2), (u2, u3), (u3, u4), (u4, u5)],
        [L1, L1, S, S, L1])


def apply_Tt_O4(t: EdgeLabelledTree, v) -> EdgeLabelledTree:
    """Join a fresh 4-path to v in B, labelled L1, S, S, L1 outward."""
    cls = vertex_class(t, v)
    if cls != B:
        raise OperationInapplicableError(
            f"4-path at {v!r}: class {cls}, need B", "class not B")
    u1, u2, u3, u4 = t._fresh_vertices(4)
    return t._extended(
        [(v, u1), (u1, u2), (u2, u3), (u3, u4)],
        [L1, S, S, L1])


def apply_Tt_O5(t: EdgeLabelledTree, v) -> EdgeLabelledTree:
    """Join a fresh 5-path by its midpoint to any vertex v (edge L2)."""
    u1, u2, u3, u4, u5 = t._fresh_vertices(5)
    return t._extended(
        [(v, u3), (u1, u2), (u2, u3), (u3, u4), (u4, u5)],
        [L2, L1, S, S, L1])


def s_edge_set(t: EdgeLabelledTree) -> EdgeSet:
    """All S-edges; for family members this is a minimum TED-set."""
    bad = t.check_labels()
    if bad:
        raise InvalidLabelledTreeError("; ".join(bad))
    g = t.underlying
    return EdgeSet(g, [i for i in range(g.num_edges) if t.label_by_id(i) == S])


# ---------------------------------------------------------------------------
# ratio and minimum-set structure checks
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class RatioReport:
    gamma: int
    gamma_t: "int | float"
    equal: bool
    double: bool
    is_star: bool
    is_double_star: bool

    def classification(self) -> str:
        if self.equal:
            return "equal"
        if self.double:
            return "double"
        return "neither"


def _shape_flags(g: Graph) -> Tuple[bool, bool]:
    internal = [v for v in g.vertices if g.degree(v) > 1]
    if g.num_edges == 1:
        return True, False
    return len(internal) == 1, len(internal) == 2


def check_ratio(g: Graph, mode: str = "equal") -> RatioReport:
    """Compare gamma'_t against gamma' (mode picks which relation to report)."""
    if mode not in ("equal", "double"):
        raise InvalidInputError(f"mode must be 'equal' or 'double', got {mode!r}")
    rt = build_rooted(g)
    gamma = gamma_tree(rt, witness=False).value
    gamma_t = gamma_t_tree(rt, witness=False).value
    star, dstar = _shape_flags(g)
    return RatioReport(gamma, gamma_t, gamma_t == gamma, gamma_t == 2 * gamma,
                       star, dstar)


DISJOINT_NEIGHBORHOODS = "disjoint-neighborhoods"
STAR_COMPONENTS = "star-components"


def check_min_set_structure(g: Graph, f, which: str) -> bool:
    """Structure of a minimum set: pairwise disjoint closed neighborhoods
    (minimum ED-sets of doubling trees) or nontrivial-star induced
    components (minimum TED-sets of equality trees)."""
    if which not in (DISJOINT_NEIGHBORHOODS, STAR_COMPONENTS):
        raise InvalidInputError(f"unknown check {which!r}")
    if not isinstance(f, EdgeSet):
        f = EdgeSet(g, f)
    total = which == STAR_COMPONENTS
    pred = oracle.is_total_edge_dominating if total else oracle.is_edge_dominating
    if not pred(g, f):
        raise InvalidCertificateError("set does not verify")
    if g.is_tree():
        rt = build_rooted(g)
        best = (gamma_t_tree if total else gamma_tree)(rt, witness=False).value
    else:
        best = (oracle.brute_min_ted if total else oracle.brute_min_ed)(g).value
    if len(f) != best:
        raise InvalidCertificateError(f"set has size {len(f)}, minimum is {best}")
    if which == DISJOINT_NEIGHBORHOODS:
        nbr = g.edge_neighbor_masks()
        ids = sorted(f.ids)
        for a_pos, a in enumerate(ids):
            ca = nbr[a] | (1 << a)
            for b in ids[a_pos + 1:]:
                if ca & (nbr[b] | (1 << b)):
                    return False
        return True
    comps = _edge_components(g, sorted(f.ids))
    return all(len(c) >= 2 and _is_star(g, c) for c in comps)


# ---------------------------------------------------------------------------
# random generation and trace replay
# ---------------------------------------------------------------------------

_T_OPS = {"O1": apply_T_O1, "O2": apply_T_O2}
_TT_OPS = {"O1": apply_Tt_O1, "O2": apply_Tt_O2, "O3": apply_Tt_O3,
           "O4": apply_Tt_O4, "O5": apply_Tt_O5}


def applicable_sites(tree) -> List[Tuple[str, object]]:
    """All (operation, vertex) pairs whose guard passes on ``tree``."""
    out = []
    if isinstance(tree, VertexLabelledTree):
        for v in tree.underlying.vertices:
            if tree.labels[v] == L and _t_o1_guard(tree, v) is None:
                out.append(("O1", v))
            if tree.labels[v] == C:
                out.append(("O2", v))
        return out
    for v in tree.underlying.vertices:
        cls = vertex_class(tree, v)
        if cls in (A1, A2):
            out.append(("O1", v))
        if cls == A2:
            out.append(("O2", v))
        if _o3_guard(tree, v) is None:
            out.append(("O3", v))
        if cls == B:
            out.append(("O4", v))
        out.append(("O5", v))
    return out


def random_diameter4_tree(rng: random.Random) -> Graph:
    """A random tree of diameter exactly 4 (two or more legs of depth 2)."""
    edges = []
    nxt = 1
    for _ in range(rng.randint(2, 4)):   # supports with at least one leaf each
        sup = nxt
        nxt += 1
        edges.append((0, sup))
        for _ in range(rng.randint(1, 3)):
            edges.append((sup, nxt))
            nxt += 1
    for _ in range(rng.randint(0, 2)):   # extra leaves at the center
        edges.append((0, nxt))
        nxt += 1
    return Graph(edges)


def generate(kind: str, seed: int, ops_budget: int):
    """Grow a random family member; returns (tree, trace dict for replay)."""
    if kind not in ("T", "Tt"):
        raise InvalidInputError(f"kind must be 'T' or 'Tt', got {kind!r}")
    rng = random.Random(seed)
    tree = init_family_T() if kind == "T" else init_family_Tt(random_diameter4_tree(rng))
    ops = []
    for _ in range(ops_budget):
        sites = applicable_sites(tree)
        if not sites:
            break
        op, v = rng.choice(sites)
        tree = (_T_OPS if kind == "T" else _TT_OPS)[op](tree, v)
        ops.append({"op": op, "site": v})
    return tree, {"kind": kind, "seed": seed, "ops": ops}


def replay(trace: Dict):
    """Rebuild the tree a ``generate`` trace describes."""
    kind = trace["kind"]
    rng = random.Random(trace["seed"])
    tree = init_family_T() if kind == "T" else init_family_Tt(random_diameter4_tree(rng))
    for step in trace["ops"]:
        tree = (_T_OPS if kind == "T" else _TT_OPS)[step["op"]](tree, step["site"])
    return tree


# ---------------------------------------------------------------------------
# labelled-tree text format
# ---------------------------------------------------------------------------

def format_labelled(tree) -> str:
    """Edge-list lines followed by `v <vertex> <C|L>` or `e <u> <v> <label>`."""
    g = tree.underlying
    lines = [f"{u} {v}" for u, v in g.edges]
    if isinstance(tree, VertexLabelledTree):
        lines += [f"v {v} {tree.labels[v]}"
                  for v in sorted(g.vertices, key=vertex_key)]
    else:
        lines += [f"e {u} {v} {tree.label_of(u, v)}" for u, v in g.edges]
    return "\n".join(lines) + "\n"


def parse_labelled(text: str):
    """Inverse of ``format_labelled``; a file with no label lines parses as
    a plain Graph."""
    from .graphs import _token_to_vertex

    edges = []
    vlabels = {}
    elabels = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if parts[0] == "v" and len(parts) == 3:
            if parts[2] not in (C, L):
                raise InvalidInputError(f"line {lineno}: bad vertex label {parts[2]!r}")
            vlabels[_token_to_vertex(parts[1])] = parts[2]
        elif parts[0] == "e" and len(parts) == 4:
            if parts[3] not in (S, L1, L2):
                raise InvalidInputError(f"line {lineno}: bad edge label {parts[3]!r}")
            elabels.append(((_token_to_vertex(parts[1]), _token_to_vertex(parts[2])),
                            parts[3]))
        elif len(parts) == 2:
            edges.append((_token_to_vertex(parts[0]), _token_to_vertex(parts[1])))
        else:
            raise InvalidInputError(f"line {lineno}: unrecognized line {raw!r}")
    if vlabels and elabels:
        raise InvalidInputError("file mixes vertex and edge labels")
    g = Graph(edges)
    if vlabels:
        return VertexLabelledTree(g, vlabels)
    if elabels:
        return EdgeLabelledTree(g, {_canon_pair(*p): lab for p, lab in elabels})
    return g
