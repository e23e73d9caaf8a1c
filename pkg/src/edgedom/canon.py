"""Canonical forms for (optionally labelled) trees.

Classic rooted-encoding canonization: root at the tree center (one or two
vertices left after repeatedly stripping leaves), encode each subtree as
the sorted tuple of child encodings together with any vertex label and the
label of the edge toward the parent, and take the lexicographic minimum
over the candidate roots.  Two labelled trees get the same form iff they
are isomorphic respecting labels.
"""

from __future__ import annotations

from typing import Dict, Optional, Tuple

from .errors import NotATreeError
from .graphs import Graph


def tree_center(g: Graph):
    """The one or two middle vertices, by repeated leaf stripping."""
    if not g.is_tree():
        raise NotATreeError("center requires a tree")
    if g.num_vertices <= 2:
        return list(g.vertices)
    deg = {v: g.degree(v) for v in g.vertices}
    layer = [v for v in g.vertices if deg[v] == 1]
    remaining = g.num_vertices
    while remaining > 2:
        nxt = []
        for v in layer:
            deg[v] = 0
            for e in g.adjacency[v]:
                u = g.other_end(e, v)
                if deg[u] > 1:
                    deg[u] -= 1
                    if deg[u] == 1:
                        nxt.append(u)
        remaining -= len(layer)
        layer = nxt
    return layer


def _encode_rooted(g: Graph, root, vlabels, elabels) -> Tuple:
    parent = {root: None}
    parent_edge = {root: None}
    order = [root]
    stack = [root]
    while stack:
        v = stack.pop()
        for e in g.adjacency[v]:
            u = g.other_end(e, v)
            if u not in parent:
                parent[u] = v
                parent_edge[u] = e
                order.append(u)
                stack.append(u)
    enc: Dict = {}
    for v in reversed(order):
        kids = sorted(enc[u] for u in g.neighbors(v) if parent.get(u) == v)
        vl = vlabels.get(v, "") if vlabels else ""
        el = ""
        if elabels is not None and parent_edge[v] is not None:
            el = elabels[parent_edge[v]]
        enc[v] = (vl, el, tuple(kids))
    return enc[root]


def canonical_form(g: Graph, vlabels: Optional[Dict] = None,
                   elabels: Optional[Dict] = None) -> Tuple:
    """Isomorphism-invariant encoding; ``elabels`` is keyed by edge id."""
    if g.num_vertices == 0:
        return ()
    return min(_encode_rooted(g, c, vlabels, elabels) for c in tree_center(g))
