"""Differential test of ``combine`` with a non-trivial root-side part.

The root-side argument corresponds to a tree T0 in which the merge edge is
a pendant edge; children correspond to subtrees glued onto its leaf
endpoint.  Building that glued tree explicitly and enumerating it gives an
independent oracle for the merged four values.
"""

import random

from hypothesis import assume, given, settings, strategies as st

from edgedom import oracle
from edgedom.graphs import Graph
from edgedom.treedp import FourValues, build_rooted, combine, four_values_by_edge

from .conftest import random_tree


def _values_of(g, eid):
    return FourValues(*oracle.brute_state_values(g, eid))


def _random_rooted_piece(rng, max_n):
    """A tree plus one of its leaf edges (leaf endpoint reported last)."""
    g = random_tree(rng, rng.randrange(2, max_n + 1))
    leaf = rng.choice(g.leaves())
    eid = g.adjacency[leaf][0]
    return g, eid, leaf


@given(st.integers(0, 100_000))
@settings(max_examples=300, deadline=None)
def test_combine_matches_glued_tree_oracle(seed):
    rng = random.Random(seed)
    t0_graph, t0_edge, t0_leaf = _random_rooted_piece(rng, 5)
    q = rng.randrange(1, 4)
    pieces = [_random_rooted_piece(rng, 4) for _ in range(q)]

    # keep the glued enumeration within 2^m reach
    assume(t0_graph.num_edges + sum(p[0].num_edges for p in pieces) <= 14)

    # glue: each child's top edge keeps its pendant endpoint, which is
    # identified with the leaf endpoint of the t0 merge edge, so the merge
    # vertex sees the t0 edge plus exactly one top edge per child
    edges = [(f"t0_{u}", f"t0_{v}") for u, v in t0_graph.edges]
    merge_point = f"t0_{t0_leaf}"
    child_values = []
    for i, (cg, ce, cleaf) in enumerate(pieces):
        def name(v, i=i, cleaf=cleaf):
            return merge_point if v == cleaf else f"c{i}_{v}"

        edges += [(name(u), name(v)) for u, v in cg.edges]
        child_values.append(_values_of(cg, ce))

    glued = Graph(edges)
    got = combine(_values_of(t0_graph, t0_edge), child_values)
    want = _values_of(glued, glued.edge_id(f"t0_{t0_graph.edges[t0_edge][0]}",
                                           f"t0_{t0_graph.edges[t0_edge][1]}"))
    assert got.as_tuple() == want.as_tuple(), (
        t0_graph.edges, [p[0].edges for p in pieces], got, want)


@given(st.integers(0, 100_000))
@settings(max_examples=40, deadline=None)
def test_string_vertex_trees(seed):
    rng = random.Random(seed)
    base = random_tree(rng, rng.randrange(2, 10))
    renamed = Graph([(f"n{u}", f"n{v}") for u, v in base.edges])
    a = four_values_by_edge(build_rooted(base))
    b = four_values_by_edge(build_rooted(renamed))
    root_a = build_rooted(base).edge_order[-1]
    root_b = build_rooted(renamed).edge_order[-1]
    assert min(a[root_a].g1, a[root_a].g0) == min(b[root_b].g1, b[root_b].g0)
