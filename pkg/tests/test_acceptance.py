"""Acceptance criteria, one test per criterion, each printing a PASS line."""

import math
import time
from itertools import combinations

import pytest

from edgedom import bench, families as fam, oracle, reduction
from edgedom.canon import canonical_form
from edgedom.graphs import Graph, double_star, path_graph, star_graph
from edgedom.reduction import Sat3Instance
from edgedom.treedp import build_rooted, four_values_by_edge, gamma_t_tree, gamma_tree


def _ok(num, msg):
    print(f"ACCEPTANCE {num}: PASS - {msg}")


def _dp_values(g):
    rt = build_rooted(g)
    return gamma_tree(rt, witness=False).value, gamma_t_tree(rt, witness=False).value


def test_criterion_1_reference_values():
    t0 = time.perf_counter()
    for g in (star_graph(3), star_graph(5)):
        assert _dp_values(g) == (1, 2)
        assert oracle.brute_min_ed(g).value == 1
        assert oracle.brute_min_ted(g).value == 2
    for g in (double_star(1, 1), double_star(2, 3)):
        assert _dp_values(g) == (1, 2)
        assert oracle.brute_min_ed(g).value == 1
        assert oracle.brute_min_ted(g).value == 2
    assert _dp_values(path_graph(5)) == (2, 2)
    assert _dp_values(path_graph(6)) == (2, 3)
    elapsed = time.perf_counter() - t0
    assert elapsed < 1.0
    _ok(1, f"reference values exact in {elapsed:.3f}s")


def test_criterion_2_oracle_equivalence(trees_upto_10):
    t0 = time.perf_counter()
    checked = 0
    for g in trees_upto_10:
        ted = oracle.brute_min_ted(g).value
        ed = oracle.brute_min_ed(g).value
        for leaf in g.leaves():
            rt = build_rooted(g, leaf)
            assert gamma_t_tree(rt, witness=False).value == ted
            assert gamma_tree(rt, witness=False).value == ed
            checked += 1
    elapsed = time.perf_counter() - t0
    n10 = sum(1 for g in trees_upto_10 if g.num_vertices == 10)
    assert n10 == 106
    _ok(2, f"{len(trees_upto_10)} trees / {checked} rootings vs oracle "
           f"in {elapsed:.1f}s (target 60s)")


def _subtree(rt, eid):
    g = rt.underlying
    seen = {eid}
    stack = [eid]
    while stack:
        e = stack.pop()
        for k in rt.children_neighbors[e]:
            if k not in seen:
                seen.add(k)
                stack.append(k)
    sub = Graph([g.edges[e] for e in sorted(seen)])
    return sub, sub.edge_id(g.edges[eid])


def _single_edge_component_outside_neighborhood(sub, top):
    nbr = sub.edge_neighbor_masks()
    removed = nbr[top] | (1 << top)
    rest = [i for i in range(sub.num_edges) if not removed >> i & 1]
    restset = set(rest)
    seen = set()
    for start in rest:
        if start in seen:
            continue
        comp = [start]
        seen.add(start)
        stack = [start]
        while stack:
            e = stack.pop()
            m = nbr[e]
            while m:
                low = m & -m
                f = low.bit_length() - 1
                m ^= low
                if f in restset and f not in seen:
                    seen.add(f)
                    comp.append(f)
                    stack.append(f)
        if len(comp) == 1:
            return True
    return False


def test_criterion_3_four_state_soundness(trees_upto_10):
    t0 = time.perf_counter()
    edges_checked = 0
    for g in trees_upto_10:
        memo = {}
        for leaf in g.leaves():
            rt = build_rooted(g, leaf)
            fv = four_values_by_edge(rt)
            for e in rt.edge_order:
                key = (e, rt.child_vertex[e])
                if key not in memo:
                    sub, top = _subtree(rt, e)
                    memo[key] = (oracle.brute_state_values(sub, top), sub, top)
                want, sub, top = memo[key]
                vals = fv[e].as_tuple()
                assert vals == want, (g.edges, leaf, g.edges[e], vals, want)
                # emptiness matches the leaf-edge characterizations
                assert (vals[0] == math.inf) == (sub.num_edges == 1)
                assert (vals[1] == math.inf) == (sub.num_edges <= 2)
                assert (vals[2] == math.inf) == \
                    _single_edge_component_outside_neighborhood(sub, top)
                edges_checked += 1
    elapsed = time.perf_counter() - t0
    _ok(3, f"{edges_checked} edge/rooting pairs match the constrained "
           f"brute force in {elapsed:.1f}s")


def _sat3_instances(num_vars):
    """Every valid instance over 1..num_vars, as distinct clause multisets.

    A clause may contain a variable with both signs (the validator accepts
    it) but never the same literal twice.
    """
    pool = []
    for v in range(1, num_vars + 1):
        pool += [v, v, -v]
    results = set()

    def clause_ok(clause):
        return 1 <= len(clause) <= 3 and len(set(clause)) == len(clause)

    def rec(remaining, acc):
        if not remaining:
            results.add(tuple(sorted(acc)))
            return
        first = remaining[0]
        rest = remaining[1:]
        seen_here = set()
        for r in range(0, min(2, len(rest)) + 1):
            for extra in combinations(range(len(rest)), r):
                clause = tuple(sorted((first,) + tuple(rest[i] for i in extra)))
                if clause in seen_here or not clause_ok(clause):
                    continue
                seen_here.add(clause)
                left = [x for i, x in enumerate(rest) if i not in extra]
                rec(left, acc + [clause])

    rec(sorted(pool), [])
    return [Sat3Instance.make(num_vars, cls) for cls in sorted(results)]


def _has_both_signs_clause(inst):
    return any(len({abs(l) for l in c}) != len(c) for c in inst.clauses)


def test_criterion_4_reduction_equivalence():
    t0 = time.perf_counter()
    corpus = _sat3_instances(1) + _sat3_instances(2)
    assert len(corpus) >= 20
    # exactly 13 instances avoid clauses holding a variable with both signs;
    # the others are needed to reach 20 and keep the equivalence honest, but
    # a both-signs clause closes a 6-cycle through its own gadget, so the
    # girth bound is asserted on the both-signs-free ones
    clean = [inst for inst in corpus if not _has_both_signs_clause(inst)]
    assert len(clean) == 13
    sat_count = unsat_count = 0
    for inst in corpus:
        assert reduction.validate_sat3(inst).valid
        out = reduction.build_reduction(inst)
        rep = oracle.structural_report(out.graph)
        assert rep.bipartite and rep.max_degree <= 3
        if not _has_both_signs_clause(inst):
            assert rep.girth >= 10
        eq = reduction.reduction_equivalence_check(inst)
        assert eq.agree, (inst, eq)
        if eq.satisfiable:
            sat_count += 1
            assert eq.gamma_t == eq.k
        else:
            unsat_count += 1
            assert eq.gamma_t > eq.k
    assert sat_count and unsat_count

    # homogeneous 3-clauses need three distinct variables, so they cannot
    # appear at n <= 2; cover the H-bearing construction at n = 3 with the
    # polynomial-size checks (structure + the encode direction).
    hom = Sat3Instance.make(3, [(-1, -2, -3), (1, 2), (3, 1), (2, 3)])
    out = reduction.build_reduction(hom)
    assert out.s == 1 and out.k == 26
    rep = oracle.structural_report(out.graph)
    assert rep.bipartite and rep.max_degree == 3 and rep.girth >= 10
    f = reduction.encode_assignment(out, {1: 0, 2: 1, 3: 1})
    assert len(f) == out.k and oracle.is_total_edge_dominating(out.graph, f)
    elapsed = time.perf_counter() - t0
    _ok(4, f"{len(corpus)} instances ({sat_count} sat / {unsat_count} unsat) "
           f"agree in {elapsed:.1f}s (target 600s)")


def test_criterion_5_h_gadget_contribution():
    assert reduction.h_contribution(frozenset()) == 9
    for arm in ("x", "y", "z"):
        assert reduction.h_contribution(frozenset({arm})) == 8
    for pair in combinations(("x", "y", "z"), 2):
        assert reduction.h_contribution(frozenset(pair)) >= 8
    assert reduction.h_contribution(frozenset({"x", "y", "z"})) >= 8
    _ok(5, "H contributes exactly 9 alone, 8 with one attachment, >= 8 always")


def test_criterion_6_family_soundness():
    t0 = time.perf_counter()
    for kind in ("T", "Tt"):
        for seed in range(500):
            budget = seed % 21
            tree, _ = fam.generate(kind, seed, budget)
            assert tree.check_labels() == [], (kind, seed)
            rep = fam.check_ratio(tree.underlying)
            if kind == "T":
                assert rep.double, (seed, rep)
                marked = fam.cc_edge_set(tree)
                assert len(marked) == rep.gamma
                assert oracle.is_edge_dominating(tree.underlying, marked)
                assert fam.check_min_set_structure(
                    tree.underlying, marked, fam.DISJOINT_NEIGHBORHOODS)
            else:
                assert rep.equal, (seed, rep)
                marked = fam.s_edge_set(tree)
                assert len(marked) == rep.gamma_t
                assert oracle.is_total_edge_dominating(tree.underlying, marked)
                assert fam.check_min_set_structure(
                    tree.underlying, marked, fam.STAR_COMPONENTS)
    elapsed = time.perf_counter() - t0
    _ok(6, f"500 generations per family all sound in {elapsed:.1f}s")


def _state_key(tree):
    if isinstance(tree, fam.VertexLabelledTree):
        return ("T", canonical_form(tree.underlying, vlabels=tree.labels))
    el = {i: tree.label_by_id(i) for i in range(tree.underlying.num_edges)}
    return ("Tt", canonical_form(tree.underlying, elabels=el))


def _family_closure(starts, ops, max_n):
    seen = set()
    reached = set()
    frontier = []
    for s in starts:
        key = _state_key(s)
        if key not in seen:
            seen.add(key)
            reached.add(canonical_form(s.underlying))
            frontier.append(s)
    while frontier:
        nxt = []
        for tree in frontier:
            for op, v in fam.applicable_sites(tree):
                new = ops[op](tree, v)
                if new.underlying.num_vertices > max_n:
                    continue
                key = _state_key(new)
                if key not in seen:
                    seen.add(key)
                    reached.add(canonical_form(new.underlying))
                    nxt.append(new)
        frontier = nxt
    return reached


def test_criterion_7_family_completeness(trees_upto_10):
    t0 = time.perf_counter()
    doubling, equality, diam4 = {}, {}, []
    for g in trees_upto_10:
        gamma, gamma_t = _dp_values(g)
        key = canonical_form(g)
        if gamma_t == 2 * gamma and not fam._shape_flags(g)[0]:
            doubling[key] = g
        if gamma_t == gamma:
            equality[key] = g
        if g.num_vertices >= 5 and oracle.diameter(g) == 4:
            diam4.append(g)

    reached_T = _family_closure([fam.init_family_T()], fam._T_OPS, 10)
    missing = [g.edges for k, g in doubling.items() if k not in reached_T]
    assert missing == [], missing
    assert set(doubling) == {k for k in reached_T if k in doubling}
    extra_T = reached_T - set(doubling)
    assert extra_T == set(), "family T reached a non-doubling tree"

    # on doubling trees, every minimum ED-set has pairwise disjoint closed
    # neighborhoods (enumerated exhaustively at this scale)
    for g in doubling.values():
        for f in oracle.enumerate_min_sets(g, total=False):
            assert fam.check_min_set_structure(g, f, fam.DISJOINT_NEIGHBORHOODS)

    starts = [fam.init_family_Tt(g) for g in diam4]
    reached_Tt = _family_closure(starts, fam._TT_OPS, 10)
    missing = [g.edges for k, g in equality.items() if k not in reached_Tt]
    assert missing == [], missing
    extra_Tt = reached_Tt - set(equality)
    assert extra_Tt == set(), "family Tt reached a non-equality tree"
    elapsed = time.perf_counter() - t0
    _ok(7, f"all {len(doubling)} doubling and {len(equality)} equality trees "
           f"on <= 10 vertices reached in {elapsed:.1f}s (target 300s)")


def test_criterion_8_small_diameter_trees(trees_upto_11):
    t0 = time.perf_counter()
    diam4 = diam5 = leafchecks = 0
    for g in trees_upto_11:
        gamma, gamma_t = _dp_values(g)
        diam = oracle.diameter(g)
        if diam == 4:
            assert gamma_t == gamma, g.edges
            diam4 += 1
        elif diam == 5:
            assert gamma_t - gamma in (0, 1), g.edges
            diam5 += 1
        if diam >= 4:
            assert oracle.exists_min_set_avoiding_leaf_edges(g, total=False)
            assert oracle.exists_min_set_avoiding_leaf_edges(g, total=True)
            leafchecks += 1
    elapsed = time.perf_counter() - t0
    _ok(8, f"{diam4} diameter-4, {diam5} diameter-5, {leafchecks} leaf-free "
           f"checks in {elapsed:.1f}s")


def test_criterion_9_linear_scaling():
    rows = bench.run([10 ** 3, 10 ** 4, 10 ** 5, 10 ** 6], seed=0)
    per_edge = [r["ns_per_edge"] for r in rows]
    ratio = max(per_edge) / min(per_edge)
    total_1m = next(r["ns"] for r in rows if r["size"] == 10 ** 6)
    assert ratio <= 3.0, per_edge
    assert total_1m < 2e9
    _ok(9, f"per-edge {min(per_edge):.0f}..{max(per_edge):.0f} ns "
           f"(ratio {ratio:.2f}), 1e6 edges in {total_1m / 1e6:.0f} ms")
