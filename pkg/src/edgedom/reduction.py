"""Reduction from SAT-3 RESTRICTED to total edge domination.

Instances: clauses with at most three literals where every variable occurs
exactly twice positively and once negatively.  The output graph has one
12-vertex gadget per variable (three pendant 4-vertex paths a/b/c tied
together through a spine), a 2-vertex gadget d_l, d'_l per clause, and
literal edges: the first/second positive occurrence of a variable attaches
d_l to the a/b path, the negative occurrence attaches d'_l to the c path.
Satisfiability is equivalent to a total edge dominating set of size
k = 6n + 8s, where s counts the 3-literal clauses whose literals all have
one sign: those clauses would force a degree-4 vertex, so they get a
larger gadget H instead of d_l, d'_l.

H here is a spider: a center w with three arms of six edges, the literal
edges attaching at the second vertex of each arm.  Brute force over H with
boundary conditions (see ``h_contribution``) shows any TED-set restricted
to H has at least 9 edges, 8 when one attachment edge is selected, which
is the contract the size bound needs.  H is acyclic, keeping the output
bipartite with maximum degree 3 and girth at least 10.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Dict, FrozenSet, List, Optional, Sequence, Tuple

from .errors import (
    EncodingInfeasibleError,
    InvalidCertificateError,
    InvalidInputError,
)
from .graphs import EdgeSet, Graph
from . import oracle

H_ARMS = ("x", "y", "z")
H_ARM_LEN = 6
H_ATTACH_POS = 2  # literal edges join the arms two steps from their tips
# per-arm TED patterns as (position, position) vertex-index pairs, 0 = center
_ARM_FULL = ((0, 1), (3, 4), (4, 5))  # used when the arm's attachment is unselected
_ARM_ATTACHED = ((3, 4), (4, 5))      # the attachment edge stands in for (0, 1)


@dataclass(frozen=True)
class Sat3Instance:
    """Clauses as tuples of nonzero signed variable ids (DIMACS convention)."""

    num_vars: int
    clauses: Tuple[Tuple[int, ...], ...]

    @classmethod
    def make(cls, num_vars: int, clauses: Sequence[Sequence[int]]) -> "Sat3Instance":
        return cls(num_vars, tuple(tuple(c) for c in clauses))

    def is_homogeneous_3clause(self, idx: int) -> bool:
        c = self.clauses[idx]
        return len(c) == 3 and (all(l > 0 for l in c) or all(l < 0 for l in c))


@dataclass
class ValidationReport:
    valid: bool
    violations: List[str]
    pos_counts: Dict[int, int]
    neg_counts: Dict[int, int]
    # clause index (0-based) per violation when applicable, else None
    clause_indices: List[Optional[int]] = field(default_factory=list)


def validate_sat3(inst: Sat3Instance) -> ValidationReport:
    """Check the occurrence pattern; returns violations instead of raising."""
    pos = {i: 0 for i in range(1, inst.num_vars + 1)}
    neg = {i: 0 for i in range(1, inst.num_vars + 1)}
    violations: List[str] = []
    idxs: List[Optional[int]] = []

    def bad(msg: str, ci: Optional[int]) -> None:
        violations.append(msg)
        idxs.append(ci)

    for ci, clause in enumerate(inst.clauses):
        if not 1 <= len(clause) <= 3:
            bad(f"clause {ci + 1} has {len(clause)} literals (must be 1..3)", ci)
        seen = set()
        for lit in clause:
            v = abs(lit)
            if lit == 0 or v > inst.num_vars:
                bad(f"clause {ci + 1}: literal {lit} out of range", ci)
                continue
            if lit in seen:
                bad(f"clause {ci + 1}: repeated literal {lit}", ci)
            seen.add(lit)
            if lit > 0:
                pos[v] += 1
            else:
                neg[v] += 1
    for v in range(1, inst.num_vars + 1):
        if pos[v] != 2:
            bad(f"variable {v} occurs positively {pos[v]} times (need exactly 2)", None)
        if neg[v] != 1:
            bad(f"variable {v} occurs negatively {neg[v]} times (need exactly 1)", None)
    return ValidationReport(not violations, violations, pos, neg, idxs)


def parse_dimacs(text: str) -> Tuple[Sat3Instance, List[int]]:
    """Parse the DIMACS CNF subset: ``p cnf n m`` then 0-terminated clause lines.

    Returns the instance and, per clause, the line number it came from.
    """
    num_vars = None
    declared = None
    clauses: List[Tuple[int, ...]] = []
    lines: List[int] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise InvalidInputError(f"line {lineno}: bad header {raw!r}")
            try:
                num_vars, declared = int(parts[2]), int(parts[3])
            except ValueError:
                raise InvalidInputError(f"line {lineno}: bad header numbers") from None
            continue
        if num_vars is None:
            raise InvalidInputError(f"line {lineno}: clause before 'p cnf' header")
        try:
            lits = [int(t) for t in line.split()]
        except ValueError:
            raise InvalidInputError(f"line {lineno}: non-integer literal") from None
        if not lits or lits[-1] != 0:
            raise InvalidInputError(f"line {lineno}: clause must end with 0")
        body = lits[:-1]
        if not body:
            raise InvalidInputError(f"line {lineno}: empty clause")
        clauses.append(tuple(body))
        lines.append(lineno)
    if num_vars is None:
        raise InvalidInputError("missing 'p cnf' header")
    if declared is not None and declared != len(clauses):
        raise InvalidInputError(
            f"header declares {declared} clauses, file has {len(clauses)}")
    return Sat3Instance.make(num_vars, clauses), lines


def satisfiable(inst: Sat3Instance, max_vars: int = 20) -> bool:
    """Brute-force satisfiability over all assignments (tiny instances only)."""
    if inst.num_vars > max_vars:
        raise InvalidInputError(f"too many variables for brute force ({inst.num_vars})")
    for bits in range(1 << inst.num_vars):
        if all(any((lit > 0) == bool(bits >> (abs(lit) - 1) & 1) for lit in c)
               for c in inst.clauses):
            return True
    return False


def _satisfies(inst: Sat3Instance, values: Dict[int, int]) -> bool:
    return all(any((lit > 0) == bool(values[abs(lit)]) for lit in c)
               for c in inst.clauses)


@dataclass
class ReductionOutput:
    graph: Graph
    k: int
    s: int
    vertex_tags: Dict[str, Dict]
    homogeneous_clauses: FrozenSet[int]  # 0-based clause indices
    instance: Sat3Instance
    # per variable: clause-side endpoints of the three literal edges
    pos_attach: Dict[int, Tuple[str, str]] = field(default_factory=dict)
    neg_attach: Dict[int, str] = field(default_factory=dict)


def _h_vertices(l: int) -> Dict[str, str]:
    names = {"w": f"h{l}_w"}
    for arm in H_ARMS:
        for i in range(1, H_ARM_LEN + 1):
            names[f"{arm}{i}"] = f"h{l}_{arm}{i}"
    return names


def _h_edges(l: int) -> List[Tuple[str, str]]:
    nm = _h_vertices(l)
    edges = []
    for arm in H_ARMS:
        prev = nm["w"]
        for i in range(1, H_ARM_LEN + 1):
            cur = nm[f"{arm}{i}"]
            edges.append((prev, cur))
            prev = cur
    return edges


def _h_arm_pattern(l: int, arm: str, attached: bool) -> List[Tuple[str, str]]:
    nm = _h_vertices(l)
    chain = [nm["w"]] + [nm[f"{arm}{i}"] for i in range(1, H_ARM_LEN + 1)]
    template = _ARM_ATTACHED if attached else _ARM_FULL
    return [(chain[a], chain[b]) for a, b in template]


def build_reduction(inst: Sat3Instance) -> ReductionOutput:
    """Construct the reduction graph, tags and the target size k = 6n + 8s."""
    report = validate_sat3(inst)
    if not report.valid:
        raise InvalidInputError("invalid SAT-3 instance: " + "; ".join(report.violations))

    n = inst.num_vars
    edges: List[Tuple[str, str]] = []
    tags: Dict[str, Dict] = {}

    for i in range(1, n + 1):
        for path in "abc":
            tags[f"{path}{i}"] = {"role": path, "var": i}
            for j in range(3):
                tags[f"{path}{i}_{j}"] = {"role": f"{path}{j}", "var": i}
            edges.append((f"{path}{i}", f"{path}{i}_0"))
            edges.append((f"{path}{i}_0", f"{path}{i}_1"))
            edges.append((f"{path}{i}_1", f"{path}{i}_2"))
        edges.append((f"a{i}", f"c{i}"))
        edges.append((f"c{i}", f"b{i}"))

    homogeneous = frozenset(ci for ci in range(len(inst.clauses))
                            if inst.is_homogeneous_3clause(ci))
    s = len(homogeneous)

    # clause-side attachment point for each literal occurrence
    attach_point: Dict[int, Dict[int, str]] = {}  # clause idx -> literal -> vertex
    for ci, clause in enumerate(inst.clauses):
        l = ci + 1
        attach_point[ci] = {}
        if ci in homogeneous:
            for v in _h_vertices(l).values():
                tags[v] = {"role": "H", "clause": l}
            for arm in H_ARMS:
                tags[f"h{l}_{arm}{H_ATTACH_POS}"] = {"role": f"H{arm}", "clause": l}
            edges.extend(_h_edges(l))
            for arm, lit in zip(H_ARMS, sorted(clause, key=abs)):
                attach_point[ci][lit] = f"h{l}_{arm}{H_ATTACH_POS}"
        else:
            tags[f"d{l}"] = {"role": "d", "clause": l}
            tags[f"dp{l}"] = {"role": "d'", "clause": l}
            edges.append((f"d{l}", f"dp{l}"))
            for lit in clause:
                attach_point[ci][lit] = f"d{l}" if lit > 0 else f"dp{l}"

    pos_attach: Dict[int, Tuple[str, str]] = {}
    neg_attach: Dict[int, str] = {}
    pos_seen: Dict[int, List[str]] = {i: [] for i in range(1, n + 1)}
    for ci, clause in enumerate(inst.clauses):
        for lit in clause:
            v = abs(lit)
            point = attach_point[ci][lit]
            if lit > 0:
                side = "a" if not pos_seen[v] else "b"
                pos_seen[v].append(point)
                edges.append((f"{side}{v}_0", point))
            else:
                neg_attach[v] = point
                edges.append((f"c{v}_0", point))
    for v in range(1, n + 1):
        pos_attach[v] = tuple(pos_seen[v])

    graph = Graph(edges)
    return ReductionOutput(graph, 6 * n + 8 * s, s, tags, homogeneous, inst,
                           pos_attach, neg_attach)


def encode_assignment(out: ReductionOutput, values: Dict[int, int]) -> EdgeSet:
    """Turn a satisfying assignment into a TED-set of size 6n + 8s."""
    inst = out.instance
    if set(values) != set(range(1, inst.num_vars + 1)):
        raise EncodingInfeasibleError("assignment must cover variables 1..n")
    if not _satisfies(inst, values):
        raise EncodingInfeasibleError("assignment does not satisfy the instance")

    pairs: List[Tuple[str, str]] = []
    for i in range(1, inst.num_vars + 1):
        att_a, att_b = out.pos_attach[i]
        att_c = out.neg_attach[i]
        if values[i]:
            pairs += [(f"a{i}_0", att_a), (f"a{i}_0", f"a{i}_1"),
                      (f"b{i}_0", att_b), (f"b{i}_0", f"b{i}_1"),
                      (f"c{i}", f"c{i}_0"), (f"c{i}_0", f"c{i}_1")]
        else:
            pairs += [(f"a{i}", f"a{i}_0"), (f"a{i}_0", f"a{i}_1"),
                      (f"b{i}", f"b{i}_0"), (f"b{i}_0", f"b{i}_1"),
                      (f"c{i}_0", att_c), (f"c{i}_0", f"c{i}_1")]

    selected = {(u, v) for u, v in pairs} | {(v, u) for u, v in pairs}
    for ci in sorted(out.homogeneous_clauses):
        l = ci + 1
        attached = None
        for arm in H_ARMS:
            point = f"h{l}_{arm}{H_ATTACH_POS}"
            if any((point, other) in selected for other in out.graph.neighbors(point)):
                attached = arm
                break
        for arm in H_ARMS:
            pairs += _h_arm_pattern(l, arm, attached == arm)

    return EdgeSet.from_pairs(out.graph, pairs)


def decode_ted_set(out: ReductionOutput, f) -> Dict[int, int]:
    """Read a satisfying assignment off a TED-set of size at most k.

    Any TED-set within the size bound is tight on every gadget budget, which
    pins the spine edge c_i c_{i,0} as the truth flag; the result is checked
    against the instance before being returned.
    """
    if not isinstance(f, EdgeSet):
        f = EdgeSet.from_pairs(out.graph, f)
    if f.graph is not out.graph:
        raise InvalidCertificateError("edge set references a different graph")
    if len(f) > out.k:
        raise InvalidCertificateError(f"set size {len(f)} exceeds k = {out.k}")
    if not oracle.is_total_edge_dominating(out.graph, f):
        raise InvalidCertificateError("set is not total edge dominating")
    ids = f.ids
    values = {}
    for i in range(1, out.instance.num_vars + 1):
        values[i] = 1 if out.graph.edge_id(f"c{i}", f"c{i}_0") in ids else 0
    if not _satisfies(out.instance, values):
        raise InvalidCertificateError("decoded assignment does not satisfy the instance")
    return values


@dataclass(frozen=True)
class EquivalenceReport:
    satisfiable: bool
    gamma_t: "int | float"
    k: int
    agree: bool


def _gamma_t_componentwise(g: Graph, cap: int):
    """Total edge domination is additive over connected components."""
    seen = set()
    total = 0
    for start in g.vertices:
        if start in seen:
            continue
        comp_vs = set(g.bfs_distances(start))
        seen |= comp_vs
        edges = [e for e in g.edges if e[0] in comp_vs]
        if not edges:
            continue
        val = oracle.brute_min_ted(Graph(edges), cap=cap).value
        if val == math.inf:
            return math.inf
        total += val
    return total


def reduction_equivalence_check(inst: Sat3Instance, cap: int = 40) -> EquivalenceReport:
    """Dual brute force: satisfiability vs gamma'_t(G) <= k on a tiny instance.

    The cap applies per connected component of the reduction graph (the
    graph splits when no clause ties two variable gadgets together).
    """
    sat = satisfiable(inst)
    out = build_reduction(inst)
    gt = _gamma_t_componentwise(out.graph, cap)
    return EquivalenceReport(sat, gt, out.k, sat == (gt <= out.k))


def h_contribution(selected: FrozenSet[str] = frozenset()) -> int:
    """Minimum number of H-internal edges in any TED-like set, by brute force.

    ``selected`` names the arms (subset of {x, y, z}) whose attachment edge
    is in the candidate set.  Boundary conditions mirror the gadget's place
    in the full graph: an attachment edge dominates the internal edges at
    its arm vertex and partners any internal member there, while its own
    domination is provided on the variable side.
    """
    bad = set(selected) - set(H_ARMS)
    if bad:
        raise InvalidInputError(f"unknown arms {sorted(bad)}")
    g = Graph(_h_edges(0))
    m = g.num_edges
    nbr = g.edge_neighbor_masks()
    full = (1 << m) - 1
    touch = 0
    for arm in selected:
        for e in g.adjacency[f"h0_{arm}{H_ATTACH_POS}"]:
            touch |= 1 << e
    best = m
    for fmask in range(1 << m):
        if fmask.bit_count() >= best:
            continue
        covered = 0
        ok = True
        rest = fmask
        while rest:
            low = rest & -rest
            i = low.bit_length() - 1
            rest ^= low
            covered |= nbr[i]
            if not (nbr[i] & fmask) and not (low & touch):
                ok = False
                break
        if ok and (full & ~(covered | touch)) == 0:
            best = fmask.bit_count()
    return best
