"""Simple undirected graphs with stable vertex and edge identifiers.

Vertices are non-negative integers or identifier strings matching
``[A-Za-z0-9_]+``.  Edges get dense integer ids assigned at construction
(edges are sorted canonically first, so ids are reproducible).  Graphs are
immutable after construction and safe to share across threads.

The edge-list text format is one ``u v`` line per edge; ``#`` starts a
comment and blank lines are ignored.
"""

from __future__ import annotations

import math
import re
from collections import deque
from dataclasses import dataclass
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from .errors import InvalidInputError

INFINITY = math.inf

_IDENT_RE = re.compile(r"^[A-Za-z0-9_]+$")


def vertex_key(v) -> tuple:
    """Total order over mixed int/str vertex ids: ints first, then strings."""
    if isinstance(v, int):
        return (0, v, "")
    return (1, 0, v)


def _canon_pair(u, v) -> tuple:
    return (u, v) if vertex_key(u) <= vertex_key(v) else (v, u)


class Graph:
    """Immutable simple undirected graph.

    ``vertices`` is the sorted vertex tuple, ``edges`` the sorted tuple of
    canonical ``(u, v)`` pairs (edge id = position), and ``adjacency`` maps
    each vertex to the tuple of incident edge ids.
    """

    __slots__ = ("vertices", "edges", "adjacency", "_vpos", "_eid", "_nbr_masks")

    def __init__(self, edges: Iterable[Tuple], vertices: Iterable = ()):
        pairs = []
        seen = set()
        vs = set(vertices)
        for u, v in edges:
            self._check_vertex(u)
            self._check_vertex(v)
            if u == v:
                raise InvalidInputError(f"loop at vertex {u!r} not allowed")
            p = _canon_pair(u, v)
            if p in seen:
                raise InvalidInputError(f"duplicate edge {p!r}")
            seen.add(p)
            pairs.append(p)
            vs.add(u)
            vs.add(v)
        for v in vs:
            self._check_vertex(v)
        pairs.sort(key=lambda p: (vertex_key(p[0]), vertex_key(p[1])))
        self.vertices: Tuple = tuple(sorted(vs, key=vertex_key))
        self.edges: Tuple[Tuple, ...] = tuple(pairs)
        self._vpos = {v: i for i, v in enumerate(self.vertices)}
        self._eid = {p: i for i, p in enumerate(self.edges)}
        adj: Dict = {v: [] for v in self.vertices}
        for i, (u, v) in enumerate(self.edges):
            adj[u].append(i)
            adj[v].append(i)
        self.adjacency: Dict = {v: tuple(ids) for v, ids in adj.items()}
        self._nbr_masks: Optional[List[int]] = None

    @staticmethod
    def _check_vertex(v) -> None:
        if isinstance(v, int):
            if v < 0:
                raise InvalidInputError(f"negative vertex id {v}")
            return
        if isinstance(v, str) and _IDENT_RE.match(v):
            return
        raise InvalidInputError(f"bad vertex id {v!r}")

    # -- construction helpers -------------------------------------------------

    @classmethod
    def from_text(cls, text: str) -> "Graph":
        """Parse the edge-list format (``u v`` lines, ``#`` comments)."""
        edges = []
        for lineno, raw in enumerate(text.splitlines(), start=1):
            line = raw.split("#", 1)[0].strip()
            if not line:
                continue
            parts = line.split()
            if len(parts) != 2:
                raise InvalidInputError(f"line {lineno}: expected 'u v', got {raw!r}")
            edges.append((_token_to_vertex(parts[0]), _token_to_vertex(parts[1])))
        return cls(edges)

    @classmethod
    def from_file(cls, path) -> "Graph":
        with open(path, "r", encoding="utf-8") as fh:
            return cls.from_text(fh.read())

    def to_text(self) -> str:
        return "".join(f"{u} {v}\n" for u, v in self.edges)

    # -- basic queries --------------------------------------------------------

    @property
    def num_vertices(self) -> int:
        return len(self.vertices)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    def edge_id(self, u, v=None) -> int:
        """Edge id for a pair (or a pair given as one tuple argument)."""
        if v is None:
            u, v = u
        p = _canon_pair(u, v)
        try:
            return self._eid[p]
        except KeyError:
            raise InvalidInputError(f"no edge {p!r} in graph") from None

    def has_edge(self, u, v) -> bool:
        return _canon_pair(u, v) in self._eid

    def endpoints(self, eid: int) -> Tuple:
        return self.edges[eid]

    def other_end(self, eid: int, v):
        u, w = self.edges[eid]
        return w if v == u else u

    def degree(self, v) -> int:
        return len(self.adjacency[v])

    def is_leaf(self, v) -> bool:
        return self.degree(v) == 1

    def leaves(self) -> List:
        return [v for v in self.vertices if self.degree(v) == 1]

    def leaf_edge_ids(self) -> List[int]:
        """Edges incident to a degree-1 vertex."""
        return [i for i, (u, v) in enumerate(self.edges)
                if self.degree(u) == 1 or self.degree(v) == 1]

    def neighbors(self, v) -> List:
        return [self.other_end(e, v) for e in self.adjacency[v]]

    # -- traversal ------------------------------------------------------------

    def bfs_distances(self, source) -> Dict:
        dist = {source: 0}
        queue = deque([source])
        while queue:
            v = queue.popleft()
            for e in self.adjacency[v]:
                u = self.other_end(e, v)
                if u not in dist:
                    dist[u] = dist[v] + 1
                    queue.append(u)
        return dist

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        return len(self.bfs_distances(self.vertices[0])) == self.num_vertices

    def is_tree(self) -> bool:
        return self.is_connected() and self.num_edges == self.num_vertices - 1

    # -- edge adjacency bitmasks (shared by the exponential oracles) ----------

    def edge_neighbor_masks(self) -> List[int]:
        """Per edge, bitmask of the distinct edges sharing an endpoint."""
        if self._nbr_masks is None:
            vert_mask = {v: 0 for v in self.vertices}
            for i, (u, v) in enumerate(self.edges):
                vert_mask[u] |= 1 << i
                vert_mask[v] |= 1 << i
            self._nbr_masks = [
                (vert_mask[u] | vert_mask[v]) & ~(1 << i)
                for i, (u, v) in enumerate(self.edges)
            ]
        return self._nbr_masks


def _token_to_vertex(tok: str):
    return int(tok) if tok.isdigit() else tok


class EdgeSet:
    """A set of edge ids referencing one graph (e.g. an ED/TED candidate)."""

    __slots__ = ("graph", "ids")

    def __init__(self, graph: Graph, ids: Iterable[int]):
        ids = frozenset(ids)
        for i in ids:
            if not isinstance(i, int) or not 0 <= i < graph.num_edges:
                raise InvalidInputError(f"edge id {i!r} not in graph")
        self.graph = graph
        self.ids = ids

    @classmethod
    def from_pairs(cls, graph: Graph, pairs: Iterable[Tuple]) -> "EdgeSet":
        return cls(graph, (graph.edge_id(p) for p in pairs))

    def pairs(self) -> List[Tuple]:
        """Members as sorted endpoint pairs (the reproducible wire form)."""
        return sorted((self.graph.edges[i] for i in self.ids),
                      key=lambda p: (vertex_key(p[0]), vertex_key(p[1])))

    def mask(self) -> int:
        m = 0
        for i in self.ids:
            m |= 1 << i
        return m

    def __len__(self) -> int:
        return len(self.ids)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.ids))

    def __contains__(self, eid: int) -> bool:
        return eid in self.ids

    def __eq__(self, other) -> bool:
        return (isinstance(other, EdgeSet) and self.graph is other.graph
                and self.ids == other.ids)

    def __hash__(self) -> int:
        return hash((id(self.graph), self.ids))

    def __repr__(self) -> str:
        return f"EdgeSet({self.pairs()})"


@dataclass(frozen=True)
class SolveResult:
    """Optimum value (``math.inf`` when no set exists) plus optional witness."""

    value: "int | float"
    witness: Optional[EdgeSet] = None

    def witness_pairs(self) -> Optional[List[Tuple]]:
        return None if self.witness is None else self.witness.pairs()


# -- small constructors used throughout tests and the CLI ---------------------

def path_graph(n: int) -> Graph:
    """Path on ``n`` vertices 0..n-1."""
    return Graph((i, i + 1) for i in range(n - 1))


def star_graph(k: int) -> Graph:
    """Star with center 0 and ``k`` leaves."""
    return Graph((0, i) for i in range(1, k + 1))


def double_star(a: int, b: int) -> Graph:
    """Two adjacent centers 0,1 with ``a`` and ``b`` extra leaves."""
    edges = [(0, 1)]
    edges += [(0, 2 + i) for i in range(a)]
    edges += [(1, 2 + a + i) for i in range(b)]
    return Graph(edges)


def cycle_graph(n: int) -> Graph:
    return Graph(((i, (i + 1) % n) for i in range(n)))


def spider(legs: Sequence[int]) -> Graph:
    """Spider with center 0 and one path of given length per leg."""
    edges = []
    nxt = 1
    for length in legs:
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev = nxt
            nxt += 1
    return Graph(edges)
