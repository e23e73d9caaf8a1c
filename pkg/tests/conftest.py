import random

import networkx as nx
import pytest

from edgedom.graphs import Graph


def nx_trees(max_n, min_n=2):
    """All free trees with min_n..max_n vertices, as edgedom Graphs."""
    out = []
    for n in range(min_n, max_n + 1):
        for t in nx.nonisomorphic_trees(n):
            out.append(Graph(list(t.edges())))
    return out


def random_tree(rng: random.Random, n: int) -> Graph:
    return Graph([(rng.randrange(i), i) for i in range(1, n)])


@pytest.fixture(scope="session")
def trees_upto_10():
    return nx_trees(10)


@pytest.fixture(scope="session")
def trees_upto_11():
    return nx_trees(11)
