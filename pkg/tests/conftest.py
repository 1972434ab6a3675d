import random

import networkx as nx
import pytest
from hypothesis import strategies as st

from cliquereconf.generators import gnp, random_chordal
from cliquereconf.graph import Graph


def graph(n, *edges):
    return Graph.from_edges(n, edges)


# Named graphs used throughout the examples (0-based vertices).
K3 = graph(3, (0, 1), (0, 2), (1, 2))
K4 = graph(4, (0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3))
P4 = graph(4, (0, 1), (1, 2), (2, 3))
C4 = graph(4, (0, 1), (1, 2), (2, 3), (3, 0))
# K4 minus the edge 2-3
DIAMOND = graph(4, (0, 1), (0, 2), (1, 2), (0, 3), (1, 3))
# interval graph with bags {0,1,2}, {1,2,3}, {2,3,4}
THREE_TRIANGLES = graph(5, (0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (2, 4), (3, 4))
TWO_EDGES = graph(4, (0, 1), (2, 3))
STAR = graph(4, (0, 1), (0, 2), (0, 3))


def to_nx(g: Graph) -> nx.Graph:
    h = nx.Graph()
    h.add_nodes_from(range(g.n))
    h.add_edges_from(g.edges())
    return h


@st.composite
def graphs(draw, max_n=10):
    n = draw(st.integers(0, max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True)) if pairs else []
    return Graph.from_edges(n, chosen)


@st.composite
def chordal_graphs(draw, max_n=12):
    seed = draw(st.integers(0, 2**32 - 1))
    n = draw(st.integers(1, max_n))
    rng = random.Random(seed)
    return random_chordal(n, rng, max_attach=rng.randint(1, 5), p_isolated=0.1)


@st.composite
def seeded_gnp(draw, max_n=9):
    seed = draw(st.integers(0, 2**32 - 1))
    rng = random.Random(seed)
    return gnp(draw(st.integers(1, max_n)), rng.choice((0.3, 0.5, 0.7)), rng)


@pytest.fixture
def rng():
    return random.Random(12345)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES

    if LINES:
        terminalreporter.section("acceptance criteria")
        for line in LINES:
            terminalreporter.write_line(line)
