"""Small named graphs, the exhaustive graph atlas and seeded random samples used across the unit tests."""

from typing import Dict, List

import networkx as nx
from hypothesis import strategies as st

from generators import gen
from graph_core import Graph
from oracle import oracle_has_kij


def named_graphs() -> Dict[str, Graph]:
    return {
        "empty": Graph(0, ()),
        "k1": Graph.from_edges(1, []),
        "k2": Graph.from_edges(2, [(0, 1)]),
        "p3": Graph.from_edges(3, [(0, 1), (1, 2)]),
        "p4": Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)]),
        "k3": Graph.from_edges(3, [(0, 1), (1, 2), (0, 2)]),
        "c4": Graph.from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)]),
        "c5": Graph.from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]),
        "star3": Graph.from_edges(4, [(0, 1), (0, 2), (0, 3)]),
        "k33": Graph.from_networkx(nx.complete_bipartite_graph(3, 3)),
        "edgeless4": Graph.from_edges(4, []),
    }


def atlas_graphs(max_n: int, min_n: int = 0, every: int = 1) -> List[Graph]:
    """Every graph of the networkx atlas with min_n <= n <= max_n, optionally thinned."""
    chosen = [
        Graph.from_networkx(h)
        for h in nx.graph_atlas_g()
        if min_n <= h.number_of_nodes() <= max_n
    ]
    return chosen[::every]


@st.composite
def graphs(draw, max_n: int = 8) -> Graph:
    n = draw(st.integers(min_value=0, max_value=max_n))
    if n < 2:
        return Graph.from_edges(n, [])
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    return Graph.from_edges(n, chosen)


@st.composite
def bipartite_graphs(draw, max_side: int = 6):
    """Bipartite graph with its two sides as masks: left = 0..a-1, right = a..a+b-1."""
    a = draw(st.integers(min_value=1, max_value=max_side))
    b = draw(st.integers(min_value=1, max_value=max_side))
    pairs = [(u, a + v) for u in range(a) for v in range(b)]
    chosen = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    left = (1 << a) - 1
    right = ((1 << (a + b)) - 1) & ~left
    return Graph.from_edges(a + b, chosen), left, right


def random_graphs(count: int, n: int, seed: int = 0, probs=(0.25, 0.4, 0.55)) -> List[Graph]:
    """Seeded G(n, p) sample cycling through the given edge probabilities."""
    return [gen("gnp", (n, probs[t % len(probs)]), seed + t) for t in range(count)]


def random_c4_free_graphs(count: int, sizes=(7, 8), seed: int = 0, prob: float = 0.3) -> List[Graph]:
    """Seeded G(n, p) graphs without a K_{2,2} subgraph, sizes taken in turn."""
    chosen: List[Graph] = []
    attempt = 0
    while len(chosen) < count:
        g = gen("gnp", (sizes[len(chosen) % len(sizes)], prob), seed + attempt)
        attempt += 1
        if not oracle_has_kij(g, 2, 2):
            chosen.append(g)
    return chosen


@st.composite
def c4_free_graphs(draw, max_n: int = 10, min_n: int = 0) -> Graph:
    """Edges are drawn in order and kept unless they close a 4-cycle."""
    n = draw(st.integers(min_value=min_n, max_value=max_n))
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    if not pairs:
        return Graph.from_edges(n, [])
    drawn = draw(st.lists(st.sampled_from(pairs), unique=True, max_size=len(pairs)))
    adjacent = [set() for _ in range(n)]
    kept = []
    for u, v in drawn:
        closes_cycle = any(
            b in adjacent[a] for a in adjacent[u] - {v} for b in adjacent[v] - {u, a}
        )
        if closes_cycle:
            continue
        adjacent[u].add(v)
        adjacent[v].add(u)
        kept.append((u, v))
    return Graph.from_edges(n, kept)
