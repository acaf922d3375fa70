"""Module with the graph representation shared by every solver.
Vertex sets are int bitmasks: bit v is set when vertex v is a member."""

from dataclasses import dataclass
from functools import cached_property
from typing import Dict, Iterable, List, Sequence, Tuple
import heapq
import logging

import networkx as nx


class GraphError(ValueError):
    """Raised for malformed graphs, vertex ids out of range and invalid bicliques."""


def to_mask(vertices: Iterable[int]) -> int:
    """Pack vertex ids into a bitmask.

    Args:
        vertices (Iterable[int]): Vertex ids.

    Returns:
        int: Bitmask with one bit per vertex.
    """
    mask = 0
    for v in vertices:
        if v < 0:
            raise GraphError(f"negative vertex id {v}")
        mask |= 1 << v
    return mask


def members(mask: int) -> List[int]:
    """Unpack a bitmask into vertex ids in increasing order.

    Args:
        mask (int): Bitmask.

    Returns:
        List[int]: Vertex ids.
    """
    result = []
    while mask:
        low = mask & -mask
        result.append(low.bit_length() - 1)
        mask ^= low
    return result


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def lowest(mask: int) -> int:
    """Smallest vertex id in a non-empty mask."""
    if not mask:
        raise GraphError("lowest() of an empty vertex set")
    return (mask & -mask).bit_length() - 1


@dataclass(frozen=True)
class Graph:
    """Simple undirected graph on vertices 0..n-1.

    Args:
        n (int): Number of vertices.
        adjacency (Tuple[int, ...]): Neighbor bitmask per vertex.
    """

    n: int
    adjacency: Tuple[int, ...]

    def __post_init__(self) -> None:
        if self.n < 0:
            raise GraphError(f"negative vertex count {self.n}")
        if len(self.adjacency) != self.n:
            raise GraphError(
                f"adjacency has {len(self.adjacency)} rows for n={self.n}"
            )
        full = (1 << self.n) - 1
        for v, row in enumerate(self.adjacency):
            if row & ~full:
                raise GraphError(f"vertex {v} has a neighbor out of range")
            if row >> v & 1:
                raise GraphError(f"self-loop at vertex {v}")
            for u in members(row):
                if not self.adjacency[u] >> v & 1:
                    raise GraphError(f"edge {v}-{u} is not symmetric")

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[Tuple[int, int]]) -> "Graph":
        """Build a graph from an edge list. Duplicate edges collapse.

        Args:
            n (int): Number of vertices.
            edges (Iterable[Tuple[int, int]]): Pairs of 0-based vertex ids.

        Returns:
            Graph: The graph.
        """
        rows = [0] * n
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise GraphError(f"edge {u}-{v} out of range for n={n}")
            if u == v:
                raise GraphError(f"self-loop at vertex {u}")
            rows[u] |= 1 << v
            rows[v] |= 1 << u
        return cls(n, tuple(rows))

    @classmethod
    def from_networkx(cls, nx_graph: nx.Graph) -> "Graph":
        """Convert a networkx graph. Nodes are renumbered in sorted order when sortable."""
        try:
            nodes = sorted(nx_graph.nodes())
        except TypeError:
            nodes = list(nx_graph.nodes())
        index = {node: i for i, node in enumerate(nodes)}
        return cls.from_edges(
            len(nodes),
            ((index[u], index[v]) for u, v in nx_graph.edges() if u != v),
        )

    def to_networkx(self) -> nx.Graph:
        nx_graph = nx.Graph()
        nx_graph.add_nodes_from(range(self.n))
        nx_graph.add_edges_from(self.edges())
        return nx_graph

    @property
    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    @cached_property
    def m(self) -> int:
        return sum(popcount(row) for row in self.adjacency) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adjacency[v])

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adjacency[u] >> v & 1)

    def edges(self) -> List[Tuple[int, int]]:
        """Edges (u, v) with u < v in lexicographic order."""
        return [
            (u, v)
            for u, row in enumerate(self.adjacency)
            for v in members(row >> (u + 1) << (u + 1))
        ]

    def check_mask(self, mask: int) -> None:
        if mask < 0 or mask & ~self.vertex_mask:
            raise GraphError(f"vertex set {members(mask)} leaves 0..{self.n - 1}")


@dataclass(frozen=True)
class Biclique:
    """Complete bipartite subgraph given by two disjoint non-empty sides."""

    left: int
    right: int

    def is_valid_in(self, g: Graph) -> bool:
        if not self.left or not self.right or self.left & self.right:
            return False
        if (self.left | self.right) & ~g.vertex_mask:
            return False
        return all(
            g.adjacency[v] & self.right == self.right for v in members(self.left)
        )

    def edge_count(self) -> int:
        return popcount(self.left) * popcount(self.right)

    def to_dict(self) -> Dict[str, List[int]]:
        return {"left": members(self.left), "right": members(self.right)}


@dataclass(frozen=True)
class DegeneracyOrdering:
    """Vertex ordering where every vertex has at most d neighbors later in the order."""

    order: Tuple[int, ...]
    d: int

    @cached_property
    def position(self) -> Dict[int, int]:
        return {v: i for i, v in enumerate(self.order)}

    @cached_property
    def later_masks(self) -> Dict[int, int]:
        later = {}
        suffix = 0
        for v in reversed(self.order):
            later[v] = suffix
            suffix |= 1 << v
        return later

    def forward_mask(self, g: Graph, v: int) -> int:
        return g.adjacency[v] & self.later_masks[v]


def degeneracy_ordering(g: Graph) -> DegeneracyOrdering:
    """Repeatedly remove a minimum-degree vertex, smallest id first on ties.

    Args:
        g (Graph): Input graph.

    Returns:
        DegeneracyOrdering: Removal order and the largest residual degree seen.
    """
    residual = [g.degree(v) for v in range(g.n)]
    heap = [(residual[v], v) for v in range(g.n)]
    heapq.heapify(heap)
    removed = 0
    order = []
    d = 0
    while heap:
        deg, v = heapq.heappop(heap)
        if removed >> v & 1 or deg != residual[v]:
            continue
        order.append(v)
        removed |= 1 << v
        d = max(d, deg)
        for u in members(g.adjacency[v] & ~removed):
            residual[u] -= 1
            heapq.heappush(heap, (residual[u], u))
    logging.debug(f"degeneracy_ordering: n={g.n} d={d}")
    return DegeneracyOrdering(tuple(order), d)


def induced_subgraph(g: Graph, s: int) -> Tuple[Graph, List[int]]:
    """Induced subgraph on the vertex set s, renumbered 0..|s|-1.

    Args:
        g (Graph): Host graph.
        s (int): Vertex set.

    Returns:
        Tuple[Graph, List[int]]: Subgraph and the map from new index to host vertex.
    """
    g.check_mask(s)
    index_map = members(s)
    position = {v: i for i, v in enumerate(index_map)}
    rows = []
    for v in index_map:
        rows.append(to_mask(position[u] for u in members(g.adjacency[v] & s)))
    return Graph(len(index_map), tuple(rows)), index_map


def lift_mask(mask: int, index_map: Sequence[int]) -> int:
    """Map a vertex set of an induced subgraph back to host ids."""
    return to_mask(index_map[i] for i in members(mask))


def remove_edges(g: Graph, bicliques: Iterable[Biclique]) -> Graph:
    """Delete every edge covered by the given bicliques; the vertex set is unchanged.

    Args:
        g (Graph): Host graph.
        bicliques (Iterable[Biclique]): Bicliques of g.

    Returns:
        Graph: g minus the union of the biclique edges.
    """
    rows = list(g.adjacency)
    for b in bicliques:
        if not b.is_valid_in(g):
            raise GraphError(
                f"not a biclique of the graph: {b.to_dict()}"
            )
        for v in members(b.left):
            rows[v] &= ~b.right
        for u in members(b.right):
            rows[u] &= ~b.left
    return Graph(g.n, tuple(rows))


def bipartite_part(g: Graph, left: int, right: int) -> Graph:
    """Keep only the edges between two disjoint vertex sets."""
    g.check_mask(left | right)
    rows = [0] * g.n
    for v in members(left):
        rows[v] = g.adjacency[v] & right
    for u in members(right):
        rows[u] = g.adjacency[u] & left
    return Graph(g.n, tuple(rows))


def is_independent(g: Graph, s: int) -> bool:
    g.check_mask(s)
    return all(not g.adjacency[v] & s for v in members(s))


def max_degree(g: Graph) -> int:
    return max((popcount(row) for row in g.adjacency), default=0)
