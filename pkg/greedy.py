"""Module with the greedy coloring procedures and the checks for
Grundy and partial Grundy colorings."""

from dataclasses import dataclass
from typing import Iterable, List, Optional, Sequence, Tuple
import logging

from graph_core import Graph, GraphError, members, popcount


class ColoringError(ValueError):
    """Raised for improper, gapped or ill-sized colorings."""


@dataclass(frozen=True)
class Coloring:
    """Vertex coloring with colors 1..num_colors, one entry per vertex.

    Args:
        colors (Tuple[int, ...]): Color of each vertex.
    """

    colors: Tuple[int, ...]

    @classmethod
    def from_classes(cls, n: int, classes: Sequence[int]) -> "Coloring":
        colors = [0] * n
        for z, mask in enumerate(classes, start=1):
            for v in members(mask):
                if colors[v]:
                    raise ColoringError(f"vertex {v} sits in two color classes")
                colors[v] = z
        if 0 in colors:
            raise ColoringError(f"vertex {colors.index(0)} is uncolored")
        return cls(tuple(colors))

    @property
    def num_colors(self) -> int:
        return max(self.colors, default=0)

    def classes(self) -> List[int]:
        """Color class masks; entry z-1 holds color z."""
        result = [0] * self.num_colors
        for v, z in enumerate(self.colors):
            result[z - 1] |= 1 << v
        return result

    def is_gap_free(self) -> bool:
        return all(z >= 1 for z in self.colors) and all(self.classes())


def _check_order(g: Graph, order: Sequence[int]) -> None:
    if sorted(order) != list(range(g.n)):
        raise ColoringError(f"ordering is not a permutation of 0..{g.n - 1}")


def first_fit(g: Graph, order: Iterable[int]) -> Coloring:
    """Give each vertex, in order, the smallest color missing from its colored neighbors.

    Args:
        g (Graph): Graph to color.
        order (Iterable[int]): Permutation of the vertices.

    Returns:
        Coloring: A Grundy coloring of g.
    """
    order = list(order)
    _check_order(g, order)
    colors = [0] * g.n
    classes: List[int] = []
    for v in order:
        z = 0
        while z < len(classes) and classes[z] & g.adjacency[v]:
            z += 1
        if z == len(classes):
            classes.append(0)
        classes[z] |= 1 << v
        colors[v] = z + 1
    logging.debug(f"first_fit: {len(classes)} colors on n={g.n}")
    return Coloring(tuple(colors))


def last_fit(g: Graph, order: Iterable[int]) -> Coloring:
    """Give each vertex the largest used color missing from its neighbors, or a new one.

    Args:
        g (Graph): Graph to color.
        order (Iterable[int]): Permutation of the vertices.

    Returns:
        Coloring: A partial Grundy coloring of g.
    """
    order = list(order)
    _check_order(g, order)
    colors = [0] * g.n
    classes: List[int] = []
    for v in order:
        chosen = None
        for z in range(len(classes) - 1, -1, -1):
            if not classes[z] & g.adjacency[v]:
                chosen = z
                break
        if chosen is None:
            classes.append(0)
            chosen = len(classes) - 1
        classes[chosen] |= 1 << v
        colors[v] = chosen + 1
    return Coloring(tuple(colors))


def is_proper(g: Graph, c: Coloring) -> bool:
    if len(c.colors) != g.n:
        return False
    return all(
        c.colors[u] != c.colors[v] for u, v in g.edges() if c.colors[u] and c.colors[v]
    )


def is_grundy_coloring(g: Graph, c: Coloring) -> bool:
    """Proper, gap-free, and every vertex of color z sees all colors below z."""
    if not is_proper(g, c) or not c.is_gap_free():
        return False
    classes = c.classes()
    for v, z in enumerate(c.colors):
        if any(not g.adjacency[v] & classes[y] for y in range(z - 1)):
            return False
    return True


def find_coloring_dominators(g: Graph, c: Coloring) -> Optional[List[int]]:
    """Smallest dominator of every color class, or None when a class has none."""
    classes = c.classes()
    dominators = []
    for z, mask in enumerate(classes):
        found = None
        for v in members(mask):
            if all(g.adjacency[v] & classes[y] for y in range(z)):
                found = v
                break
        if found is None:
            return None
        dominators.append(found)
    return dominators


def is_partial_grundy_coloring(g: Graph, c: Coloring) -> bool:
    if not is_proper(g, c) or not c.is_gap_free():
        return False
    return find_coloring_dominators(g, c) is not None


def extend_coloring(g: Graph, sub: int, sub_coloring: Coloring) -> Coloring:
    """Extend a coloring of g[sub] to all of g, never lowering the color count.

    Uncolored vertices are processed by increasing id. Each takes the smallest
    color z with no neighbor in class z, or a new color when it sees them all.

    Args:
        g (Graph): Host graph.
        sub (int): Vertex set that is already colored.
        sub_coloring (Coloring): Proper coloring of g[sub], indexed by the
            members of sub in increasing order.

    Returns:
        Coloring: Coloring of g that agrees with sub_coloring on sub.
    """
    try:
        g.check_mask(sub)
    except GraphError as e:
        raise ColoringError(str(e)) from e
    inside = members(sub)
    if len(sub_coloring.colors) != len(inside):
        raise ColoringError(
            f"sub-coloring has {len(sub_coloring.colors)} entries for |sub|={len(inside)}"
        )
    colors = [0] * g.n
    for v, z in zip(inside, sub_coloring.colors):
        if z < 1:
            raise ColoringError(f"vertex {v} has invalid color {z}")
        colors[v] = z
    num = sub_coloring.num_colors
    classes = [0] * num
    for v in inside:
        classes[colors[v] - 1] |= 1 << v
    for v in inside:
        if g.adjacency[v] & classes[colors[v] - 1]:
            raise ColoringError(f"sub-coloring is improper at vertex {v}")
    for v in range(g.n):
        if sub >> v & 1:
            continue
        z = 0
        while z < len(classes) and classes[z] & g.adjacency[v]:
            z += 1
        if z == len(classes):
            classes.append(0)
        classes[z] |= 1 << v
        colors[v] = z + 1
    logging.debug(
        f"extend_coloring: {popcount(sub)} fixed vertices, {len(classes)} colors"
    )
    return Coloring(tuple(colors))
