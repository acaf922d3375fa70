"""Module with the certificates behind the two coloring numbers:
partial Grundy witnesses (dominated independent classes) and Grundy witnesses
(labeled maps of the Grundy tree into the graph)."""

from dataclasses import dataclass
from functools import lru_cache
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

from graph_core import Graph, induced_subgraph, is_independent, lowest, members, to_mask
from greedy import Coloring, extend_coloring, find_coloring_dominators, is_grundy_coloring


class WitnessError(ValueError):
    """Raised for invalid witnesses and malformed witness JSON."""


##########################################################################
# partial Grundy witnesses


@dataclass(frozen=True)
class PartialGrundyWitness:
    """Ordered classes Q_1..Q_k, each a vertex bitmask."""

    classes: Tuple[int, ...]

    @property
    def k(self) -> int:
        return len(self.classes)

    @property
    def support(self) -> int:
        result = 0
        for mask in self.classes:
            result |= mask
        return result

    def prefix(self, k: int) -> "PartialGrundyWitness":
        return PartialGrundyWitness(self.classes[:k])


def find_dominators(g: Graph, w: PartialGrundyWitness) -> Optional[List[int]]:
    """Smallest dominator per class, or None when w is not a witness of g.

    Args:
        g (Graph): Host graph.
        w (PartialGrundyWitness): Candidate witness.

    Returns:
        Optional[List[int]]: Dominators u_1..u_k, or None.
    """
    used = 0
    for mask in w.classes:
        if not mask or mask & ~g.vertex_mask or mask & used:
            return None
        if not is_independent(g, mask):
            return None
        used |= mask
    dominators = []
    for i, mask in enumerate(w.classes):
        found = None
        for v in members(mask):
            if all(g.adjacency[v] & w.classes[j] for j in range(i)):
                found = v
                break
        if found is None:
            return None
        dominators.append(found)
    return dominators


def verify_pgw(g: Graph, w: PartialGrundyWitness) -> bool:
    return find_dominators(g, w) is not None


def shrink_pgw(g: Graph, w: PartialGrundyWitness) -> PartialGrundyWitness:
    """Shrink a witness so that class i keeps at most k-i+1 vertices.

    Marks the smallest dominator of every class and, for each earlier class,
    the smallest vertex of that class adjacent to the dominator.

    Args:
        g (Graph): Host graph.
        w (PartialGrundyWitness): Valid witness.

    Returns:
        PartialGrundyWitness: Valid witness with classes contained in those of w.
    """
    dominators = find_dominators(g, w)
    if dominators is None:
        raise WitnessError("cannot shrink an invalid partial Grundy witness")
    marked = 0
    for i, u in enumerate(dominators):
        marked |= 1 << u
        for j in range(i):
            marked |= 1 << lowest(g.adjacency[u] & w.classes[j])
    return PartialGrundyWitness(tuple(mask & marked for mask in w.classes))


def pgw_to_coloring(g: Graph, w: PartialGrundyWitness) -> Coloring:
    """Extend a witness into a partial Grundy coloring of g with at least k colors."""
    if not verify_pgw(g, w):
        raise WitnessError("invalid partial Grundy witness")
    sub = w.support
    sub_colors = []
    for v in members(sub):
        sub_colors.append(next(z for z, mask in enumerate(w.classes, 1) if mask >> v & 1))
    return extend_coloring(g, sub, Coloring(tuple(sub_colors)))


def pgw_from_coloring(g: Graph, c: Coloring) -> PartialGrundyWitness:
    """Witness formed by the color classes of a partial Grundy coloring."""
    if find_coloring_dominators(g, c) is None:
        raise WitnessError("coloring is not a partial Grundy coloring")
    return PartialGrundyWitness(tuple(c.classes()))


##########################################################################
# Grundy trees and Grundy witnesses


@dataclass(frozen=True)
class GrundyTree:
    """Rooted tree T_k in preorder. The root carries label k and a node with
    label z has children labeled z-1, ..., 1 in that order.

    Args:
        k (int): Root label.
        labels (Tuple[int, ...]): Label of each node.
        parents (Tuple[int, ...]): Parent of each node, -1 for the root.
        names (Tuple[str, ...]): Dotted path of labels from the root.
    """

    k: int
    labels: Tuple[int, ...]
    parents: Tuple[int, ...]
    names: Tuple[str, ...]

    @property
    def size(self) -> int:
        return len(self.labels)

    def children(self, t: int) -> List[int]:
        return [s for s in range(t + 1, self.subtree_end(t)) if self.parents[s] == t]

    def subtree_end(self, t: int) -> int:
        return t + (1 << (self.labels[t] - 1))

    def subtree(self, t: int) -> range:
        """Nodes of the subtree rooted at t, a contiguous preorder range."""
        return range(t, self.subtree_end(t))

    def label_counts(self) -> Tuple[int, ...]:
        counts = [0] * self.k
        for z in self.labels:
            counts[z - 1] += 1
        return tuple(counts)


@lru_cache(maxsize=None)
def build_grundy_tree(k: int) -> GrundyTree:
    """Build T_k; it has 2^(k-1) nodes.

    Args:
        k (int): Root label, at least 1.

    Returns:
        GrundyTree: The tree.
    """
    if k < 1:
        raise WitnessError(f"Grundy tree needs k >= 1, got {k}")
    labels: List[int] = []
    parents: List[int] = []
    names: List[str] = []

    def grow(z: int, parent: int, name: str) -> None:
        node = len(labels)
        labels.append(z)
        parents.append(parent)
        names.append(name)
        for child in range(z - 1, 0, -1):
            grow(child, node, f"{name}.{child}")

    grow(k, -1, str(k))
    return GrundyTree(k, tuple(labels), tuple(parents), tuple(names))


def label_counts(k: int) -> Tuple[int, ...]:
    """Closed form of the node count per label in T_k: one root, 2^(k-z-1) below."""
    return tuple(1 if z == k else 1 << (k - z - 1) for z in range(1, k + 1))


@dataclass(frozen=True)
class GrundyWitness:
    """Image omega[t] of every node t of the tree."""

    tree: GrundyTree
    omega: Tuple[int, ...]

    @property
    def k(self) -> int:
        return self.tree.k

    def label_images(self) -> List[int]:
        images = [0] * self.k
        for z, v in zip(self.tree.labels, self.omega):
            images[z - 1] |= 1 << v
        return images


def verify_gw(g: Graph, w: GrundyWitness) -> bool:
    """Check per-label independence, label separation and edge preservation."""
    if len(w.omega) != w.tree.size:
        return False
    if any(not 0 <= v < g.n for v in w.omega):
        return False
    images = w.label_images()
    seen = 0
    for mask in images:
        if mask & seen or not is_independent(g, mask):
            return False
        seen |= mask
    return all(
        g.has_edge(w.omega[t], w.omega[parent])
        for t, parent in enumerate(w.tree.parents)
        if parent >= 0
    )


def gw_to_coloring(g: Graph, w: GrundyWitness) -> Coloring:
    """Color the image by labels and extend it to a Grundy coloring with >= k colors."""
    if not verify_gw(g, w):
        raise WitnessError("invalid Grundy witness")
    images = w.label_images()
    sub = 0
    for mask in images:
        sub |= mask
    sub_colors = []
    for v in members(sub):
        sub_colors.append(next(z for z, mask in enumerate(images, 1) if mask >> v & 1))
    return extend_coloring(g, sub, Coloring(tuple(sub_colors)))


def coloring_to_gw(g: Graph, c: Coloring, k: int) -> GrundyWitness:
    """Read a k-Grundy witness off a Grundy coloring with at least k colors.

    The root goes to the smallest vertex of color k; every other node goes to
    the smallest neighbor of its parent's image in the class of its label.

    Args:
        g (Graph): Host graph.
        c (Coloring): Grundy coloring of g.
        k (int): Witness size.

    Returns:
        GrundyWitness: The witness.
    """
    if not is_grundy_coloring(g, c):
        raise WitnessError("coloring is not a Grundy coloring")
    if c.num_colors < k:
        raise WitnessError(f"coloring has {c.num_colors} colors, fewer than {k}")
    tree = build_grundy_tree(k)
    classes = c.classes()
    omega = [0] * tree.size
    omega[0] = lowest(classes[k - 1])
    for t in range(1, tree.size):
        z = tree.labels[t]
        omega[t] = lowest(g.adjacency[omega[tree.parents[t]]] & classes[z - 1])
    return GrundyWitness(tree, tuple(omega))


def restrict_gw(w: GrundyWitness, node: int) -> GrundyWitness:
    """Witness on the subtree rooted at node, which is a copy of T_z."""
    z = w.tree.labels[node]
    return GrundyWitness(build_grundy_tree(z), tuple(w.omega[t] for t in w.tree.subtree(node)))


def find_grundy_witness(
    g: Graph,
    wset: int,
    z: int,
    label_of: Optional[Sequence[int]] = None,
    root: Optional[int] = None,
) -> Optional[GrundyWitness]:
    """Backtracking search for a z-Grundy witness whose image lies in wset.

    Args:
        g (Graph): Host graph.
        wset (int): Allowed image vertices.
        z (int): Tree size parameter.
        label_of (Optional[Sequence[int]]): When given, a node with label y may
            only map to a vertex v with label_of[v] == y.
        root (Optional[int]): When given, the root must map to this vertex.

    Returns:
        Optional[GrundyWitness]: Lexicographically smallest witness, or None.
    """
    tree = build_grundy_tree(z)
    allowed = [wset] * (z + 1)
    if label_of is not None:
        for y in range(1, z + 1):
            allowed[y] = wset & to_mask(v for v in members(wset) if label_of[v] == y)
    omega = [-1] * tree.size
    by_label = [0] * (z + 1)
    count = [dict() for _ in range(z + 1)]

    def place(t: int) -> bool:
        if t == tree.size:
            return True
        y = tree.labels[t]
        if t == 0:
            candidates = allowed[y] if root is None else allowed[y] & (1 << root)
        else:
            candidates = allowed[y] & g.adjacency[omega[tree.parents[t]]]
        taken_elsewhere = 0
        for other in range(1, z + 1):
            if other != y:
                taken_elsewhere |= by_label[other]
        candidates &= ~taken_elsewhere
        for v in members(candidates):
            if g.adjacency[v] & by_label[y]:
                continue
            omega[t] = v
            count[y][v] = count[y].get(v, 0) + 1
            by_label[y] |= 1 << v
            if place(t + 1):
                return True
            count[y][v] -= 1
            if not count[y][v]:
                by_label[y] &= ~(1 << v)
        return False

    if place(0):
        return GrundyWitness(tree, tuple(omega))
    return None


def is_grundy_set(
    g: Graph,
    wset: int,
    z: int,
    label_of: Optional[Sequence[int]] = None,
    root: Optional[int] = None,
) -> bool:
    return find_grundy_witness(g, wset, z, label_of, root) is not None


##########################################################################
# JSON


def witness_to_json(w: Union[PartialGrundyWitness, GrundyWitness]) -> Dict[str, Any]:
    if isinstance(w, PartialGrundyWitness):
        return {"kind": "pgw", "k": w.k, "classes": [members(mask) for mask in w.classes]}
    return {
        "kind": "gw",
        "k": w.k,
        "tree_labels": list(w.tree.labels),
        "omega": list(w.omega),
    }


def witness_from_json(data: Dict[str, Any]) -> Union[PartialGrundyWitness, GrundyWitness]:
    """Parse either witness kind; raises WitnessError on malformed input."""
    try:
        kind = data["kind"]
        if kind == "pgw":
            classes = tuple(to_mask(int(v) for v in cls) for cls in data["classes"])
            return PartialGrundyWitness(classes)
        if kind == "gw":
            k = int(data["k"])
            labels = list(data["tree_labels"])
            if k < 1 or len(labels).bit_length() != k or len(labels) != 1 << (k - 1):
                raise WitnessError(f"k={k} does not match {len(labels)} tree labels")
            tree = build_grundy_tree(k)
            if labels != list(tree.labels):
                raise WitnessError("tree_labels do not match the Grundy tree")
            return GrundyWitness(tree, tuple(int(v) for v in data["omega"]))
    except (KeyError, TypeError, ValueError) as e:
        if isinstance(e, WitnessError):
            raise
        raise WitnessError(f"malformed witness JSON: {e}") from e
    raise WitnessError(f"unknown witness kind {kind!r}")
