"""Module for the biclique degree reduction.
Either it finds enough colors for the target outright, or it returns a
small set of bicliques whose removal leaves a graph of bounded degree."""

from dataclasses import dataclass
from typing import Any, Dict, List, Optional, Tuple, Union
import logging

from graph_core import (
    Biclique,
    Graph,
    bipartite_part,
    lowest,
    max_degree,
    members,
    popcount,
    remove_edges,
)
from greedy import Coloring, first_fit
from witness import PartialGrundyWitness, pgw_to_coloring, verify_pgw


class BipartitionError(ValueError):
    """Raised when the sides overlap or an edge does not cross them."""


class ReductionInvariantError(RuntimeError):
    """Raised when a guaranteed property of the reduction fails to hold."""


@dataclass(frozen=True)
class OneSidedOutcome:
    """Result of one pass over the left side.

    Args:
        witness (Optional[PartialGrundyWitness]): Set when the pass found at
            least k classes.
        bicliques (Tuple[Biclique, ...]): Output bicliques otherwise.
        q_classes (Tuple[int, ...]): Classes Q_1, Q_2, ... built during the pass.
        dominators (Tuple[int, ...]): Vertices x_1, x_2, ...
        absorbed (Tuple[int, ...]): Sets B_1, B_2, ...
    """

    witness: Optional[PartialGrundyWitness]
    bicliques: Tuple[Biclique, ...]
    q_classes: Tuple[int, ...]
    dominators: Tuple[int, ...]
    absorbed: Tuple[int, ...]


@dataclass(frozen=True)
class BicliqueDecomposition:
    k: int
    bicliques: Tuple[Biclique, ...]

    def to_dict(self) -> Dict[str, Any]:
        return {"k": self.k, "bicliques": [b.to_dict() for b in self.bicliques]}


def _check_bipartition(g: Graph, left: int, right: int) -> None:
    if left & right:
        raise BipartitionError(f"sides share vertices {members(left & right)}")
    if (left | right) & ~g.vertex_mask:
        raise BipartitionError("side contains a vertex out of range")
    for v in range(g.n):
        row = g.adjacency[v]
        if not row:
            continue
        if left >> v & 1:
            ok = not row & ~right
        elif right >> v & 1:
            ok = not row & ~left
        else:
            ok = False
        if not ok:
            raise BipartitionError(f"vertex {v} has an edge that does not cross the sides")


def one_sided_reduce(g: Graph, left: int, right: int, k: int) -> OneSidedOutcome:
    """Process the left side by non-increasing degree and grow dominated classes.

    A vertex v either joins B_j for the smallest j with N(x_j) inside
    P | N(v), where P is the union of the classes so far, or opens a new class
    {v} plus one private neighbor w_j of every earlier x_j.

    Args:
        g (Graph): Bipartite graph; every edge joins left and right.
        left (int): Side that is processed.
        right (int): Other side.
        k (int): Target number of classes.

    Returns:
        OneSidedOutcome: Witness when at least k classes appear, bicliques otherwise.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    _check_bipartition(g, left, right)
    sigma = sorted(members(left), key=lambda v: (-g.degree(v), v))
    if not sigma:
        return OneSidedOutcome(None, (), (), (), ())

    x = [sigma[0]]
    q_classes = [1 << sigma[0]]
    absorbed = [0]
    union_q = q_classes[0]
    for v in sigma[1:]:
        reach = union_q | g.adjacency[v]
        home = next(
            (j for j, xj in enumerate(x) if not g.adjacency[xj] & ~reach), None
        )
        if home is not None:
            absorbed[home] |= 1 << v
            continue
        new_class = 1 << v
        for xj in x:
            new_class |= 1 << lowest(g.adjacency[xj] & ~reach)
        x.append(v)
        q_classes.append(new_class)
        absorbed.append(0)
        union_q |= new_class

    _check_pass_claims(g, left, x, q_classes, absorbed)
    if len(q_classes) >= k:
        witness = PartialGrundyWitness(tuple(reversed(q_classes)))
        if not verify_pgw(g, witness):
            raise ReductionInvariantError("one-sided pass produced an invalid witness")
        logging.debug(f"one_sided_reduce: {len(q_classes)} classes, witness found")
        return OneSidedOutcome(witness, (), tuple(q_classes), tuple(x), tuple(absorbed))

    bicliques: List[Biclique] = []
    for xj, bj in zip(x, absorbed):
        private = g.adjacency[xj] & ~union_q
        if bj and private:
            bicliques.append(Biclique(bj, private))
    for xj in x:
        if g.adjacency[xj]:
            bicliques.append(Biclique(1 << xj, g.adjacency[xj]))
    for b in bicliques:
        if not b.is_valid_in(g):
            raise ReductionInvariantError(f"invalid biclique {b.to_dict()}")
    logging.debug(
        f"one_sided_reduce: {len(q_classes)} classes, {len(bicliques)} bicliques"
    )
    return OneSidedOutcome(None, tuple(bicliques), tuple(q_classes), tuple(x), tuple(absorbed))


def _check_pass_claims(
    g: Graph, left: int, x: List[int], q_classes: List[int], absorbed: List[int]
) -> None:
    union_q = 0
    union_b = 0
    for j, (xj, qj) in enumerate(zip(x, q_classes)):
        if popcount(qj) > j + 1 or not qj >> xj & 1:
            raise ReductionInvariantError(f"class {j + 1} has the wrong shape")
        for v in members(qj):
            if g.adjacency[v] & qj:
                raise ReductionInvariantError(f"class {j + 1} is not independent")
        for i in range(j):
            if not g.adjacency[x[i]] & qj:
                raise ReductionInvariantError(f"x_{i + 1} misses class {j + 1}")
        if qj & union_q:
            raise ReductionInvariantError(f"class {j + 1} overlaps earlier classes")
        union_q |= qj
    for bj in absorbed:
        if bj & union_b:
            raise ReductionInvariantError("absorbed sets overlap")
        union_b |= bj
    if (union_q & left) | union_b != left:
        raise ReductionInvariantError("left side is not covered by classes and absorbed sets")
    if union_b & union_q:
        raise ReductionInvariantError("absorbed sets meet the classes")
    for xj, bj in zip(x, absorbed):
        private = g.adjacency[xj] & ~union_q
        for v in members(bj):
            if g.adjacency[v] & private != private or g.degree(v) > g.degree(xj):
                raise ReductionInvariantError(f"absorbed vertex {v} breaks domination")


def two_sided_reduce(
    g: Graph, left: int, right: int, k: int
) -> Union[PartialGrundyWitness, BicliqueDecomposition]:
    """Run the one-sided pass from both sides and pool the bicliques.

    Args:
        g (Graph): Bipartite graph.
        left (int): One side.
        right (int): Other side.
        k (int): Target number of classes.

    Returns:
        Union[PartialGrundyWitness, BicliqueDecomposition]: Witness or bicliques.
    """
    bicliques: List[Biclique] = []
    for first, second in ((left, right), (right, left)):
        outcome = one_sided_reduce(g, first, second, k)
        if outcome.witness is not None:
            return outcome.witness
        bicliques.extend(outcome.bicliques)
    residual = remove_edges(g, bicliques)
    if max_degree(residual) > k * k:
        raise ReductionInvariantError(
            f"residual degree {max_degree(residual)} exceeds {k * k}"
        )
    return BicliqueDecomposition(k, tuple(bicliques))


def degree_reduce(g: Graph, k: int) -> Union[Coloring, BicliqueDecomposition]:
    """Either a coloring with at least k colors or at most 2k^3 bicliques
    whose removal leaves maximum degree at most k^3.

    Args:
        g (Graph): Input graph.
        k (int): Target number of colors.

    Returns:
        Union[Coloring, BicliqueDecomposition]: Partial Grundy coloring or bicliques.
    """
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    coloring = first_fit(g, range(g.n))
    if coloring.num_colors >= k:
        logging.debug(f"degree_reduce: first-fit already uses {coloring.num_colors} colors")
        return coloring
    classes = coloring.classes()
    bicliques: List[Biclique] = []
    for a in range(len(classes)):
        for b in range(a + 1, len(classes)):
            pair = bipartite_part(g, classes[a], classes[b])
            outcome = two_sided_reduce(pair, classes[a], classes[b], k)
            if isinstance(outcome, PartialGrundyWitness):
                logging.debug(f"degree_reduce: witness on classes {a + 1} and {b + 1}")
                return pgw_to_coloring(g, outcome)
            bicliques.extend(outcome.bicliques)
    if len(bicliques) > 2 * k ** 3:
        raise ReductionInvariantError(f"{len(bicliques)} bicliques exceed 2k^3")
    residual_degree = max_degree(remove_edges(g, bicliques))
    if residual_degree > k ** 3:
        raise ReductionInvariantError(f"residual degree {residual_degree} exceeds k^3")
    logging.debug(
        f"degree_reduce: {len(bicliques)} bicliques, residual degree {residual_degree}"
    )
    return BicliqueDecomposition(k, tuple(bicliques))
