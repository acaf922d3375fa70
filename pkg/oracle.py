"""Module with exhaustive reference computations for small graphs.
Every quantity has two independent formulations so that they can check each other."""

from itertools import combinations, permutations
from math import comb
from typing import Dict, Iterator, List, Optional
import logging

from graph_core import Graph, is_independent, members, popcount
from greedy import first_fit
from witness import PartialGrundyWitness

ORACLE_MAX_N = 10
ORDERINGS_MAX_N = 8
KIJ_MAX_SUBSETS = 10**6


class OracleSizeError(ValueError):
    """Raised when a graph is too large for exhaustive search."""


def _guard(g: Graph, limit: int) -> None:
    if g.n > limit:
        raise OracleSizeError(f"exhaustive search supports n <= {limit}, got {g.n}")


def maximal_independent_sets(g: Graph, within: int) -> Iterator[int]:
    """Bron-Kerbosch with pivoting on the complement of g[within]."""
    non_adjacent = {v: within & ~g.adjacency[v] & ~(1 << v) for v in members(within)}

    def expand(chosen: int, candidates: int, excluded: int) -> Iterator[int]:
        if not candidates and not excluded:
            yield chosen
            return
        pivot = max(
            members(candidates | excluded),
            key=lambda u: popcount(candidates & non_adjacent[u]),
        )
        for v in members(candidates & ~non_adjacent[pivot]):
            yield from expand(
                chosen | (1 << v), candidates & non_adjacent[v], excluded & non_adjacent[v]
            )
            candidates &= ~(1 << v)
            excluded |= 1 << v

    if within:
        yield from expand(0, within, 0)


def oracle_grundy(g: Graph) -> int:
    """Grundy number by peeling color class 1 as a maximal independent set.

    Args:
        g (Graph): Graph with at most 10 vertices.

    Returns:
        int: Grundy number.
    """
    _guard(g, ORACLE_MAX_N)
    memo: Dict[int, int] = {0: 0}

    def best(remaining: int) -> int:
        if remaining not in memo:
            memo[remaining] = 1 + max(
                best(remaining & ~mis) for mis in maximal_independent_sets(g, remaining)
            )
        return memo[remaining]

    return best(g.vertex_mask)


def oracle_grundy_by_orderings(g: Graph) -> int:
    """Grundy number as the maximum first-fit color count over all orderings."""
    _guard(g, ORDERINGS_MAX_N)
    return max((first_fit(g, order).num_colors for order in permutations(range(g.n))), default=0)


def _degree_upper_bound(g: Graph) -> int:
    degrees = sorted((g.degree(v) for v in range(g.n)), reverse=True)
    return max((t for t in range(1, g.n + 1) if all(degrees[s - 1] >= t - s for s in range(1, t + 1))), default=0)


def _has_partial_grundy(g: Graph, k: int) -> bool:
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    classes = [0] * k

    def complete() -> bool:
        for z in range(k):
            if not any(
                all(g.adjacency[v] & classes[y] for y in range(z)) for v in members(classes[z])
            ):
                return False
        return True

    def assign(idx: int) -> bool:
        empty = sum(1 for c in classes if not c)
        if empty > g.n - idx:
            return False
        if idx == g.n:
            return complete()
        v = order[idx]
        for z in range(k):
            if classes[z] & g.adjacency[v]:
                continue
            classes[z] |= 1 << v
            if assign(idx + 1):
                return True
            classes[z] &= ~(1 << v)
        return assign(idx + 1)

    return assign(0)


def oracle_partial_grundy(g: Graph) -> int:
    """Partial Grundy number by labeling vertices with a class or 'not in witness'.

    Args:
        g (Graph): Graph with at most 10 vertices.

    Returns:
        int: Partial Grundy number.
    """
    _guard(g, ORACLE_MAX_N)
    if g.n == 0:
        return 0
    value = first_fit(g, range(g.n)).num_colors
    upper = _degree_upper_bound(g)
    while value < upper and _has_partial_grundy(g, value + 1):
        value += 1
    logging.debug(f"oracle_partial_grundy: n={g.n} value={value}")
    return value


def oracle_has_kij(g: Graph, i: int, j: int) -> bool:
    """Whether some i vertices have at least j common neighbors."""
    if i < 1 or j < 1:
        raise ValueError(f"biclique sides must be positive, got i={i} j={j}")
    if comb(g.n, i) > KIJ_MAX_SUBSETS:
        raise OracleSizeError(f"C({g.n},{i}) vertex sets exceed {KIJ_MAX_SUBSETS}")
    for side in combinations(range(g.n), i):
        common = g.vertex_mask
        for v in side:
            common &= g.adjacency[v]
        if popcount(common) >= j:
            return True
    return False


def brute_force_small_pgw(g: Graph, k: int) -> Optional[PartialGrundyWitness]:
    """Search witnesses whose class i has at most k-i+1 vertices.

    Args:
        g (Graph): Graph with at most 10 vertices.
        k (int): Number of classes.

    Returns:
        Optional[PartialGrundyWitness]: First witness found, or None.
    """
    _guard(g, ORACLE_MAX_N)
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    chosen: List[int] = []

    def extend(i: int, used: int) -> bool:
        if i == k:
            return True
        pool = [v for v in range(g.n) if not used >> v & 1]
        for size in range(1, k - i + 1):
            for cls in combinations(pool, size):
                mask = sum(1 << v for v in cls)
                if not is_independent(g, mask):
                    continue
                if not any(all(g.adjacency[v] & chosen[y] for y in range(i)) for v in cls):
                    continue
                chosen.append(mask)
                if extend(i + 1, used | mask):
                    return True
                chosen.pop()
        return False

    if extend(0, 0):
        return PartialGrundyWitness(tuple(chosen))
    return None
