"""Module with independence covering families and universal function families.

A covering family of g for k is a list of independent sets such that every
independent set with at most k vertices lies inside one of them. A universal
family realizes every value pattern on every small index set."""

from collections.abc import Sequence as SequenceABC
from dataclasses import dataclass, field
from itertools import combinations, product
from math import ceil, comb, factorial, isfinite, log
from typing import Iterator, List, Optional, Tuple
import logging

import numpy as np

from graph_core import (
    DegeneracyOrdering,
    Graph,
    degeneracy_ordering,
    induced_subgraph,
    is_independent,
    lift_mask,
    members,
    popcount,
)
from random_streams import derive_rng

CERTIFIED_MAX_N = 20
DEFAULT_BUDGET = 2_000_000
HASH_CANDIDATES = 32


class CoveringError(ValueError):
    """Raised when a family is requested outside its supported size."""


class BudgetExceededError(RuntimeError):
    """Raised when an exact enumeration would exceed the configured work budget."""


##########################################################################
# independence covering


def sample_independent_cover(
    g: Graph, ordering: DegeneracyOrdering, rng: np.random.Generator
) -> int:
    """Mark each vertex with probability 1/(d+1) and keep the marked vertices
    that have no marked neighbor later in the ordering.

    Args:
        g (Graph): Graph.
        ordering (DegeneracyOrdering): Degeneracy ordering of g.
        rng (np.random.Generator): Random source.

    Returns:
        int: Independent set of g.
    """
    marks = rng.random(g.n) < 1.0 / (ordering.d + 1)
    marked = 0
    for v in np.flatnonzero(marks):
        marked |= 1 << int(v)
    result = 0
    for v in members(marked):
        if not ordering.forward_mask(g, v) & marked:
            result |= 1 << v
    return result


def cover_probability_bound(k: int, d: int) -> float:
    """Lower bound on Pr[X inside the sample] for an independent X of size k."""
    return 1.0 / (comb(k * (d + 1), k) * k * (d + 1))


def trial_success_bound(k: int, d: int, ell: int) -> float:
    return float(k * (d + 1)) ** (-2 * k * k - k) * 2.0 ** (-ell * k)


def prescribed_trials(k: int, d: int, ell: int) -> int:
    bound = trial_success_bound(k, d, ell)
    if bound <= 0.0 or not isfinite(3.0 / bound):
        return 0
    return ceil(3.0 / bound)


def enumerate_independent_sets(
    g: Graph, max_size: int, within: Optional[int] = None
) -> Iterator[int]:
    """Yield every non-empty independent set of size at most max_size.

    Args:
        g (Graph): Graph.
        max_size (int): Size cap.
        within (Optional[int]): Restrict to this vertex set.

    Yields:
        int: Independent sets as bitmasks.
    """
    pool = g.vertex_mask if within is None else within

    def grow(current: int, size: int, candidates: int) -> Iterator[int]:
        for v in members(candidates):
            chosen = current | (1 << v)
            yield chosen
            if size + 1 < max_size:
                later = candidates & ~((2 << v) - 1)
                yield from grow(chosen, size + 1, later & ~g.adjacency[v])

    if max_size >= 1:
        yield from grow(0, 0, pool)


@dataclass(frozen=True)
class CoveringFamily:
    sets: Tuple[int, ...]
    k: int
    certified: bool


def build_covering_family(
    g: Graph,
    k: int,
    mode: str = "certified",
    trials: int = 64,
    rng: Optional[np.random.Generator] = None,
    max_n: int = CERTIFIED_MAX_N,
) -> CoveringFamily:
    """Covering family built from sampler draws.

    In certified mode every independent set of size at most k that no member
    covers is added as a member, so coverage is guaranteed.

    Args:
        g (Graph): Graph.
        k (int): Covered set size.
        mode (str): "certified" or "monte_carlo".
        trials (int): Number of sampler draws.
        rng (Optional[np.random.Generator]): Random source.
        max_n (int): Largest graph accepted in certified mode.

    Returns:
        CoveringFamily: The family.
    """
    if mode not in ("certified", "monte_carlo"):
        raise CoveringError(f"unknown covering mode {mode!r}")
    if mode == "certified" and g.n > max_n:
        raise CoveringError(
            f"certified covering supports n <= {max_n}, got {g.n}"
        )
    if rng is None:
        rng = derive_rng(0, "covering", g.n)
    ordering = degeneracy_ordering(g)
    sets: List[int] = []
    seen = set()
    for _ in range(trials):
        sample = sample_independent_cover(g, ordering, rng)
        if sample and sample not in seen:
            seen.add(sample)
            sets.append(sample)
    if mode == "certified":
        candidates = sorted(enumerate_independent_sets(g, k), key=lambda s: -popcount(s))
        for candidate in candidates:
            if not any(candidate & member == candidate for member in sets):
                sets.append(candidate)
    if not sets:
        sets.append(0)
    logging.debug(f"build_covering_family: n={g.n} k={k} mode={mode} size={len(sets)}")
    return CoveringFamily(tuple(sets), k, mode == "certified")


def covering_family_within(
    g: Graph, zone: int, k: int, seed: int, max_n: int = CERTIFIED_MAX_N
) -> Tuple[int, ...]:
    """Certified covering family of g[zone], in host vertex ids."""
    sub, index_map = induced_subgraph(g, zone)
    family = build_covering_family(
        sub, k, "certified", trials=2 * sub.n + 8,
        rng=derive_rng(seed, "covering", zone), max_n=max_n,
    )
    return tuple(lift_mask(s, index_map) for s in family.sets)


def verify_covering_family(g: Graph, family: CoveringFamily) -> bool:
    """Brute-force check of independence and coverage."""
    if any(not is_independent(g, s) for s in family.sets):
        return False
    return all(
        any(x & s == x for s in family.sets)
        for x in enumerate_independent_sets(g, family.k)
    )


##########################################################################
# universal sets


@dataclass(frozen=True)
class FunctionFamily(SequenceABC):
    """Functions [n] -> [q] (values 1..q) realizing every assignment on every
    set of at most p indices.

    With n <= p the family is all q^n functions, produced lazily. Otherwise
    each function is a value pattern on [p] composed with a perfect hash.

    Args:
        n (int): Domain size.
        p (int): Index set size.
        q (int): Number of values.
        hashes (Tuple[Tuple[int, ...], ...]): Perfect hash functions [n] -> [p].
    """

    n: int
    p: int
    q: int
    hashes: Tuple[Tuple[int, ...], ...] = field(default=())

    @property
    def exhaustive(self) -> bool:
        return self.n <= self.p

    def __len__(self) -> int:
        if self.exhaustive:
            return self.q ** self.n
        return len(self.hashes) * self.q ** self.p

    def __getitem__(self, index: int) -> Tuple[int, ...]:
        if index < 0:
            index += len(self)
        if not 0 <= index < len(self):
            raise IndexError(index)
        if self.exhaustive:
            return _digits(index, self.q, self.n)
        h_index, p_index = divmod(index, self.q ** self.p)
        pattern = _digits(p_index, self.q, self.p)
        return tuple(pattern[h] for h in self.hashes[h_index])

    def __iter__(self) -> Iterator[Tuple[int, ...]]:
        values = range(1, self.q + 1)
        if self.exhaustive:
            yield from product(values, repeat=self.n)
            return
        for h in self.hashes:
            for pattern in product(values, repeat=self.p):
                yield tuple(pattern[x] for x in h)


def _digits(index: int, base: int, length: int) -> Tuple[int, ...]:
    out = [0] * length
    for pos in range(length - 1, -1, -1):
        index, out[pos] = divmod(index, base)
    return tuple(d + 1 for d in out)


def _perfect_hash_family(n: int, p: int, seed: int) -> List[Tuple[int, ...]]:
    subsets = np.array(list(combinations(range(n), p)), dtype=np.int64)
    uncovered = np.ones(len(subsets), dtype=bool)
    rng = derive_rng(seed, "universal-set", n, p)
    family: List[Tuple[int, ...]] = []
    while uncovered.any():
        candidates = rng.integers(0, p, size=(HASH_CANDIDATES, n))
        pending = subsets[uncovered]
        best_hits = None
        best = None
        for h in candidates:
            mapped = np.sort(h[pending], axis=1)
            hits = np.all(np.diff(mapped, axis=1) != 0, axis=1)
            if best_hits is None or hits.sum() > best_hits.sum():
                best_hits, best = hits, h
        if not best_hits.any():
            continue
        family.append(tuple(int(x) for x in best))
        idx = np.flatnonzero(uncovered)
        uncovered[idx[best_hits]] = False
    return family


def universal_set_cost(n: int, p: int, q: int) -> Tuple[int, int]:
    """Estimated family length and hash construction work.

    A random map [n] -> [p] is injective on a fixed p-set with probability
    p!/p^p; about (ln C(n,p) + 1) / that many candidates cover all p-sets,
    and each candidate is checked against up to C(n,p) of them.

    Returns:
        Tuple[int, int]: (functions, construction work).
    """
    if n <= p:
        return q ** n, 0
    subsets = comb(n, p)
    draws = ceil((log(subsets) + 1.0) * p ** p / factorial(p))
    return min(subsets, draws) * q ** p, subsets * draws


def build_universal_set(
    n: int, p: int, q: int, seed: int = 0, budget: int = DEFAULT_BUDGET
) -> FunctionFamily:
    """Build an (n, p, q)-universal family.

    Args:
        n (int): Domain size.
        p (int): Index set size.
        q (int): Number of values.
        seed (int): Seed of the hash candidate stream.
        budget (int): Cap on the family length and on the estimated
            construction work.

    Raises:
        CoveringError: On invalid parameters.
        BudgetExceededError: When the family would not fit the budget.

    Returns:
        FunctionFamily: The family.
    """
    if n < 0 or p < 1 or q < 1:
        raise CoveringError(f"invalid universal set parameters n={n} p={p} q={q}")
    functions, work = universal_set_cost(n, p, q)
    if functions > budget or work > budget:
        raise BudgetExceededError(
            f"({n},{p},{q})-universal set needs about {functions} functions "
            f"and {work} construction steps, over the budget of {budget}"
        )
    if n <= p:
        family = FunctionFamily(n, p, q)
    else:
        family = FunctionFamily(n, p, q, tuple(_perfect_hash_family(n, p, seed)))
        if len(family) > budget:
            raise BudgetExceededError(
                f"{len(family)} functions exceed the budget of {budget}"
            )
    logging.debug(f"build_universal_set: n={n} p={p} q={q} size={len(family)}")
    return family


def verify_universal_set(family: FunctionFamily) -> bool:
    """Exhaustive check on every index set of size min(p, n)."""
    size = min(family.p, family.n)
    target = family.q ** size
    functions = list(family)
    for index_set in combinations(range(family.n), size):
        realized = {tuple(f[i] for i in index_set) for f in functions}
        if len(realized) != target:
            return False
    return True
