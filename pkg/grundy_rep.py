"""Module for Grundy representatives: small subfamilies of a set family that
keep, for every set B of a given label profile, some member compatible with B.

Compatibility is measured against a vertex labeling chi: a set is
chi-independent when each of its label slices is independent."""

from dataclasses import dataclass
from functools import cached_property
from itertools import combinations, product
from math import comb
from typing import Dict, Iterable, Iterator, List, Sequence, Tuple
import logging

from graph_core import Graph, members, popcount

MAX_PROFILE_SETS = 10**6


class RepresentativeError(ValueError):
    """Raised for malformed families, vectors or over-budget calls."""


class PreconditionViolation(RuntimeError):
    """Raised when the heavy-vertex bound fails, which means the graph has a forbidden biclique."""


@dataclass(frozen=True)
class LabelColoring:
    """Labels 1..k per vertex, not necessarily proper."""

    labels: Tuple[int, ...]
    k: int

    def __post_init__(self) -> None:
        if any(not 1 <= z <= self.k for z in self.labels):
            raise RepresentativeError(f"labels must lie in 1..{self.k}")

    @cached_property
    def classes(self) -> Tuple[int, ...]:
        masks = [0] * self.k
        for v, z in enumerate(self.labels):
            masks[z - 1] |= 1 << v
        return tuple(masks)

    def profile(self, mask: int) -> "SizeVector":
        return SizeVector(tuple(popcount(mask & x) for x in self.classes))


@dataclass(frozen=True)
class SizeVector:
    values: Tuple[int, ...]

    @classmethod
    def zeros(cls, k: int) -> "SizeVector":
        return cls((0,) * k)

    @property
    def total(self) -> int:
        return sum(self.values)

    def incremented(self, z: int) -> "SizeVector":
        values = list(self.values)
        values[z - 1] += 1
        return SizeVector(tuple(values))

    def decremented(self, z: int) -> "SizeVector":
        if self.values[z - 1] < 1:
            raise RepresentativeError(f"coordinate {z} is already 0")
        values = list(self.values)
        values[z - 1] -= 1
        return SizeVector(tuple(values))

    def minus_floored(self, other: "SizeVector") -> "SizeVector":
        return SizeVector(tuple(max(0, a - b) for a, b in zip(self.values, other.values)))

    def __le__(self, other: "SizeVector") -> bool:
        return all(a <= b for a, b in zip(self.values, other.values))

    def box(self) -> Iterator["SizeVector"]:
        """Every vector below this one, coordinatewise, in lexicographic order."""
        for values in product(*(range(c + 1) for c in self.values)):
            yield SizeVector(values)


@dataclass(frozen=True)
class SetFamily:
    """Deduplicated family of chi-independent sets of size at most p."""

    sets: Tuple[int, ...]
    p: int

    @classmethod
    def of(cls, sets: Iterable[int], p: int) -> "SetFamily":
        unique = tuple(dict.fromkeys(sets))
        for s in unique:
            if popcount(s) > p:
                raise RepresentativeError(f"set {members(s)} is larger than p={p}")
        return cls(unique, p)

    def __len__(self) -> int:
        return len(self.sets)

    def __iter__(self) -> Iterator[int]:
        return iter(self.sets)


@dataclass(frozen=True)
class RepParams:
    i: int
    j: int
    k: int
    f_k: int

    @classmethod
    def for_solver(cls, i: int, j: int, k: int) -> "RepParams":
        return cls(i, j, k, 2**k)

    @property
    def eta(self) -> int:
        return self.i * self.f_k * self.k

    def alpha(self, p: int) -> int:
        return 3 * self.k * (p * self.eta) ** (self.i + 1)

    def size_bound(self, p: int, q: SizeVector) -> int:
        return self.alpha(p) ** (2 * p + q.total)


##########################################################################
# set operations


def chi_independent(g: Graph, chi: LabelColoring, mask: int) -> bool:
    for v in members(mask):
        if g.adjacency[v] & mask & chi.classes[chi.labels[v] - 1]:
            return False
    return True


def fits(a: int, b: int, chi: LabelColoring, g: Graph) -> bool:
    return chi_independent(g, chi, a | b)


def star(f1: SetFamily, f2: SetFamily, cap: int, chi: LabelColoring, g: Graph) -> SetFamily:
    """Pairwise unions that stay chi-independent and have at most cap vertices."""
    unions = []
    for a in f1.sets:
        for b in f2.sets:
            u = a | b
            if popcount(u) <= cap and chi_independent(g, chi, u):
                unions.append(u)
    return SetFamily.of(unions, cap)


def maximal_disjoint_subfamily(f: SetFamily) -> List[int]:
    """Greedy maximal pairwise disjoint subfamily, in family order."""
    chosen = []
    used = 0
    for s in f.sets:
        if not s & used:
            chosen.append(s)
            used |= s
    return chosen


def heavy_vertices(g: Graph, u: int, chi: LabelColoring, z: int, i: int) -> int:
    """Vertices labeled z with at least i neighbors in u among those labeled z."""
    slice_z = chi.classes[z - 1]
    heavy = 0
    for v in members(slice_z):
        if popcount(g.adjacency[v] & u & slice_z) >= i:
            heavy |= 1 << v
    return heavy


##########################################################################
# representatives


class RepresentativeComputer:
    """Memoised representative computation for one graph and one labeling.

    Args:
        g (Graph): Host graph.
        chi (LabelColoring): Labeling.
        params (RepParams): Constants of the construction.
    """

    def __init__(self, g: Graph, chi: LabelColoring, params: RepParams) -> None:
        if len(chi.labels) != g.n:
            raise RepresentativeError("labeling does not match the graph")
        self.g = g
        self.chi = chi
        self.params = params
        self.memo: Dict[Tuple[Tuple[int, ...], int, Tuple[int, ...]], SetFamily] = {}

    def represent(self, family: SetFamily, p: int, q: SizeVector) -> SetFamily:
        """Subfamily of family that q-represents it.

        Args:
            family (SetFamily): Family of chi-independent sets of size <= p.
            p (int): Set size cap.
            q (SizeVector): Label profile of the sets B to preserve.

        Returns:
            SetFamily: The representative subfamily.
        """
        if len(q.values) != self.chi.k:
            raise RepresentativeError("size vector length differs from the label count")
        if p + q.total > self.params.f_k:
            raise RepresentativeError(
                f"p + |q| = {p + q.total} exceeds f_k = {self.params.f_k}"
            )
        key = (family.sets, p, q.values)
        if key not in self.memo:
            self.memo[key] = self._represent(family, p, q)
        return self.memo[key]

    def _represent(self, family: SetFamily, p: int, q: SizeVector) -> SetFamily:
        if not family.sets:
            return SetFamily((), p)
        if p == 0 or 0 in family.sets:
            return SetFamily((0,), p)
        if q.total == 0:
            return SetFamily((family.sets[0],), p)

        disjoint = maximal_disjoint_subfamily(family)
        eta = self.params.eta
        result: List[int] = []
        if len(disjoint) <= eta - 1:
            union = 0
            for s in disjoint:
                union |= s
            for u in members(union):
                bit = 1 << u
                shrunk = SetFamily.of((s & ~bit for s in family.sets if s & bit), p - 1)
                bumped = q.incremented(self.chi.labels[u])
                for sub in (self.represent(shrunk, p - 1, bumped), self.represent(shrunk, p - 1, q)):
                    result.extend(s | bit for s in sub.sets)
            return SetFamily.of(result, p)

        kept = disjoint[:eta]
        union = 0
        for s in kept:
            union |= s
        heavy = 0
        limit = (p * eta) ** (self.params.i + 1)
        for z in range(1, self.chi.k + 1):
            slice_u = union & self.chi.classes[z - 1]
            s_z = heavy_vertices(self.g, slice_u, self.chi, z, self.params.i)
            if popcount(s_z & ~slice_u) >= limit:
                raise PreconditionViolation(
                    f"{popcount(s_z & ~slice_u)} heavy vertices with label {z} reach the bound {limit}"
                )
            heavy |= s_z
        result.extend(kept)
        for s in members(heavy):
            z = self.chi.labels[s]
            if q.values[z - 1] < 1:
                continue
            bit = 1 << s
            compatible = SetFamily.of(
                (a for a in family.sets if chi_independent(self.g, self.chi, a | bit)), p
            )
            result.extend(self.represent(compatible, p, q.decremented(z)).sets)
        return SetFamily.of(result, p)


def grundy_representative(
    family: SetFamily,
    p: int,
    q: SizeVector,
    params: RepParams,
    chi: LabelColoring,
    g: Graph,
) -> SetFamily:
    """One-shot form of RepresentativeComputer.represent."""
    result = RepresentativeComputer(g, chi, params).represent(family, p, q)
    logging.debug(f"grundy_representative: {len(family)} -> {len(result)} sets, p={p}, q={q.values}")
    return result


def is_representative(
    f_sub: SetFamily, f: SetFamily, q: SizeVector, chi: LabelColoring, g: Graph
) -> bool:
    """Brute-force check that f_sub q-represents f.

    Args:
        f_sub (SetFamily): Candidate subfamily.
        f (SetFamily): Full family.
        q (SizeVector): Label profile.
        chi (LabelColoring): Labeling.
        g (Graph): Host graph.

    Returns:
        bool: True when every B of profile q fitting some member of f fits some member of f_sub.
    """
    if any(s not in set(f.sets) for s in f_sub.sets):
        return False
    count = 1
    for z, size in enumerate(q.values):
        count *= comb(popcount(chi.classes[z]), size)
    if count > MAX_PROFILE_SETS:
        raise RepresentativeError(f"{count} profile sets exceed {MAX_PROFILE_SETS}")
    per_label: List[Sequence[Tuple[int, ...]]] = [
        list(combinations(members(chi.classes[z]), size)) for z, size in enumerate(q.values)
    ]
    for parts in product(*per_label):
        b = 0
        for part in parts:
            for v in part:
                b |= 1 << v
        if not chi_independent(g, chi, b):
            continue
        if any(fits(a, b, chi, g) for a in f.sets) and not any(
            fits(a, b, chi, g) for a in f_sub.sets
        ):
            return False
    return True
