"""Module for deciding whether the Grundy number of a K_{i,j}-free graph reaches k.

For a labeling chi of the vertices, a table of families F'_{z,v} is filled
bottom-up: every member is a z-Grundy set rooted at v whose labels agree
with chi. Grundy representatives keep each family small."""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional, Tuple
import logging

from covering import DEFAULT_BUDGET, build_universal_set
from graph_core import Graph, max_degree, members, popcount
from grundy_rep import (
    LabelColoring,
    RepParams,
    RepresentativeComputer,
    SetFamily,
    SizeVector,
    chi_independent,
    star,
)
from oracle import oracle_has_kij
from pgc_solver import DEFAULT_TRIALS
from random_streams import derive_rng
from solver_result import NO, NO_WITNESS_FOUND, YES, SolverResult
from witness import (
    GrundyWitness,
    find_grundy_witness,
    gw_to_coloring,
    is_grundy_set,
    label_counts,
)

MAX_K = 4
KIJ_CHECK_MAX_N = 12


class NotKijFreeError(ValueError):
    """Raised when the input contains the forbidden biclique."""


def qstar_vector(k: int, z: int) -> SizeVector:
    """Label counts of T_k after removing one subtree rooted at a label-z node."""
    gamma_k = label_counts(k)
    gamma_z = label_counts(z)
    return SizeVector(
        tuple(
            gamma_k[y - 1] if y > z else gamma_k[y - 1] - gamma_z[y - 1]
            for y in range(1, k + 1)
        )
    )


def fold_vector(k: int, z: int, upto: int) -> SizeVector:
    """Profile left for the fold step that has joined the subtrees of labels 1..upto."""
    gamma_k = label_counts(k)
    used = [0] * k
    for y_hat in range(1, upto + 1):
        for y, count in enumerate(label_counts(y_hat)):
            used[y] += count
    used[z - 1] += 1
    return SizeVector(tuple(max(0, gamma_k[y] - used[y]) for y in range(k)))


@dataclass
class FamilyTable:
    """Families F'_{z,v} for one labeling."""

    k: int
    chi: LabelColoring
    families: Dict[Tuple[int, int], SetFamily] = field(default_factory=dict)
    rejected: int = 0

    def family(self, z: int, v: int) -> SetFamily:
        return self.families.get((z, v), SetFamily((), 1 << (z - 1)))

    def roots(self, z: int) -> List[int]:
        return [v for (y, v), f in sorted(self.families.items()) if y == z and f.sets]


def _reduce_all(
    computer: RepresentativeComputer, family: SetFamily, p: int, top: SizeVector
) -> SetFamily:
    kept: List[int] = []
    for q in top.box():
        kept.extend(computer.represent(family, p, q).sets)
    return SetFamily.of(kept, p)


def compute_families(
    g: Graph, chi: LabelColoring, k: int, params: RepParams
) -> FamilyTable:
    """Fill F'_{z,v} for z = 1..k and every v labeled z.

    Args:
        g (Graph): Host graph.
        chi (LabelColoring): Labeling into 1..k.
        k (int): Top level.
        params (RepParams): Constants of the representatives.

    Returns:
        FamilyTable: The table.
    """
    table = FamilyTable(k, chi)
    computer = RepresentativeComputer(g, chi, params)
    bound = params.alpha(1 << (k - 1)) ** ((1 << k) + 1)
    for v in members(chi.classes[0]):
        table.families[(1, v)] = SetFamily((1 << v,), 1)
    for z in range(2, k + 1):
        cap = 1 << (z - 1)
        for v in members(chi.classes[z - 1]):
            bit = 1 << v
            reduced: Dict[int, SetFamily] = {}
            for y in range(1, z):
                p = (1 << (y - 1)) + 1
                grown = []
                for u in members(chi.classes[y - 1] & g.adjacency[v]):
                    for w in table.family(y, u).sets:
                        candidate = w | bit
                        if popcount(candidate) <= cap and chi_independent(g, chi, candidate):
                            grown.append(candidate)
                reduced[y] = _reduce_all(computer, SetFamily.of(grown, p), p, qstar_vector(k, y))
            folded = reduced[1]
            for y in range(2, z):
                joined = star(folded, reduced[y], cap, chi, g)
                folded = _reduce_all(computer, joined, cap, fold_vector(k, z, y))
            stored = []
            for a in folded.sets:
                if is_grundy_set(g, a, z, chi.labels, root=v):
                    stored.append(a)
                else:
                    table.rejected += 1
            if len(stored) > bound:
                raise RuntimeError(f"family F'_({z},{v}) has {len(stored)} sets")
            table.families[(z, v)] = SetFamily.of(stored, cap)
        logging.debug(
            f"compute_families: level {z}, "
            f"{sum(len(f) for (y, _), f in table.families.items() if y == z)} sets"
        )
    return table


def _witness_from_table(g: Graph, table: FamilyTable, k: int) -> Optional[GrundyWitness]:
    for v in table.roots(k):
        for a in table.family(k, v).sets:
            w = find_grundy_witness(g, a, k, table.chi.labels, root=v)
            if w is not None:
                return w
    return None


def solve_grundy_kij(
    g: Graph,
    k: int,
    i: int,
    j: int,
    mode: str = "det",
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    budget: int = DEFAULT_BUDGET,
    max_k: int = MAX_K,
) -> SolverResult:
    """Decide whether the Grundy number of a K_{i,j}-free graph is at least k.

    Args:
        g (Graph): Input graph without K_{i,j} subgraphs.
        k (int): Target number of colors.
        i (int): Larger side of the forbidden biclique.
        j (int): Smaller side of the forbidden biclique.
        mode (str): "rand" samples labelings, "det" enumerates a universal family.
        trials (int): Labeling cap in rand mode.
        seed (int): Run seed.
        budget (int): Cap on the number of labelings in det mode.
        max_k (int): Largest supported k.

    Returns:
        SolverResult: Answer with a Grundy coloring on yes.
    """
    if not i >= j >= 1:
        raise ValueError(f"need i >= j >= 1, got i={i} j={j}")
    if not 1 <= k <= max_k:
        raise ValueError(f"k must lie in 1..{max_k}, got {k}")
    if mode not in ("rand", "det"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "rand" and trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    if g.n <= KIJ_CHECK_MAX_N and oracle_has_kij(g, i, j):
        raise NotKijFreeError(f"graph contains K_{{{i},{j}}}")
    params = RepParams.for_solver(i, j, k)
    stats: Dict[str, Any] = {"mode": mode}
    if g.n == 0 or k > max_degree(g) + 1:
        return SolverResult("grundy", k, NO, stats={**stats, "shortcut": "max_degree"}, i=i, j=j)

    if mode == "det":
        labelings = build_universal_set(g.n, 1 << (k - 1), k, seed, budget)
        source = iter(labelings)
        limit = len(labelings)
    else:
        limit = trials
        source = (
            tuple(int(z) for z in derive_rng(seed, "grundy-trial", t).integers(1, k + 1, size=g.n))
            for t in range(trials)
        )

    rejected = 0
    for count, labels in enumerate(source, start=1):
        chi = LabelColoring(tuple(labels), k)
        if not chi.classes[k - 1]:
            continue
        table = compute_families(g, chi, k, params)
        rejected += table.rejected
        if table.roots(k):
            w = _witness_from_table(g, table, k)
            if w is None:
                raise RuntimeError("non-empty top family without a witness")
            coloring = gw_to_coloring(g, w)
            logging.debug(f"solve_grundy_kij: witness under labeling {count}")
            return SolverResult(
                "grundy", k, YES, coloring, w,
                {**stats, "labelings": count, "rejected": rejected}, i=i, j=j,
            )
    miss = NO if mode == "det" else NO_WITNESS_FOUND
    return SolverResult(
        "grundy", k, miss, stats={**stats, "labelings": limit, "rejected": rejected}, i=i, j=j
    )
