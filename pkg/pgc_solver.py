"""Module for deciding whether the partial Grundy number reaches k.

The graph is first degree-reduced. What remains is a graph whose
biclique-free part is sparse, solved by color coding with independence
covering families, either by random trials or by enumerating a universal
family of colorings."""

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple
import logging

from covering import (
    CERTIFIED_MAX_N,
    DEFAULT_BUDGET,
    BudgetExceededError,
    build_universal_set,
    covering_family_within,
    prescribed_trials,
    sample_independent_cover,
)
from degree_reduction import degree_reduce
from graph_core import (
    Biclique,
    Graph,
    degeneracy_ordering,
    induced_subgraph,
    is_independent,
    lift_mask,
    members,
    popcount,
    remove_edges,
)
from greedy import Coloring
from random_streams import derive_rng
from solver_result import NO, NO_WITNESS_FOUND, YES, SolverResult
from witness import (
    PartialGrundyWitness,
    pgw_from_coloring,
    pgw_to_coloring,
    shrink_pgw,
    verify_pgw,
)

DEFAULT_TRIALS = 2000
CHAIN_SEARCH_STEPS = 100_000


@dataclass(frozen=True)
class SpgcInstance:
    """Graph, target k, and bicliques whose removal leaves degeneracy d."""

    g: Graph
    k: int
    bicliques: Tuple[Biclique, ...]
    d: int

    @classmethod
    def build(cls, g: Graph, k: int, bicliques: Sequence[Biclique] = ()) -> "SpgcInstance":
        if k < 1:
            raise ValueError(f"k must be at least 1, got {k}")
        residual = remove_edges(g, bicliques)
        return cls(g, k, tuple(bicliques), degeneracy_ordering(residual).d)

    @property
    def ell(self) -> int:
        return len(self.bicliques)


@dataclass(frozen=True)
class ColorCodingAssignment:
    phi: Tuple[int, ...]
    k: int

    @property
    def classes(self) -> List[int]:
        """Masks Z_1..Z_k of the vertices mapped to each color."""
        zones = [0] * self.k
        for v, z in enumerate(self.phi):
            zones[z - 1] |= 1 << v
        return zones


@dataclass(frozen=True)
class SideSelection:
    """Selector word per color; bit i set picks the right side of biclique i."""

    words: Tuple[int, ...]

    def removed_sets(self, bicliques: Sequence[Biclique]) -> List[int]:
        return [side_set(bicliques, word) for word in self.words]


def side_set(bicliques: Sequence[Biclique], word: int) -> int:
    removed = 0
    for i, b in enumerate(bicliques):
        removed |= b.right if word >> i & 1 else b.left
    return removed


def degree_sequence_allows(g: Graph, k: int) -> bool:
    """Necessary condition for k dominators x_1..x_k with deg(x_i) >= i-1."""
    if g.n < k:
        return False
    degrees = sorted((g.degree(v) for v in range(g.n)), reverse=True)
    return all(degrees[t - 1] >= k - t for t in range(1, k + 1))


class _ChainSearchExhausted(Exception):
    pass


def dominator_chain_allows(g: Graph, k: int, max_steps: int = CHAIN_SEARCH_STEPS) -> bool:
    """Necessary condition: distinct x_k, ..., x_1 where x_j has at least j-1
    neighbors outside {x_j, ..., x_k}.

    The neighbors of a dominator x_j in classes 1..j-1 avoid every later
    dominator. The search gives up and allows k after max_steps placements.
    """
    if not degree_sequence_allows(g, k):
        return False
    steps = 0

    def place(j: int, taken: int) -> bool:
        nonlocal steps
        if j <= 1:
            return True
        for v in members(g.vertex_mask & ~taken):
            steps += 1
            if steps > max_steps:
                raise _ChainSearchExhausted
            if popcount(g.adjacency[v] & ~taken) >= j - 1 and place(j - 1, taken | 1 << v):
                return True
        return False

    try:
        return place(k, 0)
    except _ChainSearchExhausted:
        logging.debug(f"dominator_chain_allows: gave up after {max_steps} steps")
        return True


##########################################################################
# witness search


def find_witness_in_families(
    g: Graph,
    families: Sequence[Sequence[int]],
    zones: Optional[Sequence[int]] = None,
) -> Optional[PartialGrundyWitness]:
    """First witness (Y_1..Y_k) in lexicographic family order, Y_j from families[j].

    Prefixes whose last class has no dominator are pruned.

    Args:
        g (Graph): Host graph.
        families (Sequence[Sequence[int]]): One list of independent sets per class.
        zones (Optional[Sequence[int]]): Pairwise disjoint sets that must hold
            the members of the matching family.

    Returns:
        Optional[PartialGrundyWitness]: The witness, or None.
    """
    if zones is not None:
        if len(zones) != len(families):
            raise ValueError("zones and families differ in length")
        seen = 0
        for zone in zones:
            if zone & seen:
                raise ValueError("zones overlap")
            seen |= zone
        for zone, family in zip(zones, families):
            if any(y & ~zone for y in family):
                raise ValueError("family member leaves its zone")
    for family in families:
        for y in family:
            if not is_independent(g, y):
                raise ValueError(f"family member {members(y)} is not independent")

    k = len(families)
    chosen: List[int] = []

    def extend(j: int, used: int) -> bool:
        if j == k:
            return True
        for y in families[j]:
            if not y or y & used:
                continue
            if j and not any(
                all(g.adjacency[v] & chosen[i] for i in range(j)) for v in members(y)
            ):
                continue
            chosen.append(y)
            if extend(j + 1, used | y):
                return True
            chosen.pop()
        return False

    if k == 0 or not extend(0, 0):
        return None
    return PartialGrundyWitness(tuple(chosen))


@dataclass(frozen=True)
class SpgcAnswer:
    witness: Optional[PartialGrundyWitness]
    stats: Dict[str, Any] = field(default_factory=dict)


##########################################################################
# randomized


def run_spgc_trial(inst: SpgcInstance, seed: int, trial: int) -> Optional[PartialGrundyWitness]:
    """One trial: random coloring, random biclique sides, one sample per color."""
    g, k = inst.g, inst.k
    rng = derive_rng(seed, "spgc-trial", trial)
    phi = ColorCodingAssignment(tuple(int(z) for z in rng.integers(1, k + 1, size=g.n)), k)
    zones = phi.classes
    words = []
    for _ in range(k):
        bits = rng.integers(0, 2, size=inst.ell)
        words.append(sum(int(b) << i for i, b in enumerate(bits)))
    removed = SideSelection(tuple(words)).removed_sets(inst.bicliques)
    samples = []
    for zone, d_set in zip(zones, removed):
        sub, index_map = induced_subgraph(g, zone & ~d_set)
        sample = sample_independent_cover(sub, degeneracy_ordering(sub), rng)
        samples.append(lift_mask(sample, index_map))
    return find_witness_in_families(g, [[y] for y in samples], zones)


def solve_spgc_randomized(
    inst: SpgcInstance, trials: int, seed: int, threads: int = 1
) -> SpgcAnswer:
    """Repeat independent trials; the first successful trial index wins.

    Args:
        inst (SpgcInstance): Instance.
        trials (int): Trial cap.
        seed (int): Run seed.
        threads (int): Worker threads. The answer does not depend on it.

    Returns:
        SpgcAnswer: Witness of the smallest successful trial, or none.
    """
    if trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")
    stats: Dict[str, Any] = {
        "ell": inst.ell,
        "d": inst.d,
        "prescribed_trials": prescribed_trials(inst.k, inst.d, inst.ell),
    }
    if threads <= 1:
        for t in range(trials):
            w = run_spgc_trial(inst, seed, t)
            if w is not None:
                logging.debug(f"solve_spgc_randomized: success at trial {t}")
                return SpgcAnswer(w, {**stats, "trials": t + 1})
        return SpgcAnswer(None, {**stats, "trials": trials})
    chunk = threads * 4
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for start in range(0, trials, chunk):
            batch = range(start, min(trials, start + chunk))
            results = list(pool.map(lambda t: run_spgc_trial(inst, seed, t), batch))
            for t, w in zip(batch, results):
                if w is not None:
                    logging.debug(f"solve_spgc_randomized: success at trial {t}")
                    return SpgcAnswer(w, {**stats, "trials": t + 1})
    return SpgcAnswer(None, {**stats, "trials": trials})


##########################################################################
# deterministic


def _minimal_masks(masks: Sequence[int]) -> List[int]:
    unique = list(dict.fromkeys(masks))
    return [
        m for m in unique if not any(o != m and o & m == o for o in unique)
    ]


def minimal_side_traces(bicliques: Sequence[Biclique], zone: int) -> List[int]:
    """Inclusion-minimal sets D & zone over all selector words, in selector order."""
    traces = [0]
    for b in bicliques:
        traces = _minimal_masks(
            [t | (side & zone) for t in traces for side in (b.left, b.right)]
        )
    return traces


def _dominator_feasible(g: Graph, reach: Sequence[int]) -> bool:
    if any(not r for r in reach):
        return False
    for j in range(1, len(reach)):
        if not any(
            all(g.adjacency[v] & reach[i] for i in range(j)) for v in members(reach[j])
        ):
            return False
    return True


def solve_spgc_deterministic(
    inst: SpgcInstance,
    budget: int = DEFAULT_BUDGET,
    strategy: str = "union",
    seed: int = 0,
    certified_max_n: int = CERTIFIED_MAX_N,
) -> SpgcAnswer:
    """Exact search over a universal family of colorings and all biclique sides.

    Args:
        inst (SpgcInstance): Instance.
        budget (int): Cap on the colorings times side combinations processed.
        strategy (str): "union" searches one merged family per color,
            "product" enumerates side combinations per color.
        seed (int): Seed of the covering and hash candidate streams.
        certified_max_n (int): Largest zone given a certified covering family.

    Returns:
        SpgcAnswer: Witness, or none when no witness exists.
    """
    if strategy not in ("union", "product"):
        raise ValueError(f"unknown side strategy {strategy!r}")
    g, k = inst.g, inst.k
    stats: Dict[str, Any] = {"ell": inst.ell, "d": inst.d, "strategy": strategy}
    if not degree_sequence_allows(g, k):
        return SpgcAnswer(None, {**stats, "shortcut": "degree_sequence", "functions": 0})
    if not dominator_chain_allows(g, k):
        return SpgcAnswer(None, {**stats, "shortcut": "dominator_chain", "functions": 0})
    functions = build_universal_set(g.n, k * k, k, seed, budget)
    covers: Dict[int, Tuple[int, ...]] = {}

    def cover(zone: int) -> Tuple[int, ...]:
        if zone not in covers:
            covers[zone] = covering_family_within(g, zone, k, seed, certified_max_n)
        return covers[zone]

    work = 0
    enumerated = 0
    for phi in functions:
        enumerated += 1
        zones = ColorCodingAssignment(phi, k).classes
        options = [
            [zone & ~t for t in minimal_side_traces(inst.bicliques, zone)]
            for zone in zones
        ]
        reach = []
        for opts in options:
            r = 0
            for o in opts:
                r |= o
            reach.append(r)
        if not _dominator_feasible(g, reach):
            continue
        if strategy == "union":
            choices = [
                [tuple(dict.fromkeys(y for o in opts for y in cover(o))) for opts in options]
            ]
        else:
            choices = product(*[[cover(o) for o in opts] for opts in options])
        for families in choices:
            work += 1
            if work > budget:
                raise BudgetExceededError(f"work exceeds the budget of {budget}")
            w = find_witness_in_families(g, families, zones)
            if w is not None:
                logging.debug(f"solve_spgc_deterministic: witness after {enumerated} colorings")
                return SpgcAnswer(w, {**stats, "functions": enumerated, "work": work})
    logging.debug(f"solve_spgc_deterministic: no witness in {enumerated} colorings")
    return SpgcAnswer(None, {**stats, "functions": enumerated, "work": work})


##########################################################################
# top level


def _result_from_answer(
    g: Graph, k: int, answer: SpgcAnswer, miss: str
) -> SolverResult:
    if answer.witness is None:
        return SolverResult("pgc", k, miss, stats=answer.stats)
    witness = shrink_pgw(g, answer.witness)
    if not verify_pgw(g, witness):
        raise RuntimeError("shrunk witness failed verification")
    coloring = pgw_to_coloring(g, witness)
    return SolverResult("pgc", k, YES, coloring, witness, answer.stats)


def _check_arguments(k: int, mode: str, trials: int) -> None:
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")
    if mode not in ("rand", "det"):
        raise ValueError(f"unknown mode {mode!r}")
    if mode == "rand" and trials < 1:
        raise ValueError(f"trials must be at least 1, got {trials}")


def _dispatch(
    inst: SpgcInstance,
    mode: str,
    trials: int,
    seed: int,
    threads: int,
    budget: int,
    certified_max_n: int,
) -> SolverResult:
    if mode == "rand":
        answer = solve_spgc_randomized(inst, trials, seed, threads)
        return _result_from_answer(inst.g, inst.k, answer, NO_WITNESS_FOUND)
    if mode == "det":
        answer = solve_spgc_deterministic(inst, budget, seed=seed, certified_max_n=certified_max_n)
        return _result_from_answer(inst.g, inst.k, answer, NO)
    raise ValueError(f"unknown mode {mode!r}")


def solve_pgc(
    g: Graph,
    k: int,
    mode: str = "det",
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    threads: int = 1,
    budget: int = DEFAULT_BUDGET,
    certified_max_n: int = CERTIFIED_MAX_N,
) -> SolverResult:
    """Decide whether the partial Grundy number of g is at least k.

    Args:
        g (Graph): Input graph.
        k (int): Target number of colors.
        mode (str): "rand" or "det".
        trials (int): Trial cap in rand mode.
        seed (int): Run seed.
        threads (int): Worker threads in rand mode.
        budget (int): Work cap in det mode.
        certified_max_n (int): Largest zone given a certified covering family.

    Returns:
        SolverResult: Answer with a partial Grundy coloring on yes.
    """
    _check_arguments(k, mode, trials)
    reduced = degree_reduce(g, k)
    if isinstance(reduced, Coloring):
        witness = pgw_from_coloring(g, reduced)
        return SolverResult("pgc", k, YES, reduced, witness, {"ell": 0, "stage": "degree_reduce"})
    if not degree_sequence_allows(g, k):
        return SolverResult("pgc", k, NO, stats={"shortcut": "degree_sequence"})
    if not dominator_chain_allows(g, k):
        return SolverResult("pgc", k, NO, stats={"shortcut": "dominator_chain"})
    inst = SpgcInstance.build(g, k, reduced.bicliques)
    logging.debug(f"solve_pgc: ell={inst.ell} d={inst.d} mode={mode}")
    return _dispatch(inst, mode, trials, seed, threads, budget, certified_max_n)


def solve_pgc_degenerate(
    g: Graph,
    k: int,
    mode: str = "det",
    trials: int = DEFAULT_TRIALS,
    seed: int = 0,
    threads: int = 1,
    budget: int = DEFAULT_BUDGET,
    certified_max_n: int = CERTIFIED_MAX_N,
) -> SolverResult:
    """Same decision without degree reduction, for graphs of small degeneracy."""
    _check_arguments(k, mode, trials)
    inst = SpgcInstance.build(g, k)
    return _dispatch(inst, mode, trials, seed, threads, budget, certified_max_n)
