import networkx as nx
import pytest

from covering import CoveringError
from graph_core import Biclique, Graph
from greedy import is_partial_grundy_coloring
from oracle import oracle_partial_grundy
from pgc_solver import (
    BudgetExceededError,
    ColorCodingAssignment,
    SideSelection,
    SpgcInstance,
    degree_sequence_allows,
    dominator_chain_allows,
    find_witness_in_families,
    minimal_side_traces,
    run_spgc_trial,
    solve_pgc,
    solve_pgc_degenerate,
    solve_spgc_deterministic,
    solve_spgc_randomized,
)
from solver_result import NO, NO_WITNESS_FOUND, YES
from tests.graph_corpus import atlas_graphs, random_graphs
from witness import PartialGrundyWitness, verify_pgw

SMALL_ATLAS = atlas_graphs(5)
SAMPLE_OF_SIX = atlas_graphs(6, min_n=6, every=13)
SEVEN_VERTEX_SAMPLE = random_graphs(20, 7, seed=70)
SEVEN_VERTEX_CORPUS = random_graphs(300, 7, seed=700)
STAR_OF_NINE = Graph.from_networkx(nx.star_graph(9))


def _assert_certified(g, result, k):
    assert result.answer == YES
    assert verify_pgw(g, result.witness)
    assert result.witness.k >= k
    assert is_partial_grundy_coloring(g, result.coloring)
    assert result.coloring.num_colors >= k


def _complete_minus_edge(n):
    h = nx.complete_graph(n)
    h.remove_edge(0, 1)
    return h


def _check_against_oracle(g, max_k):
    best = oracle_partial_grundy(g)
    answers = []
    for k in range(1, min(best + 1, max_k) + 1):
        result = solve_pgc(g, k, mode="det")
        if k <= best:
            _assert_certified(g, result, k)
        else:
            assert result.answer == NO
        answers.append(result.answer)
    # yes answers form a prefix of k = 1, 2, ...
    assert answers == sorted(answers, key=lambda a: a != YES)


class TestBuildingBlocks:

    ##########################################################################
    # SpgcInstance / ColorCodingAssignment / SideSelection

    def test_instance_degeneracy_after_removal(self, k33):
        inst = SpgcInstance.build(k33, 2, [Biclique(0b000111, 0b111000)])
        assert inst.d == 0
        assert inst.ell == 1
        assert SpgcInstance.build(k33, 2).d == 3

    def test_instance_rejects_bad_k(self, k33):
        with pytest.raises(ValueError):
            SpgcInstance.build(k33, 0)

    def test_color_classes(self):
        assert ColorCodingAssignment((1, 2, 1, 3), 3).classes == [0b0101, 0b0010, 0b1000]

    def test_side_selection(self):
        bicliques = [Biclique(0b0001, 0b0010), Biclique(0b0100, 0b1000)]
        assert SideSelection((0b00, 0b01, 0b11)).removed_sets(bicliques) == [0b0101, 0b0110, 0b1010]

    def test_minimal_side_traces(self):
        bicliques = [Biclique(0b0001, 0b0010), Biclique(0b0001, 0b0100)]
        assert sorted(minimal_side_traces(bicliques, 0b0111)) == [0b0001, 0b0110]
        assert minimal_side_traces(bicliques, 0b1000) == [0]
        assert minimal_side_traces([], 0b0111) == [0]

    @pytest.mark.parametrize(
        "name, k, allowed",
        [("star3", 2, True), ("star3", 3, True), ("star3", 5, False), ("p3", 3, True), ("edgeless4", 2, False), ("k3", 3, True)],
    )
    def test_degree_sequence_allows(self, graphs_by_name, name, k, allowed):
        assert degree_sequence_allows(graphs_by_name[name], k) == allowed

    ##########################################################################
    # dominator_chain_allows()

    @pytest.mark.parametrize(
        "name, k, allowed",
        [("star3", 3, False), ("p4", 3, True), ("k33", 3, True), ("k3", 3, True), ("p4", 5, False)],
    )
    def test_dominator_chain_allows(self, graphs_by_name, name, k, allowed):
        assert dominator_chain_allows(graphs_by_name[name], k) == allowed

    def test_dominator_chain_on_dense_graphs(self):
        assert dominator_chain_allows(Graph.from_networkx(nx.complete_graph(6)), 6)
        assert not dominator_chain_allows(Graph.from_networkx(_complete_minus_edge(6)), 6)
        assert not dominator_chain_allows(STAR_OF_NINE, 3)

    def test_dominator_chain_step_cap(self, graphs_by_name):
        assert dominator_chain_allows(graphs_by_name["star3"], 3, max_steps=0)

    @pytest.mark.parametrize("g", atlas_graphs(6, min_n=1, every=3))
    def test_dominator_chain_is_necessary(self, g):
        assert dominator_chain_allows(g, oracle_partial_grundy(g))

    ##########################################################################
    # find_witness_in_families()

    def test_find_witness_in_families(self, p4):
        families = [[0b0001, 0b0100], [0b1000, 0b1001], [0b0010]]
        w = find_witness_in_families(p4, families)
        assert w == PartialGrundyWitness((0b0100, 0b1001, 0b0010))

    def test_find_witness_none(self, p4):
        assert find_witness_in_families(p4, [[0b0001], [0b1000]]) is None

    def test_zone_validation(self, p4):
        with pytest.raises(ValueError):
            find_witness_in_families(p4, [[0b0001], [0b0010]], zones=[0b0011, 0b0010])
        with pytest.raises(ValueError):
            find_witness_in_families(p4, [[0b0100]], zones=[0b0001])
        with pytest.raises(ValueError):
            find_witness_in_families(p4, [[0b0011]])


class TestRandomized:

    ##########################################################################
    # run_spgc_trial() / solve_spgc_randomized()

    def test_path_is_found(self, p4):
        inst = SpgcInstance.build(p4, 3)
        answer = solve_spgc_randomized(inst, trials=10_000, seed=5)
        assert answer.witness is not None
        assert verify_pgw(p4, answer.witness)
        assert answer.stats["trials"] <= 10_000

    def test_trials_are_reproducible(self, c5):
        inst = SpgcInstance.build(c5, 3)
        first = [run_spgc_trial(inst, 9, t) for t in range(40)]
        second = [run_spgc_trial(inst, 9, t) for t in range(40)]
        assert first == second

    def test_threads_do_not_change_the_answer(self, c5):
        inst = SpgcInstance.build(c5, 3)
        single = solve_spgc_randomized(inst, trials=3000, seed=2, threads=1)
        pooled = solve_spgc_randomized(inst, trials=3000, seed=2, threads=3)
        assert single.witness == pooled.witness
        assert single.stats == pooled.stats

    def test_no_false_yes(self, k33):
        result = solve_pgc(k33, 3, mode="rand", trials=300, seed=1)
        assert result.answer == NO_WITNESS_FOUND
        assert result.coloring is None

    def test_chain_shortcut_settles_rand_mode(self, graphs_by_name):
        result = solve_pgc(graphs_by_name["star3"], 3, mode="rand", trials=300, seed=1)
        assert result.answer == NO
        assert result.stats["shortcut"] == "dominator_chain"

    @pytest.mark.parametrize("name, k", [("star3", 3), ("k33", 3), ("c5", 4), ("p4", 4)])
    def test_seeded_runs_on_no_instances(self, graphs_by_name, name, k):
        # 4 instances x 250 seeds
        inst = SpgcInstance.build(graphs_by_name[name], k)
        for seed in range(250):
            assert solve_spgc_randomized(inst, trials=4, seed=seed).witness is None

    @pytest.mark.parametrize("trials", [0, -5])
    def test_trials_must_be_positive(self, p4, trials):
        with pytest.raises(ValueError):
            solve_spgc_randomized(SpgcInstance.build(p4, 3), trials=trials, seed=0)
        with pytest.raises(ValueError):
            solve_pgc(p4, 3, mode="rand", trials=trials)
        with pytest.raises(ValueError):
            solve_pgc_degenerate(p4, 3, mode="rand", trials=trials)


class TestDeterministic:

    ##########################################################################
    # solve_spgc_deterministic()

    def test_strategies_agree(self, c5):
        inst = SpgcInstance.build(c5, 3)
        union = solve_spgc_deterministic(inst, strategy="union")
        product = solve_spgc_deterministic(inst, strategy="product")
        assert union.witness is not None and product.witness is not None
        assert verify_pgw(c5, union.witness) and verify_pgw(c5, product.witness)

    def test_with_bicliques(self, k33):
        inst = SpgcInstance.build(k33, 3, [Biclique(0b000110, 0b111000), Biclique(0b000001, 0b111000)])
        assert solve_spgc_deterministic(inst).witness is None

    def test_budget(self, c5):
        with pytest.raises(BudgetExceededError):
            solve_spgc_deterministic(SpgcInstance.build(c5, 3), budget=10)

    def test_unknown_strategy(self, c5):
        with pytest.raises(ValueError):
            solve_spgc_deterministic(SpgcInstance.build(c5, 3), strategy="best")

    def test_large_index_sets_hit_the_budget(self):
        k28 = Graph.from_networkx(nx.complete_bipartite_graph(2, 8))
        with pytest.raises(BudgetExceededError):
            solve_spgc_deterministic(SpgcInstance.build(k28, 3), budget=1000)

    def test_star_of_nine_is_answered(self):
        answer = solve_spgc_deterministic(SpgcInstance.build(STAR_OF_NINE, 3), budget=10 ** 12)
        assert answer.witness is None
        assert answer.stats["functions"] == 0


class TestSolvePgc:

    ##########################################################################
    # solve_pgc()

    @pytest.mark.parametrize(
        "name, k, answer",
        [
            ("star3", 2, YES),
            ("star3", 3, NO),
            ("p4", 3, YES),
            ("p4", 4, NO),
            ("c5", 3, YES),
            ("k33", 2, YES),
            ("k33", 3, NO),
            ("empty", 1, NO),
            ("k1", 1, YES),
        ],
    )
    def test_named_graphs(self, graphs_by_name, name, k, answer):
        g = graphs_by_name[name]
        result = solve_pgc(g, k, mode="det")
        assert result.answer == answer
        if answer == YES:
            _assert_certified(g, result, k)

    @pytest.mark.parametrize("g", SMALL_ATLAS + SAMPLE_OF_SIX)
    def test_deterministic_matches_oracle(self, g):
        best = oracle_partial_grundy(g)
        for k in range(1, min(best + 1, 4) + 1):
            result = solve_pgc(g, k, mode="det")
            if k <= best:
                _assert_certified(g, result, k)
            else:
                assert result.answer == NO

    @pytest.mark.parametrize("g", SEVEN_VERTEX_SAMPLE)
    def test_deterministic_on_seven_vertices(self, g):
        _check_against_oracle(g, 3)

    @pytest.mark.slow
    @pytest.mark.parametrize("g", SEVEN_VERTEX_CORPUS)
    def test_deterministic_on_seven_vertex_corpus(self, g):
        _check_against_oracle(g, 5)

    def test_star_of_nine(self):
        for solve in (solve_pgc, solve_pgc_degenerate):
            assert solve(STAR_OF_NINE, 2, mode="det").answer == YES
            assert solve(STAR_OF_NINE, 3, mode="det", budget=10 ** 12).answer == NO

    def test_chain_shortcut(self):
        g = Graph.from_networkx(_complete_minus_edge(6))
        result = solve_pgc(g, 6, mode="det")
        assert result.answer == NO
        assert result.stats == {"shortcut": "dominator_chain"}

    def test_certified_size_is_configurable(self, c5):
        result = solve_pgc_degenerate(c5, 3, mode="det", certified_max_n=5)
        _assert_certified(c5, result, 3)
        with pytest.raises(CoveringError):
            solve_pgc_degenerate(c5, 3, mode="det", certified_max_n=1)

    @pytest.mark.parametrize("g", SMALL_ATLAS[::4])
    def test_randomized_never_overclaims(self, g):
        best = oracle_partial_grundy(g)
        for k in range(1, min(best + 1, 4) + 1):
            result = solve_pgc(g, k, mode="rand", trials=200, seed=3)
            if result.answer == YES:
                _assert_certified(g, result, k)
            else:
                assert result.answer in (NO, NO_WITNESS_FOUND)
            if k > best:
                assert result.answer != YES

    def test_degenerate_variant(self, c5):
        result = solve_pgc_degenerate(c5, 3, mode="det")
        _assert_certified(c5, result, 3)
        assert solve_pgc_degenerate(c5, 4, mode="det").answer == NO

    def test_result_json(self, p4):
        data = solve_pgc(p4, 3).to_dict()
        assert data["answer"] == YES
        assert data["certificate"]["kind"] == "pgw"
        assert len(data["certificate"]["coloring"]) == 4

    @pytest.mark.parametrize("k, mode", [(0, "det"), (2, "maybe")])
    def test_invalid_arguments_degenerate(self, p4, k, mode):
        with pytest.raises(ValueError):
            solve_pgc_degenerate(p4, k, mode=mode)

    @pytest.mark.parametrize("k, mode", [(0, "det"), (2, "maybe")])
    def test_invalid_arguments(self, p4, k, mode):
        with pytest.raises(ValueError):
            solve_pgc(p4, k, mode=mode)
