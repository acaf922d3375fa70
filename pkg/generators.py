"""Module with seeded random and structured graph generators for corpora and benchmarks."""

from typing import List, Sequence, Tuple

import networkx as nx

from graph_core import Graph
from random_streams import derive_rng

MODELS = ("gnp", "bipartite", "degenerate", "complete", "cycle", "star", "path")
_ARITY = {"gnp": 2, "bipartite": 3, "degenerate": 2, "complete": 1, "cycle": 1, "star": 1, "path": 1}


def _nx_seed(seed: int, model: str) -> int:
    return int(derive_rng(seed, f"gen-{model}").integers(0, 2**31 - 1))


def degenerate_graph(n: int, d: int, seed: int) -> Graph:
    """Each vertex v joins min(v, d) distinct random earlier vertices, so degeneracy <= d."""
    rng = derive_rng(seed, "gen", n, d)
    edges = []
    for v in range(1, n):
        for u in rng.choice(v, size=min(v, d), replace=False):
            edges.append((int(u), v))
    return Graph.from_edges(n, edges)


def gen(model: str, params: Sequence[float], seed: int = 0) -> Graph:
    """Build a graph from a named model.

    Args:
        model (str): One of gnp(n, prob), bipartite(a, b, prob), degenerate(n, d),
            complete(n), cycle(n), star(n) with n leaves, path(n).
        params (Sequence[float]): Model parameters in that order.
        seed (int): Seed; equal seeds give equal graphs.

    Returns:
        Graph: The generated graph.
    """
    if model not in _ARITY:
        raise ValueError(f"unknown model {model!r}, expected one of {', '.join(MODELS)}")
    if len(params) != _ARITY[model]:
        raise ValueError(f"{model} takes {_ARITY[model]} parameters, got {len(params)}")
    sizes = [int(x) for x in params if float(x).is_integer()]
    if any(x < 0 for x in sizes):
        raise ValueError(f"negative size in {model}{tuple(params)}")
    if model == "gnp":
        n, prob = int(params[0]), float(params[1])
        _check_probability(prob)
        return Graph.from_networkx(nx.gnp_random_graph(n, prob, seed=_nx_seed(seed, model)))
    if model == "bipartite":
        a, b, prob = int(params[0]), int(params[1]), float(params[2])
        _check_probability(prob)
        return Graph.from_networkx(
            nx.bipartite.random_graph(a, b, prob, seed=_nx_seed(seed, model))
        )
    if model == "degenerate":
        return degenerate_graph(int(params[0]), int(params[1]), seed)
    n = int(params[0])
    if model == "complete":
        return Graph.from_networkx(nx.complete_graph(n))
    if model == "cycle":
        if n < 3:
            raise ValueError("cycle needs at least 3 vertices")
        return Graph.from_networkx(nx.cycle_graph(n))
    if model == "star":
        return Graph.from_networkx(nx.star_graph(n))
    return Graph.from_networkx(nx.path_graph(n))


def _check_probability(prob: float) -> None:
    if not 0.0 <= prob <= 1.0:
        raise ValueError(f"edge probability {prob} outside [0, 1]")


def parse_model(text: str) -> Tuple[str, List[float]]:
    """Split "gnp:10:0.3" into ("gnp", [10.0, 0.3])."""
    model, *raw = text.split(":")
    try:
        return model, [float(x) for x in raw]
    except ValueError:
        raise ValueError(f"malformed model spec {text!r}") from None
