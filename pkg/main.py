#!/usr/bin/env python3
# *_* coding: utf-8 *_*
"""This module deploys the Grundy coloring command-line program."""

from dataclasses import dataclass
from itertools import product
from typing import Any, Dict, List, Optional, Sequence, Tuple
import argparse
import json
import logging
import sys
import time

from tqdm import tqdm

from bench_report import create_csv, create_dataframe
from covering import CERTIFIED_MAX_N
from files_operations import load_json, parse_graph, serialize_graph
from generators import gen, parse_model
from graph_core import Graph
from greedy import Coloring, is_grundy_coloring, is_partial_grundy_coloring
from grundy_solver import MAX_K, solve_grundy_kij
from info_logger import start_logging_info, stop_logging
from oracle import oracle_grundy, oracle_partial_grundy
from pgc_solver import DEFAULT_BUDGET, DEFAULT_TRIALS, solve_pgc
from random_streams import DEFAULT_SEED
from solver_result import SolverResult
from witness import PartialGrundyWitness, WitnessError, verify_gw, verify_pgw, witness_from_json

EXIT_YES = 0
EXIT_NO = 1
EXIT_ERROR = 2


@dataclass(frozen=True)
class RunConfig:
    """Complete configuration of one invocation."""

    command: str
    graph: str = "-"
    fmt: str = "edgelist"
    n: Optional[int] = None
    k: int = 3
    i: int = 2
    j: int = 2
    mode: str = "det"
    trials: int = DEFAULT_TRIALS
    seed: int = DEFAULT_SEED
    threads: int = 1
    budget: int = DEFAULT_BUDGET
    certified_max_n: int = CERTIFIED_MAX_N
    max_grundy_k: int = MAX_K
    certificate: Optional[str] = None
    problem: str = "pgc"
    models: Tuple[str, ...] = ("gnp:8:0.3",)
    ks: Tuple[int, ...] = (2, 3)
    modes: Tuple[str, ...] = ("det",)
    repeats: int = 1
    out: Optional[str] = None
    model: str = "gnp:8:0.3"
    log_file: Optional[str] = None
    verbose: bool = False

    def __post_init__(self) -> None:
        if self.trials < 1:
            raise ValueError(f"trials must be at least 1, got {self.trials}")

    @classmethod
    def from_namespace(cls, args: argparse.Namespace) -> "RunConfig":
        values = {name: getattr(args, name) for name in cls.__dataclass_fields__ if hasattr(args, name)}
        for name in ("models", "ks", "modes"):
            if name in values:
                values[name] = tuple(values[name])
        return cls(**values)


def _int_auto(text: str) -> int:
    return int(text, 0)


def _positive_int(text: str) -> int:
    value = int(text)
    if value < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return value


def _csv(kind):
    def parse(text: str) -> List:
        return [kind(part) for part in text.split(",") if part]

    return parse


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="grundy", description="Partial Grundy and Grundy coloring decisions."
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=_int_auto, default=DEFAULT_SEED)
    common.add_argument("--log-file", dest="log_file", default=None)
    common.add_argument("--verbose", action="store_true")

    graph_input = argparse.ArgumentParser(add_help=False)
    graph_input.add_argument("graph", nargs="?", default="-", help="graph file, '-' for stdin")
    graph_input.add_argument("--format", dest="fmt", choices=("edgelist", "dimacs"), default="edgelist")
    graph_input.add_argument("--n", type=int, default=None)

    solver = argparse.ArgumentParser(add_help=False)
    solver.add_argument("--k", type=int, required=False, default=3)
    solver.add_argument("--mode", choices=("rand", "det"), default="det")
    solver.add_argument("--trials", type=_positive_int, default=DEFAULT_TRIALS)
    solver.add_argument("--threads", type=int, default=1)
    solver.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    solver.add_argument(
        "--certified-max-n", dest="certified_max_n", type=_positive_int, default=CERTIFIED_MAX_N
    )
    solver.add_argument("--i", type=int, default=2)
    solver.add_argument("--j", type=int, default=2)
    solver.add_argument("--max-grundy-k", dest="max_grundy_k", type=int, default=MAX_K)

    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("pgc", parents=[common, graph_input, solver], help="partial Grundy number >= k?")
    sub.add_parser("grundy", parents=[common, graph_input, solver], help="Grundy number >= k on K_{i,j}-free graphs?")
    sub.add_parser("oracle", parents=[common, graph_input], help="exact numbers for small graphs")
    verify = sub.add_parser("verify", parents=[common, graph_input], help="re-check a certificate")
    verify.add_argument("--certificate", required=True)
    bench = sub.add_parser("bench", parents=[common, solver], help="sweep a generator grid, CSV out")
    bench.add_argument("--problem", choices=("pgc", "grundy"), default="pgc")
    bench.add_argument("--models", type=_csv(str), default=["gnp:8:0.3"])
    bench.add_argument("--ks", type=_csv(int), default=[2, 3])
    bench.add_argument("--modes", type=_csv(str), default=["det"])
    bench.add_argument("--repeats", type=int, default=1)
    bench.add_argument("--out", default=None)
    generate = sub.add_parser("gen", parents=[common], help="write a generated graph")
    generate.add_argument("model", help="e.g. gnp:10:0.3, cycle:5, star:3")
    generate.add_argument("--format", dest="fmt", choices=("edgelist", "dimacs"), default="edgelist")
    return parser


def _emit(data: Dict[str, Any]) -> None:
    print(json.dumps(data, sort_keys=True))


def _solve(config: RunConfig, g: Graph, problem: str, k: int, mode: str, seed: int) -> SolverResult:
    if problem == "pgc":
        return solve_pgc(
            g, k, mode, config.trials, seed, config.threads, config.budget, config.certified_max_n
        )
    return solve_grundy_kij(
        g, k, config.i, config.j, mode, config.trials, seed, config.budget, config.max_grundy_k
    )


def run_solver(config: RunConfig) -> int:
    g = parse_graph(config.graph, config.fmt, config.n)
    start = time.perf_counter()
    result = _solve(config, g, config.command, config.k, config.mode, config.seed)
    data = result.to_dict()
    data["millis"] = round((time.perf_counter() - start) * 1000, 3)
    _emit(data)
    return result.exit_code


def run_oracle(config: RunConfig) -> int:
    g = parse_graph(config.graph, config.fmt, config.n)
    _emit({"gamma": oracle_grundy(g), "partial_gamma": oracle_partial_grundy(g)})
    return EXIT_YES


def run_verify(config: RunConfig) -> int:
    """Check a witness, bare or inside a solver result, against the graph."""
    g = parse_graph(config.graph, config.fmt, config.n)
    data = load_json(config.certificate)
    certificate = data.get("certificate", data) if isinstance(data, dict) else None
    if not isinstance(certificate, dict):
        print("witness invalid: certificate is not a JSON object", file=sys.stderr)
        _emit({"valid": False, "kind": None, "colors": None})
        return EXIT_NO
    try:
        witness = witness_from_json(certificate)
    except WitnessError as e:
        print(f"witness invalid: {e}", file=sys.stderr)
        _emit({"valid": False, "kind": certificate.get("kind"), "colors": None})
        return EXIT_NO
    if isinstance(witness, PartialGrundyWitness):
        valid = verify_pgw(g, witness)
        coloring_check = is_partial_grundy_coloring
    else:
        valid = verify_gw(g, witness)
        coloring_check = is_grundy_coloring
    colors = None
    if valid and "coloring" in certificate:
        coloring = Coloring(tuple(int(z) for z in certificate["coloring"]))
        valid = coloring_check(g, coloring) and coloring.num_colors >= witness.k
        colors = coloring.num_colors
    _emit({"valid": valid, "kind": certificate["kind"], "colors": colors})
    if not valid:
        print("witness invalid", file=sys.stderr)
        return EXIT_NO
    return EXIT_YES


def run_bench(config: RunConfig) -> int:
    """Sweep models x ks x modes x repeats and write the CSV report."""
    grid = list(product(config.models, config.ks, config.modes, range(config.repeats)))
    rows: List[Dict[str, Any]] = []
    for index, (spec, k, mode, repeat) in enumerate(tqdm(grid, desc="bench", file=sys.stderr)):
        model, params = parse_model(spec)
        g = gen(model, params, config.seed + repeat)
        start = time.perf_counter()
        result = _solve(config, g, config.problem, k, mode, config.seed + index)
        millis = round((time.perf_counter() - start) * 1000, 3)
        stats = result.stats
        rows.append(
            {
                "model": spec,
                "n": g.n,
                "k": k,
                "mode": mode,
                "answer": result.answer,
                "millis": millis,
                "trials": stats.get("trials", stats.get("labelings", stats.get("functions", 0))),
            }
        )
        logging.debug(f"bench: {spec} k={k} mode={mode} -> {result.answer}")
    create_csv(create_dataframe(rows), config.out)
    return EXIT_YES


def run_gen(config: RunConfig) -> int:
    model, params = parse_model(config.model)
    sys.stdout.write(serialize_graph(gen(model, params, config.seed), config.fmt))
    return EXIT_YES


COMMANDS = {
    "pgc": run_solver,
    "grundy": run_solver,
    "oracle": run_oracle,
    "verify": run_verify,
    "bench": run_bench,
    "gen": run_gen,
}


def dispatch(config: RunConfig) -> int:
    """Run one command; errors become exit code 2 with a diagnostic on stderr."""
    try:
        return COMMANDS[config.command](config)
    except (ValueError, RuntimeError, OSError) as e:
        logging.exception("Command %s failed. Error below:\n\n%s", config.command, e)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_ERROR


def main(argv: Optional[Sequence[str]] = None) -> int:
    """Main function of the program."""
    args = build_parser().parse_args(argv)
    config = RunConfig.from_namespace(args)
    start_logging_info(config.log_file, config.verbose)
    try:
        return dispatch(config)
    finally:
        stop_logging()


if __name__ == "__main__":
    try:
        sys.exit(main())
    except Exception as e:
        logging.exception("Main crashed. Error below:\n\n%s", e)
        print(f"error: {e}", file=sys.stderr)
        sys.exit(EXIT_ERROR)
