"""This module contains functions that read and write graphs, certificates and reports."""

from typing import Any, Dict, List, Optional, Tuple
import json
import logging
import os
import re
import sys

from graph_core import Graph, GraphError


class GraphFormatError(ValueError):
    """Malformed graph input; carries the 1-based line number when known."""

    def __init__(self, message: str, line: Optional[int] = None) -> None:
        self.line = line
        prefix = f"line {line}: " if line is not None else ""
        super().__init__(f"{prefix}{message}")


def read_text(path: str) -> str:
    """Read a whole text file, or stdin when the path is "-".

    Args:
        path (str): File path or "-".

    Returns:
        str: File contents.
    """
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _parse_int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise GraphFormatError(f"expected an integer, got {token!r}", line) from None


def parse_dimacs(text: str) -> Graph:
    """Parse DIMACS: `c` comments, one `p edge n m` header, `e u v` with 1-based ids."""
    n = None
    declared_m = None
    edges: List[Tuple[int, int]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split()
        if not tokens or tokens[0] == "c":
            continue
        if tokens[0] == "p":
            if n is not None:
                raise GraphFormatError("second problem line", number)
            if len(tokens) != 4 or tokens[1] not in ("edge", "col"):
                raise GraphFormatError("malformed header, expected 'p edge n m'", number)
            n = _parse_int(tokens[2], number)
            declared_m = _parse_int(tokens[3], number)
            if n < 0 or declared_m < 0:
                raise GraphFormatError("negative size in header", number)
        elif tokens[0] == "e":
            if n is None:
                raise GraphFormatError("edge before the 'p edge' header", number)
            if len(tokens) != 3:
                raise GraphFormatError("malformed edge line, expected 'e u v'", number)
            u, v = (_parse_int(t, number) for t in tokens[1:])
            if not (1 <= u <= n and 1 <= v <= n):
                raise GraphFormatError(f"vertex id out of range 1..{n}", number)
            if u == v:
                raise GraphFormatError(f"self-loop at vertex {u}", number)
            edges.append((u - 1, v - 1))
        else:
            raise GraphFormatError(f"unknown line type {tokens[0]!r}", number)
    if n is None:
        raise GraphFormatError("missing 'p edge n m' header")
    g = Graph.from_edges(n, edges)
    if declared_m != g.m:
        logging.warning(f"parse_dimacs: header declares {declared_m} edges, found {g.m}")
    return g


def parse_edgelist(text: str, n: Optional[int] = None) -> Graph:
    """Parse `u v` lines with 0-based ids and `#` comments.

    Args:
        text (str): Input text.
        n (Optional[int]): Vertex count; defaults to the largest id plus one.

    Returns:
        Graph: The graph.
    """
    edges: List[Tuple[int, int, int]] = []
    for number, raw in enumerate(text.splitlines(), start=1):
        header = re.match(r"\s*#\s*n\s+(\d+)\s*$", raw)
        if header and n is None:
            n = int(header.group(1))
            continue
        content = raw.split("#", 1)[0].split()
        if not content:
            continue
        if len(content) != 2:
            raise GraphFormatError("expected 'u v'", number)
        u, v = (_parse_int(t, number) for t in content)
        if u < 0 or v < 0:
            raise GraphFormatError("negative vertex id", number)
        if u == v:
            raise GraphFormatError(f"self-loop at vertex {u}", number)
        edges.append((u, v, number))
    if n is None:
        n = max((max(u, v) + 1 for u, v, _ in edges), default=0)
    for u, v, number in edges:
        if u >= n or v >= n:
            raise GraphFormatError(f"vertex id out of range 0..{n - 1}", number)
    return Graph.from_edges(n, ((u, v) for u, v, _ in edges))


def parse_graph(path: str, fmt: str = "edgelist", n: Optional[int] = None) -> Graph:
    """Read a graph from a file or stdin.

    Args:
        path (str): File path or "-".
        fmt (str): "dimacs" or "edgelist".
        n (Optional[int]): Declared vertex count for edge lists.

    Returns:
        Graph: The graph.
    """
    text = read_text(path)
    try:
        if fmt == "dimacs":
            g = parse_dimacs(text)
        elif fmt == "edgelist":
            g = parse_edgelist(text, n)
        else:
            raise GraphFormatError(f"unknown graph format {fmt!r}")
    except GraphError as e:
        raise GraphFormatError(str(e)) from e
    if n is not None and fmt == "dimacs" and n != g.n:
        raise GraphFormatError(f"--n {n} disagrees with the header n={g.n}")
    return g


def serialize_graph(g: Graph, fmt: str = "edgelist") -> str:
    """Write a graph in either format; parse_graph reads it back unchanged."""
    if fmt == "dimacs":
        lines = [f"p edge {g.n} {g.m}"]
        lines.extend(f"e {u + 1} {v + 1}" for u, v in g.edges())
    elif fmt == "edgelist":
        lines = [f"# n {g.n}"]
        lines.extend(f"{u} {v}" for u, v in g.edges())
    else:
        raise GraphFormatError(f"unknown graph format {fmt!r}")
    return "\n".join(lines) + "\n"


def load_json(path: str) -> Dict[str, Any]:
    try:
        return json.loads(read_text(path))
    except json.JSONDecodeError as e:
        raise GraphFormatError(f"invalid JSON in {path}: {e.msg}", e.lineno) from e


def save_text(path: str, text: str) -> None:
    folder = os.path.dirname(path)
    if folder:
        create_folder(folder)
    with open(path, "w", encoding="utf-8") as handle:
        handle.write(text)


def create_folder(*dir_paths: str) -> None:
    """Create folders that do not exist yet; existing ones are left alone.

    Args:
        *dir_paths (str): Folder names.
    """
    for d in dir_paths:
        os.makedirs(d, exist_ok=True)
