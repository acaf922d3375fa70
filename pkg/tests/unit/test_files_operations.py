import io
import os

import pytest

from files_operations import (
    GraphFormatError,
    create_folder,
    load_json,
    parse_dimacs,
    parse_edgelist,
    parse_graph,
    save_text,
    serialize_graph,
)
from graph_core import Graph


class TestDimacs:

    ##########################################################################
    # parse_dimacs()

    def test_parse(self):
        g = parse_dimacs("c path\np edge 4 3\ne 1 2\ne 2 3\n\ne 3 4\n")
        assert g == Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])

    def test_col_header_is_accepted(self):
        assert parse_dimacs("p col 2 1\ne 1 2\n").m == 1

    @pytest.mark.parametrize(
        "text, line",
        [
            ("e 1 2\n", 1),
            ("p edge 3 1\np edge 3 1\n", 2),
            ("p edge 3 1\ne 1 4\n", 2),
            ("p edge 3 1\ne 2 2\n", 2),
            ("p edge 3 1\ne 1 x\n", 2),
            ("p edge 3\n", 1),
            ("p edge 3 1\nq 1 2\n", 2),
            ("p edge 3 1\ne 1 2 3\n", 2),
        ],
    )
    def test_errors_carry_line_numbers(self, text, line):
        with pytest.raises(GraphFormatError) as info:
            parse_dimacs(text)
        assert info.value.line == line
        assert str(info.value).startswith(f"line {line}: ")

    def test_missing_header(self):
        with pytest.raises(GraphFormatError) as info:
            parse_dimacs("c nothing here\n")
        assert info.value.line is None

    def test_edge_count_mismatch_only_warns(self, caplog):
        with caplog.at_level("WARNING"):
            g = parse_dimacs("p edge 3 5\ne 1 2\n")
        assert g.m == 1
        assert "declares 5 edges" in caplog.text


class TestEdgeList:

    ##########################################################################
    # parse_edgelist()

    def test_parse_with_comments(self):
        g = parse_edgelist("# a path\n0 1\n1 2 # middle\n\n2 3\n")
        assert g == Graph.from_edges(4, [(0, 1), (1, 2), (2, 3)])

    def test_isolated_vertices_from_header(self):
        g = parse_edgelist("# n 6\n0 1\n")
        assert g.n == 6

    def test_explicit_n_wins(self):
        assert parse_edgelist("# n 6\n0 1\n", n=3).n == 3

    @pytest.mark.parametrize(
        "text, n, line",
        [("0 1 2\n", None, 1), ("0 0\n", None, 1), ("0 -1\n", None, 1), ("0 1\n1 5\n", 3, 2), ("a b\n", None, 1)],
    )
    def test_errors(self, text, n, line):
        with pytest.raises(GraphFormatError) as info:
            parse_edgelist(text, n)
        assert info.value.line == line

    def test_empty_input(self):
        assert parse_edgelist("") == Graph(0, ())


class TestGraphFiles:

    ##########################################################################
    # parse_graph() / serialize_graph()

    @pytest.mark.parametrize("fmt", ["edgelist", "dimacs"])
    def test_file_round_trip(self, tmp_path, c5, fmt):
        path = tmp_path / f"c5.{fmt}"
        path.write_text(serialize_graph(c5, fmt), encoding="utf-8")
        assert parse_graph(str(path), fmt) == c5

    def test_isolated_vertices_survive(self, tmp_path):
        g = Graph.from_edges(5, [(0, 1)])
        path = tmp_path / "g.txt"
        path.write_text(serialize_graph(g), encoding="utf-8")
        assert parse_graph(str(path)) == g

    def test_stdin(self, monkeypatch, p4):
        monkeypatch.setattr("sys.stdin", io.StringIO("0 1\n1 2\n2 3\n"))
        assert parse_graph("-") == p4

    def test_unknown_format(self, tmp_path, p4):
        path = tmp_path / "g.txt"
        path.write_text("0 1\n", encoding="utf-8")
        with pytest.raises(GraphFormatError):
            parse_graph(str(path), "graphml")
        with pytest.raises(GraphFormatError):
            serialize_graph(p4, "graphml")

    def test_n_disagrees_with_dimacs_header(self, tmp_path):
        path = tmp_path / "g.col"
        path.write_text("p edge 3 0\n", encoding="utf-8")
        with pytest.raises(GraphFormatError):
            parse_graph(str(path), "dimacs", n=4)

    def test_missing_file(self, tmp_path):
        with pytest.raises(OSError):
            parse_graph(str(tmp_path / "absent.txt"))


class TestOtherFiles:

    ##########################################################################
    # load_json() / save_text() / create_folder()

    def test_json(self, tmp_path):
        path = tmp_path / "w.json"
        path.write_text('{"kind": "pgw", "classes": [[0]]}', encoding="utf-8")
        assert load_json(str(path)) == {"kind": "pgw", "classes": [[0]]}

    def test_invalid_json(self, tmp_path):
        path = tmp_path / "w.json"
        path.write_text('{"kind": ', encoding="utf-8")
        with pytest.raises(GraphFormatError):
            load_json(str(path))

    def test_save_text_creates_folders(self, tmp_path):
        target = tmp_path / "a" / "b" / "out.txt"
        save_text(str(target), "hello\n")
        assert target.read_text(encoding="utf-8") == "hello\n"

    def test_create_folder_is_idempotent(self, tmp_path):
        folder = str(tmp_path / "reports")
        create_folder(folder, folder)
        assert os.path.isdir(folder)
