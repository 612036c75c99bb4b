"""Graph file grammar, commands, JSON reports, and SVG output."""

from __future__ import annotations

import json

import pytest

from bicross import build_graph, drawing_from_ranks, identity_drawing
from bicross.cli import (
    ParseError,
    emit_svg,
    graph_to_text,
    main,
    parse_edge_list_text,
    parse_graph_text,
    svg_string,
)

C4_TEXT = """\
# a four-cycle
bigraph 2 2
x0 y0
x0 y1
x1 y0
x1 y1
"""


def c4():
    return build_graph(2, 2, [(0, 0), (0, 1), (1, 0), (1, 1)])


def write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


class TestParsing:
    def test_c4_file(self):
        assert parse_graph_text(C4_TEXT) == c4()

    def test_weighted_edge(self):
        g = parse_graph_text("bigraph 1 1\nx0 y0 5\n")
        assert g.edges == ((0, 0, 5),)

    def test_comments_and_blanks_ignored(self):
        g = parse_graph_text("# lead\n\nbigraph 1 1\n\n# mid\nx0 y0\n")
        assert g.m == 1

    @pytest.mark.parametrize(
        "text,fragment,line",
        [
            ("x0 y0\n", "header", 1),
            ("bigraph 2\n", "header", 1),
            ("bigraph 1 1\nx0 z1\n", "expected y<index>", 2),
            ("bigraph 1 1\nx0 y0 0\n", "weight", 2),
            ("bigraph 1 1\nx0 y0\nx0 y0\n", "duplicate", 3),
            ("bigraph 1 1\nx0 y4\n", "out of range", 2),
            ("bigraph 1 1\nbigraph 1 1\n", "second header", 2),
            ("bigraph 1 1\nx0 y0 1 9\n", "expected", 2),
        ],
    )
    def test_errors_carry_line_numbers(self, text, fragment, line):
        with pytest.raises(ParseError, match=fragment) as err:
            parse_graph_text(text)
        assert err.value.line == line

    def test_round_trip(self):
        g = build_graph(3, 2, [(0, 0, 2), (1, 0), (1, 1), (2, 1, 4)])
        assert parse_graph_text(graph_to_text(g)) == g

    def test_edge_list_import(self):
        g = parse_edge_list_text("0 0\n0 1 3\n2 1\n")
        assert g.x_count == 3 and g.y_count == 2
        assert g.weight[(0, 1)] == 3

    def test_edge_list_errors(self):
        with pytest.raises(ParseError, match="integers"):
            parse_edge_list_text("a b\n")
        with pytest.raises(ParseError, match="duplicate"):
            parse_edge_list_text("0 0\n0 0\n")


class TestCommands:
    def run(self, capsys, *argv):
        code = main(list(argv))
        out = capsys.readouterr()
        return code, out.out, out.err

    def test_decide_yes(self, tmp_path, capsys):
        path = write(tmp_path, "c4.bg", C4_TEXT)
        code, out, _ = self.run(capsys, "decide", "--k", "1", path, "--json", "-")
        assert code == 0
        doc = json.loads(out)
        assert doc["decision"] == "yes"
        assert doc["optimum"] == 1
        assert sorted(doc["witness"]["x_ranks"]) == [0, 1]

    def test_decide_no_still_exits_zero(self, tmp_path, capsys):
        path = write(tmp_path, "c4.bg", C4_TEXT)
        code, out, _ = self.run(capsys, "decide", "--k", "0", path, "--json", "-")
        assert code == 0
        doc = json.loads(out)
        assert doc["decision"] == "no"
        assert doc["optimum"] == "exceeds_budget"
        assert doc["witness"] is None

    def test_exact_star(self, tmp_path, capsys):
        text = "bigraph 1 5\n" + "".join(f"x0 y{j}\n" for j in range(5))
        path = write(tmp_path, "star.bg", text)
        code, out, _ = self.run(capsys, "exact", path, "--json", "-")
        assert code == 0
        doc = json.loads(out)
        assert doc["optimum"] == 0
        assert doc["method"] == "fastpath"

    def test_census_star(self, tmp_path, capsys):
        text = "bigraph 1 4\n" + "".join(f"x0 y{j}\n" for j in range(4))
        path = write(tmp_path, "star.bg", text)
        code, out, _ = self.run(capsys, "census", "--k", "0", path, "--json", "-")
        assert code == 0
        doc = json.loads(out)
        assert doc["count"] == 24
        assert doc["pairs_scanned"] == 24
        assert doc["sibling_free"] is False

    def test_table_output_default(self, tmp_path, capsys):
        path = write(tmp_path, "c4.bg", C4_TEXT)
        code, out, _ = self.run(capsys, "decide", "--k", "1", path)
        assert code == 0
        assert "decision: yes" in out
        assert "optimum: 1" in out

    def test_json_file_plus_table(self, tmp_path, capsys):
        path = write(tmp_path, "c4.bg", C4_TEXT)
        out_json = tmp_path / "report.json"
        code, out, _ = self.run(
            capsys, "decide", "--k", "1", path, "--json", str(out_json)
        )
        assert code == 0
        assert "decision: yes" in out
        assert json.loads(out_json.read_text())["decision"] == "yes"

    def test_edge_list_format_flag(self, tmp_path, capsys):
        path = write(tmp_path, "g.edges", "0 0\n0 1\n1 0\n1 1\n")
        code, out, _ = self.run(
            capsys, "exact", path, "--format", "edgelist", "--json", "-"
        )
        assert code == 0
        assert json.loads(out)["optimum"] == 1

    def test_parse_error_exit_code(self, tmp_path, capsys):
        path = write(tmp_path, "bad.bg", "bigraph 1 1\nx0 z0\n")
        code, _, err = self.run(capsys, "decide", "--k", "0", path)
        assert code == 2
        assert "bad.bg:2:" in err

    def test_missing_file_exit_code(self, tmp_path, capsys):
        code, _, err = self.run(capsys, "decide", "--k", "0", str(tmp_path / "nope"))
        assert code == 2
        assert "error" in err

    def test_resource_limit_exit_code(self, tmp_path, capsys):
        text = "bigraph 9 1\n" + "".join(f"x{i} y0\n" for i in range(9))
        path = write(tmp_path, "big.bg", text)
        code, _, err = self.run(capsys, "census", "--k", "0", path)
        assert code == 3
        assert "census" in err

    def test_candidate_limit_flag(self, tmp_path, capsys):
        path = write(tmp_path, "c4.bg", C4_TEXT)
        code, _, err = self.run(
            capsys, "decide", "--k", "1", path, "--limit-candidates", "1"
        )
        assert code == 3
        assert "max_candidates_per_side" in err

    def test_json_deterministic_modulo_wall_time(self, tmp_path, capsys):
        path = write(tmp_path, "c4.bg", C4_TEXT)
        docs = []
        for _ in range(2):
            _, out, _ = self.run(capsys, "decide", "--k", "1", path, "--json", "-")
            docs.append(json.loads(out))
        for doc in docs:
            doc.pop("wall_time_ms")
        assert docs[0] == docs[1]


class TestSvg:
    def test_c4_witness(self, tmp_path, capsys):
        path = write(tmp_path, "c4.bg", C4_TEXT)
        svg_path = tmp_path / "c4.svg"
        code = main(["exact", path, "--svg", str(svg_path)])
        capsys.readouterr()
        assert code == 0
        svg = svg_path.read_text()
        assert "crossings: 1" in svg
        assert svg.count("<circle") == 4
        assert svg.count("<line") == 4

    def test_single_edge(self):
        svg = svg_string(identity_drawing(build_graph(1, 1, [(0, 0)])))
        assert svg.count("<circle") == 2
        assert svg.count("<line") == 1
        assert "crossings: 0" in svg

    def test_weight_label(self):
        g = build_graph(1, 1, [(0, 0, 5)])
        assert ">5</text>" in svg_string(identity_drawing(g))

    def test_deterministic_bytes(self, tmp_path):
        d = drawing_from_ranks(c4(), (1, 0), (0, 1))
        emit_svg(d, tmp_path / "a.svg")
        emit_svg(d, tmp_path / "b.svg")
        assert (tmp_path / "a.svg").read_bytes() == (tmp_path / "b.svg").read_bytes()

    def test_no_witness_skips_svg(self, tmp_path, capsys):
        path = write(tmp_path, "c4.bg", C4_TEXT)
        svg_path = tmp_path / "none.svg"
        code = main(["decide", "--k", "0", path, "--svg", str(svg_path)])
        err = capsys.readouterr().err
        assert code == 0
        assert not svg_path.exists()
        assert "skipped" in err
