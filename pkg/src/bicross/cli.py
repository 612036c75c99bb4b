"""Command-line front end: parse graph files, solve, and report.

Commands: decide (budgeted yes/no), exact (smallest budget), census
(exhaustive count of drawings within budget).  Reports go to stdout as a
small table, or as JSON with --json; --svg renders the witness drawing.
Exit codes: 0 solved (the decision lives in the report), 2 input could
not be parsed, 3 a resource limit was hit.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from dataclasses import replace
from pathlib import Path

from .drawing import Drawing, crossing_number_fast
from .graph import BipartiteGraph, GraphError
from .limits import DEFAULT_LIMITS, Limits, ResourceLimitError
from .solver import CensusResult, SolveReport, bcr_decide, bcr_exact, census


class ParseError(ValueError):
    def __init__(self, msg: str, line: int, source: str | None = None):
        prefix = f"{source}:{line}" if source else f"line {line}"
        super().__init__(f"{prefix}: {msg}")
        self.line = line


# -- graph file grammar ------------------------------------------------------


def _edge_token(token: str, side: str, line: int, source: str | None) -> int:
    if not token.startswith(side) or not token[1:].isdigit():
        raise ParseError(
            f"expected {side}<index>, got {token!r}", line, source
        )
    return int(token[1:])


def parse_graph_text(text: str, source: str | None = None) -> BipartiteGraph:
    """Graph from the native format.

    '#' lines are comments; the first payload line must be the header
    "bigraph <x_count> <y_count>"; every further line is an edge
    "x<i> y<j> [weight]" with 0-based indices and weight defaulting to 1.
    """
    x_count = y_count = -1
    edges: list[tuple[int, int, int]] = []
    seen: dict[tuple[int, int], int] = {}
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if x_count < 0:
            if tokens[0] != "bigraph" or len(tokens) != 3:
                raise ParseError(
                    "expected header 'bigraph <x_count> <y_count>'", line_no, source
                )
            try:
                x_count, y_count = int(tokens[1]), int(tokens[2])
            except ValueError:
                raise ParseError("header counts must be integers", line_no, source)
            if x_count < 0 or y_count < 0:
                raise ParseError("header counts must be non-negative", line_no, source)
            continue
        if tokens[0] == "bigraph":
            raise ParseError("second header line", line_no, source)
        if len(tokens) not in (2, 3):
            raise ParseError("expected 'x<i> y<j> [weight]'", line_no, source)
        x = _edge_token(tokens[0], "x", line_no, source)
        y = _edge_token(tokens[1], "y", line_no, source)
        weight = 1
        if len(tokens) == 3:
            try:
                weight = int(tokens[2])
            except ValueError:
                raise ParseError(f"weight {tokens[2]!r} is not an integer", line_no, source)
            if weight < 1:
                raise ParseError("weight must be >= 1", line_no, source)
        if x >= x_count:
            raise ParseError(f"x{x} out of range (x_count={x_count})", line_no, source)
        if y >= y_count:
            raise ParseError(f"y{y} out of range (y_count={y_count})", line_no, source)
        if (x, y) in seen:
            raise ParseError(
                f"duplicate edge x{x} y{y} (first on line {seen[(x, y)]})",
                line_no,
                source,
            )
        seen[(x, y)] = line_no
        edges.append((x, y, weight))
    if x_count < 0:
        raise ParseError("missing 'bigraph' header", 1, source)
    return BipartiteGraph(x_count, y_count, tuple(edges))


def parse_edge_list_text(text: str, source: str | None = None) -> BipartiteGraph:
    """Importer for headerless edge lists: lines "i j [weight]", bare integers.

    Side sizes are one past the largest index seen on each side.
    """
    edges: list[tuple[int, int, int]] = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        tokens = line.split()
        if len(tokens) not in (2, 3):
            raise ParseError("expected '<i> <j> [weight]'", line_no, source)
        try:
            values = [int(t) for t in tokens]
        except ValueError:
            raise ParseError("indices and weight must be integers", line_no, source)
        if values[0] < 0 or values[1] < 0:
            raise ParseError("indices must be non-negative", line_no, source)
        weight = values[2] if len(tokens) == 3 else 1
        if weight < 1:
            raise ParseError("weight must be >= 1", line_no, source)
        if (values[0], values[1]) in {(x, y) for x, y, _ in edges}:
            raise ParseError(f"duplicate edge {values[0]} {values[1]}", line_no, source)
        edges.append((values[0], values[1], weight))
    x_count = 1 + max((x for x, _, _ in edges), default=-1)
    y_count = 1 + max((y for _, y, _ in edges), default=-1)
    return BipartiteGraph(x_count, y_count, tuple(edges))


def parse_graph(path: str | Path, fmt: str = "native") -> BipartiteGraph:
    text = Path(path).read_text()
    parse = parse_graph_text if fmt == "native" else parse_edge_list_text
    return parse(text, source=str(path))


def graph_to_text(g: BipartiteGraph) -> str:
    """Canonical native-format text; parse_graph_text round-trips it."""
    lines = [f"bigraph {g.x_count} {g.y_count}"]
    for x, y, w in g.edges:
        lines.append(f"x{x} y{y}" if w == 1 else f"x{x} y{y} {w}")
    return "\n".join(lines) + "\n"


# -- report documents ----------------------------------------------------------


def solve_document(
    path: str, g: BipartiteGraph, report: SolveReport, wall_time_ms: int
) -> dict:
    witness = None
    if report.witness is not None:
        witness = {
            "x_ranks": list(report.witness.fx.ranks),
            "y_ranks": list(report.witness.fy.ranks),
        }
    return {
        "input": path,
        "n_x": g.x_count,
        "n_y": g.y_count,
        "m": g.m,
        "k": report.k,
        "decision": report.decision,
        "optimum": report.optimum if report.optimum is not None else "exceeds_budget",
        "witness": witness,
        "stats": {
            "components": report.stats.components,
            "candidates_x": report.stats.candidates_x,
            "candidates_y": report.stats.candidates_y,
            "pairs_evaluated": report.stats.pairs_evaluated,
            "pruned": report.stats.pruned,
        },
        "method": report.method,
        "wall_time_ms": wall_time_ms,
    }


def census_document(
    path: str, g: BipartiteGraph, k: int, result: CensusResult, wall_time_ms: int
) -> dict:
    return {
        "input": path,
        "n_x": g.x_count,
        "n_y": g.y_count,
        "m": g.m,
        "k": k,
        "count": result.count,
        "bound": result.bound,
        "pairs_scanned": result.pairs_scanned,
        "sibling_free": result.sibling_free,
        "wall_time_ms": wall_time_ms,
    }


def document_json(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def format_table(doc: dict) -> str:
    skip = {"witness", "stats"}
    lines = [f"{key}: {doc[key]}" for key in doc if key not in skip]
    if "stats" in doc:
        stats = doc["stats"]
        lines.append(
            "stats: " + ", ".join(f"{k}={stats[k]}" for k in sorted(stats))
        )
    if doc.get("witness"):
        lines.append(f"witness x_ranks: {doc['witness']['x_ranks']}")
        lines.append(f"witness y_ranks: {doc['witness']['y_ranks']}")
    return "\n".join(lines) + "\n"


# -- SVG rendering ---------------------------------------------------------------


def svg_string(d: Drawing) -> str:
    """Static SVG: two vertex rows ordered by rank, straight edge segments.

    Integer coordinates only, elements written in a fixed order, so equal
    drawings produce byte-identical output.
    """
    g = d.graph
    spacing, margin = 60, 40
    top, bottom = 60, 220
    slots = max(g.x_count, g.y_count, 1)
    width = 2 * margin + spacing * (slots - 1)
    height = 280

    def cx(rank: int) -> int:
        return margin + rank * spacing

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">'
    ]
    for x, y, w in g.edges:
        x1, y1 = cx(d.fx.ranks[x]), top
        x2, y2 = cx(d.fy.ranks[y]), bottom
        parts.append(
            f'<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" '
            f'stroke="#333" stroke-width="1"/>'
        )
        if w > 1:
            parts.append(
                f'<text x="{(x1 + x2) // 2 + 6}" y="{(y1 + y2) // 2}" '
                f'font-size="11" fill="#a00">{w}</text>'
            )
    for v in range(g.x_count):
        c = cx(d.fx.ranks[v])
        parts.append(f'<circle cx="{c}" cy="{top}" r="5" fill="#222"/>')
        parts.append(
            f'<text x="{c}" y="{top - 12}" font-size="11" '
            f'text-anchor="middle">x{v}</text>'
        )
    for v in range(g.y_count):
        c = cx(d.fy.ranks[v])
        parts.append(f'<circle cx="{c}" cy="{bottom}" r="5" fill="#222"/>')
        parts.append(
            f'<text x="{c}" y="{bottom + 20}" font-size="11" '
            f'text-anchor="middle">y{v}</text>'
        )
    parts.append(
        f'<text x="{margin}" y="{height - 16}" font-size="13">'
        f"crossings: {crossing_number_fast(d)}</text>"
    )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def emit_svg(d: Drawing, out: str | Path) -> None:
    Path(out).write_text(svg_string(d))


# -- commands -----------------------------------------------------------------


def _limits(args: argparse.Namespace) -> Limits:
    limits = DEFAULT_LIMITS
    if getattr(args, "limit_candidates", None):
        limits = replace(limits, max_candidates_per_side=args.limit_candidates)
    return limits


def _emit_report(args: argparse.Namespace, doc: dict, report: SolveReport | None) -> None:
    if args.json == "-":
        sys.stdout.write(document_json(doc))
    else:
        sys.stdout.write(format_table(doc))
        if args.json:
            Path(args.json).write_text(document_json(doc))
    svg = getattr(args, "svg", None)
    if svg:
        if report is not None and report.witness is not None:
            emit_svg(report.witness, svg)
        else:
            print("no witness drawing; --svg skipped", file=sys.stderr)


def _cmd_decide(args: argparse.Namespace) -> int:
    g = parse_graph(args.file, args.format)
    start = time.perf_counter()
    report = bcr_decide(g, args.k, limits=_limits(args), threads=args.threads)
    ms = int((time.perf_counter() - start) * 1000)
    _emit_report(args, solve_document(args.file, g, report, ms), report)
    return 0


def _cmd_exact(args: argparse.Namespace) -> int:
    g = parse_graph(args.file, args.format)
    start = time.perf_counter()
    report = bcr_exact(g, args.kmax, limits=_limits(args), threads=args.threads)
    ms = int((time.perf_counter() - start) * 1000)
    _emit_report(args, solve_document(args.file, g, report, ms), report)
    return 0


def _cmd_census(args: argparse.Namespace) -> int:
    g = parse_graph(args.file, args.format)
    start = time.perf_counter()
    result = census(g, args.k, limits=_limits(args))
    ms = int((time.perf_counter() - start) * 1000)
    _emit_report(args, census_document(args.file, g, args.k, result, ms), None)
    return 0


def _add_common(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("file", help="graph file")
    sub.add_argument(
        "--format",
        choices=("native", "edgelist"),
        default="native",
        help="input format: native 'bigraph' files or headerless edge lists",
    )
    sub.add_argument(
        "--json",
        metavar="OUT",
        help="write the JSON report to OUT ('-' sends it to stdout instead of the table)",
    )
    sub.add_argument(
        "--limit-candidates",
        type=int,
        metavar="N",
        help="cap on enumerated candidate layouts per side",
    )


def _add_solver_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--svg", metavar="OUT", help="render the witness drawing to OUT")
    sub.add_argument(
        "--threads", type=int, default=1, help="worker threads for the pair search"
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="bicross",
        description="Exact two-layer crossing number solver for bipartite graphs.",
    )
    commands = parser.add_subparsers(dest="command", required=True)

    decide = commands.add_parser(
        "decide", help="decide whether a drawing with at most K crossings exists"
    )
    decide.add_argument("--k", type=int, required=True, help="crossing budget")
    _add_common(decide)
    _add_solver_flags(decide)
    decide.set_defaults(func=_cmd_decide)

    exact = commands.add_parser("exact", help="compute the exact crossing number")
    exact.add_argument(
        "--kmax",
        type=int,
        default=None,
        help=f"largest budget tried (default {DEFAULT_LIMITS.k_max_default})",
    )
    _add_common(exact)
    _add_solver_flags(exact)
    exact.set_defaults(func=_cmd_exact)

    cens = commands.add_parser(
        "census", help="count all drawings with at most K crossings (exhaustive)"
    )
    cens.add_argument("--k", type=int, required=True, help="crossing budget")
    _add_common(cens)
    cens.set_defaults(func=_cmd_census)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except GraphError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ValueError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except ResourceLimitError as err:
        print(f"error: {err}", file=sys.stderr)
        return 3
    except OSError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
