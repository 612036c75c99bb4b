"""Exact crossing-number solving.

Per connected component the pipeline is: merge sibling leaves, answer 0
for caterpillars, reject when the edge-count lower bound already exceeds
the budget, answer 0 when a side has at most one vertex, and otherwise
search the cross product of the enumerated candidate layouts for both
sides.  The candidate streams are complete for drawings within budget, so
the minimum over candidate pairs is the exact crossing number whenever
that number is within budget.

The cross-product search is vectorized: for every unordered edge pair
that can cross (distinct endpoints on both sides), a layout induces a
sign (+1/-1) for the rank order of the two endpoints on its layer, and
the pair crosses exactly when the two layers disagree.  With U and V the
per-side sign matrices and w the pairwise weight products, the count for
candidate pair (i, j) is (sum(w) - (U_i * w) . V_j) / 2, so a whole block
of counts is one matrix product.  Entries are integer-valued and stay
below 2^53, keeping float64 arithmetic exact; the code falls back to a
scalar counter if the weight mass ever gets that large.
"""

from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace
from itertools import permutations

import numpy as np

from .drawing import (
    Drawing,
    Layout,
    crossing_number_fast,
    drawing_from_ranks,
    identity_drawing,
    layout_from_sequence,
)
from .enumeration import count_bound, enumerate_candidates
from .graph import (
    BipartiteGraph,
    GraphComponent,
    GraphError,
    MergeResult,
    Side,
    crossing_lower_bound,
    find_sibling_pairs,
    is_caterpillar_forest,
    is_connected,
    sibling_merge,
    split_components,
)
from .limits import DEFAULT_LIMITS, Limits, ResourceLimitError

_PAIR_CHUNK_ROWS = 2048
_FLOAT_EXACT_LIMIT = 1 << 53  # largest weight mass safe for float64 matmul


@dataclass(frozen=True)
class SolveStats:
    components: int
    candidates_x: int
    candidates_y: int
    pairs_evaluated: int
    pruned: int


@dataclass(frozen=True)
class SolveReport:
    """Outcome of a budgeted solve.

    decision is "yes" iff the optimum is within the queried budget k;
    optimum is None when it exceeds the budget; a witness drawing is
    attached exactly on "yes" and its recount equals the optimum.
    method is "fastpath" when every component was settled by the
    caterpillar/trivial/lower-bound shortcuts, "fpt-enum" when at least
    one candidate enumeration ran, and "oracle" is reserved for reports
    assembled from the brute-force scanner.
    """

    decision: str
    optimum: int | None
    witness: Drawing | None
    stats: SolveStats
    method: str
    k: int


def _checked(report: SolveReport) -> SolveReport:
    # consistency invariants, asserted after every solve
    if report.decision == "yes":
        assert report.optimum is not None and report.optimum <= report.k
        assert report.witness is not None
        assert crossing_number_fast(report.witness) == report.optimum
    else:
        assert report.decision == "no"
        assert report.optimum is None and report.witness is None
    return report


# -- brute-force oracle ------------------------------------------------------


def _count_capped(ex: list[tuple[int, int, int]], fy, cap: int | None) -> int | None:
    """Weighted crossing count of pre-ranked edges, or None once it exceeds cap.

    ex holds (x-rank, y-vertex, weight) per edge; fy maps y-vertex to rank.
    """
    total = 0
    for i in range(len(ex)):
        rx, y, w = ex[i]
        ry = fy[y]
        for j in range(i + 1, len(ex)):
            rx2, y2, w2 = ex[j]
            if (rx - rx2) * (ry - fy[y2]) < 0:
                total += w * w2
        if cap is not None and total > cap:
            return None
    return total


def bcr_bruteforce(
    g: BipartiteGraph, limits: Limits = DEFAULT_LIMITS
) -> tuple[int, Drawing]:
    """Exact minimum by scanning every layout pair, with a witness.

    The witness is the lexicographically smallest (fx, fy) rank-array pair
    attaining the minimum; both sides must be within the configured oracle
    size limit.
    """
    a, b = g.x_count, g.y_count
    if a > limits.oracle_max_side or b > limits.oracle_max_side:
        raise ResourceLimitError(
            f"oracle limited to sides of {limits.oracle_max_side}; got {a}x{b}"
        )
    best: int | None = None
    best_fx: tuple[int, ...] = ()
    best_fy: tuple[int, ...] = ()
    for fx in permutations(range(a)):
        ex = [(fx[x], y, w) for x, y, w in g.edges]
        for fy in permutations(range(b)):
            cap = None if best is None else best - 1
            total = _count_capped(ex, fy, cap)
            if total is not None and (best is None or total < best):
                best, best_fx, best_fy = total, fx, fy
        if best == 0:
            break  # nothing can beat 0 and later witnesses lose the tie-break
    assert best is not None  # permutations() is non-empty even for empty sides
    return best, drawing_from_ranks(g, best_fx, best_fy)


# -- drawing census ----------------------------------------------------------


@dataclass(frozen=True)
class CensusResult:
    """Exhaustive count of layout pairs within a crossing budget.

    bound is the product of the per-side closed-form stream ceilings
    (1 for a side with fewer than 2 vertices, which has a single layout),
    kept alongside the true count for bound-validation experiments.
    sibling_free records whether the scanned graph itself has no sibling
    pairs; the ceiling is only meaningful as a bound in that case.
    """

    count: int
    bound: int
    pairs_scanned: int
    sibling_free: bool


def census(g: BipartiteGraph, k: int, limits: Limits = DEFAULT_LIMITS) -> CensusResult:
    """Count all drawings of g with at most k crossings by exhaustive scan."""
    if k < 0:
        raise ValueError("crossing budget must be non-negative")
    a, b = g.x_count, g.y_count
    if a > limits.oracle_max_side or b > limits.oracle_max_side:
        raise ResourceLimitError(
            f"census limited to sides of {limits.oracle_max_side}; got {a}x{b}"
        )
    pairs = 1
    for i in range(2, a + 1):
        pairs *= i
    for j in range(2, b + 1):
        pairs *= j
    if pairs > limits.max_pair_evaluations:
        raise ResourceLimitError(
            f"census would scan {pairs} pairs, over max_pair_evaluations="
            f"{limits.max_pair_evaluations}"
        )
    count = 0
    for fx in permutations(range(a)):
        ex = [(fx[x], y, w) for x, y, w in g.edges]
        for fy in permutations(range(b)):
            if _count_capped(ex, fy, k) is not None:
                count += 1
    side_bound_x = count_bound(a, k) if a >= 2 else 1
    side_bound_y = count_bound(b, k) if b >= 2 else 1
    return CensusResult(
        count=count,
        bound=side_bound_x * side_bound_y,
        pairs_scanned=pairs,
        sibling_free=not find_sibling_pairs(g),
    )


# -- witness construction ----------------------------------------------------


def _caterpillar_drawing(g: BipartiteGraph) -> Drawing:
    """Crossing-free drawing of a caterpillar forest.

    Walks each component's spine (the path of non-leaf vertices) from one
    end, appending the spine vertex and then its leaves; the two layer
    orders read off that walk never flip, so no edge pair crosses.
    """
    x_seq: list[int] = []
    y_seq: list[int] = []
    for part in split_components(g):
        h = part.graph
        if h.n == 1:
            (x_seq if h.x_count else y_seq).extend(
                part.x_vertices or part.y_vertices
            )
            continue
        adj: list[list[int]] = [[] for _ in range(h.n)]
        for x, y, _ in h.edges:
            adj[x].append(h.x_count + y)
            adj[h.x_count + y].append(x)
        for lst in adj:
            lst.sort()
        deg = [len(lst) for lst in adj]
        backbone = [v for v in range(h.n) if deg[v] >= 2]
        if not backbone:
            backbone = [0]  # a lone edge: treat its X endpoint as the spine
        spine_adj = {v: [w for w in adj[v] if deg[w] >= 2] for v in backbone}
        ends = sorted(v for v in backbone if len(spine_adj[v]) <= 1)
        walk = [ends[0]]
        prev = -1
        while True:
            step = [w for w in spine_adj[walk[-1]] if w != prev]
            if not step:
                break
            prev = walk[-1]
            walk.append(step[0])
        for v in walk:
            if v < h.x_count:
                x_seq.append(part.x_vertices[v])
                y_seq.extend(part.y_vertices[w - h.x_count] for w in adj[v] if deg[w] == 1)
            else:
                y_seq.append(part.y_vertices[v - h.x_count])
                x_seq.extend(part.x_vertices[w] for w in adj[v] if deg[w] == 1)
    return Drawing(
        g,
        layout_from_sequence(Side.X, x_seq),
        layout_from_sequence(Side.Y, y_seq),
    )


def _expand_witness(mr: MergeResult, merged: Drawing, original: BipartiteGraph) -> Drawing:
    """Lift a drawing of the merged graph back to the pre-merge graph.

    Each merged vertex is replaced by its original leaves in consecutive
    positions.  The expanded parallel leaf edges never cross each other,
    and each crosses exactly the edges the weighted edge crossed, so the
    crossing count is unchanged.
    """
    x_seq = [orig for v in merged.fx.sequence() for orig in mr.x_groups[v]]
    y_seq = [orig for v in merged.fy.sequence() for orig in mr.y_groups[v]]
    return Drawing(
        original,
        layout_from_sequence(Side.X, x_seq),
        layout_from_sequence(Side.Y, y_seq),
    )


def _compose_drawing(
    g: BipartiteGraph, parts: list[tuple[GraphComponent, Drawing]]
) -> Drawing:
    """Component drawings side by side, whole component i left of i+1.

    Edges of different components keep the same relative order on both
    layers, so composition adds no crossings.
    """
    x_seq: list[int] = []
    y_seq: list[int] = []
    for part, d in parts:
        x_seq.extend(part.x_vertices[v] for v in d.fx.sequence())
        y_seq.extend(part.y_vertices[v] for v in d.fy.sequence())
    return Drawing(
        g,
        layout_from_sequence(Side.X, x_seq),
        layout_from_sequence(Side.Y, y_seq),
    )


# -- candidate-pair search ---------------------------------------------------


def _crossable_pairs(g: BipartiteGraph):
    """Index/weight arrays for the edge pairs with four distinct endpoints."""
    x1 = []
    x2 = []
    y1 = []
    y2 = []
    wp = []
    edges = g.edges
    for i, (xi, yi, wi) in enumerate(edges):
        for xj, yj, wj in edges[i + 1 :]:
            if xi != xj and yi != yj:
                x1.append(xi)
                x2.append(xj)
                y1.append(yi)
                y2.append(yj)
                wp.append(wi * wj)
    return x1, x2, y1, y2, wp


def _pair_search(
    g: BipartiteGraph,
    x_layouts: list[tuple[int, ...]],
    y_layouts: list[tuple[int, ...]],
    exit_at: int,
    threads: int,
) -> tuple[int, int, int, int]:
    """Minimum crossing count over the candidate cross product.

    Returns (best, best_x_index, best_y_index, pairs_evaluated) where the
    index pair is the lexicographically first attaining the minimum; the
    candidate lists must be sorted.  Stops early once a count at most
    exit_at (a proven lower bound) appears: enumeration order is row-major
    over the sorted lists, so the first such hit is also the tie-break
    winner.  Evaluation proceeds in fixed chunks of X candidates; threads
    only spread chunks of one wave, keeping counts and outcome identical
    for every thread count.
    """
    x1, x2, y1, y2, wp = _crossable_pairs(g)
    total_w = sum(wp)
    if total_w >= _FLOAT_EXACT_LIMIT:
        return _pair_search_scalar(g, x_layouts, y_layouts, exit_at)

    xi1 = np.asarray(x1, dtype=np.intp)
    xi2 = np.asarray(x2, dtype=np.intp)
    yi1 = np.asarray(y1, dtype=np.intp)
    yi2 = np.asarray(y2, dtype=np.intp)
    w = np.asarray(wp, dtype=np.float64)
    xmat = np.asarray(x_layouts, dtype=np.int64).reshape(len(x_layouts), -1)
    ymat = np.asarray(y_layouts, dtype=np.int64).reshape(len(y_layouts), -1)
    vt = np.sign(ymat[:, yi1] - ymat[:, yi2]).astype(np.float64).T
    mass = float(total_w)
    n_y = len(y_layouts)

    def eval_chunk(start: int) -> tuple[int, float, int]:
        stop = min(start + _PAIR_CHUNK_ROWS, len(x_layouts))
        u = np.sign(xmat[start:stop, xi1] - xmat[start:stop, xi2]).astype(np.float64)
        counts = (mass - (u * w) @ vt) * 0.5
        flat = int(np.argmin(counts))  # first minimum in row-major = lex order
        return stop - start, float(counts.flat[flat]), start * n_y + flat

    starts = list(range(0, len(x_layouts), _PAIR_CHUNK_ROWS))
    best: float | None = None
    best_flat = 0
    evaluated = 0
    pos = 0
    pool = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        while pos < len(starts):
            wave = starts[pos : pos + max(1, threads)]
            pos += len(wave)
            if pool is not None:
                results = [f.result() for f in [pool.submit(eval_chunk, s) for s in wave]]
            else:
                results = [eval_chunk(s) for s in wave]
            for rows, cmin, cflat in results:
                evaluated += rows * n_y
                if best is None or cmin < best:
                    best, best_flat = cmin, cflat
            if best is not None and best <= exit_at:
                break
    finally:
        if pool is not None:
            pool.shutdown(wait=True)
    assert best is not None
    return int(best), best_flat // n_y, best_flat % n_y, evaluated


def _pair_search_scalar(
    g: BipartiteGraph,
    x_layouts: list[tuple[int, ...]],
    y_layouts: list[tuple[int, ...]],
    exit_at: int,
) -> tuple[int, int, int, int]:
    """Pure-Python fallback with identical semantics to the vectorized path."""
    best = None
    best_i = best_j = 0
    evaluated = 0
    for i, xr in enumerate(x_layouts):
        for j, yr in enumerate(y_layouts):
            c = crossing_number_fast(drawing_from_ranks(g, xr, yr))
            evaluated += 1
            if best is None or c < best:
                best, best_i, best_j = c, i, j
                if best <= exit_at:
                    return best, best_i, best_j, evaluated
    assert best is not None
    return best, best_i, best_j, evaluated


# -- per-component pipeline ---------------------------------------------------


@dataclass(frozen=True)
class _ComponentOutcome:
    value: int | None
    witness: Drawing | None
    candidates_x: int
    candidates_y: int
    pairs_evaluated: int
    pruned: int
    enumerated: bool


def _solve_component(
    g: BipartiteGraph, budget: int, limits: Limits, threads: int
) -> _ComponentOutcome:
    mr = sibling_merge(g)
    h = mr.graph

    if is_caterpillar_forest(h):
        witness = _expand_witness(mr, _caterpillar_drawing(h), g)
        return _ComponentOutcome(0, witness, 0, 0, 0, 0, False)

    lb = crossing_lower_bound(h)
    if lb > budget:
        return _ComponentOutcome(None, None, 0, 0, 0, 0, False)

    # unreachable after the caterpillar test (a one-vertex side is always a
    # star forest) but kept as an explicit pipeline stage
    if h.x_count <= 1 or h.y_count <= 1:
        witness = _expand_witness(mr, identity_drawing(h), g)
        return _ComponentOutcome(0, witness, 0, 0, 0, 0, False)

    x_layouts = sorted(l.ranks for l in enumerate_candidates(h, Side.X, budget, limits))
    y_layouts = sorted(l.ranks for l in enumerate_candidates(h, Side.Y, budget, limits))
    pairs_total = len(x_layouts) * len(y_layouts)
    if pairs_total > limits.max_pair_evaluations:
        raise ResourceLimitError(
            f"candidate-pair search: {pairs_total} pairs exceeds "
            f"max_pair_evaluations={limits.max_pair_evaluations}"
        )
    best, bi, bj, evaluated = _pair_search(h, x_layouts, y_layouts, lb, threads)
    pruned = pairs_total - evaluated
    if best <= budget:
        witness_h = drawing_from_ranks(h, x_layouts[bi], y_layouts[bj])
        witness = _expand_witness(mr, witness_h, g)
        return _ComponentOutcome(
            best, witness, len(x_layouts), len(y_layouts), evaluated, pruned, True
        )
    # every candidate pair costs more than the budget, so the optimum does too
    return _ComponentOutcome(
        None, None, len(x_layouts), len(y_layouts), evaluated, pruned, True
    )


def bcr_component(
    g: BipartiteGraph,
    budget: int,
    limits: Limits = DEFAULT_LIMITS,
    threads: int = 1,
) -> tuple[int | None, Drawing | None]:
    """Exact crossing number of a connected graph, capped at budget.

    Returns (value, witness) when the optimum is within budget, else
    (None, None).  The witness is a drawing of g itself, with merged
    sibling leaves expanded back out.
    """
    if budget < 0:
        raise ValueError("budget must be non-negative")
    if not is_connected(g):
        raise GraphError("bcr_component requires a connected graph")
    out = _solve_component(g, budget, limits, threads)
    if out.value is not None:
        assert out.witness is not None
        assert crossing_number_fast(out.witness) == out.value
    return out.value, out.witness


# -- top-level drivers ---------------------------------------------------------


def bcr_decide(
    g: BipartiteGraph,
    k: int,
    limits: Limits = DEFAULT_LIMITS,
    threads: int = 1,
) -> SolveReport:
    """Decide whether g has a drawing with at most k crossings.

    Components are solved in order, each against the budget left over
    from its predecessors.  Optimal drawings never interleave components
    (pushing a whole component's vertices together on both layers only
    removes crossings), so the crossing number is additive and the
    sequential allocation is exact: the answer is yes iff the summed
    component optima fit in k, and then the optimum and a composite
    witness are reported.
    """
    if k < 0:
        raise ValueError("crossing budget must be non-negative")
    parts = split_components(g)
    remaining = k
    total = 0
    solved: list[tuple[GraphComponent, Drawing]] = []
    cand_x = cand_y = pairs_eval = pruned = 0
    enumerated = False
    failed = False
    for part in parts:
        out = _solve_component(part.graph, remaining, limits, threads)
        cand_x += out.candidates_x
        cand_y += out.candidates_y
        pairs_eval += out.pairs_evaluated
        pruned += out.pruned
        enumerated = enumerated or out.enumerated
        if out.value is None:
            failed = True
            break
        total += out.value
        remaining -= out.value
        assert out.witness is not None
        solved.append((part, out.witness))
    stats = SolveStats(len(parts), cand_x, cand_y, pairs_eval, pruned)
    method = "fpt-enum" if enumerated else "fastpath"
    if failed:
        return _checked(SolveReport("no", None, None, stats, method, k))
    witness = _compose_drawing(g, solved)
    return _checked(SolveReport("yes", total, witness, stats, method, k))


def bcr_exact(
    g: BipartiteGraph,
    k_max: int | None = None,
    limits: Limits = DEFAULT_LIMITS,
    threads: int = 1,
) -> SolveReport:
    """Smallest k admitting a drawing, by deciding k = 0, 1, ... up to k_max.

    The returned report carries the successful k (so decision is "yes"
    and optimum = k), or decision "no" at k = k_max when every budget up
    to k_max fails; stats accumulate over all iterations.
    """
    if k_max is None:
        k_max = limits.k_max_default
    if k_max < 0:
        raise ValueError("k_max must be non-negative")
    cand_x = cand_y = pairs_eval = pruned = 0
    enumerated = False
    for k in range(k_max + 1):
        report = bcr_decide(g, k, limits, threads)
        cand_x += report.stats.candidates_x
        cand_y += report.stats.candidates_y
        pairs_eval += report.stats.pairs_evaluated
        pruned += report.stats.pruned
        enumerated = enumerated or report.method == "fpt-enum"
        if report.decision == "yes":
            stats = SolveStats(
                report.stats.components, cand_x, cand_y, pairs_eval, pruned
            )
            method = "fpt-enum" if enumerated else "fastpath"
            return _checked(replace(report, stats=stats, method=method))
    stats = SolveStats(
        len(split_components(g)), cand_x, cand_y, pairs_eval, pruned
    )
    method = "fpt-enum" if enumerated else "fastpath"
    return _checked(SolveReport("no", None, None, stats, method, k_max))
