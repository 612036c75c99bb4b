"""Two-layer drawings and exact weighted crossing counting.

A drawing is a pair of layouts: rank arrays mapping each vertex of a side
to a position 0..side_size-1.  Two edges (x, y) and (x', y') cross exactly
when one order flips between the layers, i.e. x is left of x' while y is
right of y'.  The weighted count charges each crossing pair the product of
its edge weights.  Counts are plain Python integers, so the arithmetic is
exact at any magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graph import BipartiteGraph, Side


@dataclass(frozen=True)
class Layout:
    """A rank array for one side: ranks[v] is the position of vertex v."""

    side: Side
    ranks: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.ranks)

    def sequence(self) -> tuple[int, ...]:
        """Vertices in left-to-right order (the inverse permutation)."""
        seq = [0] * len(self.ranks)
        for v, r in enumerate(self.ranks):
            seq[r] = v
        return tuple(seq)


def validate_layout(layout: Layout) -> bool:
    """True iff the rank array is a permutation of 0..len-1."""
    n = len(layout.ranks)
    return sorted(layout.ranks) == list(range(n))


def layout_from_sequence(side: Side, seq: tuple[int, ...] | list[int]) -> Layout:
    """Layout placing seq[0] leftmost, seq[1] next, and so on."""
    ranks = [0] * len(seq)
    for pos, v in enumerate(seq):
        ranks[v] = pos
    return Layout(side, tuple(ranks))


@dataclass(frozen=True)
class Drawing:
    """A graph with one layout per side.

    Raises ValueError unless fx/fy carry the right sides and their rank
    arrays are permutations matching the graph's side sizes.
    """

    graph: BipartiteGraph
    fx: Layout
    fy: Layout

    def __post_init__(self) -> None:
        if self.fx.side is not Side.X or self.fy.side is not Side.Y:
            raise ValueError("fx must be an X layout and fy a Y layout")
        if len(self.fx) != self.graph.x_count or len(self.fy) != self.graph.y_count:
            raise ValueError("layout lengths do not match the graph's side sizes")
        if not validate_layout(self.fx) or not validate_layout(self.fy):
            raise ValueError("layout rank arrays must be permutations")


def identity_drawing(g: BipartiteGraph) -> Drawing:
    """Both sides in index order."""
    return Drawing(
        g,
        Layout(Side.X, tuple(range(g.x_count))),
        Layout(Side.Y, tuple(range(g.y_count))),
    )


def drawing_from_ranks(
    g: BipartiteGraph,
    x_ranks: tuple[int, ...] | list[int],
    y_ranks: tuple[int, ...] | list[int],
) -> Drawing:
    return Drawing(g, Layout(Side.X, tuple(x_ranks)), Layout(Side.Y, tuple(y_ranks)))


def crossing_number_naive(d: Drawing) -> int:
    """Weighted crossing count by scanning all O(m^2) edge pairs.

    Reference implementation: the pair {e, e'} crosses iff the rank
    differences on the two layers have opposite signs, and then costs
    weight(e) * weight(e').  Each unordered pair is visited once; this
    equals the ordered-pair convention (count pairs with the x-ranks
    ascending) because exactly one of the two orderings of a crossing
    pair has its x-ranks ascending.  Edges sharing an endpoint produce a
    zero rank difference on that layer and are therefore never counted.
    """
    edges = d.graph.edges
    fx = d.fx.ranks
    fy = d.fy.ranks
    total = 0
    for i, (xi, yi, wi) in enumerate(edges):
        for xj, yj, wj in edges[i + 1 :]:
            if (fx[xi] - fx[xj]) * (fy[yi] - fy[yj]) < 0:
                total += wi * wj
    return total


class _Fenwick:
    """Prefix sums over integer weights (1-based internal indexing)."""

    def __init__(self, size: int) -> None:
        self.size = size
        self.tree = [0] * (size + 1)

    def add(self, i: int, w: int) -> None:
        i += 1
        while i <= self.size:
            self.tree[i] += w
            i += i & (-i)

    def prefix(self, i: int) -> int:
        """Sum of weights at indices 0..i inclusive."""
        i += 1
        total = 0
        while i > 0:
            total += self.tree[i]
            i -= i & (-i)
        return total


def crossing_number_fast(d: Drawing) -> int:
    """Weighted crossing count in O(m log m) via inversion counting.

    Sort edges by (x-rank, y-rank) and sweep left to right, keeping the
    accumulated weight per y-rank in a binary indexed tree.  An earlier
    edge crosses the current one iff its y-rank is strictly larger, so
    each edge contributes its weight times the weight already inserted
    above its y-rank.  Edges are inserted a whole x-rank group at a time
    because edges sharing an X vertex never cross each other.
    """
    g = d.graph
    if g.m <= 1:
        return 0
    fx = d.fx.ranks
    fy = d.fy.ranks
    order = sorted((fx[x], fy[y], w) for x, y, w in g.edges)
    tree = _Fenwick(g.y_count)
    total = 0
    inserted = 0
    i = 0
    while i < len(order):
        j = i
        while j < len(order) and order[j][0] == order[i][0]:
            j += 1
        for _, ry, w in order[i:j]:
            total += w * (inserted - tree.prefix(ry))
        for _, ry, w in order[i:j]:
            tree.add(ry, w)
            inserted += w
        i = j
    return total
