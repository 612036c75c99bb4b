"""Candidate layout enumeration for budgeted crossing search.

The search space of all a! layouts of a side collapses to 2^O(a + k) once
the graph is connected and free of sibling pairs.  The mechanism:

1. Double every edge and walk a deterministic Eulerian circuit of the
   resulting multigraph.  For each side vertex x other than the circuit's
   root, record the same-side vertex visited right after the LAST visit
   of x (the successor T(x)) and the opposite-side vertex in between (the
   witness mid(x)).  The pairs {x, T(x)} always form a spanning tree on
   the side, and each graph edge serves at most two witness paths.

2. In any drawing, a crossing budget of k forces the rank displacements
   gap(x) = |rank(x) - rank(T(x))| - 1 to satisfy sum(gap(x) - 1) <= 4k:
   the two witness edges of x are crossed by every edge incident to a
   vertex strictly between x and T(x), and with no sibling pairs those
   vertices contribute at least gap(x) - 1 crossings on those two edges
   alone; each crossing is shared by at most four witness paths (two per
   edge), giving the 4k total.

3. Therefore every layout of a drawing with at most k crossings is
   reproduced by choosing a root rank, and per non-root vertex a gap and
   a direction, with the gaps summing to at most 4k + a - 1.  Enumerating
   those choices (depth-first over the spine tree, pruning on rank
   collisions and exhausted budget) streams a superset of all layouts
   that can appear in a drawing within budget.

Sides of size at most 1 have a single layout and are handled by the
solver directly; the machinery here requires a side of 2 or more.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterator

from .drawing import Layout
from .graph import BipartiteGraph, GraphError, Side, is_connected
from .limits import DEFAULT_LIMITS, Limits, ResourceLimitError


@dataclass(frozen=True)
class SpineMap:
    """Tree-forming successor map on one side, with witness vertices.

    successor[x] is the same-side vertex T(x) ranked "near" x by the
    budget argument; witness[x] is an opposite-side vertex adjacent to
    both x and T(x), so x - witness[x] - T(x) is a path of length two.
    Both maps cover every side vertex except the root.
    """

    side: Side
    root: int
    successor: dict[int, int]
    witness: dict[int, int]

    @cached_property
    def decode_order(self) -> tuple[int, ...]:
        """Vertices root-first, parents before children, ascending within ties."""
        children: dict[int, list[int]] = {}
        for child, parent in self.successor.items():
            children.setdefault(parent, []).append(child)
        order = [self.root]
        queue = [self.root]
        while queue:
            v = queue.pop(0)
            for c in sorted(children.get(v, ())):
                order.append(c)
                queue.append(c)
        if len(order) != len(self.successor) + 1:
            raise GraphError("successor map does not reach every vertex from the root")
        return tuple(order)


@dataclass(frozen=True)
class CandidateEncoding:
    """(gaps, signs, root_rank) triple that pins down a layout on a spine.

    gaps[x] (>= 0) and signs[x] (+1 or -1) are defined for every non-root
    vertex; the decoded rank of x sits signs[x] * (gaps[x] + 1) away from
    the rank of its successor.
    """

    gaps: dict[int, int]
    signs: dict[int, int]
    root_rank: int

    def gap_total(self) -> int:
        return sum(self.gaps.values())


def _euler_circuit(g: BipartiteGraph, start: int) -> list[int]:
    """Deterministic Eulerian circuit of the doubled multigraph.

    Vertices are combined ids (X vertex i -> i, Y vertex j -> x_count + j).
    Edge number e contributes two parallel slots 2e and 2e+1; every vertex
    degree is even, so a circuit exists whenever the graph is connected.
    Hierholzer, iterative, always taking the lowest (neighbor, slot) still
    unused, with the assembled circuit reversed at the end.
    """
    adj: list[list[tuple[int, int]]] = [[] for _ in range(g.n)]
    for e, (x, y, _) in enumerate(g.edges):
        u, v = x, g.x_count + y
        for slot in (2 * e, 2 * e + 1):
            adj[u].append((v, slot))
            adj[v].append((u, slot))
    for lst in adj:
        lst.sort()
    ptr = [0] * g.n
    used = [False] * (2 * g.m)
    stack = [start]
    circuit: list[int] = []
    while stack:
        v = stack[-1]
        lst = adj[v]
        while ptr[v] < len(lst) and used[lst[ptr[v]][1]]:
            ptr[v] += 1
        if ptr[v] == len(lst):
            circuit.append(stack.pop())
        else:
            w, slot = lst[ptr[v]]
            used[slot] = True
            stack.append(w)
    circuit.reverse()
    return circuit


def build_spine(g: BipartiteGraph, side: Side, root: int) -> SpineMap:
    """Successor and witness maps from the deterministic Eulerian circuit.

    For each side vertex x != root, T(x) is the same-side vertex two steps
    after the last occurrence of x on the circuit and mid(x) the vertex in
    between.  The circuit alternates sides, T(x)'s last visit comes later
    than x's, and the circuit both starts and ends at the root, so the
    successor pointers form a tree rooted there.
    """
    a = g.side_count(side)
    b = g.side_count(side.other)
    if a < 2 or b < 1:
        raise GraphError("spine needs at least 2 vertices on the side and 1 opposite")
    if not 0 <= root < a:
        raise GraphError(f"root {root} out of range for side of size {a}")
    if not is_connected(g):
        raise GraphError("spine construction requires a connected graph")

    offset = 0 if side is Side.X else g.x_count
    circuit = _euler_circuit(g, offset + root)

    def to_side(cid: int) -> int | None:
        if side is Side.X:
            return cid if cid < g.x_count else None
        return cid - g.x_count if cid >= g.x_count else None

    last: dict[int, int] = {}
    for pos, cid in enumerate(circuit):
        v = to_side(cid)
        if v is not None:
            last[v] = pos

    def to_other(cid: int) -> int:
        return cid - g.x_count if side is Side.X else cid

    successor: dict[int, int] = {}
    witness: dict[int, int] = {}
    for v, pos in last.items():
        if v == root:
            continue  # the root is the final vertex of the circuit
        t = to_side(circuit[pos + 2])
        assert t is not None  # circuit alternates sides
        successor[v] = t
        witness[v] = to_other(circuit[pos + 1])
    return SpineMap(side, root, successor, witness)


def verify_spine(g: BipartiteGraph, s: SpineMap) -> bool:
    """Independent check of the three spine invariants.

    1. every witness path exists: edges (x, mid(x)) and (T(x), mid(x)) are
       in the graph for each non-root x;
    2. no graph edge lies on more than two witness paths;
    3. the {x, T(x)} pairs form a spanning tree of the side.
    Also rejects maps whose key set is not exactly side-minus-root.
    """
    a = g.side_count(s.side)
    if not 0 <= s.root < a:
        return False
    expected = set(range(a)) - {s.root}
    if set(s.successor) != expected or set(s.witness) != expected:
        return False

    def edge_exists(side_v: int, other_v: int) -> bool:
        if s.side is Side.X:
            return g.has_edge(side_v, other_v)
        return g.has_edge(other_v, side_v)

    usage: dict[tuple[int, int], int] = {}
    for x in expected:
        t = s.successor[x]
        mid = s.witness[x]
        if not 0 <= t < a or t == x:
            return False
        if not edge_exists(x, mid) or not edge_exists(t, mid):
            return False
        for end in (x, t):
            key = (end, mid)
            usage[key] = usage.get(key, 0) + 1
    if any(count > 2 for count in usage.values()):
        return False

    # Union-find over the side: a - 1 acyclic pairs connect everything.
    parent = list(range(a))

    def find(v: int) -> int:
        while parent[v] != v:
            parent[v] = parent[parent[v]]
            v = parent[v]
        return v

    for x, t in s.successor.items():
        rx, rt = find(x), find(t)
        if rx == rt:
            return False
        parent[rx] = rt
    return True


def decode_layout(s: SpineMap, enc: CandidateEncoding) -> Layout | None:
    """Ranks from an encoding, or None when they do not form a permutation.

    rank(root) = root_rank, then outward along the spine tree:
    rank(x) = rank(T(x)) + signs[x] * (gaps[x] + 1).  A rank collision or
    an out-of-range rank is a normal failed decode, not an error.
    """
    order = s.decode_order
    a = len(order)
    ranks: dict[int, int] = {s.root: enc.root_rank}
    if not 0 <= enc.root_rank < a:
        return None
    used = {enc.root_rank}
    for x in order[1:]:
        r = ranks[s.successor[x]] + enc.signs[x] * (enc.gaps[x] + 1)
        if not 0 <= r < a or r in used:
            return None
        ranks[x] = r
        used.add(r)
    return Layout(s.side, tuple(ranks[v] for v in range(a)))


def encoding_from_layout(s: SpineMap, layout: Layout) -> CandidateEncoding:
    """The unique encoding that decodes to this layout on this spine.

    Inverse of decode_layout: gap is the rank displacement to the
    successor minus one, sign its direction.  Decoding is injective, so
    decode_layout(s, encoding_from_layout(s, l)) == l for any layout.
    """
    ranks = layout.ranks
    gaps: dict[int, int] = {}
    signs: dict[int, int] = {}
    for x, t in s.successor.items():
        delta = ranks[x] - ranks[t]
        gaps[x] = abs(delta) - 1
        signs[x] = 1 if delta > 0 else -1
    return CandidateEncoding(gaps, signs, ranks[s.root])


def gap_budget(a: int, k: int) -> int:
    """Total gap allowance for side size a and crossing budget k: 4k + a - 1."""
    return 4 * k + a - 1


def enumerate_candidates(
    g: BipartiteGraph,
    side: Side,
    k: int,
    limits: Limits = DEFAULT_LIMITS,
) -> Iterator[Layout]:
    """Stream every layout reachable within the gap budget, without duplicates.

    Requires a connected graph with no sibling pairs and side size >= 2
    (the caller merges sibling leaves first).  Contains, for every drawing
    with at most k crossings, that drawing's layout on this side.

    The walk assigns ranks depth-first in spine order.  Trying every
    in-range unused rank for a vertex is exactly trying every (gap, sign)
    pair whose decode survives, so pruning on collisions or exhausted
    budget discards only encodings whose decode would fail or overspend.
    Distinct surviving branches assign some vertex distinct ranks, hence
    duplicates are impossible by construction; the emitted-set guard is
    kept as cheap insurance and feeds the stream-size accounting.
    """
    a = g.side_count(side)
    budget = gap_budget(a, k)
    if budget > limits.max_gap_budget:
        raise ResourceLimitError(
            f"gap budget {budget} exceeds max_gap_budget={limits.max_gap_budget}"
        )
    spine = build_spine(g, side, root=0)
    order = spine.decode_order
    successor = spine.successor

    emitted: set[tuple[int, ...]] = set()
    ranks: dict[int, int] = {}
    used = [False] * a

    def walk(depth: int, remaining: int) -> Iterator[Layout]:
        if depth == a:
            key = tuple(ranks[v] for v in range(a))
            if key not in emitted:
                emitted.add(key)
                if len(emitted) > limits.max_candidates_per_side:
                    raise ResourceLimitError(
                        "candidate stream exceeds max_candidates_per_side="
                        f"{limits.max_candidates_per_side}"
                    )
                yield Layout(side, key)
            return
        x = order[depth]
        base = ranks[successor[x]]
        for gap in range(remaining + 1):
            for sign in (1, -1):
                r = base + sign * (gap + 1)
                if 0 <= r < a and not used[r]:
                    ranks[x] = r
                    used[r] = True
                    yield from walk(depth + 1, remaining - gap)
                    used[r] = False
                    del ranks[x]

    root = order[0]
    for root_rank in range(a):
        ranks[root] = root_rank
        used[root_rank] = True
        yield from walk(1, budget)
        used[root_rank] = False
        del ranks[root]


def count_bound(a: int, k: int) -> int:
    """Closed-form ceiling on the candidate stream size: 2^(4k+2a-3) * 2^(a-1) * a.

    Counting argument: at most C(4k+2a-3, 4k+a-1) <= 2^(4k+2a-3) gap
    vectors within budget (weak compositions as bit strings), times
    2^(a-1) sign vectors, times a root ranks.  Exact big-integer result;
    requires a >= 2 so the exponent is non-negative.
    """
    if a < 2:
        raise ValueError("count_bound requires a side of size >= 2")
    if k < 0:
        raise ValueError("crossing budget must be non-negative")
    return (1 << (4 * k + 2 * a - 3)) * (1 << (a - 1)) * a
