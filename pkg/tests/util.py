"""Shared test helpers: an independent crossing oracle and graph generators.

Everything here is written from the definitions only (no solver imports),
so library results can be checked against genuinely independent values.
Graphs are passed around as (x_count, y_count, edges) triples with
(x, y, weight) edges.
"""

from __future__ import annotations

from collections import deque
from itertools import permutations

Triple = tuple[int, int, list[tuple[int, int, int]]]


def reference_crossings(edges, fx, fy) -> int:
    """Definition-level weighted crossing count of a drawing.

    Edges may be (x, y) or (x, y, weight) tuples; weight defaults to 1.
    """
    es = [(e[0], e[1], e[2] if len(e) == 3 else 1) for e in edges]
    total = 0
    for i in range(len(es)):
        x1, y1, w1 = es[i]
        for j in range(i + 1, len(es)):
            x2, y2, w2 = es[j]
            if (fx[x1] - fx[x2]) * (fy[y1] - fy[y2]) < 0:
                total += w1 * w2
    return total


def all_drawings(a: int, b: int):
    for fx in permutations(range(a)):
        for fy in permutations(range(b)):
            yield fx, fy


def reference_bcr(a: int, b: int, edges) -> int:
    """Exact minimum by full scan; fine for sides up to ~5-6."""
    return min(reference_crossings(edges, fx, fy) for fx, fy in all_drawings(a, b))


def is_connected_triple(a: int, b: int, edges) -> bool:
    n = a + b
    if n <= 1:
        return True
    adj = [[] for _ in range(n)]
    for x, y, _ in edges:
        adj[x].append(a + y)
        adj[a + y].append(x)
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    reached = 1
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if not seen[w]:
                seen[w] = True
                reached += 1
                queue.append(w)
    return reached == n


def has_sibling_pair(a: int, b: int, edges) -> bool:
    xdeg = [0] * a
    ydeg = [0] * b
    for x, y, _ in edges:
        xdeg[x] += 1
        ydeg[y] += 1
    for side_deg, other_deg, pick in (
        (ydeg, xdeg, lambda e: (e[1], e[0])),
        (xdeg, ydeg, lambda e: (e[0], e[1])),
    ):
        leaves_per_parent: dict[int, int] = {}
        for e in edges:
            parent, child = pick(e)
            if other_deg[child] == 1:
                leaves_per_parent[parent] = leaves_per_parent.get(parent, 0) + 1
                if leaves_per_parent[parent] >= 2:
                    return True
    return False


def exhaustive_connected_graphs(max_a: int = 3, max_b: int = 3):
    """All labeled connected bipartite graphs over each side split up to the cap."""
    for a in range(1, max_a + 1):
        for b in range(1, max_b + 1):
            slots = [(x, y) for x in range(a) for y in range(b)]
            for mask in range(1 << len(slots)):
                edges = [
                    (x, y, 1) for bit, (x, y) in enumerate(slots) if mask >> bit & 1
                ]
                if is_connected_triple(a, b, edges):
                    yield a, b, edges


def random_connected_graph(
    rng,
    max_n: int = 9,
    extra_edge_prob: float = 0.3,
    leaf_weights: bool = False,
    min_n: int = 2,
    max_side: int = 8,
) -> Triple:
    """Random spanning tree plus random extra edges; always connected.

    With leaf_weights, edges touching a degree-1 vertex get a random
    weight in 1..3 (everything else stays weight 1), which keeps the
    triple a valid leaf-edge-weighted graph.
    """
    n = rng.randint(min_n, max_n)
    a = rng.randint(max(1, n - max_side), min(max_side, n - 1))
    b = n - a
    first_x = rng.randrange(a)
    first_y = rng.randrange(b)
    present: set[tuple[int, int]] = {(first_x, first_y)}
    placed_x = [first_x]
    placed_y = [first_y]
    rest = [("x", x) for x in range(a) if x != first_x] + [
        ("y", y) for y in range(b) if y != first_y
    ]
    rng.shuffle(rest)
    for side, v in rest:
        if side == "x":
            present.add((v, rng.choice(placed_y)))
            placed_x.append(v)
        else:
            present.add((rng.choice(placed_x), v))
            placed_y.append(v)
    for x in range(a):
        for y in range(b):
            if (x, y) not in present and rng.random() < extra_edge_prob:
                present.add((x, y))
    edges = sorted(present)
    xdeg = [0] * a
    ydeg = [0] * b
    for x, y in edges:
        xdeg[x] += 1
        ydeg[y] += 1
    triples = []
    for x, y in edges:
        w = 1
        if leaf_weights and (xdeg[x] == 1 or ydeg[y] == 1):
            w = rng.randint(1, 3)
        triples.append((x, y, w))
    return a, b, triples


def random_sibling_free_graph(rng, max_n: int = 8) -> Triple:
    """Rejection-sample a connected graph with no sibling pairs."""
    for _ in range(10_000):
        a, b, edges = random_connected_graph(
            rng, max_n=max_n, extra_edge_prob=0.45, min_n=3
        )
        if a >= 2 and b >= 2 and not has_sibling_pair(a, b, edges):
            return a, b, edges
    raise AssertionError("generator failed to produce a sibling-free graph")


def inject_sibling_leaves(rng, triple: Triple, max_n: int = 9) -> Triple:
    """Add leaves sharing a parent so the result has at least one sibling pair."""
    a, b, edges = triple
    edges = list(edges)
    budget = max_n - (a + b)
    assert budget >= 2, "no room to inject a sibling pair"
    # two fresh leaves on a common random parent guarantee a pair
    if rng.random() < 0.5 and a >= 1:
        parent = rng.randrange(a)
        for _ in range(2):
            edges.append((parent, b, 1))
            b += 1
    else:
        parent = rng.randrange(b)
        for _ in range(2):
            edges.append((a, parent, 1))
            a += 1
    budget -= 2
    while budget > 0 and rng.random() < 0.4:
        if rng.random() < 0.5:
            edges.append((rng.randrange(a), b, 1))
            b += 1
        else:
            edges.append((a, rng.randrange(b), 1))
            a += 1
        budget -= 1
    return a, b, sorted(edges)
