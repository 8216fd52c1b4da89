"""Seeded random graphs for tests, fuzzing and benchmarks."""

from __future__ import annotations

import random

from .graph import Multigraph, graph_from_edges


def inserted_graph(
    rng: random.Random, k: int, unmarked: int, extra: int, parallel: float = 0.0
) -> tuple[Multigraph, list[int]]:
    """Random graph to expand a degree-``k`` vertex into.

    Marked vertices are ``0..k-1``, unmarked ones follow. With unmarked
    vertices, a biconnected graph on them plus one stand-in for the marked
    set is grown by ears, and the stand-in's edges are then dealt out to the
    marked vertices. Without them, the marked vertices form a cycle. Either
    way the result is a valid expansion for any host. ``extra`` chords
    follow; with probability ``parallel`` a chord may duplicate an edge.
    """
    if k < 2:
        raise ValueError("need at least two marked vertices")
    marked = list(range(k))
    n = k + unmarked
    edges: list[tuple[int, int]] = []
    if unmarked == 0:
        order = marked[:]
        rng.shuffle(order)
        edges.extend(zip(order, order[1:]))
        if k > 2:
            edges.append((order[-1], order[0]))
    else:
        hub = -1
        pool = list(range(k, n))
        rng.shuffle(pool)
        placed = [hub]

        def ear(a: int, b: int, inner: list[int]) -> None:
            seq = [a, *inner, b]
            edges.extend(zip(seq, seq[1:]))
            placed.extend(inner)

        first = rng.randint(1, min(3, len(pool)))
        ear(hub, hub, pool[:first])
        del pool[:first]
        while pool:
            a, b = rng.sample(placed, 2)
            cut = rng.randint(1, min(3, len(pool)))
            ear(a, b, pool[:cut])
            del pool[:cut]
        inner_vs = [x for x in placed if x != hub]
        while sum(hub in e for e in edges) < k:
            edges.append((hub, rng.choice(inner_vs)))
        spokes = [i for i, e in enumerate(edges) if hub in e]
        rng.shuffle(spokes)
        owner = marked[:] + [rng.choice(marked) for _ in range(len(spokes) - k)]
        for i, m in zip(spokes, owner):
            a, b = edges[i]
            edges[i] = (m, b) if a == hub else (a, m)
    have = {frozenset(e) for e in edges}
    for _ in range(extra):
        a, b = rng.sample(range(n), 2)
        if frozenset((a, b)) in have and rng.random() >= parallel:
            continue
        have.add(frozenset((a, b)))
        edges.append((a, b))
    return graph_from_edges(n, edges), marked


def random_phi(rng: random.Random, marked: list[int], targets: list[int]) -> dict[int, int]:
    tg = targets[:]
    rng.shuffle(tg)
    return dict(zip(marked, tg))


def seed_graph(rng: random.Random) -> Multigraph:
    """A triangle, or a triangle with one doubled edge."""
    pairs = [(0, 1), (1, 2), (0, 2)]
    if rng.random() < 0.5:
        pairs.append(rng.choice(pairs))
    return graph_from_edges(3, pairs)


def expansion_step(
    rng: random.Random, g: Multigraph, room: int, parallel: float = 0.1
) -> tuple[int, Multigraph, dict[int, int]]:
    """Pick a vertex and a random graph to expand it into, growing by at most ``room`` vertices."""
    choices = [v for v in g.vertices if len(g.neighbors(v)) >= 2]
    u = rng.choice(choices)
    nbrs = g.neighbors(u)
    low = 1 if g.num_vertices() <= 3 else 0
    unmarked = rng.randint(low, max(low, min(3, room + 1)))
    g_nu, marked = inserted_graph(rng, len(nbrs), unmarked, rng.randint(0, 2), parallel)
    return u, g_nu, random_phi(rng, marked, nbrs)


def host_inserted_graph(rng: random.Random, k: int, unmarked: int, deg: int = 8) -> tuple[Multigraph, list[int]]:
    """Dense expansion graph: a ring of unmarked vertices with chords up to about ``deg``.

    Each marked vertex gets exactly one edge, so expanding a degree-``deg``
    vertex keeps the degree profile of the host roughly constant.
    """
    ring = list(range(k, k + unmarked))
    edges = list(zip(ring, ring[1:] + ring[:1]))
    have = {frozenset(e) for e in edges}
    target = (deg * unmarked - k) // 2
    tries = 0
    while len(edges) < target and tries < 20 * target:
        tries += 1
        a, b = rng.sample(ring, 2)
        if frozenset((a, b)) not in have:
            have.add(frozenset((a, b)))
            edges.append((a, b))
    hooks = rng.sample(ring, min(k, unmarked)) if unmarked >= k else [rng.choice(ring) for _ in range(k)]
    if len(set(hooks)) < 2:
        hooks[0], hooks[1] = ring[0], ring[1]
    edges.extend((m, hooks[m]) for m in range(k))
    return graph_from_edges(k + unmarked, edges), list(range(k))


def complete_graph(n: int) -> Multigraph:
    return graph_from_edges(n, [(i, j) for i in range(n) for j in range(i + 1, n)])


def wheel(k: int) -> Multigraph:
    """Hub ``0`` plus a rim cycle ``1..k``."""
    rim = list(range(1, k + 1))
    return graph_from_edges(k + 1, [(0, r) for r in rim] + list(zip(rim, rim[1:] + rim[:1])))


def cycle(n: int) -> Multigraph:
    return graph_from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def k33() -> Multigraph:
    return graph_from_edges(6, [(i, j) for i in range(3) for j in range(3, 6)])


def prism() -> Multigraph:
    return graph_from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)])
