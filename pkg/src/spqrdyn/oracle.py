"""Deliberately naive reference implementations used to cross-check the main path.

Nothing here shares code with the decomposition machinery beyond the
``Multigraph`` container. Size guards raise instead of truncating.
"""

from __future__ import annotations

from collections import deque
from collections.abc import Iterator
from itertools import combinations

from .graph import GraphError, Multigraph

Rotation = tuple[int, ...]


class OracleSizeError(GraphError):
    pass


def _guard(g: Multigraph, limit: int) -> None:
    if g.num_vertices() > limit:
        raise OracleSizeError(f"oracle limited to {limit} vertices, got {g.num_vertices()}")


def _connected_without(g: Multigraph, gone: set[int]) -> bool:
    rest = [v for v in g.vertices if v not in gone]
    if not rest:
        return True
    seen = {rest[0]}
    stack = [rest[0]]
    while stack:
        x = stack.pop()
        for e in g.incident(x):
            y = g.opposite(e, x)
            if y not in gone and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(rest)


def separation_pairs_bf(g: Multigraph, parallel: bool = False) -> set[frozenset[int]]:
    """All vertex pairs whose removal disconnects the remaining graph.

    With ``parallel=True`` a pair joined by two or more parallel edges also
    counts whenever it has at least three bridges (the parallel edges plus
    the rest of the graph).
    """
    pairs: set[frozenset[int]] = set()
    for u, v in combinations(g.vertices, 2):
        if not _connected_without(g, {u, v}):
            pairs.add(frozenset((u, v)))
        elif parallel and g.num_vertices() > 2 and len(g.edges_between(u, v)) >= 2:
            pairs.add(frozenset((u, v)))
    return pairs


def is_triconnected_bf(g: Multigraph) -> bool:
    """Simple, at least four vertices, connected, no cut vertex, no separation pair."""
    if g.num_vertices() < 4:
        return False
    for v in g.vertices:
        if len(g.neighbors(v)) != g.degree(v):
            return False
    if not _connected_without(g, set()):
        return False
    if any(not _connected_without(g, {v}) for v in g.vertices):
        return False
    return not separation_pairs_bf(g)


# -- planar embeddings by ear placement -----------------------------------------


def _first_cycle(g: Multigraph) -> list[tuple[int, int]]:
    """A cycle as a list of ``(vertex, edge-to-next)`` steps."""
    e0 = g.edges[0]
    a, b = g.endpoints(e0)
    prev: dict[int, tuple[int, int] | None] = {b: None}
    queue = deque([b])
    while queue:
        x = queue.popleft()
        if x == a:
            break
        for e in g.incident(x):
            if e == e0:
                continue
            y = g.opposite(e, x)
            if y not in prev:
                prev[y] = (x, e)
                queue.append(y)
    if a not in prev:
        raise GraphError("graph is not biconnected")
    # walk back from a to b, then close with e0
    steps: list[tuple[int, int]] = []
    x = a
    while prev[x] is not None:
        p, e = prev[x]  # type: ignore[misc]
        steps.append((p, e))
        x = p
    steps.reverse()
    # steps go b -> ... -> a; close a -> b
    steps.append((a, e0))
    return steps


def _ear_decomposition(g: Multigraph) -> tuple[list[tuple[int, int]], list[list[tuple[int, int]]]]:
    cycle = _first_cycle(g)
    inside = {x for x, _ in cycle}
    used = {e for _, e in cycle}
    ears: list[list[tuple[int, int]]] = []
    while len(used) < g.num_edges():
        ear = None
        for x in list(inside):
            for e in g.incident(x):
                if e in used:
                    continue
                z = g.opposite(e, x)
                if z in inside:
                    ear = [(x, e), (z, -1)]
                    break
                prev: dict[int, tuple[int, int]] = {z: (x, e)}
                queue = deque([z])
                end = None
                while queue and end is None:
                    w = queue.popleft()
                    for f in g.incident(w):
                        y = g.opposite(f, w)
                        if f in used or f == prev[w][1]:
                            continue
                        if y in inside:
                            if y != x:
                                end = (y, w, f)
                                break
                            continue
                        if y not in prev:
                            prev[y] = (w, f)
                            queue.append(y)
                if end is None:
                    raise GraphError("graph is not biconnected")
                y, w, f = end
                path = [(w, f), (y, -1)]
                while w != x:
                    p, pe = prev[w]
                    path.insert(0, (p, pe))
                    w = p
                ear = path
                break
            if ear is not None:
                break
        if ear is None:
            raise GraphError("graph is not connected")
        for x, e in ear:
            inside.add(x)
            if e != -1:
                used.add(e)
        ears.append(ear)
    return cycle, ears


def _trace_faces(g: Multigraph, rot: dict[int, list[int]]) -> list[list[tuple[int, int, int]]]:
    """Faces as lists of darts ``(tail, edge, head)`` under successor rule."""
    pos = {v: {e: i for i, e in enumerate(r)} for v, r in rot.items()}
    seen: set[tuple[int, int]] = set()
    faces = []
    for v, r in rot.items():
        for e in r:
            if (v, e) in seen:
                continue
            face = []
            x, f = v, e
            while (x, f) not in seen:
                seen.add((x, f))
                y = g.opposite(f, x)
                face.append((x, f, y))
                ry = rot[y]
                f = ry[(pos[y][f] + 1) % len(ry)]
                x = y
            faces.append(face)
    return faces


def planar_embeddings_bf(g: Multigraph, limit: int = 8) -> Iterator[dict[int, list[int]]]:
    """Yield every planar rotation system of a biconnected graph.

    Builds an open ear decomposition and tries every face for every ear.
    Each yielded dict maps a vertex to its cyclic edge order.
    """
    _guard(g, limit)
    if g.num_vertices() < 2:
        return
    cycle, ears = _ear_decomposition(g)
    rot: dict[int, list[int]] = {}
    k = len(cycle)
    for i, (x, e) in enumerate(cycle):
        rot[x] = [cycle[i - 1][1], e] if k > 1 else [e]

    def place(i: int) -> Iterator[dict[int, list[int]]]:
        if i == len(ears):
            yield {v: list(r) for v, r in rot.items()}
            return
        ear = ears[i]
        x = ear[0][0]
        y = ear[-1][0]
        first = ear[0][1]
        last = ear[-2][1]
        for face in _trace_faces(g, {v: rot[v] for v in rot}):
            at_x = at_y = None
            for j, (tail, e, head) in enumerate(face):
                if head == x:
                    at_x = e
                if head == y:
                    at_y = e
            if at_x is None or at_y is None:
                continue
            saved_x, saved_y = list(rot[x]), list(rot[y])
            rot[x].insert(rot[x].index(at_x) + 1, first)
            rot[y].insert(rot[y].index(at_y) + 1, last)
            for j in range(1, len(ear) - 1):
                w = ear[j][0]
                rot[w] = [ear[j - 1][1], ear[j][1]]
            yield from place(i + 1)
            for j in range(1, len(ear) - 1):
                del rot[ear[j][0]]
            rot[x], rot[y] = saved_x, saved_y

    yield from place(0)


def planar_bf(g: Multigraph, limit: int = 8) -> bool:
    """Planarity of a biconnected graph by exhaustive ear placement."""
    _guard(g, limit)
    if g.num_vertices() <= 2:
        return True
    for _ in planar_embeddings_bf(g, limit):
        return True
    return False


def reflection_class(order: list[int] | tuple[int, ...]) -> Rotation:
    """Lexicographically smallest rotation of ``order`` or of its reverse."""
    seq = list(order)
    if not seq:
        return ()
    best = None
    for cand in (seq, seq[::-1]):
        for i in range(len(cand)):
            r = tuple(cand[i:] + cand[:i])
            if best is None or r < best:
                best = r
    return best  # type: ignore[return-value]


def cyclic_equal(a: list[int] | tuple[int, ...], b: list[int] | tuple[int, ...]) -> bool:
    """Equality of cyclic sequences, direction included."""
    if len(a) != len(b):
        return False
    if not a:
        return True
    doubled = list(b) + list(b)
    n = len(a)
    return any(doubled[i : i + n] == list(a) for i in range(n))


def rotations_at_bf(g: Multigraph, v: int, limit: int = 8) -> set[Rotation]:
    """Reflection classes of the rotation at ``v`` over all planar embeddings."""
    return {reflection_class(rot[v]) for rot in planar_embeddings_bf(g, limit)}


# -- Menger -------------------------------------------------------------------


def menger3_bf(g: Multigraph, s: int, t: int) -> bool:
    """At least three internally vertex-disjoint ``s``-``t`` paths.

    Unit-capacity max flow on the vertex-split digraph; each parallel
    ``s``-``t`` edge is its own path.
    """
    if s == t:
        raise GraphError("menger3_bf needs two distinct vertices")
    cap: dict[tuple, int] = {}
    out: dict[tuple, list[tuple]] = {}

    def arc(a: tuple, b: tuple) -> None:
        cap[(a, b)] = cap.get((a, b), 0) + 1
        cap.setdefault((b, a), 0)
        out.setdefault(a, []).append(b)
        out.setdefault(b, []).append(a)

    def node_in(x: int) -> tuple:
        return (x, "in") if x not in (s, t) else (x, "io")

    def node_out(x: int) -> tuple:
        return (x, "out") if x not in (s, t) else (x, "io")

    for x in g.vertices:
        if x not in (s, t):
            arc((x, "in"), (x, "out"))
    for e in g.edges:
        a, b = g.endpoints(e)
        mid_ab = ("e", e, a)
        mid_ba = ("e", e, b)
        # route through per-edge midpoints so parallel edges keep separate capacity
        arc(node_out(a), mid_ab)
        arc(mid_ab, node_in(b))
        arc(node_out(b), mid_ba)
        arc(mid_ba, node_in(a))
    src, dst = (s, "io"), (t, "io")
    flow = 0
    while flow < 3:
        prev: dict[tuple, tuple] = {src: src}
        queue = deque([src])
        while queue and dst not in prev:
            a = queue.popleft()
            for b in out.get(a, ()):
                if b not in prev and cap[(a, b)] > 0:
                    prev[b] = a
                    queue.append(b)
        if dst not in prev:
            break
        b = dst
        while b != src:
            a = prev[b]
            cap[(a, b)] -= 1
            cap[(b, a)] += 1
            b = a
        flow += 1
    return flow >= 3


# -- expansion semantics ------------------------------------------------------------


def replace_bf(
    g_alpha: Multigraph, g_beta: Multigraph, u: int, phi: dict[int, int]
) -> Multigraph:
    """Expand ``u`` of ``g_alpha`` into ``g_beta``.

    ``phi`` maps each marked vertex of ``g_beta`` to a distinct neighbor of
    ``u``. The result keeps every handle of ``g_alpha`` other than ``u`` and
    its edges; unmarked vertices and then edges of ``g_beta`` receive fresh
    handles in ``g_beta`` order.
    """
    nbrs = set(g_alpha.neighbors(u))
    if set(phi.values()) != nbrs or len(phi) != len(nbrs):
        raise GraphError("marked vertices do not match the neighbors of u bijectively")
    out = g_alpha.copy()
    out.delete_vertex(u)
    where: dict[int, int] = {}
    for x in g_beta.vertices:
        where[x] = phi[x] if x in phi else out.add_vertex()
    for e in g_beta.edges:
        a, b = g_beta.endpoints(e)
        out.add_edge(where[a], where[b])
    return out


def merge_bf(
    g1: Multigraph, g2: Multigraph, u1: int, u2: int, phi: dict[int, int]
) -> Multigraph:
    """Glue ``g1 - u1`` and ``g2 - u2`` along the edge bijection ``phi``.

    ``phi`` maps edges at ``u1`` to edges at ``u2``; each matched pair turns
    into one edge between the two far endpoints. ``g1`` handles survive;
    ``g2`` vertices, ``g2`` edges and then glued edges get fresh handles in
    that order (glued edges follow ``u1``'s incidence order).
    """
    if set(phi) != set(g1.incident(u1)) or set(phi.values()) != set(g2.incident(u2)):
        raise GraphError("phi must biject the edges at u1 onto the edges at u2")
    out = g1.copy()
    far1 = {e: g1.opposite(e, u1) for e in g1.incident(u1)}
    out.delete_vertex(u1)
    where: dict[int, int] = {}
    for x in g2.vertices:
        if x != u2:
            where[x] = out.add_vertex()
    for e in g2.edges:
        a, b = g2.endpoints(e)
        if u2 not in (a, b):
            out.add_edge(where[a], where[b])
    for e1 in g1.incident(u1):
        out.add_edge(far1[e1], where[g2.opposite(phi[e1], u2)])
    return out
