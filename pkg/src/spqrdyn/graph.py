"""Loop-free multigraph with stable integer handles and connectivity helpers.

Vertex and edge handles are plain integers scoped to one graph. A handle is
never handed out twice by the same graph, so a deleted handle resolves to
nothing instead of silently aliasing a newer element.
"""

from __future__ import annotations

from collections.abc import Iterable
from typing import TextIO


class GraphError(ValueError):
    """Raised when a graph operation's precondition does not hold."""


class Multigraph:
    """Undirected multigraph without self-loops.

    Parallel edges are distinct elements with their own handles. Iteration
    order over vertices, edges and incidence lists is insertion order, which
    keeps every derived structure deterministic.
    """

    __slots__ = ("_inc", "_edges", "_next_vertex", "_next_edge")

    def __init__(self) -> None:
        self._inc: dict[int, dict[int, None]] = {}
        self._edges: dict[int, tuple[int, int]] = {}
        self._next_vertex = 0
        self._next_edge = 0

    # -- construction -------------------------------------------------------

    def add_vertex(self, vid: int | None = None) -> int:
        """Add a vertex; automatic handles are never reused, explicit ones are the caller's call."""
        if vid is None:
            vid = self._next_vertex
        elif vid in self._inc or vid < 0:
            raise GraphError(f"vertex id {vid} is taken or invalid")
        self._next_vertex = max(self._next_vertex, vid + 1)
        self._inc[vid] = {}
        return vid

    def add_edge(self, u: int, v: int, eid: int | None = None) -> int:
        if u == v:
            raise GraphError(f"self-loop at vertex {u}")
        if u not in self._inc or v not in self._inc:
            raise GraphError(f"edge endpoint not in graph: {u}, {v}")
        if eid is None:
            eid = self._next_edge
        elif eid in self._edges or eid < 0:
            raise GraphError(f"edge id {eid} is taken or invalid")
        self._next_edge = max(self._next_edge, eid + 1)
        self._edges[eid] = (u, v)
        self._inc[u][eid] = None
        self._inc[v][eid] = None
        return eid

    def delete_edge(self, e: int) -> None:
        u, v = self._edges.pop(e)
        del self._inc[u][e]
        del self._inc[v][e]

    def delete_vertex(self, v: int) -> None:
        for e in list(self._inc[v]):
            self.delete_edge(e)
        del self._inc[v]

    def copy(self) -> Multigraph:
        g = Multigraph()
        g._inc = {v: dict(inc) for v, inc in self._inc.items()}
        g._edges = dict(self._edges)
        g._next_vertex = self._next_vertex
        g._next_edge = self._next_edge
        return g

    # -- queries ------------------------------------------------------------

    @property
    def vertices(self) -> list[int]:
        return list(self._inc)

    @property
    def edges(self) -> list[int]:
        return list(self._edges)

    def num_vertices(self) -> int:
        return len(self._inc)

    def num_edges(self) -> int:
        return len(self._edges)

    def has_vertex(self, v: int) -> bool:
        return v in self._inc

    def has_edge(self, e: int) -> bool:
        return e in self._edges

    def endpoints(self, e: int) -> tuple[int, int]:
        return self._edges[e]

    def opposite(self, e: int, v: int) -> int:
        a, b = self._edges[e]
        return b if a == v else a

    def incident(self, v: int) -> list[int]:
        return list(self._inc[v])

    def degree(self, v: int) -> int:
        return len(self._inc[v])

    def neighbors(self, v: int) -> list[int]:
        """Distinct neighbors of ``v`` in incidence order."""
        seen: dict[int, None] = {}
        for e in self._inc[v]:
            seen[self.opposite(e, v)] = None
        return list(seen)

    def edges_between(self, u: int, v: int) -> list[int]:
        return [e for e in self._inc[u] if self.opposite(e, u) == v]

    def adjacency(self) -> dict[int, list[tuple[int, int]]]:
        """Map each vertex to its ``(neighbor, edge)`` list."""
        return {
            v: [(self.opposite(e, v), e) for e in inc] for v, inc in self._inc.items()
        }

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Multigraph):
            return NotImplemented
        if set(self._inc) != set(other._inc) or set(self._edges) != set(other._edges):
            return False
        return all(
            frozenset(self._edges[e]) == frozenset(other._edges[e]) for e in self._edges
        )

    def __repr__(self) -> str:
        return f"Multigraph(n={len(self._inc)}, m={len(self._edges)})"


# -- connectivity -------------------------------------------------------------


def _components(
    adj: dict[int, list[tuple[int, int]]], removed: Iterable[int] = ()
) -> list[list[int]]:
    gone = set(removed)
    comp_of: dict[int, int] = {}
    comps: list[list[int]] = []
    for s in adj:
        if s in gone or s in comp_of:
            continue
        idx = len(comps)
        comp_of[s] = idx
        stack = [s]
        comp = [s]
        while stack:
            x = stack.pop()
            for y, _ in adj[x]:
                if y not in gone and y not in comp_of:
                    comp_of[y] = idx
                    comp.append(y)
                    stack.append(y)
        comps.append(comp)
    return comps


def articulation_points(
    adj: dict[int, list[tuple[int, int]]], removed: int | None = None
) -> set[int]:
    """Cut vertices of the graph given by ``adj`` with ``removed`` deleted.

    Iterative Hopcroft-Tarjan lowpoint search; parallel edges are handled by
    skipping only the tree edge itself, not every edge to the parent.
    """
    cut: set[int] = set()
    disc: dict[int, int] = {}
    low: dict[int, int] = {}
    counter = 0
    for root in adj:
        if root == removed or root in disc:
            continue
        disc[root] = low[root] = counter
        counter += 1
        root_children = 0
        stack = [(root, -1, iter(adj[root]))]
        while stack:
            x, via, it = stack[-1]
            advanced = False
            for y, e in it:
                if y == removed or e == via:
                    continue
                if y in disc:
                    if disc[y] < low[x]:
                        low[x] = disc[y]
                    continue
                disc[y] = low[y] = counter
                counter += 1
                stack.append((y, e, iter(adj[y])))
                advanced = True
                break
            if advanced:
                continue
            stack.pop()
            if stack:
                p = stack[-1][0]
                if low[x] < low[p]:
                    low[p] = low[x]
                if p == root:
                    root_children += 1
                elif low[x] >= disc[p]:
                    cut.add(p)
        if root_children > 1:
            cut.add(root)
    return cut


def is_connected(g: Multigraph) -> bool:
    return len(_components(g.adjacency())) <= 1


def is_biconnected(g: Multigraph) -> bool:
    """Connected, no cut vertex, and not degenerate.

    A single vertex or a single edge does not count; two vertices joined by
    at least two parallel edges (a bond) does.
    """
    n = g.num_vertices()
    if n < 2:
        return False
    if n == 2:
        return g.num_edges() >= 2
    adj = g.adjacency()
    if len(_components(adj)) != 1:
        return False
    return not articulation_points(adj)


def bridges_at(g: Multigraph, u: int, v: int) -> list[list[int]]:
    """Partition the edges of ``g`` into the bridges at the pair ``{u, v}``.

    Two edges share a bridge iff a path joins them whose interior avoids ``u``
    and ``v``. Every ``u``-``v`` edge forms its own bridge. Bridges are
    returned ordered by their first edge in ``g.edges`` order.
    """
    if u == v:
        raise GraphError("bridges_at needs two distinct vertices")
    adj = g.adjacency()
    label: dict[int, int] = {}
    for comp_id, comp in enumerate(_components(adj, removed=(u, v))):
        for x in comp:
            label[x] = comp_id
    groups: dict[tuple[str, int], list[int]] = {}
    for e in g.edges:
        a, b = g.endpoints(e)
        if {a, b} == {u, v}:
            key = ("edge", e)
        else:
            inner = a if a not in (u, v) else b
            key = ("comp", label[inner])
        groups.setdefault(key, []).append(e)
    return list(groups.values())


def collapse_vertices(g: Multigraph, group: Iterable[int]) -> tuple[Multigraph, int]:
    """Return a copy of ``g`` with ``group`` merged into one new vertex.

    Edges inside the group are dropped. The new graph keeps every other
    vertex and edge handle; the merged vertex gets a fresh handle, which is
    returned alongside the graph.
    """
    members = set(group)
    if not members:
        raise GraphError("collapse_vertices needs a nonempty vertex set")
    h = Multigraph()
    h._next_vertex = g._next_vertex
    h._next_edge = g._next_edge
    for x in g.vertices:
        if x not in members:
            h.add_vertex(x)
    s = h.add_vertex()
    for e in g.edges:
        a, b = g.endpoints(e)
        a2 = s if a in members else a
        b2 = s if b in members else b
        if a2 != b2:
            h.add_edge(a2, b2, e)
    return h, s


def with_apex(g: Multigraph, group: Iterable[int]) -> tuple[Multigraph, int]:
    """Return a copy of ``g`` plus one fresh vertex adjacent to every vertex of ``group``."""
    h = g.copy()
    apex = h.add_vertex()
    for x in group:
        h.add_edge(apex, x)
    return h, apex


# -- text format --------------------------------------------------------------


def read_graph(stream: TextIO) -> Multigraph:
    """Parse ``graph n m`` / ``v id`` / ``e id u v`` text into a graph.

    File ids become the graph's handles, so a round trip reproduces them.
    """
    lines = [ln.split() for ln in stream if ln.strip() and not ln.lstrip().startswith("#")]
    if not lines or lines[0][0] != "graph" or len(lines[0]) != 3:
        raise GraphError("missing 'graph <n> <m>' header")
    n, m = int(lines[0][1]), int(lines[0][2])
    body = lines[1:]
    if len(body) != n + m:
        raise GraphError(f"expected {n} vertex and {m} edge lines, got {len(body)}")
    g = Multigraph()
    vids: list[int] = []
    for parts in body[:n]:
        if parts[0] != "v" or len(parts) != 2:
            raise GraphError(f"bad vertex line: {' '.join(parts)}")
        vids.append(int(parts[1]))
    for vid in vids:
        if g.has_vertex(vid):
            raise GraphError(f"duplicate vertex id {vid}")
        g.add_vertex(vid)
    edges: list[tuple[int, int, int]] = []
    for parts in body[n:]:
        if parts[0] != "e" or len(parts) != 4:
            raise GraphError(f"bad edge line: {' '.join(parts)}")
        edges.append((int(parts[1]), int(parts[2]), int(parts[3])))
    for eid, a, b in edges:
        if g.has_edge(eid):
            raise GraphError(f"duplicate edge id {eid}")
        g.add_edge(a, b, eid)
    return g


def write_graph(g: Multigraph, stream: TextIO) -> None:
    stream.write(f"graph {g.num_vertices()} {g.num_edges()}\n")
    for v in g.vertices:
        stream.write(f"v {v}\n")
    for e in g.edges:
        a, b = g.endpoints(e)
        stream.write(f"e {e} {a} {b}\n")


def graph_from_edges(n: int, pairs: Iterable[tuple[int, int]]) -> Multigraph:
    """Graph on vertices ``0..n-1`` with one edge per pair, ids in pair order."""
    g = Multigraph()
    for _ in range(n):
        g.add_vertex()
    for a, b in pairs:
        g.add_edge(a, b)
    return g
