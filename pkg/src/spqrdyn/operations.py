"""Structure-preserving operations on extended skeleton decompositions.

Every operation here mutates the decomposition in place. When two skeletons
are merged, the smaller one is poured into the larger one, so the cost of a
merge is bounded by the smaller side.
"""

from __future__ import annotations

from collections.abc import Iterable

from .decomposition import (
    OCCUPIED,
    REAL,
    VIRTUAL,
    DecompositionError,
    ExtendedSkeletonDecomposition,
)
from .graph import (
    Multigraph,
    articulation_points,
    bridges_at,
    collapse_vertices,
    is_connected,
)


def _side(S: ExtendedSkeletonDecomposition, u: int, v: int, seeds: Iterable[int]) -> tuple[list[int], list[int]]:
    """Edges and inner vertices reachable from ``seeds`` without passing ``u`` or ``v``."""
    edges: dict[int, None] = {}
    inner: dict[int, None] = {}
    stack: list[int] = []
    for e in seeds:
        if e in edges:
            continue
        edges[e] = None
        r = S.E[e]
        for w in (r.a, r.b):
            if w not in (u, v) and w not in inner:
                inner[w] = None
                stack.append(w)
    while stack:
        w = stack.pop()
        for e in S.V[w].inc:
            if e in edges:
                continue
            edges[e] = None
            x = S.E[e].other(w)
            if x not in (u, v) and x not in inner:
                inner[x] = None
                stack.append(x)
    return list(edges), list(inner)


def split_separation_pair(
    S: ExtendedSkeletonDecomposition,
    mu: int,
    pair: tuple[int, int],
    parts: Iterable[int],
    check: bool = True,
) -> tuple[int, int]:
    """Split skeleton ``mu`` at the vertex pair and return ``(alpha, beta)``.

    ``parts`` names the bridges that move to the new skeleton ``beta`` by
    any of their edges (typically their edges at the pair). ``alpha`` keeps
    the handle ``mu``; the pair vertices are copied into ``beta``.
    """
    u, v = pair
    if u == v:
        raise DecompositionError("separation pair needs two distinct vertices")
    for w in (u, v):
        if w not in S.V or S.V[w].skel != mu:
            raise DecompositionError(f"vertex {w} is not in skeleton {mu}")
        if S.V[w].virtual:
            raise DecompositionError(f"vertex {w} of the separation pair is virtual")
    seeds = list(parts)
    for e in seeds:
        if e not in S.E or S.E[e].skel != mu:
            raise DecompositionError(f"edge {e} is not in skeleton {mu}")
    moved, inner = _side(S, u, v, seeds)
    if check:
        g = S.skeleton_graph(mu)
        inside = set(moved)
        for bridge in bridges_at(g, u, v):
            hit = inside.intersection(bridge)
            if hit and len(hit) != len(bridge):
                raise DecompositionError("bipartition splits a bridge")
        if not moved or len(moved) == len(S.skeletons[mu].edges):
            raise DecompositionError("bipartition of the bridges is trivial")
    beta = S.new_skeleton()
    u2 = S.new_vertex(beta, orig=S.V[u].orig)
    v2 = S.new_vertex(beta, orig=S.V[v].orig)
    for w in inner:
        S.move_vertex(w, beta)
    for e in moved:
        S.move_edge(e, beta)
        r = S.E[e]
        if u in (r.a, r.b):
            S.reattach(e, u, u2)
        if v in (r.a, r.b):
            S.reattach(e, v, v2)
    ea = S.new_edge(mu, u, v, VIRTUAL)
    eb = S.new_edge(beta, u2, v2, VIRTUAL, ea)
    S.E[ea].ref = eb
    S.bump(mu, beta)
    return mu, beta


def join_separation_pair(S: ExtendedSkeletonDecomposition, e: int) -> int:
    """Merge the skeletons of virtual edge ``e`` and its twin; return the survivor."""
    if e not in S.E or S.E[e].kind != VIRTUAL:
        raise DecompositionError(f"edge {e} is not virtual")
    t = S.E[e].ref
    assert t is not None
    ra, rb = S.E[e], S.E[t]
    if S.skeletons[ra.skel].size() < S.skeletons[rb.skel].size():
        ra, rb = rb, ra
    keep, gone = ra.skel, rb.skel
    match = {S.V[ra.a].orig: ra.a, S.V[ra.b].orig: ra.b}
    ends = {rb.a: match[S.V[rb.a].orig], rb.b: match[S.V[rb.b].orig]}
    S.drop_edge(ra.id)
    S.drop_edge(rb.id)
    for w in list(S.skeletons[gone].vertices):
        if w not in ends:
            S.move_vertex(w, keep)
    for f in list(S.skeletons[gone].edges):
        S.move_edge(f, keep)
        r = S.E[f]
        for old in (r.a, r.b):
            if old in ends:
                S.reattach(f, old, ends[old])
    for w in ends:
        S.drop_vertex(w)
    S.drop_skeleton(gone)
    S.bump(keep)
    return keep


def isolate_vertex(S: ExtendedSkeletonDecomposition, v: int) -> tuple[int, int, int]:
    """Move ``v`` and its edges into a new star skeleton.

    Returns ``(v_alpha, v_beta, beta)``: ``v_alpha`` is the new virtual
    center left behind in ``v``'s old skeleton, ``v_beta`` its twin in the
    new skeleton ``beta`` that now holds ``v``.
    """
    if v not in S.V:
        raise DecompositionError(f"unknown skeleton vertex {v}")
    x = S.V[v]
    if x.virtual:
        raise DecompositionError(f"vertex {v} is virtual")
    if any(S.E[e].kind == OCCUPIED for e in x.inc):
        raise DecompositionError(f"vertex {v} has an occupied edge")
    mu = x.skel
    if len(S.skeletons[mu].vertices) < 3:
        raise DecompositionError("cannot isolate a pole of a two-vertex skeleton")
    beta = S.new_skeleton()
    va = S.new_vertex(mu, twin=-1)
    vb = S.new_vertex(beta, twin=va)
    S.V[va].twin = vb
    S.move_vertex(v, beta)
    for nb in list(x.adj):
        nb2 = S.new_vertex(beta, orig=S.V[nb].orig)
        for e in list(x.adj[nb]):
            S.move_edge(e, beta)
            S.reattach(e, nb, nb2)
        S.new_edge(mu, va, nb, OCCUPIED)
        S.new_edge(beta, vb, nb2, OCCUPIED)
    S.bump(mu, beta)
    return va, vb, beta


def integrate_plan(S: ExtendedSkeletonDecomposition, va: int, vb: int) -> tuple[int, int, dict[int, int]]:
    """Which center is absorbed by :func:`integrate` and how neighbors pair up.

    Returns ``(absorbed_center, kept_center, gamma)`` where ``gamma`` maps
    each neighbor of the absorbed center to its partner in the kept skeleton.
    """
    if va not in S.V or S.V[va].twin != vb or vb not in S.V:
        raise DecompositionError(f"vertices {va} and {vb} are not twinned")
    sa, sb = S.V[va].skel, S.V[vb].skel
    if S.skeletons[sa].size() < S.skeletons[sb].size():
        va, vb = vb, va
    by_orig = {S.V[y].orig: y for y in S.V[va].adj}
    gamma = {x: by_orig[S.V[x].orig] for x in S.V[vb].adj}
    return vb, va, gamma


def integrate(S: ExtendedSkeletonDecomposition, va: int, vb: int) -> int:
    """Glue the skeletons of twinned virtual vertices; return the survivor."""
    gone_c, keep_c, gamma = integrate_plan(S, va, vb)
    keep, gone = S.V[keep_c].skel, S.V[gone_c].skel
    for c in (keep_c, gone_c):
        for e in list(S.V[c].inc):
            S.drop_edge(e)
        S.drop_vertex(c)
    for w in list(S.skeletons[gone].vertices):
        if w not in gamma:
            S.move_vertex(w, keep)
    for f in list(S.skeletons[gone].edges):
        S.move_edge(f, keep)
        r = S.E[f]
        for old in (r.a, r.b):
            if old in gamma:
                S.reattach(f, old, gamma[old])
    for w in gamma:
        S.drop_vertex(w)
    S.drop_skeleton(gone)
    S.bump(keep)
    return keep


def insertable(g_nu: Multigraph, marked: Iterable[int]) -> bool:
    """Whether expanding into ``g_nu`` keeps every biconnected host biconnected.

    That holds iff ``g_nu`` is connected, no marked vertex is a cut vertex
    of ``g_nu``, and no unmarked vertex is a cut vertex of ``g_nu`` with all
    marked vertices collapsed into one.
    """
    group = set(marked)
    if len(group) < 2 or not is_connected(g_nu):
        return False
    if group & articulation_points(g_nu.adjacency()):
        return False
    squeezed, s = collapse_vertices(g_nu, group)
    return not (articulation_points(squeezed.adjacency()) - {s})


def check_insert(
    S: ExtendedSkeletonDecomposition, u: int, g_nu: Multigraph, phi: dict[int, int]
) -> int:
    """Validate an insert request; return the single allocation vertex of ``u``."""
    if u not in S.alloc or not S.alloc[u]:
        raise DecompositionError(f"unknown represented vertex {u}")
    if len(S.alloc[u]) != 1:
        raise DecompositionError(f"vertex {u} has {len(S.alloc[u])} allocation vertices, expected 1")
    v = next(iter(S.alloc[u]))
    check_expansion(u, {S.V[y].orig for y in S.V[v].adj}, g_nu, phi)  # type: ignore[arg-type]
    return v


def check_expansion(u: int, nbrs: set[int], g_nu: Multigraph, phi: dict[int, int]) -> None:
    """Reject ``phi`` unless it is a bijection onto ``nbrs`` and ``g_nu`` is insertable."""
    if len(phi) != len(nbrs) or set(phi.values()) != nbrs:
        raise DecompositionError(
            f"arity mismatch: marked vertices must map bijectively onto the {len(nbrs)} neighbors of {u}"
        )
    for m in phi:
        if not g_nu.has_vertex(m):
            raise DecompositionError(f"marked vertex {m} is not in the inserted graph")
    if not insertable(g_nu, phi):
        raise DecompositionError(
            "inserted graph would leave a cut vertex: it must be connected, no marked vertex may"
            " disconnect it, and no unmarked vertex may disconnect it once the marked ones are collapsed"
        )


def insert_graph(
    S: ExtendedSkeletonDecomposition, u: int, g_nu: Multigraph, phi: dict[int, int]
) -> tuple[int, int]:
    """Expand represented vertex ``u`` into ``g_nu`` as a new skeleton.

    ``phi`` maps marked vertices of ``g_nu`` to the represented neighbors of
    ``u``. The allocation vertex of ``u`` becomes virtual; returns it
    together with its new twin.
    """
    v = check_insert(S, u, g_nu, phi)
    rep = S.represented
    x = S.V[v]
    # turn v into a virtual vertex whose star has one occupied edge per neighbor
    for nb, bucket in list(x.adj.items()):
        edges = list(bucket)
        for e in edges:
            rep.delete_edge(S.E[e].ref)  # type: ignore[arg-type]
        S.set_kind(edges[0], OCCUPIED, None)
        for e in edges[1:]:
            S.drop_edge(e)
    rep.delete_vertex(u)
    del S.alloc[u][v]
    del S.alloc[u]
    x.orig = None
    S.touched += 1
    nu = S.new_skeleton()
    where: dict[int, int] = {}
    for w in g_nu.vertices:
        orig = phi[w] if w in phi else rep.add_vertex()
        where[w] = S.new_vertex(nu, orig=orig)
    for e in g_nu.edges:
        a, b = g_nu.endpoints(e)
        ref = rep.add_edge(S.V[where[a]].orig, S.V[where[b]].orig)  # type: ignore[arg-type]
        S.new_edge(nu, where[a], where[b], REAL, ref)
    vn = S.new_vertex(nu, twin=v)
    x.twin = vn
    for m in phi:
        S.new_edge(nu, vn, where[m], OCCUPIED)
    S.bump(x.skel, nu)
    return v, vn


def exhaustive_join(S: ExtendedSkeletonDecomposition) -> int:
    """Join every virtual edge; returns the single remaining skeleton."""
    if S.virtual_vertices():
        raise DecompositionError("exhaustive_join needs a decomposition without virtual vertices")
    while True:
        ve = next((e for e, r in S.E.items() if r.kind == VIRTUAL), None)
        if ve is None:
            break
        join_separation_pair(S, ve)
    return next(iter(S.skeletons))


def exhaustive_integrate(S: ExtendedSkeletonDecomposition) -> int:
    """Integrate every twin pair of virtual vertices; returns how many were integrated."""
    count = 0
    while True:
        va = next((v for v, x in S.V.items() if x.twin is not None), None)
        if va is None:
            return count
        integrate(S, va, S.V[va].twin)  # type: ignore[arg-type]
        count += 1
