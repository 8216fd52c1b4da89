"""SPQR-trees: classification, construction, expansion and merging.

Expansion follows a fixed pipeline on the allocation subtree of the
expanded vertex: cut polygons down to triangles, isolate the vertex in
rigids, join what is left into one small skeleton, plug the new graph in,
re-split that local skeleton, and glue the pieces back onto the rigids.
Nothing outside the allocation subtree is read or written, apart from
merges that pour a local piece into a larger neighbor.
"""

from __future__ import annotations

from .decomposition import (
    BOND,
    OCCUPIED,
    POLYGON,
    REAL,
    RIGID,
    VIRTUAL,
    DecompositionError,
    ExtendedSkeletonDecomposition,
    dump,
    shape,
    trivial_decomposition,
)
from .graph import Multigraph, _components, articulation_points, is_connected
from .operations import (
    check_expansion,
    insert_graph,
    integrate,
    integrate_plan,
    join_separation_pair,
    split_separation_pair,
)
from .planarity import (
    PlanarityState,
    embed_piece,
    isolate_in_rigid,
    replace_block,
    splice_before_integrate,
    state_of,
)


# -- classification ------------------------------------------------------------------


def _triconnected(g: Multigraph) -> bool:
    if g.num_vertices() < 4 or not is_connected(g):
        return False
    adj = g.adjacency()
    for a in g.vertices:
        if articulation_points(adj, removed=a):
            return False
        if len(_components(adj, removed=(a,))) != 1:
            return False
    return True


def classify_skeleton(S: ExtendedSkeletonDecomposition, sid: int) -> str | None:
    """``polygon``, ``bond`` or ``rigid``; ``None`` if the skeleton is none of them."""
    sk = S.skeletons[sid]
    if any(S.V[v].virtual for v in sk.vertices):
        raise DecompositionError(f"skeleton {sid} has virtual vertices")
    n, m = len(sk.vertices), len(sk.edges)
    if n == 2:
        return BOND if m >= 2 else None
    simple = all(len(b) == 1 for v in sk.vertices for b in S.V[v].adj.values())
    if not simple:
        return None
    if n == m and all(len(S.V[v].inc) == 2 for v in sk.vertices):
        return POLYGON
    if _triconnected(S.skeleton_graph(sid)):
        return RIGID
    return None


def is_spqr(S: ExtendedSkeletonDecomposition) -> bool:
    if S.virtual_vertices():
        return False
    kinds = {}
    for sid in S.skeletons:
        k = classify_skeleton(S, sid)
        if k is None:
            return False
        if k == BOND and len(S.skeletons[sid].edges) < 3 and len(S.skeletons) > 1:
            return False
        kinds[sid] = k
    for e, r in S.E.items():
        if r.kind == VIRTUAL:
            k1, k2 = kinds[r.skel], kinds[S.E[r.ref].skel]  # type: ignore[index]
            if k1 == k2 and k1 in (POLYGON, BOND):
                return False
    return True


def canonical_form(S: ExtendedSkeletonDecomposition) -> bytes:
    """Byte string that is equal for equal-labelled decompositions."""

    def label(sid: int) -> str:
        try:
            return classify_skeleton(S, sid) or "other"
        except DecompositionError:
            return "extended"

    return dump(S, classify=label).encode()


# -- local decomposition ---------------------------------------------------------------


def _find_split(S: ExtendedSkeletonDecomposition, sid: int) -> tuple[tuple[int, int], list[int]] | None:
    """A separation pair of regular vertices plus the edges naming one side."""
    sk = S.skeletons[sid]
    n = len(sk.vertices)
    if n <= 2 or n == len(sk.edges):
        return None
    for x in sk.vertices:
        if S.V[x].virtual:
            continue
        for y, bucket in S.V[x].adj.items():
            if len(bucket) >= 2:
                return (x, y), list(bucket)
    if n < 4:
        return None
    adj = {
        v: [(S.E[e].other(v), e) for e in S.V[v].inc] for v in sk.vertices
    }
    for a in sk.vertices:
        if S.V[a].virtual:
            continue
        for b in articulation_points(adj, removed=a):
            if S.V[b].virtual:
                continue
            comps = _components(adj, removed=(a, b))
            small = min(comps, key=len)
            return (a, b), [adj[small[0]][0][1]]
    return None


def _split_all(S: ExtendedSkeletonDecomposition, sid: int) -> list[int]:
    """Split at every separation pair avoiding virtual vertices; return the pieces."""
    pieces = []
    stack = [sid]
    while stack:
        s = stack.pop()
        found = _find_split(S, s)
        if found is None:
            pieces.append(s)
            continue
        pair, parts = found
        a, b = split_separation_pair(S, s, pair, parts, check=False)
        stack.extend((a, b))
    return pieces


def _thin_bond(S: ExtendedSkeletonDecomposition, sid: int) -> bool:
    sk = S.skeletons[sid]
    return len(sk.vertices) == 2 and len(sk.edges) == 2 and len(S.skeletons) > 1


def _join(S: ExtendedSkeletonDecomposition, e: int) -> list[int]:
    """Join across ``e``; return the virtual edges that changed skeleton."""
    t = S.E[e].ref
    s1, s2 = S.E[e].skel, S.E[t].skel  # type: ignore[index]
    small, big_edge = (s2, e) if S.skeletons[s1].size() >= S.skeletons[s2].size() else (s1, t)
    moved = [f for f in S.skeletons[small].edges if f not in (e, t)]
    st = state_of(S)
    big = S.E[big_edge]
    ends = (big.a, big.b)
    patch = st.planar and _thin_bond(S, small) and any(x in st.rot for x in ends)
    join_separation_pair(S, e)
    if patch:
        (f,) = moved
        for x in ends:
            if x in st.rot:
                st.rot[x] = [f if g == big_edge else g for g in st.rot[x]]
    return [f for f in moved if S.E[f].kind == VIRTUAL]


def _normalize(S: ExtendedSkeletonDecomposition, work: list[int]) -> None:
    """Join polygon-polygon and bond-bond neighbors and 2-edge bonds away."""
    while work:
        e = work.pop()
        if e not in S.E or S.E[e].kind != VIRTUAL:
            continue
        s1, s2 = S.E[e].skel, S.E[S.E[e].ref].skel  # type: ignore[index]
        k1, k2 = shape(S, s1), shape(S, s2)
        if (k1 == k2 and k1 != RIGID) or _thin_bond(S, s1) or _thin_bond(S, s2):
            work.extend(_join(S, e))


def _split_parallels(S: ExtendedSkeletonDecomposition, sid: int, at: list[int]) -> tuple[list[int], bool]:
    """Move each class of parallel edges at the given vertices into its own bond.

    Also reports whether the rotations around the moved classes could be
    kept; parallels enclosing other parts of the skeleton break them.
    """
    new_virtual = []
    kept = True
    for y in at:
        if y not in S.V:
            continue
        for z, bucket in list(S.V[y].adj.items()):
            if len(bucket) < 2:
                continue
            block = set(bucket)
            _, beta = split_separation_pair(S, sid, (y, z), list(bucket), check=False)
            ea = next(f for f in S.V[y].adj[z] if S.E[f].kind == VIRTUAL and S.E[S.E[f].ref].skel == beta)  # type: ignore[index]
            kept = replace_block(S, y, block, ea) and kept
            kept = replace_block(S, z, block, ea) and kept
            new_virtual.extend((ea, S.E[ea].ref))  # type: ignore[arg-type]
            new_virtual.extend(f for f in block if S.E[f].kind == VIRTUAL)
    return new_virtual, kept


def _reassemble(S: ExtendedSkeletonDecomposition, local: int) -> None:
    """Split the local skeleton, embed the pieces and glue them back."""
    pieces = _split_all(S, local)
    st = state_of(S)
    for p in pieces:
        if any(S.V[v].virtual for v in S.skeletons[p].vertices):
            # a wheel can over-constrain when the rigid's remainder is flexible,
            # so a failure here only means "embed the glued rigid from scratch"
            embed_piece(S, p, strict=False)
        elif shape(S, p) == RIGID:
            embed_piece(S, p)
    work: list[int] = []
    for p in pieces:
        work.extend(e for e in S.skeletons[p].edges if S.E[e].kind == VIRTUAL)
    centers = [v for p in pieces for v in S.skeletons[p].vertices if S.V[v].virtual]
    redo: list[int] = []
    dirty: list[int] = []
    for c in centers:
        if c not in S.V:
            continue
        t = S.V[c].twin
        _, _, gamma = integrate_plan(S, c, t)  # type: ignore[arg-type]
        spliced = splice_before_integrate(S, c, t)  # type: ignore[arg-type]
        keep = integrate(S, c, t)  # type: ignore[arg-type]
        if not spliced:
            for x in S.skeletons[keep].vertices:
                st.forget(x)
            redo.append(next(iter(gamma.values())))
        bonds, kept = _split_parallels(S, keep, list(gamma.values()))
        if bonds:
            dirty.append(next(iter(gamma.values())))
        if not kept:
            for x in S.skeletons[keep].vertices:
                st.forget(x)
            redo.append(next(iter(gamma.values())))
        work.extend(bonds)
    # parallels pulled out of a rigid can leave it with separation pairs
    for y in dirty:
        if y not in S.V:
            continue
        parts = _split_all(S, S.V[y].skel)
        if len(parts) == 1:
            continue
        for p in parts:
            work.extend(e for e in S.skeletons[p].edges if S.E[e].kind == VIRTUAL)
            redo.append(next(iter(S.skeletons[p].vertices)))
    _normalize(S, work)
    for y in redo:
        if st.planar and y in S.V:
            sid = S.V[y].skel
            for x in S.skeletons[sid].vertices:
                st.forget(x)
            if shape(S, sid) == RIGID:
                embed_piece(S, sid)


def _embed_rigids(S: ExtendedSkeletonDecomposition, sids: list[int]) -> None:
    for sid in sids:
        if sid in S.skeletons and shape(S, sid) == RIGID:
            embed_piece(S, sid)


# -- whole-graph construction ---------------------------------------------------------


def build_spqr(g: Multigraph, compress: bool = True) -> ExtendedSkeletonDecomposition:
    """SPQR-tree of a biconnected multigraph, built from scratch."""
    S = trivial_decomposition(g)
    S.planarity = PlanarityState(compress)
    root = next(iter(S.skeletons))
    _split_all(S, root)
    work = [e for e, r in S.E.items() if r.kind == VIRTUAL]
    _normalize(S, work)
    _embed_rigids(S, list(S.skeletons))
    S.spqr = True
    return S


# -- expansion -------------------------------------------------------------------------


def _prepare(S: ExtendedSkeletonDecomposition, u: int) -> int:
    """Shrink the allocation subtree of ``u`` to one skeleton; return its allocation vertex."""
    if u not in S.alloc or not S.alloc[u]:
        raise DecompositionError(f"unknown represented vertex {u}")
    for x in list(S.alloc[u]):
        sid = S.V[x].skel
        kind = shape(S, sid)
        if kind == POLYGON and len(S.skeletons[sid].vertices) > 3:
            y, z = list(S.V[x].adj)
            split_separation_pair(S, sid, (y, z), list(S.V[x].inc), check=False)
        elif kind == RIGID:
            isolate_in_rigid(S, x)
    while len(S.alloc[u]) > 1:
        e = next(
            (f for x in S.alloc[u] for f in S.V[x].inc if S.E[f].kind == VIRTUAL),
            None,
        )
        if e is None:
            raise DecompositionError(f"allocation skeletons of {u} are not linked by virtual edges")
        join_separation_pair(S, e)
    return next(iter(S.alloc[u]))


def insert_graph_spqr(
    S: ExtendedSkeletonDecomposition, u: int, g_nu: Multigraph, phi: dict[int, int]
) -> ExtendedSkeletonDecomposition:
    """Replace ``u`` by ``g_nu`` and restore the SPQR-tree locally.

    ``phi`` maps the marked vertices of ``g_nu`` onto the neighbors of ``u``
    in the represented graph.
    """
    if not S.spqr:
        raise DecompositionError("insert_graph_spqr needs an SPQR-tree")
    if not S.represented.has_vertex(u):
        raise DecompositionError(f"unknown represented vertex {u}")
    # reject before restructuring so a bad request leaves the tree intact
    check_expansion(u, set(S.represented.neighbors(u)), g_nu, phi)
    S.spqr = False
    _prepare(S, u)
    v, vn = insert_graph(S, u, g_nu, phi)
    local = integrate(S, v, vn)
    _reassemble(S, local)
    S.spqr = True
    return S


# -- merging ----------------------------------------------------------------------------


def _import(S: ExtendedSkeletonDecomposition, T: ExtendedSkeletonDecomposition, vmap: dict[int, int], emap: dict[int, int]) -> dict[int, int]:
    """Copy every skeleton of ``T`` into ``S`` with represented ids remapped.

    Returns the map from ``T``'s skeleton vertex handles to the new ones.
    """
    sk_of: dict[int, int] = {}
    v_of: dict[int, int] = {}
    e_of: dict[int, int] = {}
    for sid in T.skeletons:
        sk_of[sid] = S.new_skeleton()
    for vid, x in T.V.items():
        orig = vmap.get(x.orig) if x.orig is not None else None  # type: ignore[arg-type]
        v_of[vid] = S.new_vertex(sk_of[x.skel], orig=orig, twin=-1 if x.twin is not None else None)
    for vid, x in T.V.items():
        if x.twin is not None:
            S.V[v_of[vid]].twin = v_of[x.twin]
    for eid, r in T.E.items():
        ref = emap.get(r.ref) if r.kind == REAL else None  # type: ignore[arg-type]
        e_of[eid] = S.new_edge(sk_of[r.skel], v_of[r.a], v_of[r.b], r.kind, ref)
    for eid, r in T.E.items():
        if r.kind == VIRTUAL:
            S.E[e_of[eid]].ref = e_of[r.ref]  # type: ignore[index]
    st, ts = state_of(S), state_of(T)
    if not ts.planar:
        st.fail()
    elif st.planar:
        tok: dict[int, int] = {}
        for t in ts.registry.parent:
            tok[t] = st.registry.make()
        for t in ts.registry.parent:
            root, par = ts.registry.find(t)
            if root != t:
                st.registry.union(tok[root], tok[t], par)
        for x, order in ts.rot.items():
            if any(e not in e_of for e in order):
                continue  # left over from a skeleton that is no longer rigid
            st.rot[v_of[x]] = [e_of[e] for e in order]
            st.owner[v_of[x]] = tok[ts.owner[x]]
    return v_of


def merge_spqr(
    S1: ExtendedSkeletonDecomposition,
    S2: ExtendedSkeletonDecomposition,
    v1: int,
    v2: int,
    phi: dict[int, int],
) -> ExtendedSkeletonDecomposition:
    """Glue ``G1 - v1`` and ``G2 - v2`` along ``phi`` and return the merged SPQR-tree.

    ``phi`` maps the represented edges at ``v1`` onto those at ``v2``. Both
    inputs are consumed; the result reuses ``S1``.
    """
    if not (S1.spqr and S2.spqr):
        raise DecompositionError("merge_spqr needs two SPQR-trees")
    g1, g2 = S1.represented, S2.represented
    if not g1.has_vertex(v1) or not g2.has_vertex(v2):
        raise DecompositionError("merge vertex missing")
    inc1, inc2 = g1.incident(v1), g2.incident(v2)
    if len(inc1) != len(inc2):
        raise DecompositionError(f"degree mismatch: {len(inc1)} vs {len(inc2)}")
    if set(phi) != set(inc1) or set(phi.values()) != set(inc2):
        raise DecompositionError("phi must biject the edges at v1 onto the edges at v2")
    S1.spqr = S2.spqr = False
    a1 = _prepare(S1, v1)
    a2 = _prepare(S2, v2)
    far1 = {e: g1.opposite(e, v1) for e in inc1}
    far2 = {e: g2.opposite(e, v2) for e in inc2}
    # represented graph: same handle order as gluing by hand
    for e in inc1:
        g1.delete_edge(e)
    g1.delete_vertex(v1)
    vmap: dict[int, int] = {}
    for x in g2.vertices:
        if x != v2:
            vmap[x] = g1.add_vertex()
    emap: dict[int, int] = {}
    for e in g2.edges:
        a, b = g2.endpoints(e)
        if v2 not in (a, b):
            emap[e] = g1.add_edge(vmap[a], vmap[b])
    glued = [(e, g1.add_edge(far1[e], vmap[far2[phi[e]]])) for e in inc1]
    v_of = _import(S1, S2, vmap, emap)
    b2 = v_of[a2]
    l1, l2 = S1.V[a1].skel, S1.V[b2].skel
    # drop the allocation vertices and reconnect their neighbors directly
    end1 = {S1.E[f].ref: S1.E[f].other(a1) for f in S1.V[a1].inc}
    end2 = {}
    for f in S2.V[a2].inc:
        r = S2.E[f]
        end2[r.ref] = v_of[r.other(a2)]
    for x in (a1, b2):
        for f in list(S1.V[x].inc):
            S1.drop_edge(f)
    S1.drop_vertex(a1)
    S1.drop_vertex(b2)
    for w in list(S1.skeletons[l2].vertices):
        S1.move_vertex(w, l1)
    for f in list(S1.skeletons[l2].edges):
        S1.move_edge(f, l1)
    S1.drop_skeleton(l2)
    for e, ref in glued:
        S1.new_edge(l1, end1[e], end2[phi[e]], REAL, ref)
    S1.bump(l1)
    _reassemble(S1, l1)
    S1.spqr = True
    return S1


def occupied_count(S: ExtendedSkeletonDecomposition) -> int:
    return sum(1 for r in S.E.values() if r.kind == OCCUPIED)
