"""Planarity flag, rigid rotations with reversal parity, and 3-path queries.

Each embedded rigid piece receives a token in a union-find with xor parity.
A vertex's stored rotation is read through the parity of its token: an odd
parity means the stored order is the mirror of the effective one. Gluing
two rigids whose directions disagree then costs a single union instead of
rewriting either side.
"""

from __future__ import annotations

import networkx as nx

from .decomposition import (
    BOND,
    RIGID,
    VIRTUAL,
    DecompositionError,
    ExtendedSkeletonDecomposition,
    allocation_vertices,
    shape,
)
from .graph import Multigraph
from .operations import integrate_plan, isolate_vertex


class NonPlanarError(DecompositionError):
    """A rotation was requested from a non-planar decomposition."""


class RigidRegistry:
    """Union-find over embedding tokens with a reversal bit per link."""

    def __init__(self, compress: bool = True) -> None:
        self.compress = compress
        self.parent: dict[int, int] = {}
        self.flip: dict[int, int] = {}
        self.size: dict[int, int] = {}
        self._next = 0

    def make(self) -> int:
        t = self._next
        self._next += 1
        self.parent[t] = t
        self.flip[t] = 0
        self.size[t] = 1
        return t

    def find(self, t: int) -> tuple[int, int]:
        """Root of ``t`` and the xor of reversal bits along the way."""
        path = []
        while self.parent[t] != t:
            path.append(t)
            t = self.parent[t]
        root = t
        if not path:
            return root, 0
        parity = 0
        # walk back from the node nearest the root so each prefix is known
        acc: dict[int, int] = {}
        for x in reversed(path):
            parity ^= self.flip[x]
            acc[x] = parity
        if self.compress:
            for x in path:
                self.parent[x] = root
                self.flip[x] = acc[x]
        return root, acc[path[0]]

    def parity(self, t: int) -> int:
        return self.find(t)[1]

    def union(self, a: int, b: int, mismatch: int) -> int:
        """Merge the classes of ``a`` and ``b``, reversing one class against the other iff ``mismatch``."""
        ra = self.find(a)[0]
        rb = self.find(b)[0]
        if ra == rb:
            return ra
        if (self.size[ra], -ra) < (self.size[rb], -rb):
            ra, rb = rb, ra
        self.parent[rb] = ra
        self.flip[rb] = mismatch
        self.size[ra] += self.size[rb]
        return ra


class PlanarityState:
    """Planarity flag plus per-vertex rotations of rigid skeleton vertices."""

    def __init__(self, compress: bool = True) -> None:
        self.planar = True
        self.rot: dict[int, list[int]] = {}
        self.owner: dict[int, int] = {}
        self.registry = RigidRegistry(compress)

    def fail(self) -> None:
        # once non-planar, rotations are meaningless and never come back
        self.planar = False
        self.rot.clear()
        self.owner.clear()

    def effective(self, x: int) -> list[int]:
        order = self.rot[x]
        if self.registry.parity(self.owner[x]):
            return order[::-1]
        return list(order)

    def store(self, x: int, order: list[int], owner: int) -> None:
        self.owner[x] = owner
        self.rot[x] = order[::-1] if self.registry.parity(owner) else list(order)

    def forget(self, x: int) -> None:
        self.rot.pop(x, None)
        self.owner.pop(x, None)


def state_of(S: ExtendedSkeletonDecomposition) -> PlanarityState:
    if S.planarity is None:
        S.planarity = PlanarityState()
    return S.planarity


# -- cyclic sequences ----------------------------------------------------------


def _starting_after(order: list[int], item: int) -> list[int]:
    i = order.index(item)
    return order[i + 1 :] + order[:i]


def _same_cycle(a: list, b: list) -> bool:
    if len(a) != len(b):
        return False
    if not a:
        return True
    try:
        i = b.index(a[0])
    except ValueError:
        return False
    return b[i:] + b[:i] == a


def canonical_direction(order: list[int]) -> list[int]:
    """Start at the smallest element and read towards the smaller of its two neighbors."""
    if len(order) < 3:
        return sorted(order)
    i = order.index(min(order))
    fwd = order[i:] + order[:i]
    back = [fwd[0]] + fwd[1:][::-1]
    return fwd if fwd[1] < back[1] else back


# -- embedding -----------------------------------------------------------------


def embed_skeleton(g: Multigraph) -> dict[int, list[int]] | None:
    """Rotation system of a planar multigraph, or ``None`` if it is not planar.

    Every edge is subdivided before handing the graph to the LR planarity
    test, so parallel edges get individual positions in the rotations.
    """
    h = nx.Graph()
    h.add_nodes_from(("v", v) for v in g.vertices)
    for e in g.edges:
        a, b = g.endpoints(e)
        h.add_edge(("v", a), ("e", e))
        h.add_edge(("e", e), ("v", b))
    ok, emb = nx.check_planarity(h)
    if not ok:
        return None
    rot = {}
    for v in g.vertices:
        if g.degree(v) == 0:
            rot[v] = []
            continue
        rot[v] = [w[1] for w in emb.neighbors_cw_order(("v", v))]
    return rot


def faces_of(g: Multigraph, rot: dict[int, list[int]]) -> int:
    """Number of faces traced from a rotation system."""
    seen: set[tuple[int, int]] = set()
    count = 0
    for v in g.vertices:
        for e in rot[v]:
            if (e, v) in seen:
                continue
            count += 1
            x, f = v, e
            while (f, x) not in seen:
                seen.add((f, x))
                y = g.opposite(f, x)
                order = rot[y]
                f = order[(order.index(f) + 1) % len(order)]
                x = y
    return count


def wheel_install(g: Multigraph, center: int, rim: list[int]) -> tuple[Multigraph, list[int]]:
    """Subdivide the spokes of ``center`` and chain the subdivision vertices in ``rim`` order.

    Each spoke ``center``-``x`` must be a single edge. Its outer half keeps
    the spoke's handle, so rotations at ``x`` need no translation. Returns
    the new graph and the rim vertices in ``rim`` order.
    """
    h = g.copy()
    ring = []
    for x in rim:
        spokes = h.edges_between(center, x)
        if len(spokes) != 1:
            raise DecompositionError(f"center {center} needs exactly one spoke to {x}")
        e = spokes[0]
        h.delete_edge(e)
        r = h.add_vertex()
        h.add_edge(center, r)
        h.add_edge(r, x, e)
        ring.append(r)
    if len(ring) >= 3:
        for i, r in enumerate(ring):
            h.add_edge(r, ring[(i + 1) % len(ring)])
    return h, ring


def wheel_contract(h: Multigraph, center: int, ring: list[int]) -> Multigraph:
    """Undo :func:`wheel_install`, restoring each spoke under its original handle."""
    g = h.copy()
    for r in ring:
        outer = [f for f in g.incident(r) if g.opposite(f, r) != center and g.opposite(f, r) not in ring]
        if len(outer) != 1:
            raise DecompositionError(f"rim vertex {r} is not a wheel subdivision")
        e = outer[0]
        x = g.opposite(e, r)
        g.delete_vertex(r)
        g.add_edge(center, x, e)
    return g


def embed_piece(S: ExtendedSkeletonDecomposition, sid: int, strict: bool = True) -> bool:
    """Embed skeleton ``sid`` and record rotations for all its vertices.

    Virtual vertices are replaced by wheels whose rims follow the rotation
    of their twins, which pins the piece to the rigid it will be glued to.
    Returns ``False`` if no embedding exists; with ``strict`` that also
    clears the planarity flag for good.
    """
    st = state_of(S)
    if not st.planar:
        return False
    g = S.skeleton_graph(sid)
    spoke_of: dict[int, int] = {}
    for c in [v for v in S.skeletons[sid].vertices if S.V[v].virtual]:
        twin = S.V[c].twin
        if twin not in st.rot:
            raise DecompositionError(f"twin of virtual vertex {c} has no rotation")
        by_orig = {S.V[x].orig: x for x in S.V[c].adj}
        rim = [by_orig[S.V[S.E[e].other(twin)].orig] for e in st.effective(twin)]  # type: ignore[arg-type]
        g, ring = wheel_install(g, c, rim)
        for x, r in zip(rim, ring):
            inner = g.edges_between(c, r)[0]
            spoke_of[inner] = next(iter(S.V[c].adj[x]))
    rot = embed_skeleton(g)
    if rot is None:
        if strict:
            st.fail()
        return False
    token = st.registry.make()
    for x in S.skeletons[sid].vertices:
        order = [spoke_of.get(e, e) for e in rot[x]]
        st.store(x, order, token)
    return True


# -- rotation maintenance under structural operations ------------------------


def isolate_in_rigid(S: ExtendedSkeletonDecomposition, v: int) -> tuple[int, int, int]:
    """:func:`isolate_vertex` that also carries rotations over to the new center."""
    st = state_of(S)
    tracked = st.planar and v in st.rot
    if tracked:
        old = {nb: next(iter(S.V[v].adj[nb])) for nb in S.V[v].adj}
        nb_of = {e: nb for nb, e in old.items()}
        order = st.rot[v]
        owner = st.owner[v]
    va, vb, beta = isolate_vertex(S, v)
    if tracked:
        occ = {nb: next(iter(S.V[va].adj[nb])) for nb in old}
        st.rot[va] = [occ[nb_of[e]] for e in order]
        st.owner[va] = owner
        for nb, e in old.items():
            if nb in st.rot:
                st.rot[nb] = [occ[nb] if f == e else f for f in st.rot[nb]]
        st.forget(v)
    return va, vb, beta


def splice_before_integrate(S: ExtendedSkeletonDecomposition, va: int, vb: int) -> bool:
    """Merge rotations across a twin pair about to be integrated.

    Must run before the integrate itself; afterwards the surviving neighbor
    vertices carry the spliced rotations and the absorbed ones are forgotten.
    Returns ``False`` when either side lacks rotations, in which case the
    glued skeleton has to be embedded afresh.
    """
    st = state_of(S)
    if not st.planar:
        return True
    gone_c, keep_c, gamma = integrate_plan(S, va, vb)
    sides = (keep_c, gone_c, *gamma, *gamma.values())
    if any(x not in st.rot for x in sides):
        return False
    label = lambda c, e: S.V[S.E[e].other(c)].orig  # noqa: E731
    keep_seq = [label(keep_c, e) for e in st.effective(keep_c)]
    gone_seq = [label(gone_c, e) for e in st.effective(gone_c)]
    if _same_cycle(gone_seq, keep_seq[::-1]):
        mismatch = 0
    elif _same_cycle(gone_seq, keep_seq):
        mismatch = 1
    else:
        raise DecompositionError("twin rotations disagree beyond a reflection")
    st.registry.union(st.owner[keep_c], st.owner[gone_c], mismatch)
    for x, y in gamma.items():
        if x not in st.rot or y not in st.rot:
            raise DecompositionError(f"missing rotation at glued vertex {x} or {y}")
        oy = next(iter(S.V[keep_c].adj[y]))
        ox = next(iter(S.V[gone_c].adj[x]))
        merged = _starting_after(st.effective(y), oy) + _starting_after(st.effective(x), ox)
        st.store(y, merged, st.owner[y])
        st.forget(x)
    st.forget(keep_c)
    st.forget(gone_c)
    return True


def replace_block(S: ExtendedSkeletonDecomposition, x: int, block: set[int], new: int) -> bool:
    """Replace a cyclically contiguous run of edges in ``x``'s rotation by ``new``.

    Returns ``False`` if the run is not contiguous; the rotation is left alone.
    """
    st = state_of(S)
    if not st.planar or x not in st.rot:
        return True
    order = st.rot[x]
    n = len(order)
    start = next(i for i in range(n) if order[i] in block and order[i - 1] not in block) if len(block) < n else 0
    run = [order[(start + k) % n] for k in range(len(block))]
    if set(run) != block:
        return False
    st.rot[x] = [new] + [order[(start + len(block) + k) % n] for k in range(n - len(block))]
    return True


# -- queries -----------------------------------------------------------------------


def is_planar(S: ExtendedSkeletonDecomposition) -> bool:
    return state_of(S).planar


def rotation(S: ExtendedSkeletonDecomposition, x: int, exact: bool = False) -> list[int]:
    """Rotation of skeleton vertex ``x`` of a rigid, as skeleton edge handles.

    The default answer is normalized and only meaningful up to reversal.
    With ``exact`` the direction is consistent across all vertices of the
    same rigid.
    """
    st = state_of(S)
    if not st.planar:
        raise NonPlanarError("the represented graph is not planar")
    if x not in S.V or shape(S, S.V[x].skel) != RIGID:
        raise DecompositionError(f"vertex {x} is not in a rigid skeleton")
    if x not in st.rot:
        raise DecompositionError(f"vertex {x} has no recorded rotation")
    if exact:
        return st.effective(x)
    return canonical_direction(st.rot[x])


def three_paths(S: ExtendedSkeletonDecomposition, w1: int, w2: int) -> bool:
    """Whether represented vertices ``w1`` and ``w2`` have three disjoint paths between them."""
    if w1 == w2:
        raise DecompositionError("three_paths needs two distinct vertices")
    a1 = {S.V[x].skel: x for x in allocation_vertices(S, w1)}
    a2 = {S.V[x].skel: x for x in allocation_vertices(S, w2)}
    for sid in a1.keys() & a2.keys():
        kind = shape(S, sid)
        if kind in (RIGID, BOND):
            return True
        x1, x2 = a1[sid], a2[sid]
        if any(S.E[e].kind == VIRTUAL for e in S.V[x1].adj.get(x2, ())):
            return True
    return False
