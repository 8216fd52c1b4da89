"""Extended skeleton decompositions: storage, validation and derived views.

All skeletons share one pool of vertex and edge records, so moving an
element between skeletons is a pointer update. Skeleton handles, skeleton
vertex handles and skeleton edge handles are decomposition-wide integers
that are never reused.
"""

from __future__ import annotations

from collections.abc import Callable, Iterable
from dataclasses import dataclass
from typing import Any

from .graph import GraphError, Multigraph, is_biconnected

REAL = "real"
VIRTUAL = "virtual"
OCCUPIED = "occupied"

POLYGON = "polygon"
BOND = "bond"
RIGID = "rigid"


class DecompositionError(GraphError):
    """A decomposition operation was called outside its precondition."""


class SVertex:
    __slots__ = ("id", "skel", "orig", "twin", "inc", "adj")

    def __init__(self, vid: int, skel: int, orig: int | None, twin: int | None) -> None:
        self.id = vid
        self.skel = skel
        self.orig = orig  # represented vertex; None for virtual vertices
        self.twin = twin  # matched virtual vertex; None for regular vertices
        self.inc: dict[int, None] = {}
        self.adj: dict[int, dict[int, None]] = {}

    @property
    def virtual(self) -> bool:
        return self.twin is not None

    def __repr__(self) -> str:
        tag = f"*{self.twin}" if self.virtual else str(self.orig)
        return f"SVertex({self.id}@{self.skel}:{tag})"


class SEdge:
    __slots__ = ("id", "skel", "a", "b", "kind", "ref")

    def __init__(self, eid: int, skel: int, a: int, b: int, kind: str, ref: int | None) -> None:
        self.id = eid
        self.skel = skel
        self.a = a
        self.b = b
        self.kind = kind
        self.ref = ref  # twin edge (virtual) or represented edge (real)

    def other(self, v: int) -> int:
        return self.b if self.a == v else self.a

    def __repr__(self) -> str:
        return f"SEdge({self.id}@{self.skel}:{self.a}-{self.b} {self.kind} {self.ref})"


class Skeleton:
    __slots__ = ("id", "vertices", "edges", "version")

    def __init__(self, sid: int) -> None:
        self.id = sid
        self.vertices: dict[int, None] = {}
        self.edges: dict[int, None] = {}
        self.version = 0

    def size(self) -> int:
        return len(self.vertices) + len(self.edges)

    def __repr__(self) -> str:
        return f"Skeleton({self.id}, n={len(self.vertices)}, m={len(self.edges)})"


@dataclass(frozen=True)
class Violation:
    condition: str
    handles: tuple
    message: str

    def __str__(self) -> str:
        return f"condition {self.condition}: {self.message} {list(self.handles)}"


class ExtendedSkeletonDecomposition:
    """Skeletons plus twin matchings and the maps into the represented graph."""

    def __init__(self) -> None:
        self.V: dict[int, SVertex] = {}
        self.E: dict[int, SEdge] = {}
        self.skeletons: dict[int, Skeleton] = {}
        self.represented = Multigraph()
        self.alloc: dict[int, dict[int, None]] = {}  # represented vertex -> skeleton vertices
        self.real_of: dict[int, int] = {}  # represented edge -> real skeleton edge
        self._next_v = 0
        self._next_e = 0
        self._next_s = 0
        self.touched = 0
        self.spqr = False
        self.planarity: Any = None

    # -- element primitives ------------------------------------------------------
    # Every primitive bumps ``touched`` so callers can measure locality.

    def new_skeleton(self) -> int:
        sid = self._next_s
        self._next_s += 1
        self.skeletons[sid] = Skeleton(sid)
        self.touched += 1
        return sid

    def drop_skeleton(self, sid: int) -> None:
        sk = self.skeletons.pop(sid)
        if sk.vertices or sk.edges:
            raise DecompositionError(f"skeleton {sid} is not empty")
        self.touched += 1

    def new_vertex(self, sid: int, orig: int | None = None, twin: int | None = None) -> int:
        vid = self._next_v
        self._next_v += 1
        self.V[vid] = SVertex(vid, sid, orig, twin)
        self.skeletons[sid].vertices[vid] = None
        if orig is not None:
            self.alloc.setdefault(orig, {})[vid] = None
        self.touched += 1
        return vid

    def drop_vertex(self, vid: int) -> None:
        x = self.V[vid]
        if x.inc:
            raise DecompositionError(f"vertex {vid} still has edges")
        del self.V[vid]
        del self.skeletons[x.skel].vertices[vid]
        if x.orig is not None:
            del self.alloc[x.orig][vid]
        if self.planarity is not None:
            self.planarity.forget(vid)
        self.touched += 1

    def _link(self, v: int, e: int, other: int) -> None:
        x = self.V[v]
        x.inc[e] = None
        x.adj.setdefault(other, {})[e] = None

    def _unlink(self, v: int, e: int, other: int) -> None:
        x = self.V[v]
        del x.inc[e]
        bucket = x.adj[other]
        del bucket[e]
        if not bucket:
            del x.adj[other]

    def new_edge(self, sid: int, a: int, b: int, kind: str, ref: int | None = None) -> int:
        if a == b:
            raise DecompositionError("self-loop in skeleton")
        eid = self._next_e
        self._next_e += 1
        self.E[eid] = SEdge(eid, sid, a, b, kind, ref)
        self.skeletons[sid].edges[eid] = None
        self._link(a, eid, b)
        self._link(b, eid, a)
        if kind == REAL and ref is not None:
            self.real_of[ref] = eid
        self.touched += 1
        return eid

    def drop_edge(self, eid: int) -> None:
        e = self.E.pop(eid)
        del self.skeletons[e.skel].edges[eid]
        self._unlink(e.a, eid, e.b)
        self._unlink(e.b, eid, e.a)
        if e.kind == REAL and self.real_of.get(e.ref) == eid:  # type: ignore[arg-type]
            del self.real_of[e.ref]  # type: ignore[arg-type]
        self.touched += 1

    def reattach(self, eid: int, old: int, new: int) -> None:
        """Move the ``old`` endpoint of edge ``eid`` to vertex ``new``."""
        e = self.E[eid]
        other = e.other(old)
        self._unlink(old, eid, other)
        self._unlink(other, eid, old)
        if e.a == old:
            e.a = new
        else:
            e.b = new
        self._link(new, eid, other)
        self._link(other, eid, new)
        self.touched += 1

    def move_vertex(self, vid: int, sid: int) -> None:
        x = self.V[vid]
        del self.skeletons[x.skel].vertices[vid]
        x.skel = sid
        self.skeletons[sid].vertices[vid] = None
        self.touched += 1

    def move_edge(self, eid: int, sid: int) -> None:
        e = self.E[eid]
        del self.skeletons[e.skel].edges[eid]
        e.skel = sid
        self.skeletons[sid].edges[eid] = None
        self.touched += 1

    def set_kind(self, eid: int, kind: str, ref: int | None) -> None:
        e = self.E[eid]
        if e.kind == REAL and self.real_of.get(e.ref) == eid:  # type: ignore[arg-type]
            del self.real_of[e.ref]  # type: ignore[arg-type]
        e.kind = kind
        e.ref = ref
        if kind == REAL and ref is not None:
            self.real_of[ref] = eid
        self.touched += 1

    def bump(self, *sids: int) -> None:
        for sid in sids:
            if sid in self.skeletons:
                self.skeletons[sid].version += 1

    # -- read helpers ---------------------------------------------------------------

    def label(self, vid: int) -> int:
        """Represented vertex of a regular skeleton vertex."""
        orig = self.V[vid].orig
        if orig is None:
            raise DecompositionError(f"vertex {vid} is virtual")
        return orig

    def degree(self, vid: int) -> int:
        return len(self.V[vid].inc)

    def neighbors(self, vid: int) -> list[int]:
        return list(self.V[vid].adj)

    def virtual_vertices(self) -> list[int]:
        return [v for v, x in self.V.items() if x.twin is not None]

    def virtual_edges(self) -> list[int]:
        return [e for e, r in self.E.items() if r.kind == VIRTUAL]

    def skeleton_graph(self, sid: int) -> Multigraph:
        """The skeleton as a standalone graph keeping skeleton handles."""
        g = Multigraph()
        sk = self.skeletons[sid]
        for v in sk.vertices:
            g.add_vertex(v)
        for e in sk.edges:
            r = self.E[e]
            g.add_edge(r.a, r.b, e)
        return g

    def skeleton_of_vertex(self, vid: int) -> int:
        return self.V[vid].skel


# -- construction -------------------------------------------------------------------


def trivial_decomposition(g: Multigraph) -> ExtendedSkeletonDecomposition:
    """Single-skeleton decomposition of a biconnected loop-free graph."""
    if not is_biconnected(g):
        raise DecompositionError("trivial_decomposition needs a biconnected graph")
    S = ExtendedSkeletonDecomposition()
    S.represented = g.copy()
    sid = S.new_skeleton()
    copy_of: dict[int, int] = {}
    for v in g.vertices:
        copy_of[v] = S.new_vertex(sid, orig=v)
    for e in g.edges:
        a, b = g.endpoints(e)
        S.new_edge(sid, copy_of[a], copy_of[b], REAL, e)
    return S


# -- derived views -------------------------------------------------------------------


def represented_graph(S: ExtendedSkeletonDecomposition) -> Multigraph:
    """Recompute the represented graph from origV and origE alone.

    Vertex and edge handles are the represented handles, inserted in
    ascending order.
    """
    g = Multigraph()
    for w in sorted({x.orig for x in S.V.values() if x.orig is not None}):
        g.add_vertex(w)
    reals = sorted((r.ref, r) for r in S.E.values() if r.kind == REAL)
    for ref, r in reals:
        g.add_edge(S.V[r.a].orig, S.V[r.b].orig, ref)  # type: ignore[arg-type]
    return g


def tree_edges(S: ExtendedSkeletonDecomposition) -> list[tuple[int, int, str, int, int]]:
    """One entry ``(skel, skel, kind, elem, elem)`` per twin pair."""
    out = []
    for eid, r in S.E.items():
        if r.kind == VIRTUAL and r.ref is not None and eid < r.ref and r.ref in S.E:
            out.append((r.skel, S.E[r.ref].skel, "E", eid, r.ref))
    for vid, x in S.V.items():
        if x.twin is not None and vid < x.twin and x.twin in S.V:
            out.append((x.skel, S.V[x.twin].skel, "V", vid, x.twin))
    return out


def decomposition_tree(S: ExtendedSkeletonDecomposition) -> dict[int, list[int]]:
    """Adjacency lists of the tree over skeleton handles."""
    adj: dict[int, list[int]] = {sid: [] for sid in S.skeletons}
    for a, b, _, _, _ in tree_edges(S):
        adj[a].append(b)
        adj[b].append(a)
    return adj


def allocation_skeletons(S: ExtendedSkeletonDecomposition, w: int) -> set[int]:
    if w not in S.alloc or not S.alloc[w]:
        raise DecompositionError(f"unknown represented vertex {w}")
    return {S.V[v].skel for v in S.alloc[w]}


def allocation_vertices(S: ExtendedSkeletonDecomposition, w: int) -> list[int]:
    if w not in S.alloc or not S.alloc[w]:
        raise DecompositionError(f"unknown represented vertex {w}")
    return list(S.alloc[w])


# -- validation ------------------------------------------------------------------------


def validate(S: ExtendedSkeletonDecomposition) -> list[Violation]:
    """Check every structural condition; return all violations found."""
    out: list[Violation] = []

    def bad(cond: str, handles: Iterable, msg: str) -> None:
        out.append(Violation(cond, tuple(handles), msg))

    # bookkeeping consistency: skeleton membership and incidence
    for sid, sk in S.skeletons.items():
        for v in sk.vertices:
            if v not in S.V or S.V[v].skel != sid:
                bad("index", (sid, v), "vertex membership out of sync")
        for e in sk.edges:
            if e not in S.E or S.E[e].skel != sid:
                bad("index", (sid, e), "edge membership out of sync")
    for vid, x in S.V.items():
        if x.skel not in S.skeletons or vid not in S.skeletons[x.skel].vertices:
            bad("index", (vid,), "vertex not listed in its skeleton")
        expect = {e for e, r in ((e, S.E.get(e)) for e in x.inc) if r and vid in (r.a, r.b)}
        if expect != set(x.inc):
            bad("index", (vid,), "incidence list references foreign edges")
        adj_edges = {e for bucket in x.adj.values() for e in bucket}
        if adj_edges != set(x.inc):
            bad("index", (vid,), "adjacency index out of sync")
        if (x.orig is None) == (x.twin is None):
            bad("map", (vid,), "vertex must be either regular (origV) or virtual (twinV)")
        if x.orig is not None and vid not in S.alloc.get(x.orig, {}):
            bad("index", (vid,), "allocation index misses vertex")
    for eid, r in S.E.items():
        if r.skel not in S.skeletons or eid not in S.skeletons[r.skel].edges:
            bad("index", (eid,), "edge not listed in its skeleton")
        for end in (r.a, r.b):
            if end not in S.V or eid not in S.V[end].inc or S.V[end].skel != r.skel:
                bad("index", (eid, end), "edge endpoint outside its skeleton")
        if r.kind not in (REAL, VIRTUAL, OCCUPIED):
            bad("map", (eid,), f"unknown edge kind {r.kind}")
    for w, vs in S.alloc.items():
        for v in vs:
            if v not in S.V or S.V[v].orig != w:
                bad("index", (w, v), "allocation index holds stale vertex")
    if any(bad_ for bad_ in out):
        # structural indexes are broken; later checks would only cascade
        return out

    # condition 1: every skeleton biconnected
    for sid in S.skeletons:
        if not is_biconnected(S.skeleton_graph(sid)):
            bad("1", (sid,), "skeleton is not biconnected")

    # twin matchings are fixpoint-free involutions across skeletons
    for eid, r in S.E.items():
        if r.kind != VIRTUAL:
            continue
        t = r.ref
        if t is None or t not in S.E or S.E[t].kind != VIRTUAL or S.E[t].ref != eid:
            bad("2", (eid,), "twinE is not an involution")
        elif t == eid:
            bad("2", (eid,), "virtual edge is its own twin")
        elif S.E[t].skel == r.skel:
            bad("2", (eid, t), "twin edges in the same skeleton (tree loop)")
    for vid, x in S.V.items():
        if x.twin is None:
            continue
        t = x.twin
        if t not in S.V or S.V[t].twin != vid:
            bad("2", (vid,), "twinV is not an involution")
        elif t == vid:
            bad("2", (vid,), "virtual vertex is its own twin")
        elif S.V[t].skel == x.skel:
            bad("2", (vid, t), "twin vertices in the same skeleton (tree loop)")
    if out:
        return out

    # condition 2: tree shape
    edges = tree_edges(S)
    seen_pairs: set[frozenset[int]] = set()
    for a, b, _, p, q in edges:
        key = frozenset((a, b))
        if key in seen_pairs:
            bad("2", (a, b, p, q), "parallel tree edges")
        seen_pairs.add(key)
    adj = decomposition_tree(S)
    if S.skeletons:
        start = next(iter(S.skeletons))
        reach = {start}
        stack = [start]
        while stack:
            s = stack.pop()
            for t in adj[s]:
                if t not in reach:
                    reach.add(t)
                    stack.append(t)
        if len(reach) != len(S.skeletons):
            bad("2", (), "decomposition tree is disconnected")
        if len(edges) != len(S.skeletons) - 1:
            bad("2", (), "decomposition tree has a cycle")

    # condition 3: origV injective per skeleton
    labels: dict[int, set[int]] = {}
    for sid, sk in S.skeletons.items():
        seen: dict[int, int] = {}
        for v in sk.vertices:
            o = S.V[v].orig
            if o is None:
                continue
            if o in seen:
                bad("3", (sid, seen[o], v), "origV not injective within skeleton")
            seen[o] = v
        labels[sid] = set(seen)

    # condition 4 and origE bijectivity
    rep = S.represented
    hit: dict[int, int] = {}
    for eid, r in S.E.items():
        if r.kind != REAL:
            continue
        if r.ref is None or not rep.has_edge(r.ref):
            bad("4", (eid,), "real edge maps to no represented edge")
            continue
        if r.ref in hit:
            bad("4", (eid, hit[r.ref]), "origE not injective")
        hit[r.ref] = eid
        oa, ob = S.V[r.a].orig, S.V[r.b].orig
        if oa is None or ob is None or {oa, ob} != set(rep.endpoints(r.ref)):
            bad("4", (eid,), "real edge endpoints disagree with origE")
        if S.real_of.get(r.ref) != eid:
            bad("index", (eid,), "origE inverse index out of sync")
    for e in rep.edges:
        if e not in hit:
            bad("4", (e,), "represented edge has no real skeleton edge")
    images = {x.orig for x in S.V.values() if x.orig is not None}
    if images != set(rep.vertices):
        bad("map", tuple(sorted(images ^ set(rep.vertices))), "origV image differs from represented vertices")

    # condition 5: twinned virtual edges share exactly their endpoints
    for eid, r in S.E.items():
        if r.kind != VIRTUAL or eid > r.ref:  # type: ignore[operator]
            continue
        t = S.E[r.ref]  # type: ignore[index]
        ends = {S.V[r.a].orig, S.V[r.b].orig}
        tends = {S.V[t.a].orig, S.V[t.b].orig}
        shared = labels[r.skel] & labels[t.skel]
        if None in ends or None in tends or ends != tends or shared != ends:
            bad("5", (eid, t.id), "twinned virtual edges do not bound the shared vertices")

    # condition 6: allocation skeletons induce connected subtrees
    for w in rep.vertices:
        nodes = {S.V[v].skel for v in S.alloc.get(w, {})}
        if not nodes:
            continue
        start = next(iter(nodes))
        reach = {start}
        stack = [start]
        while stack:
            s = stack.pop()
            for t in adj[s]:
                if t in nodes and t not in reach:
                    reach.add(t)
                    stack.append(t)
        if reach != nodes:
            bad("6", (w,), "allocation skeletons are not connected in the tree")

    # condition 7: occupied stars
    for vid, x in S.V.items():
        if x.twin is None:
            for e in x.inc:
                if S.E[e].kind == OCCUPIED and not S.V[S.E[e].other(vid)].virtual:
                    bad("7", (e,), "occupied edge without a virtual endpoint")
            continue
        t = S.V[x.twin]
        if len(x.inc) != len(t.inc):
            bad("7", (vid, x.twin), "twinned virtual vertices differ in degree")
        others = []
        for e in x.inc:
            r = S.E[e]
            if r.kind != OCCUPIED:
                bad("7", (vid, e), "edge at virtual vertex is not occupied")
            o = r.other(vid)
            if S.V[o].virtual:
                bad("7", (e,), "occupied edge joins two virtual vertices")
            others.append(o)
        if len(set(others)) != len(others):
            bad("7", (vid,), "occupied star has repeated endpoints")

    # condition 8: twinned stars bound the shared vertices
    for vid, x in S.V.items():
        if x.twin is None or vid > x.twin:
            continue
        t = S.V[x.twin]
        na = {S.V[n].orig for n in x.adj}
        nb = {S.V[n].orig for n in t.adj}
        shared = labels[x.skel] & labels[t.skel]
        if na != nb or shared != na:
            bad("8", (vid, x.twin), "twinned stars do not bound the shared vertices")

    # represented graph must match the recomputation from the maps
    if not out and represented_graph(S) != rep:
        bad("map", (), "stored represented graph differs from origV/origE image")
    return out


# -- serialization -------------------------------------------------------------------


def _vertex_label(S: ExtendedSkeletonDecomposition, v: int) -> tuple:
    x = S.V[v]
    if x.orig is not None:
        return (x.orig, 0)
    return (min((S.V[n].orig for n in x.adj), default=-1), 1)  # type: ignore[type-var]


def _label_text(S: ExtendedSkeletonDecomposition, v: int) -> str:
    x = S.V[v]
    if x.orig is not None:
        return str(x.orig)
    return "*" + ",".join(str(o) for o in sorted(S.V[n].orig for n in x.adj))  # type: ignore[type-var]


def _skeleton_lines(S: ExtendedSkeletonDecomposition, sid: int) -> tuple[tuple, list[str]]:
    sk = S.skeletons[sid]
    verts = sorted(sk.vertices, key=lambda v: (_vertex_label(S, v), _label_text(S, v)))
    vline = " ".join(_label_text(S, v) for v in verts)
    erows = []
    for e in sk.edges:
        r = S.E[e]
        ends = sorted((_label_text(S, r.a), _label_text(S, r.b)), key=_sort_text)
        tag = f"real#{r.ref}" if r.kind == REAL else r.kind
        erows.append((tuple(_sort_text(t) for t in ends), r.kind, r.ref if r.kind == REAL else -1, f"{ends[0]}-{ends[1]} {tag}"))
    erows.sort()
    key = (tuple(_vertex_label(S, v) for v in verts), tuple(row[:3] for row in erows))
    return key, [f"  vertices: {vline}", "  edges: " + ", ".join(row[3] for row in erows)]


def _sort_text(t: str) -> tuple:
    if t.startswith("*"):
        return (1, tuple(int(p) for p in t[1:].split(",") if p))
    return (0, (int(t),))


def dump(
    S: ExtendedSkeletonDecomposition, classify: Callable[[int], str] | None = None
) -> str:
    """Deterministic text form keyed on represented labels only."""
    blocks = []
    for sid in S.skeletons:
        key, lines = _skeleton_lines(S, sid)
        blocks.append((key, sid, lines))
    blocks.sort(key=lambda b: b[0])
    index = {sid: i for i, (_, sid, _) in enumerate(blocks)}
    out = []
    for i, (_, sid, lines) in enumerate(blocks):
        head = f"skeleton {i}"
        if classify is not None:
            head += f" {classify(sid)}"
        out.append(head)
        out.extend(lines)
    twins = []
    for a, b, kind, p, q in tree_edges(S):
        i, j = index[a], index[b]
        if kind == "E":
            r = S.E[p]
            lab = "-".join(sorted((_label_text(S, r.a), _label_text(S, r.b)), key=_sort_text))
        else:
            lab = "*" + _label_text(S, p)[1:]
        twins.append((min(i, j), max(i, j), kind, lab))
    twins.sort()
    out.append(" ".join(["tree:", "; ".join(f"{i}-{j} {k} {lab}" for i, j, k, lab in twins)]).rstrip())
    return "\n".join(out) + "\n"


def shape(S: ExtendedSkeletonDecomposition, sid: int) -> str:
    """Constant-time node kind, valid for skeletons of an SPQR-tree.

    Two vertices mean a bond, as many edges as vertices mean a polygon, and
    anything else is taken to be rigid.
    """
    sk = S.skeletons[sid]
    if len(sk.vertices) == 2:
        return BOND
    if len(sk.edges) == len(sk.vertices):
        return POLYGON
    return RIGID
