"""Embedding trees: the PQ-tree of all rotations a vertex can have in a planar embedding.

The tree is read off the allocation skeletons of a represented vertex. Bond
poles turn into P-nodes, rigid vertices into Q-nodes ordered by their
maintained rotation, and polygons are passed through without a node.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .decomposition import (
    BOND,
    POLYGON,
    REAL,
    DecompositionError,
    ExtendedSkeletonDecomposition,
    allocation_vertices,
    shape,
)
from .planarity import NonPlanarError, state_of

P_NODE = "P"
Q_NODE = "Q"
MAX_ENUM_DEGREE = 8

# a neighbor is either ("leaf", represented edge) or ("node", node id)
Slot = tuple[str, int]


@dataclass
class Node:
    kind: str
    nbrs: list[Slot] = field(default_factory=list)


@dataclass
class EmbeddingTree:
    """Unrooted PQ-tree over the edges incident to ``vertex``.

    Q-node neighbor lists are in cyclic order; P-node lists are unordered.
    ``visited`` counts the skeleton elements inspected while building.
    """

    vertex: int
    nodes: dict[int, Node]
    visited: int = 0

    def leaves(self) -> list[int]:
        return sorted(h for n in self.nodes.values() for k, h in n.nbrs if k == "leaf")

    def census(self) -> dict[str, int]:
        out = {P_NODE: 0, Q_NODE: 0}
        for n in self.nodes.values():
            out[n.kind] += 1
        return out

    def root(self) -> int:
        """The node next to the smallest leaf."""
        best = min((h, nid) for nid, n in self.nodes.items() for k, h in n.nbrs if k == "leaf")
        return best[1]

    def _children(self, nid: int, parent: int | None) -> list[Slot]:
        nbrs = self.nodes[nid].nbrs
        if parent is None:
            return list(nbrs)
        i = nbrs.index(("node", parent))
        return nbrs[i + 1 :] + nbrs[:i]

    def _min_leaf(self, slot: Slot, parent: int) -> int:
        kind, h = slot
        if kind == "leaf":
            return h
        return min(self._min_leaf(c, h) for c in self._children(h, parent))

    def term(self) -> str:
        """Bracketed form, ``P(...)`` and ``Q[...]`` with edge ids as leaves."""
        return self._term(self.root(), None)

    def _term(self, nid: int, parent: int | None) -> str:
        node = self.nodes[nid]
        kids = self._children(nid, parent)
        keys = [self._min_leaf(c, nid) for c in kids]
        if node.kind == P_NODE:
            order = sorted(range(len(kids)), key=keys.__getitem__)
        else:
            order = list(range(len(kids)))
            if parent is None:
                start = min(order, key=keys.__getitem__)
                order = order[start:] + order[:start]
                if len(order) > 2 and keys[order[1]] > keys[order[-1]]:
                    order = [order[0]] + order[1:][::-1]
            elif keys[order[0]] > keys[order[-1]]:
                order.reverse()
        parts = [str(kids[i][1]) if kids[i][0] == "leaf" else self._term(kids[i][1], nid) for i in order]
        if node.kind == P_NODE:
            return "P(" + ",".join(parts) + ")"
        return "Q[" + ",".join(parts) + "]"


def embedding_tree(S: ExtendedSkeletonDecomposition, v: int) -> EmbeddingTree:
    """Embedding tree of represented vertex ``v``, in time linear in its degree."""
    st = state_of(S)
    if not st.planar:
        raise NonPlanarError("the represented graph is not planar")
    if not S.spqr:
        raise DecompositionError("embedding trees need an SPQR-tree")
    start = allocation_vertices(S, v)[0]
    tree = EmbeddingTree(v, {})

    def follow(x: int, f: int) -> Slot:
        # walk across virtual edge f at x, stepping through polygons
        while True:
            tree.visited += 1
            r = S.E[f]
            if r.kind == REAL:
                return ("leaf", r.ref)  # type: ignore[return-value]
            t = S.E[r.ref]  # type: ignore[index]
            y = t.a if S.V[t.a].orig == v else t.b
            if shape(S, S.V[y].skel) != POLYGON:
                return ("node", y)
            f = next(g for g in S.V[y].inc if g != r.ref)
            x = y

    def edges_at(x: int) -> list[int]:
        tree.visited += len(S.V[x].inc)
        if shape(S, S.V[x].skel) == BOND:
            return list(S.V[x].inc)
        if x not in st.rot:
            raise DecompositionError(f"vertex {x} has no recorded rotation")
        return st.effective(x)

    if shape(S, S.V[start].skel) == POLYGON:
        a, b = (follow(start, f) for f in S.V[start].inc)
        if a[0] == "leaf" and b[0] == "leaf":
            tree.nodes[start] = Node(P_NODE, [a, b])
            return tree
        start = a[1] if a[0] == "node" else b[1]
    todo = [start]
    while todo:
        x = todo.pop()
        if x in tree.nodes:
            continue
        kind = P_NODE if shape(S, S.V[x].skel) == BOND else Q_NODE
        node = Node(kind, [follow(x, f) for f in edges_at(x)])
        tree.nodes[x] = node
        todo.extend(h for k, h in node.nbrs if k == "node" and h not in tree.nodes)
    return tree


def _frontiers(tree: EmbeddingTree, nid: int, parent: int | None) -> Iterator[list[int]]:
    """Every leaf sequence below ``nid``, as seen from ``parent``."""
    node = tree.nodes[nid]
    kids = tree._children(nid, parent)

    def sub(slot: Slot) -> list[list[int]]:
        if slot[0] == "leaf":
            return [[slot[1]]]
        return list(_frontiers(tree, slot[1], nid))

    options = [sub(c) for c in kids]
    if node.kind == P_NODE:
        arrangements = itertools.permutations(range(len(kids)))
    else:
        arrangements = iter([tuple(range(len(kids))), tuple(reversed(range(len(kids))))])
    for perm in arrangements:
        for combo in itertools.product(*(options[i] for i in perm)):
            yield [h for part in combo for h in part]


def reflection_key(order: list[int] | tuple[int, ...]) -> tuple[int, ...]:
    """Smallest rotation of a cyclic order or of its reverse."""
    seq = list(order)
    cands = [tuple(c[i:] + c[:i]) for c in (seq, seq[::-1]) for i in range(len(seq))]
    return min(cands) if cands else ()


def admissible_rotations(tree: EmbeddingTree) -> set[tuple[int, ...]]:
    """All rotations the tree allows, as reflection classes. Small degrees only."""
    if len(tree.leaves()) > MAX_ENUM_DEGREE:
        raise ValueError(f"degree above {MAX_ENUM_DEGREE} is too large to enumerate")
    return {reflection_key(f) for f in _frontiers(tree, tree.root(), None)}
