"""Shared generators for the test-suite."""

from __future__ import annotations

import itertools
import random

from spqrdyn.decomposition import OCCUPIED, VIRTUAL, DecompositionError, ExtendedSkeletonDecomposition
from spqrdyn.generators import expansion_step, inserted_graph, random_phi, seed_graph
from spqrdyn.graph import Multigraph, bridges_at, graph_from_edges, is_biconnected
from spqrdyn.operations import insert_graph, integrate, isolate_vertex, join_separation_pair, split_separation_pair
from spqrdyn.oracle import replace_bf
from spqrdyn.spqr import build_spqr, insert_graph_spqr


def grown_graph(rng: random.Random, n: int) -> Multigraph:
    """Biconnected multigraph with ``n`` vertices, grown by expansions of a seed."""
    g = seed_graph(rng)
    while g.num_vertices() < n:
        u, g_nu, phi = expansion_step(rng, g, n - g.num_vertices())
        g = replace_bf(g, g_nu, u, phi)
    return g


def grown_tree(rng: random.Random, n: int, compress: bool = True) -> ExtendedSkeletonDecomposition:
    """SPQR-tree maintained through random expansions until ``n`` vertices."""
    S = build_spqr(seed_graph(rng), compress)
    while S.represented.num_vertices() < n:
        u, g_nu, phi = expansion_step(rng, S.represented, n - S.represented.num_vertices())
        insert_graph_spqr(S, u, g_nu, phi)
    return S


def random_simple_biconnected(rng: random.Random, n: int) -> Multigraph:
    pairs = list(itertools.combinations(range(n), 2))
    while True:
        g = graph_from_edges(n, rng.sample(pairs, rng.randint(n, len(pairs))))
        if is_biconnected(g):
            return g


def _try_split(rng: random.Random, S: ExtendedSkeletonDecomposition) -> bool:
    sid = rng.choice(list(S.skeletons))
    regular = [x for x in S.skeletons[sid].vertices if not S.V[x].virtual]
    if len(regular) < 2:
        return False
    g = S.skeleton_graph(sid)
    pairs = list(itertools.combinations(regular, 2))
    rng.shuffle(pairs)
    for u, v in pairs[:6]:
        bridges = bridges_at(g, u, v)
        if len(bridges) < 2:
            continue
        picked = [b for b in bridges if rng.random() < 0.5] or [bridges[0]]
        if len(picked) == len(bridges):
            picked.pop()
        try:
            split_separation_pair(S, sid, (u, v), [b[0] for b in picked])
        except DecompositionError:
            continue
        return True
    return False


def random_operation(rng: random.Random, S: ExtendedSkeletonDecomposition) -> tuple[str, Multigraph] | None:
    """Apply one random legal operation.

    Returns its name and the represented graph it should leave behind, or
    ``None`` if the pick did not apply.
    """
    before = S.represented.copy()
    done = _random_operation(rng, S)
    if done is None:
        return None
    name, want = done
    return name, want if want is not None else before


def _random_operation(rng: random.Random, S: ExtendedSkeletonDecomposition) -> tuple[str, Multigraph | None] | None:
    kind = rng.choice(("split", "split", "join", "isolate", "integrate", "insert"))
    if kind == "split":
        return ("split", None) if _try_split(rng, S) else None
    if kind == "join":
        virt = [e for e, r in S.E.items() if r.kind == VIRTUAL]
        if not virt:
            return None
        join_separation_pair(S, rng.choice(virt))
        return "join", None
    if kind == "isolate":
        cands = [
            x
            for x, r in S.V.items()
            if not r.virtual
            and len(S.skeletons[r.skel].vertices) >= 3
            and not any(S.E[e].kind == OCCUPIED for e in r.inc)
        ]
        if not cands:
            return None
        isolate_vertex(S, rng.choice(cands))
        return "isolate", None
    if kind == "integrate":
        centers = [x for x, r in S.V.items() if r.virtual]
        if not centers:
            return None
        c = rng.choice(centers)
        integrate(S, c, S.V[c].twin)  # type: ignore[arg-type]
        return "integrate", None
    single = [u for u, vs in S.alloc.items() if len(vs) == 1]
    rng.shuffle(single)
    for u in single[:4]:
        v = next(iter(S.alloc[u]))
        nbrs = [S.V[y].orig for y in S.V[v].adj]
        if len(nbrs) < 2 or None in nbrs or S.represented.num_vertices() > 11:
            continue
        g_nu, marked = inserted_graph(rng, len(nbrs), rng.randint(0, 2), rng.randint(0, 1))
        phi = random_phi(rng, marked, nbrs)  # type: ignore[arg-type]
        want = replace_bf(S.represented, g_nu, u, phi)
        insert_graph(S, u, g_nu, phi)
        return "insert", want
    return None
