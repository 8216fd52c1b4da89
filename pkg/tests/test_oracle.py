import random

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import random_simple_biconnected
from spqrdyn.generators import complete_graph, cycle, k33, prism, wheel
from spqrdyn.graph import graph_from_edges, is_biconnected
from spqrdyn.oracle import (
    OracleSizeError,
    cyclic_equal,
    is_triconnected_bf,
    menger3_bf,
    merge_bf,
    planar_bf,
    planar_embeddings_bf,
    reflection_class,
    replace_bf,
    rotations_at_bf,
    separation_pairs_bf,
)
from spqrdyn.planarity import embed_skeleton

THETA = graph_from_edges(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])


def _nx(g):
    h = nx.MultiGraph()
    h.add_nodes_from(g.vertices)
    h.add_edges_from(g.endpoints(e) for e in g.edges)
    return h


def test_separation_pairs_examples():
    assert separation_pairs_bf(complete_graph(4)) == set()
    assert separation_pairs_bf(cycle(4)) == {frozenset((0, 2)), frozenset((1, 3))}
    assert frozenset((0, 1)) in separation_pairs_bf(THETA)


def test_parallel_pairs_count_with_flag():
    g = graph_from_edges(3, [(0, 1), (0, 1), (1, 2), (2, 0)])
    assert separation_pairs_bf(g) == set()
    assert separation_pairs_bf(g, parallel=True) == {frozenset((0, 1))}


def test_triconnected():
    assert is_triconnected_bf(complete_graph(4))
    assert is_triconnected_bf(prism())
    assert not is_triconnected_bf(cycle(5))
    assert not is_triconnected_bf(graph_from_edges(4, [(0, 1), (0, 1), (1, 2), (2, 3), (3, 0), (0, 2), (1, 3)]))


def test_planarity_examples():
    assert not planar_bf(complete_graph(5))
    assert not planar_bf(k33())
    assert planar_bf(prism())
    assert all(planar_bf(wheel(k)) for k in range(3, 8))


def test_size_guard():
    with pytest.raises(OracleSizeError):
        planar_bf(cycle(12))


def test_rotation_classes():
    assert len(rotations_at_bf(complete_graph(4), 0)) == 1
    assert len(rotations_at_bf(THETA, 0)) == 1
    assert len(rotations_at_bf(cycle(5), 0)) == 1
    # four parallel paths: (4-1)!/2 orders up to reflection
    four = graph_from_edges(6, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1), (0, 5), (5, 1)])
    assert len(rotations_at_bf(four, 0)) == 3


def test_reflection_class_and_cyclic_equal():
    assert reflection_class([3, 1, 2]) == reflection_class([2, 1, 3])
    assert reflection_class([3, 1, 2]) == (1, 2, 3)
    assert cyclic_equal([1, 2, 3], [3, 1, 2])
    assert not cyclic_equal([1, 2, 3], [3, 2, 1])


def test_menger_examples():
    assert menger3_bf(complete_graph(4), 0, 1)
    assert not menger3_bf(cycle(4), 0, 2)
    assert not menger3_bf(graph_from_edges(3, [(0, 1), (1, 2)]), 0, 2)
    assert menger3_bf(THETA, 0, 1)
    assert not menger3_bf(THETA, 2, 3)


def test_replace_cycle_with_two_inner_vertices():
    g = replace_bf(cycle(4), graph_from_edges(4, [(0, 2), (2, 3), (3, 1)]), 0, {0: 1, 1: 3})
    assert g.num_vertices() == 5 and g.num_edges() == 5
    assert nx.is_isomorphic(nx.Graph(_nx(g)), nx.cycle_graph(5))


def test_replace_by_edge_between_marked_shortens_cycle():
    g = replace_bf(cycle(4), graph_from_edges(2, [(0, 1)]), 0, {0: 1, 1: 3})
    assert nx.is_isomorphic(nx.Graph(_nx(g)), nx.cycle_graph(3))


def test_replace_k4_vertex_by_marked_triangle_doubles_triangle():
    g = replace_bf(complete_graph(4), graph_from_edges(3, [(0, 1), (1, 2), (2, 0)]), 0, {0: 1, 1: 2, 2: 3})
    assert g.num_vertices() == 3 and g.num_edges() == 6
    assert all(len(g.edges_between(a, b)) == 2 for a, b in [(1, 2), (2, 3), (1, 3)])


def test_replace_by_star_is_identity():
    star = graph_from_edges(4, [(0, 3), (1, 3), (2, 3)])
    g = replace_bf(complete_graph(4), star, 0, {0: 1, 1: 2, 2: 3})
    assert nx.is_isomorphic(_nx(g), _nx(complete_graph(4)))


def test_replace_arity_mismatch():
    with pytest.raises(Exception):
        replace_bf(complete_graph(4), graph_from_edges(2, [(0, 1)]), 0, {0: 1, 1: 2})


def test_merge_two_k4():
    g1, g2 = complete_graph(4), complete_graph(4)
    phi = dict(zip(g1.incident(0), g2.incident(0)))
    g = merge_bf(g1, g2, 0, 0, phi)
    assert g.num_vertices() == 6 and g.num_edges() == 9
    assert nx.is_isomorphic(_nx(g), _nx(prism()))


@given(st.integers(0, 100_000), st.integers(3, 7))
@settings(max_examples=120, deadline=None)
def test_planarity_deciders_agree(seed, n):
    g = random_simple_biconnected(random.Random(seed), n)
    want = nx.check_planarity(nx.Graph(_nx(g)))[0]
    assert planar_bf(g) == want
    assert (embed_skeleton(g) is not None) == want


@given(st.integers(0, 100_000), st.integers(3, 6))
@settings(max_examples=60, deadline=None)
def test_every_enumerated_embedding_is_planar(seed, n):
    g = random_simple_biconnected(random.Random(seed), n)
    for rot in planar_embeddings_bf(g):
        # Euler: faces = m - n + 2
        faces, seen = 0, set()
        for v, order in rot.items():
            for e in order:
                if (e, v) in seen:
                    continue
                faces += 1
                x, f = v, e
                while (f, x) not in seen:
                    seen.add((f, x))
                    y = g.opposite(f, x)
                    ry = rot[y]
                    f = ry[(ry.index(f) + 1) % len(ry)]
                    x = y
        assert faces == g.num_edges() - g.num_vertices() + 2


@given(st.integers(0, 100_000), st.integers(3, 7))
@settings(max_examples=60, deadline=None)
def test_menger_matches_networkx(seed, n):
    rng = random.Random(seed)
    g = random_simple_biconnected(rng, n)
    h = nx.Graph(_nx(g))
    a, b = rng.sample(range(n), 2)
    if h.has_edge(a, b):
        h.remove_edge(a, b)
        flow = nx.node_connectivity(h, a, b) + 1
    else:
        flow = nx.node_connectivity(h, a, b)
    assert menger3_bf(g, a, b) == (flow >= 3)
    assert is_biconnected(g)
