import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import grown_graph, grown_tree
from spqrdyn.decomposition import BOND, POLYGON, RIGID, DecompositionError, trivial_decomposition, validate
from spqrdyn.generators import complete_graph, cycle, prism
from spqrdyn.graph import graph_from_edges
from spqrdyn.oracle import merge_bf
from spqrdyn.spqr import (
    build_spqr,
    canonical_form,
    classify_skeleton,
    insert_graph_spqr,
    is_spqr,
    merge_spqr,
)


def _kinds(S):
    return sorted(classify_skeleton(S, sid) for sid in S.skeletons)


def test_build_single_nodes():
    assert _kinds(build_spqr(complete_graph(4))) == [RIGID]
    assert _kinds(build_spqr(cycle(6))) == [POLYGON]
    assert _kinds(build_spqr(graph_from_edges(2, [(0, 1)] * 4))) == [BOND]


def test_build_theta():
    theta = graph_from_edges(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])
    S = build_spqr(theta)
    assert _kinds(S) == [BOND, POLYGON, POLYGON, POLYGON]
    assert is_spqr(S) and validate(S) == []


def test_build_two_k4_glued_on_an_edge():
    g = graph_from_edges(6, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (0, 4), (1, 4), (0, 5), (1, 5), (4, 5)])
    S = build_spqr(g)
    assert _kinds(S) == [BOND, RIGID, RIGID]


def test_insert_needs_spqr_tree():
    with pytest.raises(DecompositionError):
        insert_graph_spqr(trivial_decomposition(cycle(4)), 0, graph_from_edges(2, [(0, 1)]), {0: 1, 1: 3})


def test_insert_turns_k4_vertex_into_triangle_prism():
    S = build_spqr(complete_graph(4))
    tri = graph_from_edges(3, [(0, 1), (1, 2), (2, 0)])
    insert_graph_spqr(S, 0, tri, {0: 1, 1: 2, 2: 3})
    # the triangle's marked vertices coincide with the neighbors, so edges double up
    assert validate(S) == [] and is_spqr(S)
    assert canonical_form(S) == canonical_form(build_spqr(S.represented))


@given(st.integers(0, 100_000), st.integers(4, 11))
@settings(max_examples=80, deadline=None)
def test_incremental_equals_rebuild(seed, n):
    S = grown_tree(random.Random(seed), n)
    assert validate(S) == []
    assert is_spqr(S)
    assert canonical_form(S) == canonical_form(build_spqr(S.represented))


@given(st.integers(0, 100_000), st.integers(4, 10))
@settings(max_examples=40, deadline=None)
def test_build_is_deterministic(seed, n):
    g = grown_graph(random.Random(seed), n)
    assert canonical_form(build_spqr(g)) == canonical_form(build_spqr(g.copy(), compress=False))


def test_merge_two_k4_gives_prism():
    S1, S2 = build_spqr(complete_graph(4)), build_spqr(complete_graph(4))
    phi = dict(zip(S1.represented.incident(0), S2.represented.incident(0)))
    want = merge_bf(S1.represented, S2.represented, 0, 0, phi)
    S = merge_spqr(S1, S2, 0, 0, phi)
    assert S.represented == want
    assert _kinds(S) == [RIGID]
    assert canonical_form(S) == canonical_form(build_spqr(want))
    assert S.represented.num_edges() == prism().num_edges()


@given(st.integers(0, 100_000))
@settings(max_examples=40, deadline=None)
def test_random_merges_equal_rebuild(seed):
    rng = random.Random(seed)
    S1 = grown_tree(rng, rng.randint(3, 8))
    S2 = grown_tree(rng, rng.randint(3, 8))
    g1, g2 = S1.represented, S2.represented
    pairs = [(a, b) for a in g1.vertices for b in g2.vertices if g1.degree(a) == g2.degree(b)]
    if not pairs:
        return
    v1, v2 = rng.choice(pairs)
    inc2 = g2.incident(v2)
    rng.shuffle(inc2)
    phi = dict(zip(g1.incident(v1), inc2))
    want = merge_bf(g1, g2, v1, v2, phi)
    S = merge_spqr(S1, S2, v1, v2, phi)
    assert S.represented == want
    assert validate(S) == []
    assert canonical_form(S) == canonical_form(build_spqr(want))


def test_rejected_insert_leaves_tree_intact():
    S = build_spqr(prism())
    before = canonical_form(S)
    with pytest.raises(DecompositionError):
        insert_graph_spqr(S, 0, graph_from_edges(3, [(0, 1), (1, 2)]), dict(zip([0, 1, 2], prism().neighbors(0))))
    assert S.spqr and validate(S) == []
    assert canonical_form(S) == before
