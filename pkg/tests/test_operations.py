import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import grown_graph, random_operation
from spqrdyn.decomposition import DecompositionError, represented_graph, trivial_decomposition, validate
from spqrdyn.generators import complete_graph, cycle
from spqrdyn.graph import graph_from_edges
from spqrdyn.operations import (
    exhaustive_integrate,
    exhaustive_join,
    insert_graph,
    insertable,
    integrate,
    isolate_vertex,
)
from spqrdyn.oracle import replace_bf


def _copy_of(S, w):
    return next(iter(S.alloc[w]))


def test_isolate_then_integrate():
    S = trivial_decomposition(complete_graph(4))
    before = represented_graph(S)
    va, vb, beta = isolate_vertex(S, _copy_of(S, 0))
    assert validate(S) == []
    assert S.V[va].twin == vb and S.V[vb].skel == beta
    integrate(S, va, vb)
    assert validate(S) == []
    assert represented_graph(S) == before
    assert len(S.skeletons) == 1


def test_insertable_cases():
    path = graph_from_edges(3, [(0, 1), (1, 2)])
    assert insertable(path, [0, 2])
    assert not insertable(path, [0, 1])  # marked cut vertex
    star = graph_from_edges(4, [(0, 3), (1, 3), (2, 3)])
    assert insertable(star, [0, 1, 2])
    # pendant path hanging off an unmarked vertex
    tail = graph_from_edges(5, [(0, 2), (1, 2), (2, 3), (3, 4)])
    assert not insertable(tail, [0, 1])
    assert not insertable(graph_from_edges(3, [(0, 1)]), [0, 1])
    assert not insertable(path, [0])


def test_insert_graph_into_cycle():
    S = trivial_decomposition(cycle(4))
    g_nu = graph_from_edges(4, [(0, 2), (2, 3), (3, 1)])
    want = replace_bf(S.represented, g_nu, 0, {0: 1, 1: 3})
    v, vn = insert_graph(S, 0, g_nu, {0: 1, 1: 3})
    assert validate(S) == []
    assert S.V[v].twin == vn
    assert represented_graph(S).num_vertices() == want.num_vertices() == 5
    exhaustive_integrate(S)
    exhaustive_join(S)
    assert validate(S) == []
    assert len(S.skeletons) == 1


def test_insert_rejects_arity_and_cut_vertices():
    S = trivial_decomposition(cycle(4))
    with pytest.raises(DecompositionError, match="arity"):
        insert_graph(S, 0, graph_from_edges(2, [(0, 1)]), {0: 1})
    with pytest.raises(DecompositionError, match="cut vertex"):
        insert_graph(S, 0, graph_from_edges(3, [(0, 1), (1, 2)]), {0: 1, 1: 3})
    assert validate(S) == []


@given(st.integers(0, 100_000))
@settings(max_examples=120, deadline=None)
def test_random_operations_keep_decomposition_valid(seed):
    rng = random.Random(seed)
    S = trivial_decomposition(grown_graph(rng, rng.randint(4, 9)))
    for _ in range(rng.randint(1, 20)):
        done = random_operation(rng, S)
        if done is None:
            continue
        name, want = done
        assert validate(S) == [], name
        got = represented_graph(S)
        assert got.num_vertices() == want.num_vertices(), name
        assert got.num_edges() == want.num_edges(), name
