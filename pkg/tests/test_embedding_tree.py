import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import grown_tree
from spqrdyn.embedding_tree import (
    MAX_ENUM_DEGREE,
    P_NODE,
    Q_NODE,
    admissible_rotations,
    embedding_tree,
    reflection_key,
)
from spqrdyn.generators import complete_graph, cycle, wheel
from spqrdyn.graph import graph_from_edges
from spqrdyn.oracle import planar_bf, reflection_class, rotations_at_bf
from spqrdyn.planarity import NonPlanarError, is_planar
from spqrdyn.spqr import build_spqr

THETA = graph_from_edges(5, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1)])


def test_degree_two_vertex():
    S = build_spqr(cycle(5))
    t = embedding_tree(S, 0)
    assert t.census() == {P_NODE: 1, Q_NODE: 0}
    assert t.leaves() == sorted(S.represented.incident(0))
    assert t.term().startswith("P(")


def test_theta_pole_is_one_p_node():
    t = embedding_tree(build_spqr(THETA), 0)
    assert t.census() == {P_NODE: 1, Q_NODE: 0}
    assert len(t.leaves()) == 3
    assert len(admissible_rotations(t)) == 1


def test_k4_vertex_is_one_q_node():
    t = embedding_tree(build_spqr(complete_graph(4)), 0)
    assert t.census() == {P_NODE: 0, Q_NODE: 1}
    assert t.term().startswith("Q[")


def test_four_paths_give_three_rotations():
    four = graph_from_edges(6, [(0, 2), (2, 1), (0, 3), (3, 1), (0, 4), (4, 1), (0, 5), (5, 1)])
    t = embedding_tree(build_spqr(four), 0)
    assert len(admissible_rotations(t)) == 3


def test_wheel_hub():
    t = embedding_tree(build_spqr(wheel(6)), 0)
    assert t.census()[Q_NODE] == 1
    assert len(admissible_rotations(t)) == 1


def test_nonplanar_refused():
    with pytest.raises(NonPlanarError):
        embedding_tree(build_spqr(complete_graph(5)), 0)


def test_enumeration_guard():
    star = graph_from_edges(2, [(0, 1)] * (MAX_ENUM_DEGREE + 1))
    t = embedding_tree(build_spqr(star), 0)
    with pytest.raises(ValueError):
        admissible_rotations(t)


def test_reflection_key():
    assert reflection_key([3, 1, 2]) == reflection_key([2, 1, 3]) == (1, 2, 3)
    assert reflection_key([]) == ()


def test_term_is_stable():
    a = embedding_tree(build_spqr(THETA), 0).term()
    b = embedding_tree(build_spqr(THETA.copy()), 0).term()
    assert a == b


@given(st.integers(0, 100_000), st.integers(4, 7))
@settings(max_examples=60, deadline=None)
def test_admissible_rotations_match_oracle(seed, n):
    rng = random.Random(seed)
    S = grown_tree(rng, n)
    if not is_planar(S) or not planar_bf(S.represented):
        return
    w = rng.choice(S.represented.vertices)
    if S.represented.degree(w) > MAX_ENUM_DEGREE:
        return
    got = admissible_rotations(embedding_tree(S, w))
    want = {reflection_class(r) for r in rotations_at_bf(S.represented, w)}
    assert {reflection_class(r) for r in got} == want
