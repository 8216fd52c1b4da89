import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from helpers import grown_tree
from spqrdyn.decomposition import RIGID, DecompositionError, shape
from spqrdyn.generators import complete_graph, cycle, k33, prism
from spqrdyn.graph import graph_from_edges
from spqrdyn.oracle import cyclic_equal, menger3_bf, planar_bf, planar_embeddings_bf, reflection_class
from spqrdyn.planarity import NonPlanarError, RigidRegistry, is_planar, rotation, three_paths
from spqrdyn.spqr import build_spqr, insert_graph_spqr


def test_flag_on_classic_graphs():
    assert is_planar(build_spqr(complete_graph(4)))
    assert is_planar(build_spqr(prism()))
    assert not is_planar(build_spqr(complete_graph(5)))
    assert not is_planar(build_spqr(k33()))


def test_rotation_refused_when_nonplanar():
    S = build_spqr(complete_graph(5))
    x = next(iter(S.V))
    with pytest.raises(NonPlanarError):
        rotation(S, x)


def test_rotation_refused_outside_rigid():
    S = build_spqr(cycle(5))
    with pytest.raises(DecompositionError):
        rotation(S, next(iter(S.V)))


def test_flag_stays_false_after_growth():
    S = build_spqr(complete_graph(5))
    sq = graph_from_edges(4, [(0, 1), (1, 2), (2, 3), (3, 0)])
    insert_graph_spqr(S, 0, sq, {0: 1, 1: 2, 2: 3, 3: 4})
    assert not is_planar(S)


def test_registry_parity_matches_with_and_without_compression():
    rng = random.Random(5)
    a, b = RigidRegistry(True), RigidRegistry(False)
    ta = [a.make() for _ in range(40)]
    tb = [b.make() for _ in range(40)]
    for _ in range(80):
        i, j, m = rng.randrange(40), rng.randrange(40), rng.randint(0, 1)
        a.union(ta[i], ta[j], m)
        b.union(tb[i], tb[j], m)
        k = rng.randrange(40)
        assert a.parity(ta[k]) ^ a.parity(ta[0]) == b.parity(tb[k]) ^ b.parity(tb[0]) or (
            a.find(ta[k])[0] != a.find(ta[0])[0]
        )


@pytest.mark.parametrize("mismatch", [0, 1])
def test_registry_union_reverses_one_class(mismatch):
    r = RigidRegistry()
    x, y, z, w = (r.make() for _ in range(4))
    r.union(x, y, 1)
    r.union(z, w, 0)
    before = r.parity(x) ^ r.parity(z)
    r.union(y, w, mismatch)
    assert r.parity(x) ^ r.parity(y) == 1
    assert r.parity(z) ^ r.parity(w) == 0
    assert r.parity(x) ^ r.parity(z) == before ^ mismatch


def _check_rigids(S):
    for sid in list(S.skeletons):
        if shape(S, sid) != RIGID:
            continue
        embs = list(planar_embeddings_bf(S.skeleton_graph(sid), limit=12))
        xs = list(S.skeletons[sid].vertices)
        for x in xs:
            assert reflection_class(rotation(S, x)) == reflection_class(embs[0][x])
        exact = {x: rotation(S, x, exact=True) for x in xs}
        assert any(all(cyclic_equal(exact[x], e[x]) for x in xs) for e in embs)


@given(st.integers(0, 100_000), st.integers(4, 8))
@settings(max_examples=60, deadline=None)
def test_maintained_rotations_match_oracle(seed, n):
    S = grown_tree(random.Random(seed), n)
    # the flag never flips back, so only a true flag is checked against the oracle
    if is_planar(S):
        assert planar_bf(S.represented)
        _check_rigids(S)


@given(st.integers(0, 100_000), st.integers(4, 9))
@settings(max_examples=40, deadline=None)
def test_exact_rotations_agree_across_compression(seed, n):
    a = grown_tree(random.Random(seed), n, compress=True)
    b = grown_tree(random.Random(seed), n, compress=False)
    if not is_planar(a):
        assert not is_planar(b)
        return
    for x in a.V:
        if shape(a, a.V[x].skel) == RIGID:
            assert rotation(a, x, exact=True) == rotation(b, x, exact=True)


@given(st.integers(0, 100_000), st.integers(4, 10))
@settings(max_examples=60, deadline=None)
def test_three_paths_matches_menger(seed, n):
    rng = random.Random(seed)
    S = grown_tree(rng, n)
    w1, w2 = rng.sample(S.represented.vertices, 2)
    assert three_paths(S, w1, w2) == menger3_bf(S.represented, w1, w2)
