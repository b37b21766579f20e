import random
from collections import Counter
from math import factorial

import pytest
from hypothesis import given, settings, strategies as st

from jacobi_forests import permutograph as P


@pytest.mark.parametrize("mults", [[(1, 1, 1)], [(2, 1)], [(2, 2)], [(1, 1), (2, 1)], [(3, 2, 1)]])
def test_vertex_counts_are_multinomials(mults):
    vs = P.vertices(mults)
    assert len(vs) == len(set(vs)) == P.vertex_count(mults)


def test_s3_is_a_hexagon():
    vs = P.vertices([(1, 1, 1)])
    assert len(vs) == factorial(3)
    assert len(P.edges(vs)) == 6
    assert all(len(P.neighbors(v)) == 2 for v in vs)


def test_heights():
    assert P.height((1, 2)) == 0 and P.height((2, 1)) == 1
    assert max(P.height(v) for v in P.vertices([(2, 1)])) == 2
    for u, w in P.edges(P.vertices([(2, 1, 1), (1, 1)])):
        assert abs(P.height(u) - P.height(w)) == 1


def test_move_on_equal_letters_rejected():
    with pytest.raises(ValueError):
        P.apply(((1, 1),), (0, 0))


def test_square_decomposes_to_itself():
    v = ((2, 1), (2, 1))
    cyc = [v, P.apply(v, (0, 0)), P.apply(P.apply(v, (0, 0)), (1, 0)), P.apply(v, (1, 0))]
    atoms = P.decompose_cycle(cyc)
    assert [a.kind for a in atoms if a.kind != "backtrack"] == ["square"]
    assert all(a.chain == Counter() for a in atoms if a.kind == "backtrack")
    assert P.add_chains(a.chain for a in atoms) == P.chain(cyc)


def test_backtrack():
    v = ((1, 2),)
    atoms = P.decompose_cycle([v, P.apply(v, (0, 0))])
    assert [a.kind for a in atoms] == ["backtrack"]
    assert atoms[0].chain == Counter()


def test_hexagon_of_s3():
    (cyc,) = P.spanning_tree_cycles(P.vertices([(1, 1, 1)]))
    assert len(cyc) == 6
    atoms = P.decompose_cycle(cyc)
    assert [a.kind for a in atoms if a.kind != "backtrack"] == ["hexagon"]
    assert P.add_chains(a.chain for a in atoms) == P.chain(cyc)


def test_not_a_walk():
    with pytest.raises(ValueError):
        P.decompose_cycle([((1, 2, 3),), ((3, 2, 1),)])


def test_cycle_space_rank():
    # number of fundamental cycles = E - V + 1 for a connected graph
    vs = P.vertices([(2, 1, 1), (1, 1)])
    assert len(P.spanning_tree_cycles(vs)) == len(P.edges(vs)) - len(vs) + 1


def _random_closed_walk(mults, length, rng):
    v0 = rng.choice(P.vertices(mults))
    walk, cur = [v0], v0
    for _ in range(length):
        cur = rng.choice(P.neighbors(cur))[1]
        walk.append(cur)
    back = P.path_between(cur, v0)
    for mv in back:
        cur = P.apply(cur, mv)
        walk.append(cur)
    assert walk[-1] == v0
    return walk[:-1]


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([[(1, 1, 1)], [(2, 1, 1)], [(1, 1, 1, 1)], [(1, 1), (2, 1)], [(2, 2, 1)]]),
       st.integers(1, 14), st.randoms(use_true_random=False))
def test_random_closed_walks_decompose_exactly(mults, length, rnd):
    walk = _random_closed_walk(mults, length, rnd)
    if len(walk) < 2:
        return
    atoms = P.decompose_cycle(walk)
    assert P.add_chains(a.chain for a in atoms) == P.chain(walk)
    for a in atoms:
        assert len(a.cycle) == {"backtrack": 2, "square": 4, "hexagon": 6}[a.kind]
        assert P.is_closed_walk(a.cycle)


def test_closed_walks_have_even_length():
    rng = random.Random(3)
    for _ in range(50):
        walk = _random_closed_walk([(2, 1, 1), (1, 2)], rng.randint(1, 10), rng)
        assert len(walk) % 2 == 0


def test_path_between_reaches_target_with_inversion_count_steps():
    rng = random.Random(5)
    vs = P.vertices([(2, 2, 1)])
    for _ in range(30):
        u, w = rng.choice(vs), rng.choice(vs)
        cur = u
        path = P.path_between(u, w)
        for mv in path:
            cur = P.apply(cur, mv)
        assert cur == w
        if w == vs[0]:
            assert len(path) == P.height(u)


def test_dot_export():
    text = P.to_dot(P.vertices([(1, 1)]))
    assert text.startswith("graph G {")
    assert text.count(" -- ") == 1
