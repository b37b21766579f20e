import json
import random
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from jacobi_forests import Diagram, StructureError, stack, stack_all
from jacobi_forests.diagram import canonical_form, canonicalize, has_isolated_chord, is_forest, is_tree
from jacobi_forests.spaces import all_diagrams, trees

from _oracles import brute_isomorphic, random_relabel, relabel


def chord(legs, a, b):
    return Diagram.from_graph(legs, chords=[(a, b)])


TRIPOD = Diagram.from_graph([[0, 1, 2]], {"v": (0, 1, 2)})
DOUBLE_EDGE = Diagram.from_half_edges(
    [[0, 1]], ["a", "b"],
    [((0, 0), ("a", 0)), ((1, 0), ("b", 0)), (("a", 1), ("b", 2)), (("a", 2), ("b", 1))])


# ---- constructors and predicates ------------------------------------------

def test_tripod_relabel_gives_same_encoding():
    t1 = Diagram.from_graph([[0, 1, 2, 3]], {"u": (0, 1, "w"), "w": (2, 3, "u")})
    t2 = Diagram.from_graph([[0, 1, 2, 3]], {"w": (0, 1, "u"), "u": (2, 3, "w")})
    assert t1.encode() == t2.encode()
    assert t1.degree == 3


def test_single_chord_degree_and_size():
    c = chord([[0, 1]], 0, 1)
    assert (c.degree, c.size) == (1, 1)


def test_chord_plus_tripod():
    d = Diagram.from_graph([[0, 1, 2, 3, 4]], {"v": (1, 2, 3)}, chords=[(0, 4)])
    assert (d.degree, d.size) == (3, 2)
    assert TRIPOD.degree == 2


def test_tree_and_forest_predicates():
    assert is_tree(TRIPOD) and is_forest(TRIPOD)
    two = Diagram.from_graph([[0, 1, 2, 3]], chords=[(0, 1), (2, 3)])
    assert is_forest(two) and not is_tree(two)
    assert not is_forest(DOUBLE_EDGE) and DOUBLE_EDGE.betti == 1


def test_isolated_chord():
    assert has_isolated_chord(chord([[0, 1]], 0, 1))
    assert not has_isolated_chord(chord([[0], [1]], 0, 1))
    d = Diagram.from_graph([[0, 1, 2, 3, 4]], {"v": (1, 3, 4)}, chords=[(0, 2)])
    assert not has_isolated_chord(d)


def test_structure_errors_name_the_vertex():
    with pytest.raises(StructureError, match="'v'"):
        Diagram.from_graph([[0, 1]], {"v": (0, 1)})
    with pytest.raises(StructureError, match="vertex 0: port 0 is not attached"):
        Diagram.from_half_edges([[0, 1]], [], [])
    with pytest.raises(StructureError, match="tadpole"):
        Diagram.from_half_edges([[0]], ["v"], [((0, 0), ("v", 0)), (("v", 1), ("v", 2))])
    with pytest.raises(StructureError, match="without legs"):
        Diagram.from_half_edges([[0, 1]], ["a", "b"],
                                [((0, 0), (1, 0)), (("a", 0), ("b", 0)), (("a", 1), ("b", 2)),
                                 (("a", 2), ("b", 1))])


# ---- stacking --------------------------------------------------------------

def test_stack_unit():
    assert stack(Diagram.empty(1), TRIPOD) == TRIPOD
    assert stack(TRIPOD, Diagram.empty(1)) == TRIPOD


def test_stack_two_chords_on_two_strands():
    c = chord([[0], [1]], 0, 1)
    d = stack(c, c)
    assert (d.degree, d.size) == (2, 2)
    # lower chord owns the first leg on each strand
    first = d.leaf_at(0, 0)
    assert d.adj[first][0][0] == d.leaf_at(1, 0)


def test_stack_order_matches_interleaving():
    # stack(a, b) == stack(b, a) exactly when on every strand one of them has no legs
    ts = trees(2, 1)
    for a in ts:
        for b in ts:
            commute = a == b or all(x == 0 or y == 0 for x, y in zip(a.strands, b.strands))
            assert (stack(a, b) == stack(b, a)) == commute


def test_stack_all_puts_first_on_top():
    a, b = chord([[0, 1]], 0, 1), TRIPOD
    assert stack_all([a, b], 1) == stack(a, b)


def test_stack_strand_mismatch():
    with pytest.raises(StructureError):
        stack(TRIPOD, chord([[0], [1]], 0, 1))


@settings(max_examples=60, deadline=None)
@given(st.integers(0, 32), st.integers(0, 32))
def test_stack_degree_and_size_add(i, j):
    ds = all_diagrams(2, 2)
    a, b = ds[i % len(ds)], ds[j % len(ds)]
    d = stack(a, b)
    assert d.degree == a.degree + b.degree
    assert d.size == a.size + b.size


# ---- canonical form ----------------------------------------------------------

@pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (1, 3), (2, 1), (2, 2), (2, 3)])
def test_canonical_invariant_under_all_node_relabelings(m, n):
    rng = random.Random(m * 10 + n)
    for d in all_diagrams(m, n):
        raw = d.raw()
        nodes = raw[1]
        for image in permutations(nodes):
            perm = dict(zip(nodes, image))
            rot = {v: rng.randrange(3) for v in nodes}
            assert Diagram(*canonical_form(*relabel(raw, perm, rot))) == d


@pytest.mark.parametrize("m", [1, 2])
def test_canonical_invariant_degree_four_sampled(m):
    rng = random.Random(4 + m)
    ds = all_diagrams(m, 4)
    for d in rng.sample(ds, 150):
        for _ in range(5):
            assert Diagram(*canonical_form(*random_relabel(d.raw(), rng))) == d


def test_canonicalize_idempotent():
    for d in all_diagrams(2, 3):
        c = canonicalize(d)
        assert c == d and canonicalize(c).encode() == d.encode()


@pytest.mark.parametrize("m,n", [(1, 2), (2, 2)])
def test_distinct_classes_are_not_isomorphic(m, n):
    ds = all_diagrams(m, n)
    for i, a in enumerate(ds):
        for b in ds[i + 1:]:
            assert not brute_isomorphic(a.raw(), b.raw())


def test_relabelled_copies_are_isomorphic_by_brute_force():
    rng = random.Random(7)
    for d in all_diagrams(1, 3)[::5]:
        assert brute_isomorphic(d.raw(), random_relabel(d.raw(), rng))


# ---- encodings -----------------------------------------------------------------

@pytest.mark.parametrize("m,n", [(1, 3), (2, 3)])
def test_text_and_json_round_trip(m, n):
    for d in all_diagrams(m, n):
        assert Diagram.decode(d.encode()) == d
        assert Diagram.decode(d.encode()).encode() == d.encode()
        back = Diagram.from_json(json.loads(json.dumps(d.to_json())))
        assert back.encode() == d.encode()


def test_json_fields():
    data = TRIPOD.to_json()
    assert set(data) == {"strands", "legs", "nodes", "chords"}
    assert data["strands"] == 1 and data["legs"] == [[0, 1, 2]]


# ---- local operations ----------------------------------------------------------

def test_break_leg_then_merge():
    eq, cross = TRIPOD.break_leg(0)
    assert eq.is_chord() and cross.is_chord() and eq != cross
    # merging the two lowest legs of eq gives back the tripod up to the flip
    assert eq.merge(0, 0) in (TRIPOD, TRIPOD.flip(TRIPOD.n_leaves))


def test_merge_of_one_chord_is_none():
    assert chord([[0, 1]], 0, 1).merge(0, 0) is None


def test_swap_is_involution():
    for d in all_diagrams(1, 3):
        for p in range(d.strands[0] - 1):
            assert d.swap(0, p).swap(0, p) == d


def test_flip_is_involution():
    for d in all_diagrams(2, 2):
        for v in range(d.n_leaves, len(d.adj)):
            assert d.flip(v).flip(v) == d


def test_ihx_terms_of_double_edge_drop_tadpoles():
    edges = DOUBLE_EDGE.internal_edges()
    assert edges
    terms = DOUBLE_EDGE.ihx_terms(edges[0])
    assert terms[0] == DOUBLE_EDGE
    assert None in terms
