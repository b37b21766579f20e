import pytest

from jacobi_forests import Diagram
from jacobi_forests.linalg import Span
from jacobi_forests.relations import (gen_1T, gen_4T, gen_AS, gen_HEX, gen_IHX, gen_STU, gen_STU2, gen_squares,
                                      hexagon_vectors, slide_sites, stu_vector)
from jacobi_forests.spaces import (Ambient, all_diagrams, chord_algebra, chords, forest_algebra, forests,
                                   full_algebra, trees)

TRIPOD = Diagram.from_graph([[0, 1, 2]], {"v": (0, 1, 2)})


def test_as_on_chord_is_empty():
    assert gen_AS([Diagram.from_graph([[0, 1]], chords=[(0, 1)])]) == []


def test_as_on_tripod():
    rels = gen_AS([TRIPOD])
    assert len(rels) == 1
    assert sorted(rels[0].vector.values()) == [1, 1]
    assert TRIPOD.flip(TRIPOD.n_leaves) in rels[0].vector


def test_as_on_degree_three_trees_two_per_diagram():
    for t in trees(1, 3):
        assert len(gen_AS([t])) == 2


@pytest.mark.parametrize("m,n", [(1, 1), (1, 2), (2, 2)])
def test_ihx_needs_an_internal_edge(m, n):
    assert gen_IHX(trees(m, n)) == []


def test_ihx_terms_are_three_with_unit_coefficients():
    rels = gen_IHX(trees(1, 3))
    assert rels
    for r in rels:
        assert len(r.vector) <= 3 and all(c in (1, 2, 3) for c in r.vector.values())


@pytest.mark.parametrize("m,n", [(1, 3), (2, 3)])
def test_ihx_follows_from_stu_and_as(m, n):
    ds = all_diagrams(m, n)
    amb = Ambient(ds)
    span = Span([amb.vector(r.vector) for r in gen_STU(ds) + gen_AS(ds)])
    for r in gen_IHX(ds):
        assert span.contains(amb.vector(r.vector))


def test_stu_on_tripod():
    v = stu_vector(TRIPOD, 0)
    assert v[TRIPOD] == -1
    assert sorted(v.values()) == [-1, -1, 1]
    assert all(d.is_chord() for d in v if d != TRIPOD)


def test_forest_degree_two_one_strand_dimension_one():
    assert forest_algebra(1, 2).dim == 1


def test_four_term_shape():
    rels = gen_4T(chords(1, 3))
    assert rels
    for r in rels:
        assert len(r.vector) <= 4 and set(r.vector.values()) <= {-2, -1, 1, 2}
        assert sum(r.vector.values()) == 0


def test_one_t_picks_isolated_chords():
    cs = chords(1, 2)
    assert len(gen_1T(cs)) == 2


def test_no_hexagons_among_single_trees():
    # a braiding hexagon needs three distinct trees
    assert gen_HEX(forests(2, 3, 2)) == [] and gen_HEX(forests(1, 4, 2)) == []
    assert all(hexagon_vectors(t) == [] for t in trees(2, 3))
    assert gen_HEX(forests(1, 3, 3))


@pytest.mark.parametrize("m,n", [(1, 3), (2, 3), (1, 4)])
def test_relations_preserve_size(m, n):
    for s in range(1, n):
        fs = forests(m, n, s + 1)
        for r in gen_squares(fs) + gen_HEX(fs):
            assert {d.size for d in r.vector} == {s}
    fs = forests(m, n)
    for r in gen_AS(fs) + gen_IHX(fs):
        assert len({d.size for d in r.vector}) == 1


@pytest.mark.parametrize("m,n", [(1, 2), (1, 3), (2, 2), (2, 3)])
def test_every_relation_vanishes_in_the_algebra(m, n):
    alg = full_algebra(m, n)
    fs = forests(m, n)
    families = [gen_AS(fs), gen_IHX(fs), gen_STU(fs), gen_1T(fs), gen_4T(chords(m, n)),
                gen_STU2(fs), gen_squares(fs), gen_HEX(fs)]
    for fam in families:
        for r in fam:
            assert alg.is_zero(r.vector), r.kind


def test_square_and_hexagon_sites_exist():
    two = Diagram.from_graph([[0, 1, 2]], {"v": (0, 1, 2)})
    assert slide_sites(two) == []
    f = Diagram.from_graph([[0, 1, 2, 3]], chords=[(0, 2), (1, 3)])
    assert slide_sites(f) == [(0, 0), (0, 1), (0, 2)]


DIMS_FI = {1: [0, 1, 1, 3], 2: [1, 4, 8, 23]}


@pytest.mark.parametrize("m", [1, 2])
def test_three_presentations_agree(m):
    for n, dim in enumerate(DIMS_FI[m], start=1):
        assert chord_algebra(m, n).dim == dim
        assert forest_algebra(m, n).dim == dim
        if n <= 3:
            assert full_algebra(m, n).dim == dim


@pytest.mark.parametrize("m,n", [(1, 3), (1, 4), (2, 3)])
def test_hexagons_trivial_at_extreme_sizes(m, n):
    from jacobi_forests.spaces import hexagon_relations
    assert hexagon_relations(m, n, n) == ()
    assert hexagon_relations(m, n, 1) == ()
