import random
from fractions import Fraction

import pytest

from jacobi_forests import Diagram
from jacobi_forests import forests as FG
from jacobi_forests import verify as V
from jacobi_forests import permutograph as P
from jacobi_forests.linalg import Span, add_to
from jacobi_forests.relations import edge_vector, gen_AS, slide_sites
from jacobi_forests.spaces import Ambient, forest_module, forests, trees

CHORD1 = Diagram.from_graph([[0, 1]], chords=[(0, 1)])
CHORD12 = Diagram.from_graph([[0], [1]], chords=[(0, 1)])


def graph_vertices(trees_, m):
    mults = [tuple(t.strands[j] for t in trees_) for j in range(m)]
    return {FG.assemble(trees_, w) for w in P.vertices(mults)}


def test_single_tree_graph_is_one_vertex():
    assert len(graph_vertices((CHORD1,), 1)) == 1


def test_two_identical_strand_chords():
    # words of 1122: six arrangements, each forest hit by both labellings
    vs = graph_vertices((CHORD1, CHORD1), 1)
    assert len(vs) == 3
    res = V.labelled_graph((CHORD1, CHORD1), 1)
    assert res.ok and res.details["vertices"] == 6 and res.details["fibre"] == 2


@pytest.mark.parametrize("m,ts", [
    (1, lambda: (CHORD1, trees(1, 2)[0], CHORD1)),
    (2, lambda: (CHORD12, CHORD12, trees(2, 1)[0])),
    (2, lambda: trees(2, 2)[:3]),
])
def test_labelled_graph_and_lifts(m, ts):
    ts = ts()
    assert V.labelled_graph(ts, m).ok
    assert V.lift_closing(ts, m, seed=2).ok


def test_edge_vector_of_two_chords_is_a_tree():
    f = Diagram.from_graph([[0, 1, 2, 3]], chords=[(0, 2), (1, 3)])
    (site,) = [s for s in slide_sites(f) if s == (0, 1)]
    t = edge_vector(f.swap(*site), site)
    assert t.is_tree() and t.degree == 2 and t.n_leaves == 3


@pytest.mark.parametrize("m,n,s", [(1, 3, 2), (2, 3, 2), (1, 4, 3), (2, 3, 3)])
def test_reversed_edge_is_negative_modulo_as(m, n, s):
    lower = forests(m, n, s - 1)
    amb = Ambient(lower)
    span = Span([amb.vector(r.vector) for r in gen_AS(lower)])
    for f in forests(m, n, s):
        for site in slide_sites(f):
            g = f.swap(*site)
            v = {}
            add_to(v, {edge_vector(g, site): 1})
            add_to(v, {edge_vector(f, site): 1})
            assert span.contains(amb.vector(v))


def test_vector_to_itself_is_zero():
    for f in forests(2, 3, 2):
        sp = forest_module(2, 3, 1)
        assert sp.normal_form(FG.vector_between(f, f)) == {}


@pytest.mark.parametrize("m,n,s", [(1, 3, 2), (1, 4, 2), (2, 3, 2), (2, 3, 3), (1, 4, 3)])
def test_chasles(m, n, s):
    assert V.chasles(m, n, s, seed=s).ok


def test_lift_then_project():
    rng = random.Random(9)
    for f in forests(2, 3, 3):
        lf = FG.labelled(f)
        assert lf.diagram == f
        assert FG.relabel_to(f, lf.trees, rng).diagram == f


def test_relabel_requires_same_trees():
    fs = forests(2, 2, 2)
    a = fs[0]
    b = next(f for f in fs if FG.tree_multiset(f) != FG.tree_multiset(a))
    with pytest.raises(ValueError):
        FG.relabel_to(a, FG.labelled(b).trees)


def test_barycenter_of_single_tree():
    t = trees(1, 2)[0]
    assert FG.avg_barycenter(t) == {t: 1}


def test_barycenter_of_two_chords():
    f = Diagram.from_graph([[0, 1, 2, 3]], chords=[(0, 1), (2, 3)])
    bc = FG.avg_barycenter(f)
    assert sum(bc.values()) == 1
    assert bc == {f: 1}


def test_barycenter_of_tripod_and_chord():
    tripod = Diagram.from_graph([[0, 1, 2]], {"v": (0, 1, 2)})
    f = Diagram.from_graph([[0, 1, 2, 3, 4]], {"v": (0, 1, 4)}, chords=[(2, 3)])
    up = FG.stacked((tripod, CHORD1), (0, 1), 1).diagram
    down = FG.stacked((tripod, CHORD1), (1, 0), 1).diagram
    assert up != down and f not in (up, down)
    assert FG.avg_barycenter(f) == {up: Fraction(1, 2), down: Fraction(1, 2)}


@pytest.mark.parametrize("m,n,s", [(2, 3, 2), (1, 4, 3), (2, 3, 3)])
def test_barycenter_depends_only_on_trees(m, n, s):
    groups = {}
    for f in forests(m, n, s):
        groups.setdefault(tuple(FG.tree_multiset(f)), []).append(f)
    for fs in groups.values():
        ref = FG.avg_barycenter(fs[0])
        assert sum(ref.values()) == 1
        assert all(isinstance(c, Fraction) or c == 1 for c in ref.values())
        for f in fs[1:]:
            assert FG.avg_barycenter(f) == ref


def test_pi_needs_two_trees():
    with pytest.raises(ValueError):
        FG.pi_tilde_raw(trees(1, 2)[0])


@pytest.mark.parametrize("m,n", [(1, 2), (1, 3), (2, 2), (2, 3)])
def test_diagrammatic_stu(m, n):
    assert V.diagrammatic_stu(m, n).ok


@pytest.mark.parametrize("m,n", [(1, 3), (2, 3)])
def test_pi_is_left_inverse_of_iota(m, n):
    res = V.pi_section(m, n)
    assert res.ok, res.witness


@pytest.mark.parametrize("m,n", [(1, 3), (2, 3), (1, 4)])
def test_iota_does_not_depend_on_the_node(m, n):
    assert V.iota_node_independence(m, n).ok


@pytest.mark.parametrize("m,n,s", [(1, 4, 2), (2, 3, 2), (2, 3, 3)])
def test_path_independence_small(m, n, s):
    assert V.path_independence(m, n, s, seed=1, pairs=5).ok


def test_path_difference_helper():
    f = Diagram.from_graph([[0, 1, 2, 3, 4, 5]], chords=[(0, 3), (1, 4), (2, 5)])
    # the two halves of the braiding hexagon at three legs of distinct trees
    left = [(0, 0), (0, 1), (0, 0)]
    right = [(0, 1), (0, 0), (0, 1)]
    assert FG.path_difference_in_graph_relations(f, left, right)
    with pytest.raises(ValueError):
        FG.path_difference_in_graph_relations(f, left, right[:1])


def test_braiding_predicate():
    assert V.is_braiding([(0, 0), (0, 1)] * 3)
    assert not V.is_braiding([(0, 0), (1, 0)] * 3)


@pytest.mark.parametrize("m,n,s", [(2, 3, 3), (1, 4, 3)])
def test_other_six_cycles_follow_from_graph_relations(m, n, s):
    res = V.non_braiding_hexagons(m, n, s, seed=3, samples=10)
    assert res.ok, res.witness
    assert res.details["tested"] > 0
