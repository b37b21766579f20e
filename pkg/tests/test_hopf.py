from fractions import Fraction
from math import factorial

import pytest

from jacobi_forests import Diagram
from jacobi_forests import forests as FG
from jacobi_forests import hopf as H
from jacobi_forests import verify as V
from jacobi_forests.linalg import spans_equal
from jacobi_forests.spaces import forest_algebra, forests, trees

ONE1 = Diagram.empty(1)


def three_distinct_trees():
    for f in forests(1, 4, 3):
        ts = FG.labelled(f).trees
        if len(set(ts)) == 3:
            return f
    for f in forests(2, 3, 3):
        if len(set(FG.labelled(f).trees)) == 3:
            return f
    raise AssertionError("no forest with three distinct trees")


def test_comult_of_a_tree():
    t = trees(1, 2)[0]
    assert H.comult(t) == {(t, ONE1): 1, (ONE1, t): 1}
    assert H.reduced_comult(t) == {}


def test_term_counts_for_three_distinct_trees():
    f = three_distinct_trees()
    one = Diagram.empty(f.m)
    full, red, red2 = H.comult(f), H.reduced_comult(f), H.reduced_comult_power(f, 2)
    assert len(full) == 8 and set(full.values()) == {1}
    assert len(red) == 6 and len(red2) == 6
    assert full[(one, f)] == 1 and full[(f, one)] == 1
    for key in red2:
        assert sorted(d.size for d in key) == [1, 1, 1]


def test_repeated_trees_add_coefficients():
    f = Diagram.from_graph([[0, 1, 2, 3]], chords=[(0, 1), (2, 3)])
    c = Diagram.from_graph([[0, 1]], chords=[(0, 1)])
    assert H.reduced_comult(f) == {(c, c): 2}


@pytest.mark.parametrize("m,n", [(1, 4), (2, 3)])
def test_k_fold_vanishes_on_small_sizes(m, n):
    for f in forests(m, n):
        for k in range(f.size, n + 1):
            assert H.reduced_comult_power(f, k) == {}


@pytest.mark.parametrize("m,n", [(1, 4), (2, 3)])
def test_section_is_identity_on_small_sizes(m, n):
    for f in forests(m, n):
        for k in range(f.size, n + 1):
            assert H.section_s(f, k) == {f: 1}
            assert H.section_by_stackings(f, k) == {f: 1}


@pytest.mark.parametrize("m,n", [(1, 3), (2, 3), (1, 4)])
def test_section_weights_and_two_formulas(m, n):
    for f in forests(m, n):
        k = f.size - 1
        if k < 1:
            continue
        a, b = H.section_s(f, k), H.section_by_stackings(f, k)
        assert a == b
        assert all(c.denominator in (1,) or factorial(k + 1) % c.denominator == 0
                   for c in map(Fraction, a.values()))
        assert sum(a.values()) == 0


def test_section_rejects_large_sizes():
    f = three_distinct_trees()
    with pytest.raises(ValueError):
        H.section_s(f, 1)


def test_one_strand_stackings_agree():
    # on one strand all stackings of the same trees are equal, while the
    # interleaved forest differs from them by lower-size terms
    from itertools import permutations
    A = forest_algebra(1, 4)
    differ = 0
    for f in forests(1, 4):
        if f.size < 2:
            continue
        ts = FG.labelled(f).trees
        classes = {tuple(sorted(A.normal_form({FG.stacked(ts, o, 1).diagram: 1}).items()))
                   for o in permutations(range(len(ts)))}
        assert len(classes) == 1
        differ += bool(A.normal_form(H.section_s(f, f.size - 1)))
    assert differ > 0


@pytest.mark.parametrize("m,n", [(1, 3), (2, 3)])
def test_section_formulas_check(m, n):
    assert V.section_formulas(m, n).ok


def test_primitive_small_cases():
    assert len(H.primitive_subspace(1, 1)) == 0
    assert len(H.primitive_subspace(2, 1)) == 1
    assert len(H.size_subspace(2, 1, 1)) == 1


@pytest.mark.parametrize("m,n", [(1, 2), (1, 3), (2, 2), (2, 3)])
def test_coproduct_descends(m, n):
    assert H.descends(m, n)


@pytest.mark.parametrize("m,n", [(1, 3), (2, 2), (2, 3)])
def test_primitive_filtration(m, n):
    assert V.primitive_filtration(m, n).ok


@pytest.mark.parametrize("m,n", [(1, 3), (2, 3)])
def test_primitives_are_trees(m, n):
    assert spans_equal(list(H.primitive_subspace(m, n)), H.size_subspace(m, n, 1))


@pytest.mark.parametrize("m", [1, 2])
def test_hopf_axioms(m):
    res = V.hopf_axioms(m, 3, seed=4, samples=20)
    assert res.ok, res.witness


def test_ordered_partitions():
    parts = list(H.ordered_partitions(range(3), 2))
    assert len(parts) == 6
    assert all(a and b for a, b in parts)
