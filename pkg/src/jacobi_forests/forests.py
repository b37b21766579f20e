"""Graphs of forests, slide paths, barycenters and the maps pi and iota.

A labelled forest is a list of trees together with one word per strand: the
k-th letter of word j is the label (1-based) of the tree owning the k-th leg
of strand j.  Since the legs of one tree keep their relative order, the
words determine the forest, which identifies the graph of labelled forests
with a box product of permutographs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from itertools import permutations
from math import factorial

from . import permutograph as P
from .diagram import Diagram, canonical_form
from .linalg import add_to
from .relations import dvec, edge_vector
from .spaces import forest_module, graph_relations_space


@dataclass(frozen=True)
class LabelledForest:
    trees: tuple[Diagram, ...]
    words: tuple[tuple[int, ...], ...]

    @property
    def m(self) -> int:
        return len(self.words)

    @property
    def size(self) -> int:
        return len(self.trees)

    @property
    def diagram(self) -> Diagram:
        return assemble(self.trees, self.words)

    def swap(self, site) -> "LabelledForest":
        return LabelledForest(self.trees, P.apply(self.words, site))

    def sites(self):
        return P.moves(self.words)

    def multiplicities(self):
        return [tuple(t.strands[j] for t in self.trees) for j in range(self.m)]


def assemble(trees, words) -> Diagram:
    """Forest obtained by distributing the legs of the trees along the words."""
    legs = [[] for _ in words]
    nodes, partner = [], {}
    cursor = [[0] * len(words) for _ in trees]
    for t_idx, t in enumerate(trees):
        for (v, p), (w, q) in t.partner().items():
            partner[((t_idx, v), p)] = ((t_idx, w), q)
        nodes.extend((t_idx, v) for v in range(t.n_leaves, len(t.adj)))
    for j, word in enumerate(words):
        for letter in word:
            t_idx = letter - 1
            t = trees[t_idx]
            k = cursor[t_idx][j]
            cursor[t_idx][j] += 1
            legs[j].append((t_idx, t.leaf_at(j, k)))
    for t_idx, t in enumerate(trees):
        if tuple(cursor[t_idx]) != t.strands:
            raise ValueError(f"words do not match the legs of tree {t_idx + 1}")
    return Diagram(*canonical_form(legs, nodes, partner))


def labelled(f: Diagram) -> LabelledForest:
    """Split a forest into its trees, labelled by order of first leg."""
    if not f.is_forest():
        raise ValueError("not a forest diagram")
    comps = f.components()
    trees = tuple(f.standalone(c) for c in comps)
    comp = f.component_of
    words = tuple(tuple(comp[v] + 1 for v in s) for s in f.leg_lists())
    return LabelledForest(trees, words)


def tree_multiset(f: Diagram):
    return sorted(labelled(f).trees)


def stacked(trees, order=None, m=None) -> LabelledForest:
    """Labelled forest T_{o(1)} . T_{o(2)} ... with T_{o(1)} on top.

    ``order`` lists 0-based tree indices from top to bottom.
    """
    trees = tuple(trees)
    if order is None:
        order = range(len(trees))
    order = list(order)
    m = m if m is not None else trees[0].m
    words = tuple(tuple(i + 1 for i in reversed(order) for _ in range(trees[i].strands[j]))
                  for j in range(m))
    return LabelledForest(trees, words)


def relabel_to(f: Diagram, trees, rng: random.Random | None = None) -> LabelledForest:
    """Labelled lift of ``f`` whose trees are exactly ``trees`` (in order).

    Identical trees are matched in order, or at random when ``rng`` is given.
    """
    lf = labelled(f)
    remaining = list(range(len(trees)))
    mapping = {}
    for i, t in enumerate(lf.trees):
        options = [k for k in remaining if trees[k] == t]
        k = rng.choice(options) if (rng and options) else next(iter(options), None)
        if k is None:
            raise ValueError("forests are not on the same trees")
        remaining.remove(k)
        mapping[i + 1] = k + 1
    words = tuple(tuple(mapping[x] for x in w) for w in lf.words)
    return LabelledForest(tuple(trees), words)


# ---- paths ---------------------------------------------------------------

def path_vector(start: LabelledForest, sites) -> tuple[dict, LabelledForest]:
    """Sum of the edge vectors along a slide path, and the end point."""
    out = {}
    cur = start
    for site in sites:
        cur = cur.swap(site)
        add_to(out, {edge_vector(cur.diagram, site): 1})
    return out, cur


def bubble_path(a: LabelledForest, b: LabelledForest):
    return P.path_between(a.words, b.words)


def vector_between(f: Diagram, g: Diagram) -> dict:
    """Raw representative of the vector from f to g (bubble-sort path)."""
    a = labelled(f)
    b = relabel_to(g, a.trees)
    v, end = path_vector(a, bubble_path(a, b))
    assert end.words == b.words
    return v


def random_vertex(trees, m: int, rng: random.Random) -> LabelledForest:
    """Uniformly random labelled forest on the given trees."""
    words = []
    for j in range(m):
        w = [i + 1 for i, t in enumerate(trees) for _ in range(t.strands[j])]
        rng.shuffle(w)
        words.append(tuple(w))
    return LabelledForest(tuple(trees), tuple(words))


def random_path(start: LabelledForest, target: LabelledForest, rng: random.Random,
                steps: int = 6):
    """A random walk followed by a bubble-sort path to ``target``."""
    sites, cur = [], start
    for _ in range(rng.randint(0, steps)):
        if not cur.sites():
            break
        s = rng.choice(cur.sites())
        sites.append(s)
        cur = cur.swap(s)
    return sites + P.path_between(cur.words, target.words)


def lift_path(start: LabelledForest, sites) -> list[LabelledForest]:
    """Lift of a site sequence from the unlabelled graph (unique)."""
    out = [start]
    for s in sites:
        a, b = s
        w = out[-1].words[a]
        if w[b] == w[b + 1]:
            raise ValueError(f"site {s} swaps two legs of one tree")
        out.append(out[-1].swap(s))
    return out


def closing_power(start: LabelledForest, sites) -> int:
    """Smallest N such that the lift of the N-fold repeated closed path closes."""
    cur, n = start, 0
    while True:
        cur = lift_path(cur, sites)[-1]
        n += 1
        if cur == start:
            return n
        if cur.diagram != start.diagram:
            raise ValueError("path is not closed in the graph of forests")


# ---- barycenters, pi and iota ----------------------------------------------

def avg_barycenter(f: Diagram) -> dict:
    """(F)_avg as a dict forest -> coefficient (coefficients sum to 1)."""
    trees = labelled(f).trees
    s = len(trees)
    out = {}
    for order in permutations(range(s)):
        add_to(out, {stacked(trees, order, f.m).diagram: Fraction(1, factorial(s))})
    return out


def pi_tilde_raw(f: Diagram) -> dict:
    """Raw representative of the vector from the average of f to f."""
    a = labelled(f)
    s = a.size
    if s < 2:
        raise ValueError("pi needs a forest with at least two trees")
    out = {}
    for order in permutations(range(s)):
        start = stacked(a.trees, order, f.m)
        v, end = path_vector(start, bubble_path(start, a))
        assert end.words == a.words
        add_to(out, v, Fraction(1, factorial(s)))
    return out


def pi_tilde(f: Diagram, fi: bool = True) -> dict:
    """pi(F) in coordinates of the size s-1 forest module."""
    sp = forest_module(f.m, f.degree, f.size - 1, fi)
    return sp.normal_form(pi_tilde_raw(f))


def pi_linear(v: dict, fi: bool = True) -> dict:
    """pi extended linearly to a vector of forests of one size."""
    out = {}
    for f, c in v.items():
        add_to(out, pi_tilde(f, fi), c)
    return out


def iota_raw(f: Diagram, leaf: int | None = None) -> dict:
    """F_eq - F_cross at the node of ``leaf`` (default: first leg on a node)."""
    if leaf is None:
        leaf = next((v for v in range(f.n_leaves) if not f.is_leaf(f.adj[v][0][0])), None)
        if leaf is None:
            raise ValueError("no node adjacent to a strand (size equals degree)")
    eq, cross = f.break_leg(leaf)
    return dvec((1, eq), (-1, cross))


def iota(f: Diagram, leaf: int | None = None, fi: bool = True) -> dict:
    sp = forest_module(f.m, f.degree, f.size + 1, fi)
    return sp.normal_form(iota_raw(f, leaf))


def path_difference_in_graph_relations(f: Diagram, path1, path2) -> bool:
    """Whether two paths from f give vectors differing by AS, squares, hexagons."""
    a = labelled(f)
    v1, e1 = path_vector(a, path1)
    v2, e2 = path_vector(a, path2)
    if e1.diagram != e2.diagram:
        raise ValueError("paths end at different forests")
    sp = graph_relations_space(f.m, f.degree, f.size - 1)
    add_to(v1, v2, -1)
    return sp.is_zero(v1)
