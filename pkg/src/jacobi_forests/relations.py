"""Local linear relations among diagrams.

All generators return lists of :class:`Relation` objects, each a vector
(``dict`` Diagram -> exact rational) together with a short description of the site
it came from.  Conventions, all fixed in :mod:`jacobi_forests.diagram`:

* STU: at a node with cyclic triple (leg, x, y) the resolution ``d_eq`` puts
  the leg joined to x lower, ``d_cross`` puts it upper, and
  ``d = d_eq - d_cross``.
* AS: ``d + d.flip(v)``.
* IHX: the three terms returned by :meth:`Diagram.ihx_terms`, summed.
* slide edges: going from F to F' by swapping the legs at a site, the edge
  vector is ``F'.merge(site)``, so that ``F' - F`` equals it modulo STU.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import Diagram, canonical_form
from .linalg import _q

ONE = 1


@dataclass
class Relation:
    kind: str
    vector: dict  # Diagram -> int or Fraction
    site: tuple = field(default=())


def dvec(*terms) -> dict:
    """Vector from ``(coefficient, diagram)`` pairs, zero terms dropped."""
    out = {}
    for c, d in terms:
        if d is None:
            continue
        x = out.get(d, 0) + c
        if x:
            out[d] = _q(x)
        else:
            out.pop(d, None)
    return out


def _key(v):
    return tuple(sorted((d.key, c) for d, c in v.items()))


def dedupe(rels):
    seen, out = set(), []
    for r in rels:
        if not r.vector:
            continue
        k = _key(r.vector)
        if k not in seen:
            seen.add(k)
            out.append(r)
    return out


def nodes(d: Diagram):
    return range(d.n_leaves, len(d.adj))


def gen_1T(diagrams) -> list[Relation]:
    return [Relation("1T", {d: ONE}) for d in diagrams if d.has_isolated_chord()]


def gen_AS(diagrams) -> list[Relation]:
    out = []
    for d in diagrams:
        for v in nodes(d):
            out.append(Relation("AS", dvec((1, d), (1, d.flip(v))), (v,)))
    return dedupe(out)


def gen_IHX(diagrams) -> list[Relation]:
    out = []
    for d in diagrams:
        for e in d.internal_edges():
            i, h, x = d.ihx_terms(e)
            out.append(Relation("IHX", dvec((1, i), (1, h), (1, x)), e))
    return dedupe(out)


def leg_nodes(d: Diagram):
    """Leaves whose edge ends at a node."""
    return [v for v in range(d.n_leaves) if not d.is_leaf(d.adj[v][0][0])]


def stu_vector(d: Diagram, leaf: int) -> dict:
    """``d_eq - d_cross - d`` for the node at the end of ``leaf``."""
    eq, cross = d.break_leg(leaf)
    return dvec((1, eq), (-1, cross), (-1, d))


def gen_STU(templates) -> list[Relation]:
    """STU relations obtained by resolving every leg of every template."""
    out = []
    for d in templates:
        for leaf in leg_nodes(d):
            out.append(Relation("STU", stu_vector(d, leaf), (leaf,)))
    return dedupe(out)


def gen_4T(chords) -> list[Relation]:
    """Four-term relations among chord diagrams.

    For a chord ``a`` with end P and a second chord ``b`` with an end
    adjacent to P on the same strand, the moving end of ``b`` crosses both
    ends of ``a``: ``D(b<P) - D(P<b) + D(b<Q) - D(Q<b)`` with Q the other end
    of ``a``.  Each pair of terms is the difference of an STU pair.
    """
    out = []
    for d in chords:
        for j in range(d.m):
            for p in range(d.strands[j] - 1):
                lo, hi = d.leaf_at(j, p), d.leaf_at(j, p + 1)
                if d.adj[lo][0][0] == hi:
                    continue
                for moving, fixed in ((lo, hi), (hi, lo)):
                    q = d.adj[fixed][0][0]
                    v = _four_term(d, moving, fixed, q)
                    if v:
                        out.append(Relation("4T", v, (j, p, moving)))
    return dedupe(out)


def _four_term(d, moving, P, Q):
    """Move ``moving`` across P (where it sits now) and across Q."""
    legs, nds, partner = d.raw()

    def placed(anchor, before):
        lg = [[x for x in s if x != moving] for s in legs]
        for s in lg:
            if anchor in s:
                i = s.index(anchor)
                s.insert(i if before else i + 1, moving)
        return Diagram(*canonical_form(lg, nds, partner))

    return dvec((1, placed(P, True)), (-1, placed(P, False)),
                (1, placed(Q, True)), (-1, placed(Q, False)))


def cycle_nodes(d: Diagram) -> set[int]:
    """Vertices on cycles (2-core of the underlying graph)."""
    deg = [len(a) for a in d.adj]
    alive = [True] * len(d.adj)
    stack = [v for v in range(len(d.adj)) if deg[v] == 1]
    while stack:
        v = stack.pop()
        if not alive[v]:
            continue
        alive[v] = False
        for w, _ in d.adj[v]:
            if alive[w]:
                deg[w] -= 1
                if deg[w] == 1:
                    stack.append(w)
    return {v for v in range(len(d.adj)) if alive[v]}


def stu2_vectors(d: Diagram, same_node: bool = True):
    """STU² vectors of a template: two resolutions of one diagram compared.

    For a forest template any two legs ending at nodes may be used (with
    ``same_node`` the two legs may share their node).  For a template with
    one cycle both legs must end at nodes on the cycle, so that each
    resolution opens the cycle and yields a forest.
    """
    legs = leg_nodes(d)
    if d.betti == 1:
        on_cycle = cycle_nodes(d)
        legs = [v for v in legs if d.adj[v][0][0] in on_cycle]
    elif d.betti != 0:
        return []
    out = []
    for i, a in enumerate(legs):
        for b in legs[i + 1:]:
            if not same_node and d.adj[a][0][0] == d.adj[b][0][0]:
                continue
            ea, xa = d.break_leg(a)
            eb, xb = d.break_leg(b)
            v = dvec((1, ea), (-1, xa), (-1, eb), (1, xb))
            if v:
                out.append(Relation("STU2", v, (a, b)))
    return out


def gen_STU2(templates, same_node: bool = True) -> list[Relation]:
    out = []
    for d in templates:
        out.extend(stu2_vectors(d, same_node))
    return dedupe(out)


# ---- slide moves ---------------------------------------------------------

def tree_of_leaves(d: Diagram) -> list[int]:
    comp = d.component_of
    return [comp[v] for v in range(d.n_leaves)]


def slide_sites(d: Diagram):
    """Sites (strand, pos) where the two adjacent legs lie in distinct trees."""
    comp = d.component_of
    out = []
    for j in range(d.m):
        for p in range(d.strands[j] - 1):
            if comp[d.leaf_at(j, p)] != comp[d.leaf_at(j, p + 1)]:
                out.append((j, p))
    return out


def edge_vector(target: Diagram, site) -> Diagram:
    """Diagram of the directed slide edge ending at ``target`` through ``site``."""
    return target.merge(*site)


def square_vectors(g: Diagram) -> list[Relation]:
    """Relations of the 4-cycles formed by two disjoint slide sites of g."""
    sites = slide_sites(g)
    out = []
    for i, a in enumerate(sites):
        for b in sites[i + 1:]:
            if a[0] == b[0] and abs(a[1] - b[1]) < 2:
                continue
            ga = g.swap(*a)
            gb = g.swap(*b)
            gab = ga.swap(*b)
            v = dvec((1, edge_vector(ga, a)), (1, edge_vector(gab, b)),
                     (1, edge_vector(gb, a)), (1, edge_vector(g, b)))
            out.append(Relation("SQ", v, (a, b)))
    return out


def hexagon_vectors(g: Diagram) -> list[Relation]:
    """Relations of the braiding 6-cycles at three consecutive legs of g."""
    comp = g.component_of
    out = []
    for j in range(g.m):
        for p in range(g.strands[j] - 2):
            trees = {comp[g.leaf_at(j, p + i)] for i in range(3)}
            if len(trees) < 3:
                continue
            terms, cur = [], g
            for step in range(6):
                site = (j, p + step % 2)
                cur = cur.swap(*site)
                terms.append((1, edge_vector(cur, site)))
            assert cur == g
            out.append(Relation("HEX", dvec(*terms), (j, p)))
    return out


def gen_squares(forests) -> list[Relation]:
    out = []
    for g in forests:
        out.extend(square_vectors(g))
    return dedupe(out)


def gen_HEX(forests) -> list[Relation]:
    out = []
    for g in forests:
        out.extend(hexagon_vectors(g))
    return dedupe(out)
