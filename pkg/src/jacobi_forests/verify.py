"""Machine checks of the structural identities, one function per check.

Every check returns a :class:`CheckResult`; ``witness`` holds a JSON-ready
description of the first failure (or ``None``).  Randomised checks take a
``seed`` and record it in ``details``.
"""

from __future__ import annotations

import logging
import random
from dataclasses import dataclass, field
from math import factorial, prod

from . import forests as FG
from . import hopf as H
from . import lie as L
from . import permutograph as P
from . import relations as R
from .diagram import stack
from .linalg import Span, add_to, spans_equal
from .spaces import (Ambient, all_diagrams, chord_algebra, forest_algebra, forest_module,
                     forests, graph_relations_space, hexagon_relations, lie_module,
                     square_relations, stu2_relations)

log = logging.getLogger(__name__)


@dataclass
class CheckResult:
    name: str
    ok: bool
    details: dict = field(default_factory=dict)
    witness: object = None

    def line(self) -> str:
        return f"{'PASS' if self.ok else 'FAIL'} {self.name} {self.details}"

    def to_json(self) -> dict:
        return {"name": self.name, "ok": self.ok, "details": self.details, "witness": self.witness}


def _enc(v: dict) -> dict:
    return {d.encode(): str(c) for d, c in sorted(v.items())}


def _vectors(amb, rels):
    return [amb.vector(r.vector) for r in rels]


# ---- relation coincidences ------------------------------------------------

def _same_span(base: Span, a, b) -> bool:
    """span(base + a) == span(base + b)."""
    sa, sb = base.copy(), base.copy()
    for v in a:
        sa.add(v)
    for v in b:
        sb.add(v)
    return sa.rank == sb.rank and sa.contains_all(b)


def stu2_eq_squares(m: int, n: int) -> CheckResult:
    """Square relations and STU² relations span the same space modulo AS.

    Distinct-node STU² is compared at every size; full STU² (legs possibly at
    one node) is compared below the top size, where there are no squares.
    """
    rows = []
    for s in range(1, n + 1):
        fs = forests(m, n, s)
        amb = Ambient(fs)
        base = Span(_vectors(amb, R.gen_AS(fs)))
        sq = _vectors(amb, square_relations(m, n, s))
        distinct = _vectors(amb, stu2_relations(m, n, s, False))
        ok = _same_span(base, sq, distinct)
        if ok and s < n:
            ok = _same_span(base, sq, _vectors(amb, stu2_relations(m, n, s)))
        rows.append({"s": s, "squares": len(sq), "stu2_distinct": len(distinct), "ok": ok})
        if not ok:
            return CheckResult("stu2-eq-squares", False, {"m": m, "n": n, "sizes": rows},
                               {"size": s})
    return CheckResult("stu2-eq-squares", True, {"m": m, "n": n, "sizes": rows})


def four_t_from_stu2(m: int, n: int) -> CheckResult:
    """At size n (chord diagrams) STU² and 4T span the same space exactly."""
    fs = forests(m, n, n)
    amb = Ambient(fs)
    stu2 = _vectors(amb, stu2_relations(m, n, n))
    four = _vectors(amb, R.gen_4T(fs))
    ok = spans_equal(stu2, four)
    return CheckResult("4t-from-stu2", ok, {"m": m, "n": n, "stu2": len(stu2), "4T": len(four),
                                            "rank": Span(four).rank})


def hexagon_from_stu2_ihx(m: int, n: int) -> CheckResult:
    """Below size n-1, braiding hexagons lie in span(STU², IHX, AS)."""
    rows = []
    for s in range(2, n - 1):
        fs = forests(m, n, s)
        amb = Ambient(fs)
        span = Span(_vectors(amb, stu2_relations(m, n, s)) + _vectors(amb, R.gen_IHX(fs)))
        hexes = hexagon_relations(m, n, s)
        without_as = span.contains_all(_vectors(amb, hexes))
        for v in _vectors(amb, R.gen_AS(fs)):
            span.add(v)
        bad = next((h for h in hexes if not span.contains(amb.vector(h.vector))), None)
        rows.append({"s": s, "hexagons": len(hexes), "ok": bad is None,
                     "ok_without_AS": without_as})
        if bad is not None:
            return CheckResult("hexagon-from-stu2-ihx", False, {"m": m, "n": n, "sizes": rows},
                               {"size": s, "hexagon": _enc(bad.vector)})
    return CheckResult("hexagon-from-stu2-ihx", True, {"m": m, "n": n, "sizes": rows})


# ---- sections, pi and iota --------------------------------------------------

def pi_section(m: int, n: int, fi: bool = True) -> CheckResult:
    """pi o iota is the identity on every basis element of every size s < n."""
    count = 0
    for s in range(1, n):
        sp = forest_module(m, n, s, fi)
        for f in sp.basis:
            got = FG.pi_linear(FG.iota_raw(f), fi)
            if got != sp.normal_form({f: 1}):
                return CheckResult("pi-section", False, {"m": m, "n": n, "s": s},
                                   {"forest": f.encode(), "pi_iota": {str(k): str(c) for k, c in got.items()}})
            count += 1
    return CheckResult("pi-section", True, {"m": m, "n": n, "basis_elements": count})


def diagrammatic_stu(m: int, n: int, fi: bool = True) -> CheckResult:
    """pi(F') - pi(F) equals the edge vector of every slide edge F -> F'."""
    count = 0
    for s in range(2, n + 1):
        sp = forest_module(m, n, s - 1, fi)
        cache = {}

        def pi(f):
            if f not in cache:
                cache[f] = FG.pi_tilde(f, fi)
            return cache[f]

        for f in forests(m, n, s):
            for site in R.slide_sites(f):
                g = f.swap(*site)
                lhs = dict(pi(g))
                add_to(lhs, pi(f), -1)
                rhs = sp.normal_form({R.edge_vector(g, site): 1})
                if lhs != rhs:
                    return CheckResult("diagrammatic-stu", False, {"m": m, "n": n},
                                       {"forest": f.encode(), "site": list(site)})
                count += 1
    return CheckResult("diagrammatic-stu", True, {"m": m, "n": n, "edges": count})


def iota_node_independence(m: int, n: int, fi: bool = True) -> CheckResult:
    """Breaking different legs of one forest gives the same class."""
    count = 0
    for s in range(1, n):
        sp = forest_module(m, n, s + 1, fi)
        for f in forests(m, n, s):
            legs = R.leg_nodes(f)
            ref = sp.normal_form(FG.iota_raw(f, legs[0]))
            for leaf in legs[1:]:
                count += 1
                if sp.normal_form(FG.iota_raw(f, leaf)) != ref:
                    return CheckResult("iota-node-independence", False, {"m": m, "n": n},
                                       {"forest": f.encode(), "legs": [legs[0], leaf]})
    return CheckResult("iota-node-independence", True, {"m": m, "n": n, "comparisons": count})


# ---- paths in graphs of forests --------------------------------------------

def path_independence(m: int, n: int, s: int, seed: int = 0, pairs: int = 10,
                      paths_per_pair: int = 11) -> CheckResult:
    """Random paths between sampled forests differ by AS, squares and hexagons."""
    rng = random.Random(seed)
    log.info("path-independence m=%d n=%d s=%d seed=%d", m, n, s, seed)
    # forests whose graph has at least one edge, when there are any
    pool = [f for f in forests(m, n, s) if R.slide_sites(f)] or list(forests(m, n, s))
    sp = graph_relations_space(m, n, s - 1)
    tested = 0
    for _ in range(pairs):
        f = rng.choice(pool)
        start = FG.labelled(f)
        target = FG.random_vertex(start.trees, m, rng).diagram
        ref = None
        for _ in range(paths_per_pair):
            end = FG.relabel_to(target, start.trees, rng)
            v, last = FG.path_vector(start, FG.random_path(start, end, rng))
            assert last.diagram == target
            if ref is None:
                ref = v
                continue
            diff = dict(v)
            add_to(diff, ref, -1)
            tested += 1
            if not sp.is_zero(diff):
                return CheckResult("path-independence", False,
                                   {"m": m, "n": n, "s": s, "seed": seed},
                                   {"from": f.encode(), "to": target.encode(), "difference": _enc(diff)})
    return CheckResult("path-independence", True,
                       {"m": m, "n": n, "s": s, "seed": seed, "pairs": pairs, "path_pairs": tested})


def chasles(m: int, n: int, s: int, seed: int = 0, samples: int = 10, fi: bool = True) -> CheckResult:
    """vector(F0, F2) = vector(F0, F1) + vector(F1, F2) in the quotient."""
    rng = random.Random(seed)
    sp = forest_module(m, n, s - 1, fi)
    pool = forests(m, n, s)
    for _ in range(samples):
        f0 = rng.choice(pool)
        trees = FG.labelled(f0).trees
        f1 = FG.random_vertex(trees, m, rng).diagram
        f2 = FG.random_vertex(trees, m, rng).diagram
        lhs = sp.normal_form(FG.vector_between(f0, f2))
        rhs = sp.normal_form(FG.vector_between(f0, f1))
        add_to(rhs, sp.normal_form(FG.vector_between(f1, f2)))
        if lhs != rhs:
            return CheckResult("chasles", False, {"m": m, "n": n, "s": s, "seed": seed},
                               [f0.encode(), f1.encode(), f2.encode()])
    return CheckResult("chasles", True, {"m": m, "n": n, "s": s, "seed": seed, "samples": samples})


def labelled_graph(trees, m: int, cap: int = 20000) -> CheckResult:
    """Words <-> labelled forests is a graph isomorphism covering the forest graph."""
    mults = [tuple(t.strands[j] for t in trees) for j in range(m)]
    if P.vertex_count(mults) > cap:
        raise ValueError(f"labelled graph has more than {cap} vertices")
    vs = P.vertices(mults)
    images = {}
    for v in vs:
        d = FG.assemble(trees, v)
        images.setdefault(d, []).append(v)
        if sorted(R.slide_sites(d)) != sorted(P.moves(v)):
            return CheckResult("labelled-graph", False, {}, {"words": v, "reason": "sites differ"})
        for mv, w in P.neighbors(v):
            if d.swap(*mv) != FG.assemble(trees, w):
                return CheckResult("labelled-graph", False, {}, {"words": v, "move": mv})
    counts = {}
    for t in trees:
        counts[t] = counts.get(t, 0) + 1
    fibre = prod(factorial(c) for c in counts.values())
    ok = all(len(ws) == fibre for ws in images.values())
    return CheckResult("labelled-graph", ok, {"vertices": len(vs), "forests": len(images),
                                              "fibre": fibre})


def lift_closing(trees, m: int, seed: int = 0, walks: int = 20, length: int = 8) -> CheckResult:
    """Closed walks of the forest graph lift; a power given by the label permutation closes."""
    rng = random.Random(seed)
    start = FG.random_vertex(trees, m, rng)
    base = start.diagram
    found = 0
    for _ in range(walks * 20):
        if found >= walks:
            break
        cur, sites = base, []
        for _ in range(length):
            ss = R.slide_sites(cur)
            if not ss:
                break
            site = rng.choice(ss)
            sites.append(site)
            cur = cur.swap(*site)
        # return to base along a bubble-sort path in the unlabelled graph
        lf = FG.lift_path(start, sites)[-1]
        back = FG.relabel_to(base, trees)
        sites += FG.bubble_path(lf, FG.LabelledForest(lf.trees, back.words))
        end = FG.lift_path(start, sites)[-1]
        if end.diagram != base:
            return CheckResult("lift-closing", False, {"seed": seed}, {"sites": sites})
        perm = {}
        for a, b in zip(start.words, end.words):
            for x, y in zip(a, b):
                perm[x] = y
        order = 1
        p = dict(perm)
        while any(p[x] != x for x in p):
            p = {x: perm[p[x]] for x in p}
            order += 1
        if FG.closing_power(start, sites) != order:
            return CheckResult("lift-closing", False, {"seed": seed}, {"sites": sites, "order": order})
        found += 1
    return CheckResult("lift-closing", True, {"seed": seed, "walks": found})


def six_cycles(start, limit: int = 200):
    """Simple closed walks of length 6 through ``start`` in a labelled graph."""
    out = []

    def rec(cur, path, seen):
        if len(out) >= limit:
            return
        if len(path) == 6:
            if cur == start:
                out.append(list(path))
            return
        for site in cur.sites():
            nxt = cur.swap(site)
            if nxt == start and len(path) == 5:
                rec(nxt, path + [site], seen)
            elif nxt not in seen:
                rec(nxt, path + [site], seen | {nxt})

    rec(start, [], {start})
    return out


def is_braiding(sites) -> bool:
    """Whether a 6-cycle alternates between two overlapping sites of one strand."""
    strands = {j for j, _ in sites}
    pos = sorted({p for _, p in sites})
    return (len(strands) == 1 and len(pos) == 2 and pos[1] == pos[0] + 1
            and all(sites[i] != sites[i + 1] for i in range(len(sites) - 1)))


def non_braiding_hexagons(m: int, n: int, s: int, seed: int = 0, samples: int = 20) -> CheckResult:
    """Report whether non-braiding 6-cycles give vectors in span(AS, squares, hexagons)."""
    rng = random.Random(seed)
    pool = forests(m, n, s)
    sp = graph_relations_space(m, n, s - 1)
    seen = tested = 0
    outside = []
    for _ in range(samples):
        start = FG.labelled(rng.choice(pool))
        cycles = [c for c in six_cycles(start) if not is_braiding(c)]
        seen += len(cycles)
        for c in rng.sample(cycles, min(5, len(cycles))):
            v, end = FG.path_vector(start, c)
            assert end == start
            tested += 1
            if not sp.is_zero(v):
                outside.append({"forest": start.diagram.encode(), "sites": c})
    return CheckResult("non-braiding-hexagons", not outside,
                       {"m": m, "n": n, "s": s, "seed": seed, "found": seen, "tested": tested},
                       outside[:3] or None)


# ---- permutographs -------------------------------------------------------

DEFAULT_PERMUTOGRAPHS = (
    [(1, 1, 1)], [(2, 2, 1)], [(1, 1, 1, 1)], [(2, 2, 2, 1)], [(3, 2, 2)],
    [(1, 1), (1, 1, 1)], [(2, 1), (1, 1)], [(1, 1, 1, 1), (1, 1, 1)],
    [(2, 1, 1), (1, 1, 1)], [(1, 1), (1, 1), (1, 1)],
)


def homology_squares_hexagons(configs=DEFAULT_PERMUTOGRAPHS) -> CheckResult:
    """Fundamental cycles split into backtracks, squares and hexagons exactly."""
    rows = []
    for mults in configs:
        vs = P.vertices(mults)
        cycles = P.spanning_tree_cycles(vs)
        kinds = {"backtrack": 0, "square": 0, "hexagon": 0}
        for c in cycles:
            atoms = P.decompose_cycle(c)
            for a in atoms:
                kinds[a.kind] += 1
                expected = {"backtrack": 2, "square": 4, "hexagon": 6}[a.kind]
                if len(a.cycle) != expected or not P.is_closed_walk(a.cycle):
                    return CheckResult("homology-squares-hexagons", False, {"mults": mults},
                                       {"cycle": c, "atom": a.cycle})
            if P.add_chains(a.chain for a in atoms) != P.chain(c):
                return CheckResult("homology-squares-hexagons", False, {"mults": mults},
                                   {"cycle": c})
        rows.append({"mults": [list(x) for x in mults], "vertices": len(vs),
                     "cycles": len(cycles), **kinds})
    return CheckResult("homology-squares-hexagons", True, {"graphs": rows})


# ---- filtrations -----------------------------------------------------------

def prim_eq_size(m: int, n: int, fi: bool = True) -> CheckResult:
    """The kernel of the reduced coproduct equals the span of trees."""
    prim = list(H.primitive_subspace(m, n, fi))
    trees = H.size_subspace(m, n, 1, fi)
    ok = spans_equal(prim, trees)
    return CheckResult("prim-eq-size", ok, {"m": m, "n": n, "fi": fi, "dim_primitive": len(prim),
                                            "dim_trees": len(trees),
                                            "dim_algebra": forest_algebra(m, n, fi).dim})


def filtration_iso(m: int, n: int, fi: bool = True) -> CheckResult:
    """dim of the size-k presentation equals dim of the size filtration, each k."""
    rows = []
    ok = True
    for k in range(1, n + 1):
        a = forest_module(m, n, k, fi).dim
        b = len(H.size_subspace(m, n, k, fi))
        rows.append({"k": k, "presented": a, "size_filtration": b})
        ok &= a == b
    ok &= rows[-1]["size_filtration"] == forest_algebra(m, n, fi).dim
    return CheckResult("filtration-iso", ok, {"m": m, "n": n, "fi": fi, "dims": rows})


def primitive_filtration(m: int, n: int, fi: bool = True) -> CheckResult:
    """Products of <= k primitives span F^k, and both are killed by the k-fold coproduct."""
    rows = []
    for k in range(1, n + 1):
        pk = H.product_filtration(m, n, k, fi)
        fk = H.size_subspace(m, n, k, fi)
        row = {"k": k, "dim": len(fk), "equal": spans_equal(pk, fk), "killed": H.kills(m, n, k, fk, fi)}
        rows.append(row)
        if not (row["equal"] and row["killed"]):
            return CheckResult("primitive-filtration", False, {"m": m, "n": n, "rows": rows}, {"k": k})
    return CheckResult("primitive-filtration", True, {"m": m, "n": n, "rows": rows})


# ---- Hopf structure --------------------------------------------------------

def hopf_axioms(m: int, max_degree: int = 3, seed: int = 0, samples: int = 50) -> CheckResult:
    """Exact tensor identities on sampled diagram pairs of each degree."""
    rng = random.Random(seed)
    log.info("hopf-axioms m=%d seed=%d", m, seed)
    counts = {}
    for d in range(1, max_degree + 1):
        pool = all_diagrams(m, d)
        for _ in range(samples):
            x, y = rng.choice(pool), rng.choice(pool)
            xy = stack(x, y)
            failures = []
            if H.coassociativity_defect(x):
                failures.append("coassociativity")
            if H.swap(H.comult(x)) != H.comult(x):
                failures.append("cocommutativity")
            if H.comult(xy) != H.tensor_mul(H.comult(x), H.comult(y)):
                failures.append("multiplicativity")
            if H.reduced_comult(xy) != H.product_formula_rhs(x, y):
                failures.append("product formula")
            for k in range(1, xy.size + 1):
                if H.reduced_comult_power(xy, k) != H.iterated_reduced_comult(xy, k):
                    failures.append(f"k-fold coproduct k={k}")
            if H.reduced_comult_power(xy, xy.size):
                failures.append("vanishing above size")
            if failures:
                return CheckResult("hopf-axioms", False, {"m": m, "seed": seed},
                                   {"x": x.encode(), "y": y.encode(), "failed": failures})
        counts[d] = samples
    return CheckResult("hopf-axioms", True, {"m": m, "seed": seed, "pairs_per_degree": counts})


def section_formulas(m: int, n: int, fi: bool = True) -> CheckResult:
    """Both formulas for the section agree, and the section lands in smaller sizes."""
    A = forest_algebra(m, n, fi)
    count = 0
    for f in forests(m, n):
        k = f.size - 1
        if k < 1:
            continue
        a, b = H.section_s(f, k), H.section_by_stackings(f, k)
        if A.normal_form(a) != A.normal_form(b):
            return CheckResult("section-formulas", False, {"m": m, "n": n}, {"forest": f.encode()})
        small = Span(H.size_subspace(m, n, k, fi))
        if not small.contains(A.coords(a)):
            return CheckResult("section-formulas", False, {"m": m, "n": n},
                               {"forest": f.encode(), "reason": "image not in smaller sizes"})
        count += 1
    return CheckResult("section-formulas", True, {"m": m, "n": n, "forests": count})


def descends(m: int, n: int, fi: bool = True) -> CheckResult:
    return CheckResult("coproduct-descends", H.descends(m, n, fi), {"m": m, "n": n})


# ---- Lie algebra -----------------------------------------------------------

def jacobi(m: int, max_degree: int = 4, fi: bool = True) -> CheckResult:
    rep = L.jacobi_check(m, max_degree, fi)
    details = {"m": m, "max_degree": max_degree, "pairs": rep["pairs"], "triples": rep["triples"]}
    witness = None
    if not rep["ok"]:
        witness = {"antisymmetry": repr(rep["antisymmetry_failures"][:1]),
                   "jacobi": repr(rep["jacobi_failures"][:1])}
    return CheckResult("jacobi", rep["ok"], details, witness)


def bracket_vanishes(m: int, max_degree: int = 4, fi: bool = True) -> CheckResult:
    """Every bracket of basis trees with degree sum <= max_degree is zero."""
    count = 0
    for p in range(1, max_degree):
        for q in range(1, max_degree - p + 1):
            for t in lie_module(m, p, fi).basis:
                for u in lie_module(m, q, fi).basis:
                    count += 1
                    if L.bracket_trees(t, u, fi):
                        return CheckResult("bracket-vanishes", False, {"m": m},
                                           {"T": t.encode(), "U": u.encode()})
    return CheckResult("bracket-vanishes", True, {"m": m, "max_degree": max_degree, "pairs": count})


def commutators(m: int, max_degree: int = 3, fi: bool = True) -> CheckResult:
    """The bracket of trees maps to the commutator in the algebra."""
    count = 0
    for p in range(1, max_degree):
        for q in range(1, max_degree - p + 1):
            for t in lie_module(m, p, fi).basis:
                for u in lie_module(m, q, fi).basis:
                    count += 1
                    if not L.commutator_in_algebra(t, u, fi):
                        return CheckResult("commutators", False, {"m": m},
                                           {"T": t.encode(), "U": u.encode()})
    return CheckResult("commutators", True, {"m": m, "pairs": count})


def lie_eq_primitive(m: int, n: int, fi: bool = True) -> CheckResult:
    a = lie_module(m, n, fi).dim
    b = len(H.primitive_subspace(m, n, fi))
    return CheckResult("lie-eq-primitive", a == b, {"m": m, "n": n, "lie": a, "primitive": b})


# ---- small dimensions ------------------------------------------------------

def sanity_dims() -> CheckResult:
    got = {
        "A_1(1) FI": forest_algebra(1, 1).dim,
        "A_2(1) FI chords": chord_algebra(1, 2).dim,
        "A_2(1) FI forests": forest_algebra(1, 2).dim,
        "L_1(2) FI": lie_module(2, 1).dim,
    }
    want = {"A_1(1) FI": 0, "A_2(1) FI chords": 1, "A_2(1) FI forests": 1, "L_1(2) FI": 1}
    return CheckResult("sanity-dims", got == want, got)


# ---- registry for the command line -----------------------------------------

def run_named(name: str, m: int, n: int, seed: int = 0) -> list[CheckResult]:
    """Run a check by its command-line name for one (m, n)."""
    if name == "stu2-eq-squares":
        return [stu2_eq_squares(m, n)]
    if name == "4t-from-stu2":
        return [four_t_from_stu2(m, n)]
    if name == "hexagon-from-stu2-ihx":
        return [hexagon_from_stu2_ihx(m, n)]
    if name == "pi-section":
        return [pi_section(m, n)]
    if name == "path-independence":
        return [path_independence(m, n, s, seed) for s in (2, 3) if s <= n]
    if name == "prim-eq-size":
        return [prim_eq_size(m, n)]
    if name == "filtration-iso":
        return [filtration_iso(m, n)]
    if name == "jacobi":
        return [jacobi(m, n) if m > 1 else bracket_vanishes(m, n)]
    if name == "hopf-axioms":
        return [hopf_axioms(m, n, seed)]
    if name == "homology-squares-hexagons":
        return [homology_squares_hexagons()]
    if name == "diagrammatic-stu":
        return [diagrammatic_stu(m, n)]
    if name == "sanity-dims":
        return [sanity_dims()]
    if name == "non-braiding-hexagons":
        return [non_braiding_hexagons(m, n, s, seed) for s in (2, 3) if s <= n]
    raise KeyError(name)


CHECKS = ("stu2-eq-squares", "4t-from-stu2", "hexagon-from-stu2-ihx", "pi-section",
          "path-independence", "prim-eq-size", "filtration-iso", "jacobi", "hopf-axioms",
          "homology-squares-hexagons", "diagrammatic-stu", "sanity-dims", "non-braiding-hexagons")
