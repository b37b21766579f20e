"""The Lie algebra of trees and its bracket.

Elements are dicts ``{degree: coords}`` where ``coords`` are coordinates in
the quotient basis of trees of that degree modulo (1T), AS, IHX and STU².
The bracket of two trees T, T' is the vector of the slide path from the
stacking T' . T to T . T', reduced among trees of degree p + q.
"""

from __future__ import annotations

from itertools import product

from .diagram import stack
from .forests import bubble_path, path_vector, stacked
from .linalg import add_to
from .spaces import forest_algebra, lie_module


def element(t, fi: bool = True) -> dict:
    """A tree (or a dict of trees of one degree) as a Lie element."""
    v = t if isinstance(t, dict) else {t: 1}
    if not v:
        return {}
    d = next(iter(v)).degree
    c = lie_module(next(iter(v)).m, d, fi).coords(v)
    return {d: c} if c else {}


def bracket_trees(t, u, fi: bool = True) -> dict:
    """[T, T'] as a vector of degree p+q trees in normal form."""
    if t.m != u.m:
        raise ValueError(f"strand counts differ: {t.m} vs {u.m}")
    trees = (t, u)
    start = stacked(trees, (1, 0), t.m)  # T' on top of T
    end = stacked(trees, (0, 1), t.m)    # T on top of T'
    v, last = path_vector(start, bubble_path(start, end))
    assert last.words == end.words
    sp = lie_module(t.m, t.degree + u.degree, fi)
    return sp.reduce_diagrams(v)


def bracket(x: dict, y: dict, m: int, fi: bool = True) -> dict:
    """Bilinear extension of the bracket to graded Lie elements."""
    out = {}
    for p, cx in x.items():
        bx = lie_module(m, p, fi).basis
        for q, cy in y.items():
            by = lie_module(m, q, fi).basis
            acc = {}
            for (i, a), (j, b) in product(cx.items(), cy.items()):
                add_to(acc, bracket_trees(bx[i], by[j], fi), a * b)
            c = lie_module(m, p + q, fi).coords(acc)
            if c:
                cur = out.setdefault(p + q, {})
                add_to(cur, c)
                if not cur:
                    del out[p + q]
    return out


def add(x: dict, y: dict, scale=1) -> dict:
    out = {d: dict(c) for d, c in x.items()}
    for d, c in y.items():
        cur = out.setdefault(d, {})
        add_to(cur, c, scale)
        if not cur:
            del out[d]
    return out


def basis_elements(m: int, n: int, fi: bool = True):
    dim = lie_module(m, n, fi).dim
    return [{n: {i: 1}} for i in range(dim)]


def graded_dims(m: int, max_degree: int, fi: bool = True) -> list[int]:
    return [lie_module(m, n, fi).dim for n in range(1, max_degree + 1)]


def jacobi_check(m: int, max_degree: int, fi: bool = True) -> dict:
    """Antisymmetry and Jacobi on all basis pairs / triples up to a degree sum."""
    basis = {n: basis_elements(m, n, fi) for n in range(1, max_degree + 1)}
    flat = [(n, e) for n in basis for e in basis[n]]
    report = {"pairs": 0, "triples": 0, "antisymmetry_failures": [], "jacobi_failures": []}
    for (p, x), (q, y) in product(flat, repeat=2):
        if p + q > max_degree:
            continue
        report["pairs"] += 1
        if add(bracket(x, y, m, fi), bracket(y, x, m, fi)):
            report["antisymmetry_failures"].append((x, y))
    for (p, x), (q, y), (r, z) in product(flat, repeat=3):
        if p + q + r > max_degree:
            continue
        report["triples"] += 1
        s = add(add(bracket(x, bracket(y, z, m, fi), m, fi),
                    bracket(y, bracket(z, x, m, fi), m, fi)),
                bracket(z, bracket(x, y, m, fi), m, fi))
        if s:
            report["jacobi_failures"].append((x, y, z))
    report["ok"] = not report["antisymmetry_failures"] and not report["jacobi_failures"]
    return report


def commutator_in_algebra(t, u, fi: bool = True) -> bool:
    """The bracket maps to T . T' - T' . T in the algebra of diagrams."""
    n = t.degree + u.degree
    A = forest_algebra(t.m, n, fi)
    lhs = A.normal_form(bracket_trees(t, u, fi))
    rhs = A.normal_form({stack(t, u): 1})
    add_to(rhs, A.normal_form({stack(u, t): 1}), -1)
    return lhs == rhs


def structure_constants(m: int, p: int, q: int, fi: bool = True) -> dict:
    """Brackets of basis trees of degrees p and q, keyed by their encodings."""
    bp, bq = lie_module(m, p, fi).basis, lie_module(m, q, fi).basis
    sp = lie_module(m, p + q, fi)
    out = {}
    for a in bp:
        for b in bq:
            c = sp.reduce_diagrams(bracket_trees(a, b, fi))
            out[f"[{a.encode()} , {b.encode()}]"] = {d.encode(): str(x) for d, x in sorted(c.items())}
    return out
