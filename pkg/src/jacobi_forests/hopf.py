"""Coproduct, reduced coproducts and the primitive / size filtrations.

Tensors are dicts mapping a tuple of diagrams to a coefficient.  The
product of diagrams is stacking, ``x * y = stack(x, y)`` with x on top.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations, product
from math import factorial

from .diagram import Diagram, stack, stack_all
from .linalg import Span, add_to, kernel
from .spaces import forest_algebra


def _sub(d: Diagram, comps, blocks):
    verts = [v for c in blocks for v in comps[c]]
    return d.standalone(verts) if verts else Diagram.empty(d.m)


def comult(d: Diagram) -> dict:
    """Sum over subsets J of components of D_J (x) D_(complement)."""
    comps = d.components()
    idx = range(len(comps))
    out = {}
    for r in range(len(comps) + 1):
        for J in combinations(idx, r):
            rest = [c for c in idx if c not in J]
            add_to(out, {(_sub(d, comps, J), _sub(d, comps, rest)): 1})
    return out


def reduced_comult(d: Diagram) -> dict:
    comps = d.components()
    idx = range(len(comps))
    out = {}
    for r in range(1, len(comps)):
        for J in combinations(idx, r):
            rest = [c for c in idx if c not in J]
            add_to(out, {(_sub(d, comps, J), _sub(d, comps, rest)): 1})
    return out


def ordered_partitions(items, k):
    """Ordered partitions of ``items`` into k non-empty blocks."""
    items = list(items)
    for assign in product(range(k), repeat=len(items)):
        if len(set(assign)) == k:
            yield tuple(tuple(x for x, a in zip(items, assign) if a == b) for b in range(k))


def reduced_comult_power(d: Diagram, k: int) -> dict:
    """k-fold reduced coproduct: ordered partitions into k+1 non-empty blocks."""
    comps = d.components()
    out = {}
    for blocks in ordered_partitions(range(len(comps)), k + 1):
        add_to(out, {tuple(_sub(d, comps, b) for b in blocks): 1})
    return out


def iterated_reduced_comult(d: Diagram, k: int) -> dict:
    """Same map through the recursion (reduced^(k-1) (x) id) o reduced."""
    if k == 1:
        return reduced_comult(d)
    out = {}
    for (a, b), c in reduced_comult(d).items():
        for t, c2 in iterated_reduced_comult(a, k - 1).items():
            add_to(out, {t + (b,): c * c2})
    return out


def linear(f, v: dict) -> dict:
    """Extend a map from diagrams to tensors (or vectors) linearly."""
    out = {}
    for d, c in v.items():
        add_to(out, f(d), c)
    return out


def tensor_mul(s: dict, t: dict) -> dict:
    """Factorwise product of two tensors with the same number of factors."""
    out = {}
    for a, c in s.items():
        for b, e in t.items():
            add_to(out, {tuple(stack(x, y) for x, y in zip(a, b)): c * e})
    return out


def swap(t: dict) -> dict:
    return {k[::-1]: c for k, c in t.items()}


def mu(t: dict) -> dict:
    """Multiply out the tensor factors."""
    out = {}
    for k, c in t.items():
        add_to(out, {stack_all(k, k[0].m): c})
    return out


def coassociativity_defect(d: Diagram) -> dict:
    left, right = {}, {}
    for (a, b), c in comult(d).items():
        for (x, y), e in comult(a).items():
            add_to(left, {(x, y, b): c * e})
        for (x, y), e in comult(b).items():
            add_to(right, {(a, x, y): c * e})
    add_to(left, right, -1)
    return left


def product_formula_rhs(x: Diagram, y: Diagram) -> dict:
    """Right hand side of the reduced coproduct of a product x * y."""
    one = Diagram.empty(x.m)
    dx, dy = reduced_comult(x), reduced_comult(y)
    out = tensor_mul(dx, dy)
    add_to(out, tensor_mul(dx, {(one, y): 1, (y, one): 1}))
    add_to(out, tensor_mul({(one, x): 1, (x, one): 1}, dy))
    add_to(out, {(x, y): 1})
    add_to(out, {(y, x): 1})
    return out


# ---- sections ---------------------------------------------------------------

def section_s(f: Diagram, k: int) -> dict:
    """F - mu o reduced^k (F) / (k+1)!  (identity on sizes <= k)."""
    if f.size > k + 1:
        raise ValueError(f"section needs size <= {k + 1}, got {f.size}")
    out = {f: 1}
    if f.size <= k:
        return out
    add_to(out, mu(reduced_comult_power(f, k)), Fraction(-1, factorial(k + 1)))
    return out


def section_by_stackings(f: Diagram, k: int) -> dict:
    """(1/(k+1)!) sum over orderings sigma of (F - F_sigma)."""
    if f.size <= k:
        return {f: 1}
    from .forests import labelled, stacked
    from itertools import permutations
    trees = labelled(f).trees
    out = {}
    w = Fraction(1, factorial(k + 1))
    for order in permutations(range(len(trees))):
        add_to(out, {f: w})
        add_to(out, {stacked(trees, order, f.m).diagram: -w})
    return out


# ---- quotient level ---------------------------------------------------------

def _coords(d: Diagram, fi: bool) -> dict:
    if d.degree == 0:
        return {0: 1}
    return forest_algebra(d.m, d.degree, fi).coords({d: 1})


def tensor_coords(t: dict, fi: bool = True) -> dict:
    """Coordinates of a tensor in the tensor power of the quotients A_p.

    Keys are (degrees of the factors, quotient basis index of each factor).
    """
    out = {}
    for key, c in t.items():
        parts = [list(_coords(d, fi).items()) for d in key]
        degs = tuple(d.degree for d in key)
        for combo in product(*parts):
            val = c
            for _, x in combo:
                val *= x
            add_to(out, {(degs, tuple(i for i, _ in combo)): val})
    return out


def basis_vector(space, coords: dict) -> dict:
    """Diagram vector representing quotient coordinates."""
    return {space.basis[i]: c for i, c in coords.items()}


@lru_cache(maxsize=None)
def primitive_subspace(m: int, n: int, fi: bool = True) -> tuple:
    """Basis (quotient coordinates) of the kernel of the reduced coproduct."""
    A = forest_algebra(m, n, fi)
    images = []
    keys = {}
    for d in A.basis:
        t = tensor_coords(reduced_comult(d), fi)
        images.append({keys.setdefault(k, len(keys)): c for k, c in t.items()})
    return tuple(kernel(images))


def size_subspace(m: int, n: int, k: int, fi: bool = True) -> list:
    """Spanning set (quotient coordinates) of the image of forests of size <= k."""
    A = forest_algebra(m, n, fi)
    out = Span()
    for f in A.ambient.diagrams:
        if f.size <= k:
            out.add(A.coords({f: 1}))
    return out.basis()


def compositions_positive(n, parts):
    if parts == 1:
        yield (n,)
        return
    for first in range(1, n - parts + 2):
        for rest in compositions_positive(n - first, parts - 1):
            yield (first,) + rest


def product_filtration(m: int, n: int, k: int, fi: bool = True) -> list:
    """Spanning set of products of at most k primitive elements, degree n."""
    A = forest_algebra(m, n, fi)
    out = Span()
    for parts in range(1, k + 1):
        for degs in compositions_positive(n, parts):
            factors = []
            for d in degs:
                sp = forest_algebra(m, d, fi)
                factors.append([basis_vector(sp, v) for v in primitive_subspace(m, d, fi)])
            for choice in product(*factors):
                prod_vec = {Diagram.empty(m): 1}
                for f in choice:
                    nxt = {}
                    for a, c in prod_vec.items():
                        for b, e in f.items():
                            add_to(nxt, {stack(a, b): c * e})
                    prod_vec = nxt
                out.add(A.coords(prod_vec))
    return out.basis()


def kills(m: int, n: int, k: int, vectors, fi: bool = True) -> bool:
    """Whether the k-fold reduced coproduct vanishes on the given vectors."""
    A = forest_algebra(m, n, fi)
    for v in vectors:
        t = linear(lambda d: reduced_comult_power(d, k), basis_vector(A, v))
        if tensor_coords(t, fi):
            return False
    return True


def descends(m: int, n: int, fi: bool = True) -> bool:
    """The reduced coproduct sends every relation vector of A_n to zero."""
    A = forest_algebra(m, n, fi)
    for vecs in A.relations.values():
        for v in vecs:
            t = linear(reduced_comult, A.ambient.diagram_vector(v))
            if tensor_coords(t, fi):
                return False
    return True
