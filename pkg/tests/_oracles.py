"""Independent brute-force helpers shared by the tests."""

from __future__ import annotations

import random
from itertools import permutations, product
from fractions import Fraction


def relabel(raw, perm, rot):
    """Rename nodes by ``perm`` (old -> new) and rotate ports by ``rot``."""
    legs, nodes, partner = raw

    def h(x):
        v, p = x
        if v in perm:
            return (perm[v], (p + rot[v]) % 3)
        return x

    return legs, [perm[v] for v in nodes], {h(a): h(b) for a, b in partner.items()}


def random_relabel(raw, rng: random.Random):
    legs, nodes, _ = raw
    new = [f"n{i}" for i in range(len(nodes))]
    rng.shuffle(new)
    perm = dict(zip(nodes, new))
    rot = {v: rng.randrange(3) for v in nodes}
    return relabel(raw, perm, rot)


def brute_isomorphic(raw1, raw2) -> bool:
    """Search all node bijections and port rotations (legs fixed by position)."""
    legs1, nodes1, p1 = raw1
    legs2, nodes2, p2 = raw2
    if [len(s) for s in legs1] != [len(s) for s in legs2] or len(nodes1) != len(nodes2):
        return False
    leafmap = {a: b for s1, s2 in zip(legs1, legs2) for a, b in zip(s1, s2)}
    for image in permutations(nodes2):
        for rots in product(range(3), repeat=len(nodes1)):
            nm = dict(zip(nodes1, image))
            rt = dict(zip(nodes1, rots))

            def f(x):
                v, p = x
                return (leafmap[v], 0) if v in leafmap else (nm[v], (p + rt[v]) % 3)

            if all(p2.get(f(a)) == f(b) for a, b in p1.items()):
                return True
    return False


def double_factorial(k: int) -> int:
    out = 1
    while k > 1:
        out *= k
        k -= 2
    return out


def dense_solve_member(rows, v) -> bool:
    """Whether v is in the row space, by dense Gaussian elimination."""
    from jacobi_forests.linalg import dense_rank
    return dense_rank(rows) == dense_rank(rows + [v])


def to_dense(vectors, ncols):
    return [[Fraction(v.get(c, 0)) for c in range(ncols)] for v in vectors]
