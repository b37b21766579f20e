"""Permutographs, their box products, and cycle decomposition.

A vertex is a tuple of words, one word per strand (a single permutograph is
the case of one strand).  A move ``(j, i)`` swaps the letters at positions
``i`` and ``i+1`` of word ``j`` and is allowed when they differ.  The height
of a vertex is its total number of inversions.

:func:`decompose_cycle` rewrites a closed walk into back-and-forth steps,
squares and hexagons by repeatedly lowering a highest vertex of the walk:
two commuting descents give a square, two overlapping descents on the same
word give a hexagon around the three letters involved.
"""

from __future__ import annotations

from collections import Counter, deque
from dataclasses import dataclass
from itertools import permutations
from math import factorial, prod

Vertex = tuple  # tuple of words (tuples of ints)


def as_vertex(words) -> Vertex:
    if words and isinstance(words[0], int):
        words = (words,)
    return tuple(tuple(w) for w in words)


def height(v) -> int:
    v = as_vertex(v)
    return sum(1 for w in v for i in range(len(w)) for k in range(i + 1, len(w)) if w[i] > w[k])


def apply(v: Vertex, move) -> Vertex:
    j, i = move
    w = list(v[j])
    if w[i] == w[i + 1]:
        raise ValueError(f"move {move} swaps equal letters")
    w[i], w[i + 1] = w[i + 1], w[i]
    return v[:j] + (tuple(w),) + v[j + 1:]


def moves(v: Vertex):
    return [(j, i) for j, w in enumerate(v) for i in range(len(w) - 1) if w[i] != w[i + 1]]


def neighbors(v: Vertex):
    return [(mv, apply(v, mv)) for mv in moves(v)]


def move_between(u: Vertex, w: Vertex):
    """The unique move joining two adjacent vertices."""
    for mv in moves(u):
        if apply(u, mv) == w:
            return mv
    raise ValueError(f"{u} and {w} are not adjacent")


def sorted_word(mult) -> tuple:
    return tuple(a for a, c in enumerate(mult, start=1) for _ in range(c))


def vertices(mults) -> list[Vertex]:
    """All vertices of the box product of permutographs P_{n^1} x ... x P_{n^m}.

    ``mults`` is a list (one entry per strand) of letter multiplicities.
    """
    per = []
    for mult in mults:
        per.append(sorted(set(permutations(sorted_word(mult)))))
    out = [()]
    for ws in per:
        out = [v + (w,) for v in out for w in ws]
    return out


def vertex_count(mults) -> int:
    return prod(factorial(sum(m)) // prod(factorial(c) for c in m) for m in mults)


def edges(vs) -> list[tuple[Vertex, Vertex]]:
    out = []
    for v in vs:
        for _, w in neighbors(v):
            if v < w:
                out.append((v, w))
    return out


# ---- cycles and chains ----------------------------------------------------

def chain(cycle) -> Counter:
    """1-chain of a closed walk given as its vertex list (first not repeated)."""
    c = Counter()
    L = len(cycle)
    for i in range(L):
        a, b = cycle[i], cycle[(i + 1) % L]
        if a < b:
            c[(a, b)] += 1
        else:
            c[(b, a)] -= 1
    return Counter({k: x for k, x in c.items() if x})


def add_chains(chains) -> Counter:
    out = Counter()
    for c in chains:
        for k, x in c.items():
            out[k] += x
    return Counter({k: x for k, x in out.items() if x})


def is_closed_walk(cycle) -> bool:
    L = len(cycle)
    return L == 0 or all(cycle[(i + 1) % L] in {w for _, w in neighbors(cycle[i])} for i in range(L))


@dataclass
class Atom:
    kind: str  # "backtrack", "square" or "hexagon"
    cycle: list

    @property
    def chain(self) -> Counter:
        return chain(self.cycle)


def decompose_cycle(cycle) -> list[Atom]:
    """Split a closed walk into backtracks, squares and hexagons.

    The returned atoms satisfy ``sum(atom.chain) == chain(cycle)`` exactly.
    """
    walk = [as_vertex(v) for v in cycle]
    if len(walk) > 1 and walk[0] == walk[-1]:
        walk = walk[:-1]
    if not is_closed_walk(walk):
        raise ValueError("input is not a closed walk")
    atoms = []
    while walk:
        L = len(walk)
        if L == 2:
            atoms.append(Atom("backtrack", list(walk)))
            break
        back = next((i for i in range(L) if walk[i - 1] == walk[(i + 1) % L]), None)
        if back is not None:
            atoms.append(Atom("backtrack", [walk[back - 1], walk[back]]))
            nxt = (back + 1) % L
            walk = [v for k, v in enumerate(walk) if k not in (back, nxt)]
            # drop the duplicated vertex so that the walk stays closed
            continue
        hs = [height(v) for v in walk]
        i = hs.index(max(hs))
        prev, v, nxt = walk[i - 1], walk[i], walk[(i + 1) % L]
        a, b = move_between(v, prev), move_between(v, nxt)
        if a[0] != b[0] or abs(a[1] - b[1]) >= 2:
            u = apply(apply(v, a), b)
            atoms.append(Atom("square", [prev, v, nxt, u]))
            replacement = [u]
        else:
            lo = min(a[1], b[1])
            j = a[0]
            x1 = apply(v, (j, lo))
            x2 = apply(v, (j, lo + 1))
            # the route around the hexagon that avoids v
            if prev == x1:
                route = [apply(x1, (j, lo + 1))]
                route.append(apply(route[-1], (j, lo)))
                route.append(apply(route[-1], (j, lo + 1)))
            else:
                route = [apply(x2, (j, lo))]
                route.append(apply(route[-1], (j, lo + 1)))
                route.append(apply(route[-1], (j, lo)))
            atoms.append(Atom("hexagon", [prev, v, nxt] + route[::-1]))
            replacement = route
        walk = walk[:i] + replacement + walk[i + 1:]
    return atoms


def spanning_tree_cycles(vs) -> list[list[Vertex]]:
    """Fundamental cycles of a BFS spanning tree of the graph on ``vs``."""
    vs = [as_vertex(v) for v in vs]
    present = set(vs)
    parent = {}
    depth = {}
    for root in vs:
        if root in parent:
            continue
        parent[root], depth[root] = None, 0
        q = deque([root])
        while q:
            v = q.popleft()
            for _, w in neighbors(v):
                if w in present and w not in parent:
                    parent[w], depth[w] = v, depth[v] + 1
                    q.append(w)
    cycles = []
    for u, w in edges(vs):
        if parent.get(w) == u or parent.get(u) == w:
            continue
        pu, pw = [u], [w]
        while pu[-1] != pw[-1]:
            if depth[pu[-1]] >= depth[pw[-1]]:
                pu.append(parent[pu[-1]])
            else:
                pw.append(parent[pw[-1]])
        # u -> ... -> lca -> ... -> w -> u
        cycles.append(pu + pw[-2::-1])
    return cycles


def path_between(u: Vertex, w: Vertex) -> list:
    """Bubble-sort moves turning u into w (words with equal letter content)."""
    u, w = as_vertex(u), as_vertex(w)
    out = []
    cur = list(map(list, u))
    for j, (a, t) in enumerate(zip(u, w)):
        rank = _ranks(list(a), list(t))
        word = cur[j]
        changed = True
        while changed:
            changed = False
            for i in range(len(rank) - 1):
                if rank[i] > rank[i + 1]:
                    rank[i], rank[i + 1] = rank[i + 1], rank[i]
                    word[i], word[i + 1] = word[i + 1], word[i]
                    out.append((j, i))
                    changed = True
                    break
    return out


def _ranks(a, t):
    """Target position of every letter of a, occurrences matched in order."""
    slots = {}
    for pos, x in enumerate(t):
        slots.setdefault(x, deque()).append(pos)
    if sorted(a) != sorted(t):
        raise ValueError("words have different letter content")
    return [slots[x].popleft() for x in a]


def to_dot(vs, name: str = "G") -> str:
    vs = [as_vertex(v) for v in vs]
    lab = {v: "|".join("".join(map(str, w)) for w in v) for v in vs}
    lines = [f"graph {name} {{"]
    for v in vs:
        lines.append(f'  "{lab[v]}" [label="{lab[v]}\\nh={height(v)}"];')
    for u, w in edges(vs):
        if w in lab:
            lines.append(f'  "{lab[u]}" -- "{lab[w]}";')
    lines.append("}")
    return "\n".join(lines) + "\n"
