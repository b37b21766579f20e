"""Enumeration of isomorphism classes of uni-trivalent diagrams.

Generation follows the same breadth-first queue used for canonical labels
(see :mod:`jacobi_forests.diagram`): half-edges are processed in queue
order and each still-free half-edge is matched either to a later leaf, to a
fresh node (entered at port 0) or to a free port of a node already met.
Every isomorphism class is then produced exactly once, directly in
canonical form, so no deduplication pass is needed.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .diagram import Diagram

CLASSES = ("all", "forest", "tree", "chord")


class ResourceLimitError(RuntimeError):
    """Raised when an enumeration would exceed the requested cap.

    ``partial`` holds what was produced before the cap was hit.
    """

    def __init__(self, message: str, partial=()):
        super().__init__(message)
        self.partial = list(partial)


def compositions(total: int, parts: int):
    """All tuples of ``parts`` non-negative integers summing to ``total``."""
    if parts == 0:
        if total == 0:
            yield ()
        return
    if parts == 1:
        yield (total,)
        return
    for cut in combinations(range(total + parts - 1), parts - 1):
        prev, out = -1, []
        for c in cut:
            out.append(c - prev - 1)
            prev = c
        out.append(total + parts - 2 - prev)
        yield tuple(out)


def _generate(strands, k, max_cycles):
    """Canonical diagrams with the given leg counts and ``k`` nodes."""
    L = sum(strands)
    total = L + k
    # half-edge h = (vertex, port); partner table as dict
    partner = {}
    parent = list(range(total))
    state = {"nodes": 0, "cycles": 0}
    queue = [(v, 0) for v in range(L)]

    def find(x):
        while parent[x] != x:
            x = parent[x]
        return x

    def link(a, b):
        """Join two vertices, return an undo token."""
        ra, rb = find(a), find(b)
        if ra == rb:
            state["cycles"] += 1
            return None
        parent[rb] = ra
        return rb

    def unlink(tok):
        if tok is None:
            state["cycles"] -= 1
        else:
            parent[tok] = tok

    def rec(i):
        while i < len(queue) and queue[i] in partner:
            i += 1
        if i == len(queue):
            if state["nodes"] == k:
                adj = [None] * total
                for v in range(L):
                    adj[v] = (partner[(v, 0)],)
                for v in range(L, total):
                    adj[v] = tuple(partner[(v, p)] for p in range(3))
                yield Diagram(tuple(strands), tuple(adj))
            return
        h = queue[i]
        # fresh node
        if state["nodes"] < k:
            w = L + state["nodes"]
            tok = link(h[0], w)
            if max_cycles is None or state["cycles"] <= max_cycles:
                state["nodes"] += 1
                partner[h], partner[(w, 0)] = (w, 0), h
                queue.extend([(w, 1), (w, 2)])
                yield from rec(i + 1)
                del queue[-2:]
                del partner[h], partner[(w, 0)]
                state["nodes"] -= 1
            unlink(tok)
        # an existing free half-edge further along the queue
        for j in range(i + 1, len(queue)):
            o = queue[j]
            if o in partner or o[0] == h[0]:
                continue
            tok = link(h[0], o[0])
            if max_cycles is None or state["cycles"] <= max_cycles:
                partner[h], partner[o] = o, h
                yield from rec(i + 1)
                del partner[h], partner[o]
            unlink(tok)

    yield from rec(0)


def enumerate_diagrams(m: int, n: int, cls: str = "all", size: int | None = None,
                       max_cycles: int | None = None, limit: int | None = None,
                       strands: tuple[int, ...] | None = None) -> list[Diagram]:
    """Sorted list of all diagrams of degree ``n`` on ``m`` strands in a class.

    ``cls`` is one of ``all``, ``forest``, ``tree``, ``chord``.  ``size``
    restricts the number of components, ``max_cycles`` the first Betti
    number, ``strands`` fixes the leg counts.  ``limit`` caps the output;
    exceeding it raises :class:`ResourceLimitError`.
    """
    if cls not in CLASSES:
        raise ValueError(f"unknown diagram class {cls!r}")
    if m < 1 or n < 0:
        raise ValueError("need m >= 1 and n >= 0")
    if cls in ("forest", "tree"):
        max_cycles = 0
    if cls == "tree":
        size = 1
    out = []
    for L in range(2 * n, -1, -1):
        k = 2 * n - L
        if cls == "chord" and k:
            continue
        if L == 0 and n > 0:
            continue
        if size is not None and max_cycles == 0 and L != n + size:
            continue
        dists = [tuple(strands)] if strands is not None else compositions(L, m)
        for dist in dists:
            if sum(dist) != L or len(dist) != m:
                continue
            for d in _generate(dist, k, max_cycles):
                if size is not None and d.size != size:
                    continue
                out.append(d)
                if limit is not None and len(out) > limit:
                    raise ResourceLimitError(
                        f"more than {limit} diagrams for m={m}, n={n}, class={cls}",
                        sorted(out[:limit]))
    out.sort()
    return out


@lru_cache(maxsize=None)
def cached(m: int, n: int, cls: str = "all", size: int | None = None,
           max_cycles: int | None = None) -> tuple[Diagram, ...]:
    return tuple(enumerate_diagrams(m, n, cls, size=size, max_cycles=max_cycles))


def brute_force(m: int, n: int) -> set[Diagram]:
    """All diagrams via every perfect matching of labelled half-edges.

    Independent of the orderly generator; only usable for very small n.
    """
    from .diagram import StructureError, canonical_form

    found = set()
    for L in range(1 if n else 0, 2 * n + 1):
        k = 2 * n - L
        for dist in compositions(L, m):
            halves = [(v, 0) for v in range(L)] + [(v, p) for v in range(L, L + k) for p in range(3)]
            legs, acc = [], 0
            for c in dist:
                legs.append(list(range(acc, acc + c)))
                acc += c
            for match in _matchings(halves):
                partner = {}
                for a, b in match:
                    partner[a], partner[b] = b, a
                try:
                    found.add(Diagram(*canonical_form(legs, range(L, L + k), partner)))
                except StructureError:
                    pass
    return found


def _matchings(items):
    if not items:
        yield []
        return
    a = items[0]
    for i in range(1, len(items)):
        rest = items[1:i] + items[i + 1:]
        for mm in _matchings(rest):
            yield [(a, items[i])] + mm
