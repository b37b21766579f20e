"""Uni-trivalent diagrams on m oriented strands.

A diagram is stored at the level of half-edges.  Every vertex has ports:
a leaf has the single port 0, a node has ports 0, 1, 2 listed in
counterclockwise cyclic order.  Leaves are numbered by their position along
the strands (strand 0 bottom to top, then strand 1, ...), nodes come after
the leaves.

Because every component carries at least one leaf and leaves are pinned to
the strands, a breadth-first traversal started from the leaves in order
reaches every node through a well defined half-edge.  Numbering nodes by
discovery order and rotating each node so that its entry port becomes port
0 yields a canonical labelling; two diagrams are isomorphic (leg positions
fixed, cyclic orders preserved) exactly when their canonical forms agree.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
import json
import re

Half = tuple[int, int]


class StructureError(ValueError):
    """Malformed diagram data (dangling half-edge, wrong valence, tadpole...)."""


def canonical_form(legs, nodes, partner):
    """Canonical ``(strands, adj)`` pair of a raw half-edge structure.

    ``legs`` is a list (one entry per strand) of leaf labels in order along
    the strand, ``nodes`` an iterable of node labels and ``partner`` a
    mapping between half-edges ``(label, port)``.  Labels may be any hashable
    values.
    """
    leaves = [v for strand in legs for v in strand]
    if len(set(leaves)) != len(leaves):
        raise StructureError("a leaf appears twice in the leg lists")
    node_set = set(nodes)
    if node_set & set(leaves):
        raise StructureError(f"vertex {sorted(node_set & set(leaves), key=repr)[0]!r} is both leaf and node")
    _validate(leaves, node_set, partner)

    new = {v: i for i, v in enumerate(leaves)}
    entry = {}
    queue = deque((v, 0) for v in leaves)
    nxt = len(leaves)
    while queue:
        h = queue.popleft()
        w, q = partner[h]
        if w in node_set and w not in new:
            new[w] = nxt
            nxt += 1
            entry[w] = q
            queue.append((w, (q + 1) % 3))
            queue.append((w, (q + 2) % 3))
    if len(new) != len(leaves) + len(node_set):
        lost = next(v for v in node_set if v not in new)
        raise StructureError(f"node {lost!r} lies in a component without legs")

    def port(v, p):
        return (p - entry[v]) % 3 if v in node_set else 0

    def image(h):
        w, q = partner[h]
        return (new[w], port(w, q))

    adj = [None] * nxt
    for v in leaves:
        adj[new[v]] = (image((v, 0)),)
    for v in node_set:
        e = entry[v]
        adj[new[v]] = tuple(image((v, (e + i) % 3)) for i in range(3))
    return tuple(len(s) for s in legs), tuple(adj)


def _validate(leaves, node_set, partner):
    expected = [(v, 0) for v in leaves] + [(v, p) for v in node_set for p in range(3)]
    known = set(expected)
    for h in expected:
        if h not in partner:
            raise StructureError(f"vertex {h[0]!r}: port {h[1]} is not attached")
        o = partner[h]
        if o not in known:
            raise StructureError(f"vertex {h[0]!r}: port {h[1]} attached to unknown half-edge {o!r}")
        if partner.get(o) != h:
            raise StructureError(f"vertex {h[0]!r}: edge at port {h[1]} is not symmetric")
        if o[0] == h[0]:
            raise StructureError(f"vertex {h[0]!r} carries a tadpole")
    if len(partner) != len(expected):
        extra = next(h for h in partner if h not in known)
        raise StructureError(f"vertex {extra[0]!r}: unexpected port {extra[1]}")


@dataclass(frozen=True)
class Diagram:
    """Canonical uni-trivalent diagram; equality is isomorphism."""

    strands: tuple[int, ...]
    adj: tuple[tuple[Half, ...], ...]

    # ---- construction -------------------------------------------------
    @classmethod
    def from_half_edges(cls, legs, nodes, pairs) -> "Diagram":
        """Build from leg lists, node labels and a list of half-edge pairs."""
        partner = {}
        for a, b in pairs:
            a, b = tuple(a), tuple(b)
            for h in (a, b):
                if h in partner:
                    raise StructureError(f"vertex {h[0]!r}: port {h[1]} used twice")
            partner[a] = b
            partner[b] = a
        return cls(*canonical_form([list(s) for s in legs], list(nodes), partner))

    @classmethod
    def from_graph(cls, legs, nodes=None, chords=()) -> "Diagram":
        """Build from node cyclic triples given as neighbour labels.

        ``nodes`` maps a node label to its three neighbours in counterclockwise
        order; leaf-to-leaf edges are listed in ``chords``.  Multiple edges
        between two nodes are ambiguous here, use :meth:`from_half_edges`.
        """
        nodes = dict(nodes or {})
        leaves = {v for s in legs for v in s}
        pairs = []
        seen = set()
        for v, nbrs in nodes.items():
            if len(nbrs) != 3:
                raise StructureError(f"node {v!r} has valence {len(nbrs)}")
            for p, w in enumerate(nbrs):
                if w == v:
                    raise StructureError(f"node {v!r} carries a tadpole")
                if w in nodes:
                    if list(nodes[w]).count(v) != 1 or list(nbrs).count(w) != 1:
                        raise StructureError(f"node {v!r}: multiple or one-sided edge to {w!r}")
                    key = frozenset((v, w))
                    if key in seen:
                        continue
                    seen.add(key)
                    pairs.append(((v, p), (w, list(nodes[w]).index(v))))
                elif w in leaves:
                    pairs.append(((v, p), (w, 0)))
                else:
                    raise StructureError(f"node {v!r}: unknown neighbour {w!r}")
        for a, b in chords:
            pairs.append(((a, 0), (b, 0)))
        return cls.from_half_edges(legs, nodes.keys(), pairs)

    @classmethod
    def empty(cls, m: int) -> "Diagram":
        return cls((0,) * m, ())

    # ---- basic data ---------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.strands)

    @cached_property
    def n_leaves(self) -> int:
        return sum(self.strands)

    @property
    def n_nodes(self) -> int:
        return len(self.adj) - self.n_leaves

    @property
    def degree(self) -> int:
        return len(self.adj) // 2

    def is_leaf(self, v: int) -> bool:
        return v < self.n_leaves

    @cached_property
    def _offsets(self):
        out, acc = [], 0
        for c in self.strands:
            out.append(acc)
            acc += c
        return tuple(out)

    def leaf_at(self, strand: int, pos: int) -> int:
        return self._offsets[strand] + pos

    def position(self, leaf: int) -> tuple[int, int]:
        for j in range(self.m - 1, -1, -1):
            if leaf >= self._offsets[j] and self.strands[j]:
                if leaf < self._offsets[j] + self.strands[j]:
                    return j, leaf - self._offsets[j]
        raise IndexError(leaf)

    def leg_lists(self) -> list[list[int]]:
        return [list(range(o, o + c)) for o, c in zip(self._offsets, self.strands)]

    def partner(self) -> dict[Half, Half]:
        return {(v, p): h for v, ports in enumerate(self.adj) for p, h in enumerate(ports)}

    @cached_property
    def component_of(self) -> tuple[int, ...]:
        comp = [-1] * len(self.adj)
        c = 0
        for start in range(len(self.adj)):
            if comp[start] >= 0:
                continue
            comp[start] = c
            stack = [start]
            while stack:
                v = stack.pop()
                for w, _ in self.adj[v]:
                    if comp[w] < 0:
                        comp[w] = c
                        stack.append(w)
            c += 1
        return tuple(comp)

    @property
    def size(self) -> int:
        return max(self.component_of, default=-1) + 1

    def components(self) -> list[list[int]]:
        out = [[] for _ in range(self.size)]
        for v, c in enumerate(self.component_of):
            out[c].append(v)
        return out

    @property
    def n_edges(self) -> int:
        return (self.n_leaves + 3 * self.n_nodes) // 2

    @property
    def betti(self) -> int:
        """Number of independent cycles of the underlying graph."""
        return self.n_edges - len(self.adj) + self.size

    def is_forest(self) -> bool:
        return self.betti == 0

    def is_tree(self) -> bool:
        return self.betti == 0 and self.size == 1

    def is_chord(self) -> bool:
        return self.n_nodes == 0

    def has_isolated_chord(self) -> bool:
        """A chord whose two ends are consecutive legs on one strand."""
        for v in range(self.n_leaves):
            w = self.adj[v][0][0]
            if w == v + 1 and self.is_leaf(w) and self.position(v)[0] == self.position(w)[0]:
                return True
        return False

    # ---- ordering and encodings ---------------------------------------
    @cached_property
    def key(self):
        return (self.strands, self.adj)

    def __lt__(self, other: "Diagram") -> bool:
        return self.key < other.key

    def __hash__(self) -> int:
        return hash(self.key)

    def encode(self) -> str:
        """Deterministic text form, e.g. ``2;[0,1][2];0:3.0;...;3:(0.0,1.0,2.0)``."""
        parts = [str(self.m), "".join("[" + ",".join(map(str, s)) + "]" for s in self.leg_lists())]
        for v, ports in enumerate(self.adj):
            refs = ",".join(f"{w}.{q}" for w, q in ports)
            parts.append(f"{v}:{refs}" if self.is_leaf(v) else f"{v}:({refs})")
        return ";".join(parts)

    @classmethod
    def decode(cls, text: str) -> "Diagram":
        fields = text.strip().split(";")
        m = int(fields[0])
        legs = [[int(x) for x in s.split(",") if x] for s in re.findall(r"\[([^\]]*)\]", fields[1])]
        if len(legs) != m:
            raise StructureError(f"expected {m} strands, found {len(legs)}")
        leaves = {v for s in legs for v in s}
        nodes, pairs = [], set()
        for f in fields[2:]:
            v, refs = f.split(":")
            v = int(v)
            refs = [tuple(map(int, r.split("."))) for r in refs.strip("()").split(",")]
            if v not in leaves:
                nodes.append(v)
            for p, h in enumerate(refs):
                pairs.add(tuple(sorted([(v, p), h])))
        return cls.from_half_edges(legs, nodes, sorted(pairs))

    def to_json(self) -> dict:
        nodes = [{"id": v, "ports": [list(h) for h in self.adj[v]]}
                 for v in range(self.n_leaves, len(self.adj))]
        chords = [[v, w] for v in range(self.n_leaves)
                  for w, _ in self.adj[v] if self.is_leaf(w) and v < w]
        return {"strands": self.m, "legs": self.leg_lists(), "nodes": nodes, "chords": chords}

    @classmethod
    def from_json(cls, data: dict) -> "Diagram":
        legs = data["legs"]
        if len(legs) != data["strands"]:
            raise StructureError("strand count does not match leg lists")
        pairs = set()
        for node in data["nodes"]:
            for p, h in enumerate(node["ports"]):
                pairs.add(tuple(sorted([(node["id"], p), tuple(h)])))
        for a, b in data.get("chords", []):
            pairs.add(((a, 0), (b, 0)))
        return cls.from_half_edges(legs, [nd["id"] for nd in data["nodes"]], sorted(pairs))

    def __repr__(self) -> str:
        return f"Diagram({self.encode()!r})"

    # ---- local moves ---------------------------------------------------
    def raw(self):
        """Mutable copy: (leg lists, node ids, partner map)."""
        return self.leg_lists(), list(range(self.n_leaves, len(self.adj))), self.partner()

    def swap(self, strand: int, pos: int) -> "Diagram":
        """Exchange the legs at positions ``pos`` and ``pos+1`` of a strand."""
        legs, nodes, partner = self.raw()
        s = legs[strand]
        s[pos], s[pos + 1] = s[pos + 1], s[pos]
        return Diagram(*canonical_form(legs, nodes, partner))

    def merge(self, strand: int, pos: int) -> "Diagram | None":
        """Join the legs at ``pos`` (lower) and ``pos+1`` (upper) at a new node.

        The node's cyclic order is (new leg, lower edge, upper edge), so that
        ``d.merge(j, p) = d - d.swap(j, p)`` is an STU relation.  Returns
        ``None`` when both legs are the ends of one chord (a tadpole).
        """
        a, b = self.leaf_at(strand, pos), self.leaf_at(strand, pos + 1)
        legs, nodes, partner = self.raw()
        x, y = partner[(a, 0)], partner[(b, 0)]
        if x == (b, 0):
            return None
        c, nu = "c", "nu"
        for h in ((a, 0), (b, 0), x, y):
            partner.pop(h, None)
        partner[(c, 0)], partner[(nu, 0)] = (nu, 0), (c, 0)
        partner[(nu, 1)], partner[x] = x, (nu, 1)
        partner[(nu, 2)], partner[y] = y, (nu, 2)
        s = legs[strand]
        s[pos:pos + 2] = [c]
        nodes.append(nu)
        return Diagram(*canonical_form(legs, nodes, partner))

    def break_leg(self, leaf: int) -> tuple["Diagram", "Diagram"]:
        """Resolve the node at the end of ``leaf`` by STU.

        Returns ``(d_eq, d_cross)`` with ``self = d_eq - d_cross``; in
        ``d_eq`` the edge following the leg in the cyclic order lands lower.
        """
        legs, nodes, partner = self.raw()
        nu, p = partner[(leaf, 0)]
        if self.is_leaf(nu):
            raise StructureError(f"leaf {leaf} is the end of a chord, not of a node")
        x, y = partner[(nu, (p + 1) % 3)], partner[(nu, (p + 2) % 3)]
        for h in ((leaf, 0), (nu, 0), (nu, 1), (nu, 2)):
            partner.pop(h)
        nodes.remove(nu)
        j, pos = self.position(leaf)
        out = []
        for lo, hi in ((x, y), (y, x)):
            pt = dict(partner)
            pt[("lo", 0)], pt[lo] = lo, ("lo", 0)
            pt[("hi", 0)], pt[hi] = hi, ("hi", 0)
            lg = [list(s) for s in legs]
            lg[j][pos:pos + 1] = ["lo", "hi"]
            out.append(Diagram(*canonical_form(lg, nodes, pt)))
        return out[0], out[1]

    def flip(self, node: int) -> "Diagram":
        """Reverse the cyclic order at ``node``."""
        legs, nodes, partner = self.raw()
        h1, h2 = partner[(node, 1)], partner[(node, 2)]
        partner[(node, 1)], partner[h2] = h2, (node, 1)
        partner[(node, 2)], partner[h1] = h1, (node, 2)
        return Diagram(*canonical_form(legs, nodes, partner))

    def internal_edges(self) -> list[tuple[Half, Half]]:
        out = []
        for v in range(self.n_leaves, len(self.adj)):
            for p, (w, q) in enumerate(self.adj[v]):
                if not self.is_leaf(w) and (v, p) < (w, q):
                    out.append(((v, p), (w, q)))
        return out

    def ihx_terms(self, edge: tuple[Half, Half]) -> tuple["Diagram | None", ...]:
        """The three Jacobi-related diagrams at an internal edge.

        Writing the ends as u = (e, A, B) and v = (e, C, D), the returned
        diagrams are I = this diagram, u = (e, B, C), v = (e, A, D) and
        u = (e, C, A), v = (e, B, D); their sum is an IHX relation.  A term
        that would carry a tadpole (possible when u and v share a second
        edge) is returned as ``None``.
        """
        (u, p), (v, q) = edge
        legs, nodes, partner = self.raw()
        slot = {"A": (u, (p + 1) % 3), "B": (u, (p + 2) % 3),
                "C": (v, (q + 1) % 3), "D": (v, (q + 2) % 3)}
        back = {h: k for k, h in slot.items()}
        for h in ((u, 0), (u, 1), (u, 2), (v, 0), (v, 1), (v, 2)):
            o = partner.pop(h, None)
            if o is not None:
                partner.pop(o, None)
        ns = [x for x in nodes if x not in (u, v)] + ["u", "v"]
        out = []
        for order in ("ABCD", "BCAD", "CABD"):
            place = dict(zip(order, (("u", 1), ("u", 2), ("v", 1), ("v", 2))))
            pt = dict(partner)
            pt[("u", 0)], pt[("v", 0)] = ("v", 0), ("u", 0)
            for k, h in slot.items():
                o = self.adj[h[0]][h[1]]
                # a second u-v edge joins two slots to each other
                target = place[back[o]] if o in back else o
                pt[place[k]], pt[target] = target, place[k]
            if any(pt[(x, 1)][0] == x for x in ("u", "v")):
                out.append(None)  # tadpole term, zero by AS
                continue
            out.append(Diagram(*canonical_form([list(s) for s in legs], ns, pt)))
        return out[0], out[1], out[2]

    def standalone(self, vertices) -> "Diagram":
        """The sub-diagram spanned by a union of components, legs compressed."""
        keep = set(vertices)
        legs = [[v for v in s if v in keep] for s in self.leg_lists()]
        nodes = [v for v in range(self.n_leaves, len(self.adj)) if v in keep]
        partner = {h: o for h, o in self.partner().items() if h[0] in keep}
        return Diagram(*canonical_form(legs, nodes, partner))


def stack(upper: Diagram, lower: Diagram) -> Diagram:
    """Vertical concatenation with ``upper`` placed above ``lower``."""
    if upper.m != lower.m:
        raise StructureError(f"strand counts differ: {upper.m} vs {lower.m}")
    off = len(lower.adj)
    legs = [lo + [v + off for v in up] for lo, up in zip(lower.leg_lists(), upper.leg_lists())]
    nodes = list(range(lower.n_leaves, len(lower.adj))) + \
        [v + off for v in range(upper.n_leaves, len(upper.adj))]
    partner = lower.partner()
    for (v, p), (w, q) in upper.partner().items():
        partner[(v + off, p)] = (w + off, q)
    return Diagram(*canonical_form(legs, nodes, partner))


def stack_all(diagrams, m: int) -> Diagram:
    """``d0 . d1 . ... `` with ``d0`` on top."""
    out = Diagram.empty(m)
    for d in reversed(list(diagrams)):
        out = stack(d, out)
    return out


def canonicalize(d: Diagram) -> Diagram:
    return Diagram(*canonical_form(*d.raw()))


def is_tree(d: Diagram) -> bool:
    return d.is_tree()


def is_forest(d: Diagram) -> bool:
    return d.is_forest()


def has_isolated_chord(d: Diagram) -> bool:
    return d.has_isolated_chord()


def dumps(diagrams) -> str:
    return json.dumps([d.to_json() for d in diagrams])
