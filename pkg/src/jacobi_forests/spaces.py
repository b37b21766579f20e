"""Quotient spaces of diagrams used throughout the package.

Every space is a :class:`Space`: an ambient basis of diagrams (sorted by
canonical key) and a :class:`~jacobi_forests.linalg.Quotient` by a list of
relation vectors.  Builders are memoised per process.

``fi`` toggles the 1T relation (framing independence).
"""

from __future__ import annotations

from functools import lru_cache

from . import relations as R
from .diagram import Diagram
from .enumeration import enumerate_diagrams
from .linalg import Quotient, Span


class DomainError(ValueError):
    """A vector mentions a diagram outside the ambient basis."""


class Ambient:
    def __init__(self, diagrams):
        self.diagrams = tuple(sorted(diagrams))
        self.index = {d: i for i, d in enumerate(self.diagrams)}

    def __len__(self):
        return len(self.diagrams)

    def __contains__(self, d):
        return d in self.index

    def vector(self, dv: dict) -> dict:
        try:
            return {self.index[d]: c for d, c in dv.items()}
        except KeyError as exc:
            raise DomainError(f"diagram {exc.args[0]!r} is not in the ambient basis") from None

    def diagram_vector(self, v: dict) -> dict:
        return {self.diagrams[i]: c for i, c in v.items()}


class Space:
    """Ambient diagrams modulo relations, with bookkeeping per relation kind."""

    def __init__(self, name, diagrams, relation_sets: dict):
        self.name = name
        self.ambient = Ambient(diagrams)
        self.relations = {k: [self.ambient.vector(r.vector) for r in rels]
                          for k, rels in relation_sets.items()}
        span = Span()
        for k in sorted(self.relations):
            for v in self.relations[k]:
                span.add(v)
        self.quotient = Quotient(len(self.ambient), span)

    @property
    def dim(self) -> int:
        return self.quotient.rank

    @property
    def basis(self) -> list[Diagram]:
        """Diagrams whose classes form a basis of the quotient."""
        return [self.ambient.diagrams[i] for i in self.quotient.free]

    def normal_form(self, dv: dict) -> dict:
        """Reduced representative as an ambient index vector."""
        return self.quotient.normal_form(self.ambient.vector(dv))

    def coords(self, dv: dict) -> dict:
        return self.quotient.coords(self.ambient.vector(dv))

    def is_zero(self, dv: dict) -> bool:
        return self.quotient.is_zero(self.ambient.vector(dv))

    def reduce_diagrams(self, dv: dict) -> dict:
        """Normal form written back as a diagram vector."""
        return self.ambient.diagram_vector(self.normal_form(dv))

    def __repr__(self):
        return f"<Space {self.name}: ambient {len(self.ambient)}, dim {self.dim}>"


# ---- diagram lists --------------------------------------------------------

@lru_cache(maxsize=None)
def forests(m: int, n: int, size: int | None = None) -> tuple[Diagram, ...]:
    if n == 0:
        return (Diagram.empty(m),) if size in (None, 0) else ()
    return tuple(enumerate_diagrams(m, n, "forest", size=size))


@lru_cache(maxsize=None)
def trees(m: int, n: int) -> tuple[Diagram, ...]:
    return forests(m, n, 1)


@lru_cache(maxsize=None)
def unicyclic(m: int, n: int, size: int) -> tuple[Diagram, ...]:
    """Diagrams of degree n with ``size`` components and exactly one cycle."""
    return tuple(d for d in enumerate_diagrams(m, n, "all", size=size, max_cycles=1) if d.betti == 1)


@lru_cache(maxsize=None)
def all_diagrams(m: int, n: int) -> tuple[Diagram, ...]:
    return tuple(enumerate_diagrams(m, n, "all"))


@lru_cache(maxsize=None)
def chords(m: int, n: int) -> tuple[Diagram, ...]:
    return tuple(enumerate_diagrams(m, n, "chord"))


# ---- relation sets --------------------------------------------------------

@lru_cache(maxsize=None)
def stu2_relations(m: int, n: int, s: int, same_node: bool = True):
    """STU² relations among size-s forests of degree n."""
    templates = (forests(m, n, s - 1) if s > 1 else ()) + unicyclic(m, n, s)
    return tuple(R.gen_STU2(templates, same_node))


@lru_cache(maxsize=None)
def square_relations(m: int, n: int, s: int):
    """Square relations among size-s forests (from size s+1 forest graphs)."""
    return tuple(R.gen_squares(forests(m, n, s + 1)))


@lru_cache(maxsize=None)
def hexagon_relations(m: int, n: int, s: int):
    """Braiding hexagon relations among size-s forests."""
    return tuple(R.gen_HEX(forests(m, n, s + 1)))


# ---- spaces ---------------------------------------------------------------

@lru_cache(maxsize=None)
def forest_algebra(m: int, n: int, fi: bool = True) -> Space:
    """Degree n part of the algebra of diagrams, presented on forests by STU."""
    fs = forests(m, n)
    rels = {"STU": R.gen_STU(fs), "AS": R.gen_AS(fs), "IHX": R.gen_IHX(fs)}
    if fi:
        rels["1T"] = R.gen_1T(fs)
    return Space(f"A_{n}({m}){'FI' if fi else ''}", fs, rels)


@lru_cache(maxsize=None)
def full_algebra(m: int, n: int, fi: bool = True) -> Space:
    """Same algebra presented on all uni-trivalent diagrams by STU only."""
    ds = all_diagrams(m, n)
    rels = {"STU": R.gen_STU(ds)}
    if fi:
        rels["1T"] = R.gen_1T(ds)
    return Space(f"Aall_{n}({m})", ds, rels)


@lru_cache(maxsize=None)
def chord_algebra(m: int, n: int, fi: bool = True) -> Space:
    """Same algebra presented on chord diagrams by 4T."""
    cs = chords(m, n)
    rels = {"4T": R.gen_4T(cs)}
    if fi:
        rels["1T"] = R.gen_1T(cs)
    return Space(f"Achord_{n}({m})", cs, rels)


@lru_cache(maxsize=None)
def forest_module(m: int, n: int, k: int, fi: bool = True, hexagons: bool = True,
                  same_node: bool = True) -> Space:
    """Size-k forests of degree n modulo (1T), AS, IHX, STU² and hexagons."""
    fs = forests(m, n, k)
    rels = {"AS": R.gen_AS(fs), "IHX": R.gen_IHX(fs),
            "STU2": list(stu2_relations(m, n, k, same_node))}
    if hexagons:
        rels["HEX"] = list(hexagon_relations(m, n, k))
    if fi:
        rels["1T"] = R.gen_1T(fs)
    return Space(f"F^{k}_{n}({m})", fs, rels)


def lie_module(m: int, n: int, fi: bool = True) -> Space:
    """Trees of degree n modulo (1T), AS, IHX, STU²."""
    return forest_module(m, n, 1, fi)


@lru_cache(maxsize=None)
def graph_relations_space(m: int, n: int, s: int) -> Space:
    """Size-s forests modulo AS, squares and braiding hexagons only."""
    fs = forests(m, n, s)
    return Space(f"G^{s}_{n}({m})", fs, {
        "AS": R.gen_AS(fs),
        "SQ": list(square_relations(m, n, s)),
        "HEX": list(hexagon_relations(m, n, s)),
    })
