"""Sparse exact linear algebra over the rationals.

Vectors are plain ``dict`` objects mapping a column index to a non-zero
exact rational, stored as ``int`` when integral and as
:class:`fractions.Fraction` otherwise.  A :class:`Span` keeps an echelon basis in
which the pivot of each row is its smallest column; reducing a vector
against it always clears the smallest pivot column first, so every step
only creates entries in larger columns and the loop terminates.
"""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from heapq import heapify, heappop, heappush

Vector = dict


def _q(x):
    """Demote integral fractions to ``int`` (both are exact; ints are faster)."""
    if type(x) is Fraction and x.denominator == 1:
        return x.numerator
    return x


def clean(v: Vector) -> Vector:
    return {k: _q(Fraction(c)) for k, c in v.items() if c != 0}


def add_to(acc: Vector, v: Vector, scale=1) -> Vector:
    """``acc += scale * v`` in place."""
    for k, c in v.items():
        x = acc.get(k, 0) + scale * c
        if x:
            acc[k] = _q(x)
        else:
            acc.pop(k, None)
    return acc


def combine(terms) -> Vector:
    """Sum of ``coefficient * vector`` over ``(coefficient, vector)`` pairs."""
    out = {}
    for c, v in terms:
        add_to(out, v, c)
    return out


def scale(v: Vector, c) -> Vector:
    return {k: _q(x * c) for k, x in v.items()} if c else {}


class Span:
    """Subspace of a coordinate space spanned by the vectors added so far.

    With ``track=True`` every echelon row remembers which combination of the
    inserted vectors produced it, and vectors that reduce to zero are kept
    as relations among the inputs (used for kernels).
    """

    def __init__(self, vectors=(), track: bool = False):
        self.rows: dict[int, Vector] = {}
        self.track = track
        self.combos: dict[int, Vector] = {}
        self.dependencies: list[Vector] = []
        self.count = 0
        for v in vectors:
            self.add(v)

    @property
    def rank(self) -> int:
        return len(self.rows)

    @property
    def pivots(self) -> set[int]:
        return set(self.rows)

    def reduce(self, v: Vector, combo: Vector | None = None) -> Vector:
        v = dict(v)
        rows = self.rows
        heap = [k for k in v if k in rows]
        heapify(heap)
        while heap:
            c = heappop(heap)
            x = v.get(c)
            if not x:
                continue
            for k, y in rows[c].items():
                z = v.get(k, 0) - x * y
                if z:
                    if k not in v and k in rows:
                        heappush(heap, k)
                    v[k] = _q(z)
                else:
                    v.pop(k, None)
            if combo is not None:
                add_to(combo, self.combos[c], -x)
        return v

    def add(self, v: Vector) -> bool:
        """Insert ``v``; return True when the rank grew."""
        idx = self.count
        self.count += 1
        combo = {idx: 1} if self.track else None
        r = self.reduce(v, combo)
        if not r:
            if self.track:
                self.dependencies.append(combo)
            return False
        c = min(r)
        x = r[c]
        self.rows[c] = _divide(r, x)
        if self.track:
            self.combos[c] = _divide(combo, x)
        return True

    def contains(self, v: Vector) -> bool:
        return not self.reduce(v)

    def contains_all(self, vectors) -> bool:
        return all(self.contains(v) for v in vectors)

    def basis(self) -> list[Vector]:
        return [self.rows[c] for c in sorted(self.rows)]

    def copy(self) -> "Span":
        out = Span()
        out.rows = dict(self.rows)
        out.count = self.count
        return out


def _divide(v: Vector, x) -> Vector:
    if x == 1:
        return dict(v)
    if x == -1:
        return {k: -y for k, y in v.items()}
    return {k: _q(Fraction(y) / x) for k, y in v.items()}


def rank(vectors) -> int:
    return Span(vectors).rank


def spans_equal(a, b) -> bool:
    a, b = list(a), list(b)
    sa, sb = Span(a), Span(b)
    return sa.rank == sb.rank and sa.contains_all(b)


def kernel(images) -> list[Vector]:
    """Basis of the kernel of the map sending basis vector i to ``images[i]``."""
    s = Span(track=True)
    for v in images:
        s.add(v)
    return s.dependencies


class Quotient:
    """Quotient of the coordinate space ``Q^dim`` by a span of relations.

    The free (non-pivot) columns index a basis of the quotient; the normal
    form of a vector is its fully reduced representative, which only has
    entries in free columns.
    """

    def __init__(self, dim: int, relations=()):
        self.dim = dim
        self.span = relations if isinstance(relations, Span) else Span(relations)
        self.free = [i for i in range(dim) if i not in self.span.rows]
        self.position = {c: i for i, c in enumerate(self.free)}

    @property
    def rank(self) -> int:
        return len(self.free)

    def normal_form(self, v: Vector) -> Vector:
        return self.span.reduce(v)

    def coords(self, v: Vector) -> Vector:
        """Coordinates in the basis indexed by ``self.free``."""
        return {self.position[k]: c for k, c in self.span.reduce(v).items()}

    def is_zero(self, v: Vector) -> bool:
        return not self.span.reduce(v)

    def lift(self, coords: Vector) -> Vector:
        return {self.free[i]: c for i, c in coords.items()}


# ---- dense oracle -------------------------------------------------------

def dense_rank(rows: list[list[Fraction]]) -> int:
    """Textbook Gaussian elimination on a dense matrix (oracle for tests)."""
    m = [list(map(Fraction, r)) for r in rows]
    r = 0
    ncols = len(m[0]) if m else 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c] / m[r][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        r += 1
    return r


# ---- export -------------------------------------------------------------

def triples(vectors):
    """Sparse entries (row, col, numerator, denominator) in row order."""
    for r, v in enumerate(vectors):
        for c in sorted(v):
            x = Fraction(v[c])
            yield r, c, x.numerator, x.denominator


def matrix_csv(vectors) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["row", "col", "numerator", "denominator"])
    w.writerows(triples(vectors))
    return buf.getvalue()


def matrix_json(vectors, ncols: int, header=None) -> str:
    return json.dumps({"columns": header if header is not None else list(range(ncols)),
                       "rows": [{str(k): str(c) for k, c in sorted(v.items())} for v in vectors]})
