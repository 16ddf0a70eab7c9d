"""Slopes on the one-dimensional surfaces, the Farey tessellation and its completion.

Curves on a surface of type (0,4) or (1,1) are slopes ``p/q``; two slopes
differ by an elementary move exactly when ``|p s - q r| = 1``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import gcd

from .complex import Complex2, is_point, orient
from .errors import DepthLimitExceeded, MissingFiberMetadata, WrongType

DIMENSION_ONE_TYPES = ((0, 4), (1, 1))
DEFAULT_DEPTH_LIMIT = 20


@dataclass(frozen=True, order=True)
class Slope:
    """Primitive pair ``(p, q)`` up to sign; ``q > 0`` or ``(1, 0)`` for infinity."""

    p: int
    q: int

    def __post_init__(self):
        p, q = int(self.p), int(self.q)
        if p == 0 and q == 0:
            raise ValueError("0/0 is not a slope")
        d = gcd(p, q)
        p, q = p // d, q // d
        if q < 0 or (q == 0 and p < 0):
            p, q = -p, -q
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "q", q)

    @classmethod
    def parse(cls, text: str) -> "Slope":
        p, _, q = text.partition("/")
        return cls(int(p), int(q or 1))

    def __str__(self):
        return f"{self.p}/{self.q}"

    @property
    def is_infinite(self) -> bool:
        return self.q == 0

    def value(self) -> Fraction | None:
        return None if self.q == 0 else Fraction(self.p, self.q)


INFINITY = Slope(1, 0)


@dataclass(frozen=True)
class Psl2Matrix:
    """Integer matrix ``[[a, b], [c, d]]`` of determinant 1, up to sign."""

    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        a, b, c, d = (int(x) for x in (self.a, self.b, self.c, self.d))
        if a * d - b * c != 1:
            raise ValueError(f"determinant of {(a, b, c, d)} is {a * d - b * c}, not 1")
        first = next(x for x in (a, b, c, d) if x != 0)
        if first < 0:
            a, b, c, d = -a, -b, -c, -d
        for name, x in zip("abcd", (a, b, c, d)):
            object.__setattr__(self, name, x)

    def __matmul__(self, other: "Psl2Matrix") -> "Psl2Matrix":
        return Psl2Matrix(self.a * other.a + self.b * other.c, self.a * other.b + self.b * other.d,
                          self.c * other.a + self.d * other.c, self.c * other.b + self.d * other.d)

    def inverse(self) -> "Psl2Matrix":
        return Psl2Matrix(self.d, -self.b, -self.c, self.a)


IDENTITY = Psl2Matrix(1, 0, 0, 1)
T = Psl2Matrix(1, 1, 0, 1)
S = Psl2Matrix(0, -1, 1, 0)
R = Psl2Matrix(0, -1, 1, -1)


def slope_det(s: Slope, t: Slope) -> int:
    return abs(s.p * t.q - s.q * t.p)


def _check_dimension_one(t) -> tuple[int, int]:
    t = (int(t[0]), int(t[1]))
    if t not in DIMENSION_ONE_TYPES:
        raise WrongType(f"type {t} does not have modular dimension 1")
    return t


def intersection_number(t, s: Slope, u: Slope) -> int:
    """Geometric intersection of the curves ``s`` and ``u`` on type ``t``."""
    t = _check_dimension_one(t)
    k = slope_det(s, u)
    return k if t == (1, 1) else 2 * k


def is_elementary_move(t, s: Slope, u: Slope) -> bool:
    _check_dimension_one(t)
    return slope_det(s, u) == 1


def moebius_act(m: Psl2Matrix, s: Slope) -> Slope:
    return Slope(m.a * s.p + m.b * s.q, m.c * s.p + m.d * s.q)


def _sort_key(v: tuple[int, int]):
    p, q = v
    if q == 0:
        return (1, Fraction(0))
    if q < 0:
        p, q = -p, -q
    return (0, Fraction(p, q))


def _oriented(i: int, j: int, k: int, vecs) -> tuple[int, int, int]:
    # ideal triangles: counterclockwise = increasing along R with infinity last
    a, b, c = sorted((i, j, k), key=lambda x: _sort_key(vecs[x]))
    return orient(a, b, c)


def farey_ball(depth: int, limit: int = DEFAULT_DEPTH_LIMIT) -> Complex2:
    """Finite disc of the Farey tessellation around the edge ``1/0 -- 0/1``.

    Starts with the triangles ``{1/0, 0/1, 1/1}`` and ``{1/0, 0/1, -1/1}``;
    each round inserts the mediant on every boundary edge.
    """
    if depth < 0 or depth > limit:
        raise DepthLimitExceeded(f"depth {depth} outside 0..{limit}")
    # sign-consistent vectors so that mediants are plain sums
    vecs: list[tuple[int, int]] = [(1, 0), (0, 1), (1, 1), (-1, 1)]
    edges = [(0, 1), (1, 2), (0, 2), (1, 3), (0, 3)]
    triangles = [_oriented(0, 1, 2, vecs), _oriented(0, 1, 3, vecs)]
    boundary = [((1, 0), (1, 1), 0, 2), ((0, 1), (1, 1), 1, 2),
                ((-1, 0), (-1, 1), 0, 3), ((0, 1), (-1, 1), 1, 3)]
    for _ in range(depth):
        nxt = []
        for x, y, i, j in boundary:
            m = (x[0] + y[0], x[1] + y[1])
            k = len(vecs)
            vecs.append(m)
            edges += [(i, k), (j, k)]
            triangles.append(_oriented(i, j, k, vecs))
            nxt += [(x, m, i, k), (m, y, k, j)]
        boundary = nxt
    labels = tuple(str(Slope(*v)) for v in vecs)
    meta = {"kind": "farey_ball", "flavor": "pants", "depth": str(depth),
            "fibers": json.dumps([list(range(len(vecs)))])}
    return Complex2(labels, tuple(edges), tuple(triangles), meta)


def fibers_of(c: Complex2) -> list[list[int]]:
    if is_point(c):
        return []
    if "fibers" not in c.metadata:
        raise MissingFiberMetadata("complex carries no 'fibers' metadata")
    return json.loads(c.metadata["fibers"])


def complete_closure(c: Complex2) -> Complex2:
    """Replace every maximal Farey piece by the complete graph on its vertices."""
    if is_point(c):
        return c
    fibers = fibers_of(c)
    covered = set()
    pairs = []
    triangles = []
    for fib in fibers:
        fib = sorted(fib)
        for e in combinations(fib, 2):
            if e not in covered:
                covered.add(e)
                pairs.append(e)
        triangles.extend(combinations(fib, 3))
    # edges outside every piece survive unchanged
    rest = [e for e in c.edges if e not in covered]
    meta = dict(c.metadata)
    meta["flavor"] = "star"
    return Complex2(c.vertices, tuple(pairs + rest), tuple(triangles), meta)
