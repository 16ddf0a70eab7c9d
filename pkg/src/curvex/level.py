"""Congruence quotients of the Farey tessellation as PSL2(Z/m) coset geometries.

Vertices are cosets of <T>, edges cosets of <S>, triangles cosets of <R>
(T = [[1,1],[0,1]], S = [[0,-1],[1,0]], R = [[0,-1],[1,-1]]), with
incidence given by nonempty intersection.  The coset ``g<T>`` is the cusp
class ``g . (1:0) = ±(a:c)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations

from sympy import primefactors

from .complex import Complex2, orient
from .errors import DivisibilityError, ModulusLimitExceeded, ProjectionMismatch
from .farey import farey_ball

DEFAULT_MODULUS_LIMIT = 25

Quad = tuple[int, int, int, int]


def _check_modulus(m: int, limit: int = DEFAULT_MODULUS_LIMIT):
    if not isinstance(m, int) or m < 2 or m > limit:
        raise ModulusLimitExceeded(f"modulus {m} outside 2..{limit}")


def canonical_quad(q: Quad, m: int) -> Quad:
    a, b, c, d = (x % m for x in q)
    neg = ((-a) % m, (-b) % m, (-c) % m, (-d) % m)
    return min((a, b, c, d), neg)


def cusp_class(p: int, q: int, m: int) -> tuple[int, int]:
    """``±(p:q)`` reduced mod ``m``, as the lexicographically least sign."""
    v = (p % m, q % m)
    w = ((-p) % m, (-q) % m)
    return min(v, w)


def cusp_label(v: tuple[int, int], m: int) -> str:
    return f"({v[0]}:{v[1]}) mod {m}"


def psl2_order_formula(m: int) -> int:
    """``m^3 prod(1 - p^-2) / 2`` (no halving at m = 2)."""
    order = m ** 3
    for p in primefactors(m):
        order = order * (p * p - 1) // (p * p)
    return order if m == 2 else order // 2


@dataclass(frozen=True)
class Psl2ModM:
    """Element of PSL2(Z/m), stored by its canonical quadruple."""

    m: int
    a: int
    b: int
    c: int
    d: int

    def __post_init__(self):
        a, b, c, d = canonical_quad((self.a, self.b, self.c, self.d), self.m)
        if (a * d - b * c) % self.m != 1 % self.m:
            raise ValueError(f"{(a, b, c, d)} has determinant != 1 mod {self.m}")
        for name, x in zip("abcd", (a, b, c, d)):
            object.__setattr__(self, name, x)

    @property
    def quad(self) -> Quad:
        return (self.a, self.b, self.c, self.d)

    def __matmul__(self, other: "Psl2ModM") -> "Psl2ModM":
        return Psl2ModM(self.m, *_mul(self.quad, other.quad, self.m))

    def act(self, v: tuple[int, int]) -> tuple[int, int]:
        p, q = v
        return cusp_class(self.a * p + self.b * q, self.c * p + self.d * q, self.m)


def _mul(x: Quad, y: Quad, m: int) -> Quad:
    a, b, c, d = x
    e, f, g, h = y
    return canonical_quad((a * e + b * g, a * f + b * h, c * e + d * g, c * f + d * h), m)


@dataclass
class Psl2Group:
    """All elements of PSL2(Z/m), found by exhaustive search over (Z/m)^4."""

    m: int
    elements: list[Quad]
    index: dict[Quad, int] = field(repr=False)

    @property
    def order(self) -> int:
        return len(self.elements)

    def mul(self, i: int, j: int) -> int:
        return self.index[_mul(self.elements[i], self.elements[j], self.m)]

    def element(self, i: int) -> Psl2ModM:
        return Psl2ModM(self.m, *self.elements[i])

    def lookup(self, q: Quad) -> int:
        return self.index[canonical_quad(q, self.m)]

    def right_cosets_of(self, gen: Quad) -> list[list[int]]:
        """Left cosets ``g<gen>`` as sorted index lists, ordered by least member."""
        gen = canonical_quad(gen, self.m)
        seen = [False] * self.order
        cosets = []
        for i, x in enumerate(self.elements):
            if seen[i]:
                continue
            members = []
            y = x
            while True:
                j = self.index[y]
                if seen[j]:
                    break
                seen[j] = True
                members.append(j)
                y = _mul(y, gen, self.m)
            cosets.append(sorted(members))
        return cosets


@lru_cache(maxsize=None)
def _enumerate(m: int) -> Psl2Group:
    found = set()
    for a in range(m):
        for b in range(m):
            for c in range(m):
                for d in range(m):
                    if (a * d - b * c) % m == 1 % m:
                        found.add(canonical_quad((a, b, c, d), m))
    elements = sorted(found)
    return Psl2Group(m, elements, {q: i for i, q in enumerate(elements)})


def psl2_enumerate(m: int, limit: int = DEFAULT_MODULUS_LIMIT) -> Psl2Group:
    _check_modulus(m, limit)
    return _enumerate(m)


T_QUAD: Quad = (1, 1, 0, 1)
S_QUAD: Quad = (0, -1, 1, 0)
R_QUAD: Quad = (0, -1, 1, -1)


@dataclass
class CosetGeometry:
    m: int
    group: Psl2Group
    vertex_cosets: list[list[int]]
    edge_cosets: list[list[int]]
    triangle_cosets: list[list[int]]

    @classmethod
    def build(cls, m: int, limit: int = DEFAULT_MODULUS_LIMIT) -> "CosetGeometry":
        grp = psl2_enumerate(m, limit)
        return cls(m, grp, grp.right_cosets_of(T_QUAD), grp.right_cosets_of(S_QUAD),
                   grp.right_cosets_of(R_QUAD))

    def incidence(self, cosets: list[list[int]]) -> list[list[int]]:
        """For each coset in ``cosets``, the vertex cosets it meets."""
        owner = {}
        for k, vc in enumerate(self.vertex_cosets):
            for g in vc:
                owner[g] = k
        return [sorted({owner[g] for g in c}) for c in cosets]

    def cusp_of(self, g: int) -> tuple[int, int]:
        a, b, c, d = self.group.elements[g]
        return cusp_class(a, c, self.m)


@lru_cache(maxsize=None)
def _farey_level(m: int) -> Complex2:
    geo = CosetGeometry.build(m, limit=m)
    grp = geo.group
    cusps = sorted({geo.cusp_of(vc[0]) for vc in geo.vertex_cosets})
    where = {v: i for i, v in enumerate(cusps)}
    s = grp.lookup(S_QUAD)
    r = grp.lookup(R_QUAD)
    edges = []
    for ec in geo.edge_cosets:
        h = ec[0]
        edges.append((where[geo.cusp_of(h)], where[geo.cusp_of(grp.mul(h, s))]))
    triangles = []
    for tc in geo.triangle_cosets:
        h = tc[0]
        hr = grp.mul(h, r)
        hrr = grp.mul(hr, r)
        # (h.inf, h.0, h.1) is the image of the base triangle (inf, 0, 1)
        triangles.append(orient(where[geo.cusp_of(h)], where[geo.cusp_of(hr)], where[geo.cusp_of(hrr)]))
    meta = {"kind": "farey_level", "level": str(m), "flavor": "pants",
            "fibers": json.dumps([list(range(len(cusps)))]),
            "cusps": json.dumps([list(v) for v in cusps])}
    return Complex2(tuple(cusp_label(v, m) for v in cusps), tuple(sorted(edges)),
                    tuple(sorted(triangles)), meta)


def farey_level(m: int, limit: int = DEFAULT_MODULUS_LIMIT) -> Complex2:
    """Triangulated modular curve of level ``m`` (quotient of the Farey tessellation by Gamma(m))."""
    _check_modulus(m, limit)
    return _farey_level(m)


def cusps_of(c: Complex2) -> list[tuple[int, int]]:
    return [tuple(v) for v in json.loads(c.metadata["cusps"])]


def gstar_level(m: int, limit: int = DEFAULT_MODULUS_LIMIT) -> Complex2:
    """Complete graph on the cusp classes of level ``m``."""
    base = farey_level(m, limit)
    n = base.n_vertices
    meta = dict(base.metadata)
    meta.update(kind="gstar_level", flavor="star")
    return Complex2(base.vertices, tuple(combinations(range(n), 2)), (), meta)


def project_level(m_big: int, m_small: int, limit: int = DEFAULT_MODULUS_LIMIT) -> tuple[int, ...]:
    """Vertex map ``farey_level(m_big) -> farey_level(m_small)`` by reducing cusps."""
    if m_big % m_small:
        raise DivisibilityError(f"{m_small} does not divide {m_big}")
    big = farey_level(m_big, limit)
    small = farey_level(m_small, limit)
    where = small.index
    vmap = tuple(where[cusp_label(cusp_class(p, q, m_small), m_small)] for p, q in cusps_of(big))
    _check_simplicial(big, small, vmap)
    return vmap


def _check_simplicial(big: Complex2, small: Complex2, vmap) -> None:
    if set(vmap) != set(range(small.n_vertices)):
        raise ProjectionMismatch("projection is not surjective on vertices")
    edges = set(small.edges)
    for u, v in big.edges:
        if tuple(sorted((vmap[u], vmap[v]))) not in edges:
            raise ProjectionMismatch(f"edge {(u, v)} does not map to an edge")
    tris = set(small.triangles)
    for t in big.triangles:
        if orient(*(vmap[x] for x in t)) not in tris:
            raise ProjectionMismatch(f"triangle {t} does not map to a triangle")


def _project_ball(ball: Complex2, m: int):
    classes = []
    for label in ball.vertices:
        p, _, q = label.partition("/")
        classes.append(cusp_label(cusp_class(int(p), int(q), m), m))
    edges = set()
    for u, v in ball.edges:
        a, b = classes[u], classes[v]
        if a != b:
            edges.add(frozenset((a, b)))
    return classes, edges


def verify_against_ball(m: int, depth: int, limit: int = DEFAULT_MODULUS_LIMIT) -> dict:
    """Compare ``farey_level(m)`` with the image of a Farey ball under reduction mod ``m``."""
    level = farey_level(m, limit)
    ball = farey_ball(depth)
    classes, edges = _project_ball(ball, m)
    where = level.index
    tris = set()
    for t in ball.triangles:
        image = [classes[x] for x in t]
        if len(set(image)) == 3:
            tris.add(orient(*(where[x] for x in image)))
    level_edges = {frozenset((level.vertices[u], level.vertices[v])) for u, v in level.edges}
    if depth > 0:
        _, prev_edges = _project_ball(farey_ball(depth - 1), m)
        stabilized = prev_edges == edges
    else:
        stabilized = False
    match = (set(classes) == set(level.vertices) and edges == level_edges
             and tris == set(level.triangles) and len(level_edges) == level.n_edges)
    return {
        "m": m,
        "depth": depth,
        "match": match,
        "stabilized": stabilized,
        "ball_vertices": ball.n_vertices,
        "vertices_hit": len(set(classes)),
        "edges_hit": len(edges),
        "triangles_hit": len(tris),
        "level_counts": [level.n_vertices, level.n_edges, level.n_triangles],
    }
