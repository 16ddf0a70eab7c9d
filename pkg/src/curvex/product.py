"""Graphs of disconnected surfaces assembled from one-dimensional pieces.

Vertices of the product are tuples of factor vertices.  An edge changes
exactly one coordinate: along a factor edge for the pants flavour, along
any pair of distinct factor vertices for the star flavour.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations, product
from math import prod
from typing import Mapping, Sequence

from .complex import Complex2, is_point
from .errors import InvalidCoordinate, MixedFlavor, SizeLimitExceeded
from .simplicial import SimplicialComplex

PANTS = "pants"
STAR = "star"


@dataclass(frozen=True)
class ProductComplex:
    factors: tuple[Complex2, ...]
    kind: str
    flattened: Complex2
    coords: tuple[tuple[int, ...], ...]
    coordinate_of_edge: tuple[int, ...]

    @property
    def sizes(self) -> tuple[int, ...]:
        return tuple(f.n_vertices for f in self.factors)

    def vertex_of(self, coord: Sequence[int]) -> int:
        return _flat_index(coord, self.sizes)

    @property
    def curve_factors(self) -> tuple[int, ...]:
        """Indices of the factors that are not points."""
        return tuple(i for i, f in enumerate(self.factors) if not is_point(f))


def _flat_index(coord: Sequence[int], sizes: Sequence[int]) -> int:
    k = 0
    for x, n in zip(coord, sizes):
        k = k * n + x
    return k


def _label(parts: Sequence[str]) -> str:
    return "(" + "|".join(parts) + ")"


def _build(factors: Sequence[Complex2], kind: str) -> ProductComplex:
    factors = tuple(factors)
    if not factors:
        raise ValueError("a product needs at least one factor")
    sizes = [f.n_vertices for f in factors]
    coords = list(product(*(range(n) for n in sizes)))
    labels = [_label([f.vertices[x] for f, x in zip(factors, c)]) for c in coords]
    edges, axis_of_edge, triangles = [], [], []
    fibers, fiber_axes = [], []
    for i, f in enumerate(factors):
        others = [range(n) if j != i else (None,) for j, n in enumerate(sizes)]
        moves = list(combinations(range(sizes[i]), 2)) if kind == STAR else list(f.edges)
        for rest in product(*others):
            def at(x, rest=rest):
                c = list(rest)
                c[i] = x
                return _flat_index(c, sizes)
            for a, b in moves:
                edges.append((at(a), at(b)))
                axis_of_edge.append(i)
            for t in f.triangles:
                triangles.append(tuple(at(x) for x in t))
            if not is_point(f):
                fibers.append([at(x) for x in range(sizes[i])])
                fiber_axes.append(i)
    meta = {
        "kind": "product",
        "flavor": kind,
        "factor_sizes": json.dumps(sizes),
        "point_factors": json.dumps([is_point(f) for f in factors]),
        "fibers": json.dumps(fibers),
        "fiber_axes": json.dumps(fiber_axes),
    }
    flat = Complex2(tuple(labels), tuple(edges), tuple(triangles), meta)
    return ProductComplex(factors, kind, flat, tuple(coords), tuple(axis_of_edge))


def product_pants(factors: Sequence[Complex2]) -> ProductComplex:
    """Pants-graph product: edges are factor edges with the other coordinates fixed."""
    for f in factors:
        if f.metadata.get("flavor") == STAR and not is_point(f):
            raise MixedFlavor("a star-flavour factor was given to the pants product")
    return _build(factors, PANTS)


def product_star(factors: Sequence[Complex2]) -> ProductComplex:
    """Hamming-style product: tuples differing in exactly one coordinate are adjacent."""
    for f in factors:
        if is_point(f):
            continue
        if f.metadata.get("flavor") != STAR and not f.is_complete():
            raise MixedFlavor("the star product needs complete-graph (star-flavour) factors")
    return _build(factors, STAR)


def direct_curve_complex(factors: Sequence[Complex2], max_factors: int = 6) -> SimplicialComplex:
    """Multicurves on the disjoint union: at most one curve per one-dimensional piece.

    A vertex is a pair (factor, factor vertex); a k-simplex picks one vertex
    from each of k + 1 distinct factors.  Point factors carry no curves.
    """
    if len(factors) > max_factors:
        raise SizeLimitExceeded(f"{len(factors)} factors exceeds the limit {max_factors}")
    live = [i for i, f in enumerate(factors) if not is_point(f)]
    vertices, where = [], {}
    for i in live:
        for x, label in enumerate(factors[i].vertices):
            where[i, x] = len(vertices)
            vertices.append(f"{i}:{label}")
    simplices = []
    for k in range(1, len(live) + 1):
        for chosen in combinations(live, k):
            for pick in product(*(range(factors[i].n_vertices) for i in chosen)):
                simplices.append([where[i, x] for i, x in zip(chosen, pick)])
    return SimplicialComplex.from_simplices(vertices, simplices)


def _partial(p: ProductComplex, sigma) -> dict[int, int]:
    if isinstance(sigma, Mapping):
        items = dict(sigma)
    else:
        items = {i: x for i, x in enumerate(sigma) if x is not None}
    for i, x in items.items():
        if not (0 <= i < len(p.factors)) or not (0 <= x < p.factors[i].n_vertices):
            raise InvalidCoordinate(f"coordinate {i} -> {x} is not valid")
    return items


def subcomplex_of_cut(p: ProductComplex, sigma) -> Complex2:
    """Full subcomplex on the tuples agreeing with the partial tuple ``sigma``."""
    fixed = _partial(p, sigma)
    keep = [v for v, c in enumerate(p.coords) if all(c[i] == x for i, x in fixed.items())]
    return p.flattened.induced(keep, {"kind": "cut", "fixed": json.dumps(sorted(fixed.items()))})


def compatible(rho: Mapping[int, int], sigma: Mapping[int, int]) -> bool:
    return all(sigma[i] == x for i, x in rho.items() if i in sigma)


def subcomplex_intersection(p: ProductComplex, rho, sigma) -> Complex2:
    r = _partial(p, rho)
    s = _partial(p, sigma)
    if not compatible(r, s):
        return Complex2((), (), (), {"kind": "empty"})
    return subcomplex_of_cut(p, {**r, **s})


def expected_counts(factors: Sequence[Complex2], kind: str) -> tuple[int, int]:
    """Vertex and edge counts predicted by the product formulas."""
    sizes = [f.n_vertices for f in factors]
    v = prod(sizes)
    e = 0
    for i, f in enumerate(factors):
        rest = v // sizes[i]
        moves = sizes[i] * (sizes[i] - 1) // 2 if kind == STAR else f.n_edges
        e += moves * rest
    return v, e
