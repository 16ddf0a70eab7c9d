"""Abstract simplicial complexes given by their simplices, and isomorphism between them."""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable

from .complex import Complex2
from .graph import VertexPermutation, _Structure, find_isomorphism


@dataclass
class SimplicialComplex:
    """Vertex labels plus simplices, grouped by dimension, as vertex-index sets."""

    vertices: list[str]
    simplices: dict[int, list[frozenset[int]]] = field(default_factory=dict)

    @classmethod
    def from_simplices(cls, vertices: Iterable[str], simplices: Iterable[Iterable[int]]):
        vertices = list(vertices)
        by_dim: dict[int, set[frozenset[int]]] = {}
        for s in simplices:
            s = frozenset(s)
            by_dim.setdefault(len(s) - 1, set()).add(s)
        by_dim.setdefault(0, set()).update(frozenset((i,)) for i in range(len(vertices)))
        return cls(vertices, {d: sorted(v, key=sorted) for d, v in sorted(by_dim.items())})

    @property
    def dimension(self) -> int:
        dims = [d for d, s in self.simplices.items() if s]
        return max(dims) if dims else -1

    def count(self, dim: int) -> int:
        return len(self.simplices.get(dim, ()))

    def f_vector(self) -> list[int]:
        return [self.count(d) for d in range(self.dimension + 1)]

    def is_closed_under_faces(self) -> bool:
        have = {s for ss in self.simplices.values() for s in ss}
        for s in have:
            if len(s) > 1 and any(s - {v} not in have for v in s):
                return False
        return True

    def summary(self) -> dict:
        return {"vertices": len(self.vertices), "f_vector": self.f_vector()}

    def to_dict(self) -> dict:
        return {
            "vertices": list(self.vertices),
            "simplices": {str(d): [sorted(s) for s in ss] for d, ss in sorted(self.simplices.items())},
            "f_vector": self.f_vector(),
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def skeleton(self) -> Complex2:
        """The 2-skeleton as a :class:`Complex2`."""
        edges = [tuple(sorted(s)) for s in self.simplices.get(1, ())]
        tris = [tuple(sorted(s)) for s in self.simplices.get(2, ())]
        return Complex2(tuple(self.vertices), tuple(edges), tuple(tris), {"kind": "skeleton"})


def _hasse(c: SimplicialComplex):
    nodes = []
    colors = []
    pos = {}
    for d in sorted(c.simplices):
        for s in c.simplices[d]:
            pos[s] = len(nodes)
            nodes.append(s)
            colors.append(d)
    edges = []
    for s, i in pos.items():
        if len(s) > 1:
            for v in s:
                edges.append((pos[s - {v}], i))
    return nodes, pos, edges, colors


def simplicial_isomorphic(a: SimplicialComplex, b: SimplicialComplex,
                          deadline: float | None = None) -> VertexPermutation | None:
    """A vertex bijection carrying the simplices of ``a`` onto those of ``b``."""
    if a.f_vector() != b.f_vector():
        return None
    na, pa, ea, ca = _hasse(a)
    nb, pb, eb, cb = _hasse(b)
    found = find_isomorphism(_Structure(len(na), ea, (), ca), _Structure(len(nb), eb, (), cb),
                             deadline=deadline)
    if found is None:
        return None
    # vertices are the dimension-0 nodes, which come first in both lists
    nv = len(a.vertices)
    vmap = [0] * nv
    for i in range(nv):
        (v,) = na[i]
        (w,) = nb[found[i]]
        vmap[v] = w
    perm = VertexPermutation(tuple(vmap))
    target = {s for ss in b.simplices.values() for s in ss}
    for ss in a.simplices.values():
        for s in ss:
            if frozenset(perm(v) for v in s) not in target:
                return None
    return perm
