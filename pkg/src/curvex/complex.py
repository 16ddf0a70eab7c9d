"""Finite combinatorial 2-complexes.

A :class:`Complex2` is a list of labelled vertices, a list of unordered
edges (parallel edges allowed) and a list of cyclically oriented
triangles.  With no triangles it is just a (multi)graph.
"""

from __future__ import annotations

import json
from collections import Counter
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence


def orient(a: int, b: int, c: int) -> tuple[int, int, int]:
    """Canonical representative of the cyclic class of ``(a, b, c)``.

    The rotation starting at the smallest index is chosen, so
    ``orient(b, c, a) == orient(a, b, c)`` while ``orient(a, c, b)`` is the
    reversed class.
    """
    if a <= b and a <= c:
        return (a, b, c)
    if b <= a and b <= c:
        return (b, c, a)
    return (c, a, b)


def reverse(t: tuple[int, int, int]) -> tuple[int, int, int]:
    a, b, c = t
    return orient(a, c, b)


def _edge(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u <= v else (v, u)


@dataclass(frozen=True, eq=True)
class Complex2:
    """Vertices, edges and oriented triangles, indexed by position.

    ``edges`` are stored as sorted pairs and ``triangles`` in the rotation
    returned by :func:`orient`; construction normalizes both and checks
    the structural invariants.
    """

    vertices: tuple[str, ...]
    edges: tuple[tuple[int, int], ...] = ()
    triangles: tuple[tuple[int, int, int], ...] = ()
    metadata: Mapping[str, str] = field(default_factory=dict, compare=True)

    def __post_init__(self):
        vertices = tuple(str(v) for v in self.vertices)
        n = len(vertices)
        if len(set(vertices)) != n:
            raise ValueError("vertex labels must be pairwise distinct")
        edges = []
        for e in self.edges:
            u, v = (int(x) for x in e)
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {e} has an endpoint out of range")
            if u == v:
                raise ValueError(f"edge {e} is a loop")
            edges.append(_edge(u, v))
        pairs = set(edges)
        triangles = []
        for t in self.triangles:
            a, b, c = (int(x) for x in t)
            if len({a, b, c}) != 3 or not all(0 <= x < n for x in (a, b, c)):
                raise ValueError(f"triangle {t} is degenerate or out of range")
            for p in (_edge(a, b), _edge(b, c), _edge(a, c)):
                if p not in pairs:
                    raise ValueError(f"triangle {t} has boundary pair {p} missing from edges")
            triangles.append(orient(a, b, c))
        meta = {str(k): str(v) for k, v in dict(self.metadata).items()}
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "edges", tuple(edges))
        object.__setattr__(self, "triangles", tuple(triangles))
        object.__setattr__(self, "metadata", meta)

    __hash__ = None  # metadata is a dict

    @classmethod
    def _trusted(cls, vertices, edges, triangles, metadata) -> "Complex2":
        # skip validation for data derived from an already valid complex
        obj = object.__new__(cls)
        object.__setattr__(obj, "vertices", tuple(vertices))
        object.__setattr__(obj, "edges", tuple(edges))
        object.__setattr__(obj, "triangles", tuple(triangles))
        object.__setattr__(obj, "metadata", {str(k): str(v) for k, v in dict(metadata).items()})
        return obj

    # -- basic accessors -------------------------------------------------

    @property
    def n_vertices(self) -> int:
        return len(self.vertices)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    @property
    def n_triangles(self) -> int:
        return len(self.triangles)

    def euler_characteristic(self) -> int:
        return self.n_vertices - self.n_edges + self.n_triangles

    @cached_property
    def index(self) -> dict[str, int]:
        return {label: i for i, label in enumerate(self.vertices)}

    @cached_property
    def neighbors(self) -> tuple[frozenset[int], ...]:
        nb: list[set[int]] = [set() for _ in self.vertices]
        for u, v in self.edges:
            nb[u].add(v)
            nb[v].add(u)
        return tuple(frozenset(s) for s in nb)

    @cached_property
    def _starts(self) -> tuple[list[list[int]], list[list[int]]]:
        # edge / triangle indices grouped by their smallest vertex
        e_at: list[list[int]] = [[] for _ in self.vertices]
        t_at: list[list[int]] = [[] for _ in self.vertices]
        for i, (u, _) in enumerate(self.edges):
            e_at[u].append(i)
        for i, t in enumerate(self.triangles):
            t_at[t[0]].append(i)
        return e_at, t_at

    @cached_property
    def edge_counter(self) -> Counter:
        return Counter(self.edges)

    @cached_property
    def triangle_counter(self) -> Counter:
        return Counter(self.triangles)

    def adjacent(self, u: int, v: int) -> bool:
        return v in self.neighbors[u]

    def degree(self, v: int) -> int:
        return len(self.neighbors[v])

    def is_complete(self) -> bool:
        n = self.n_vertices
        return all(len(nb) == n - 1 for nb in self.neighbors)

    def is_connected(self) -> bool:
        if not self.vertices:
            return True
        seen = {0}
        stack = [0]
        while stack:
            u = stack.pop()
            for w in self.neighbors[u]:
                if w not in seen:
                    seen.add(w)
                    stack.append(w)
        return len(seen) == self.n_vertices

    def induced(self, subset: Iterable[int], metadata: Mapping[str, str] | None = None) -> "Complex2":
        """Full subcomplex on ``subset`` (kept in increasing index order)."""
        keep = sorted(set(subset))
        new = {v: i for i, v in enumerate(keep)}
        e_at, t_at = self._starts
        e_idx = sorted(i for v in keep for i in e_at[v] if self.edges[i][1] in new)
        t_idx = sorted(i for v in keep for i in t_at[v]
                       if self.triangles[i][1] in new and self.triangles[i][2] in new)
        edges = [(new[self.edges[i][0]], new[self.edges[i][1]]) for i in e_idx]
        tris = [tuple(new[x] for x in self.triangles[i]) for i in t_idx]
        # the reindexing is monotone, so edges stay sorted and triangles min-first
        return Complex2._trusted((self.vertices[v] for v in keep), edges, tris, metadata or {})

    def with_metadata(self, **extra: str) -> "Complex2":
        meta = dict(self.metadata)
        meta.update({k: str(v) for k, v in extra.items()})
        return Complex2(self.vertices, self.edges, self.triangles, meta)

    def relabel(self, perm: Sequence[int]) -> "Complex2":
        """Move vertex ``i`` to position ``perm[i]``; labels travel along."""
        n = self.n_vertices
        labels = [""] * n
        for i, p in enumerate(perm):
            labels[p] = self.vertices[i]
        edges = [(perm[u], perm[v]) for u, v in self.edges]
        tris = [tuple(perm[x] for x in t) for t in self.triangles]
        return Complex2(tuple(labels), tuple(sorted(_edge(*e) for e in edges)),
                        tuple(sorted(orient(*t) for t in tris)), dict(self.metadata))

    # -- serialization ---------------------------------------------------

    def to_dict(self) -> dict:
        return {
            "vertices": [{"id": i, "label": label} for i, label in enumerate(self.vertices)],
            "edges": [list(e) for e in self.edges],
            "triangles": [list(t) for t in self.triangles],
            "metadata": dict(self.metadata),
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent, sort_keys=False)

    @classmethod
    def from_dict(cls, doc: Mapping) -> "Complex2":
        verts = sorted(doc["vertices"], key=lambda v: v["id"])
        if [v["id"] for v in verts] != list(range(len(verts))):
            raise ValueError("vertex ids must be 0..n-1")
        return cls(
            tuple(v["label"] for v in verts),
            tuple(tuple(e) for e in doc.get("edges", [])),
            tuple(tuple(t) for t in doc.get("triangles", [])),
            dict(doc.get("metadata", {})),
        )

    @classmethod
    def from_json(cls, text: str) -> "Complex2":
        return cls.from_dict(json.loads(text))

    def to_dot(self, name: str = "G") -> str:
        """Graphviz export.  Lossy: triangles only appear as a count."""
        lines = [f"graph {name} {{", f"  // triangles: {self.n_triangles} (not representable in DOT)"]
        for i, label in enumerate(self.vertices):
            lines.append(f'  {i} [label={json.dumps(label)}];')
        for u, v in self.edges:
            lines.append(f"  {u} -- {v};")
        lines.append("}")
        return "\n".join(lines) + "\n"


def simple_graph(labels: Iterable, edges: Iterable[tuple[int, int]] = (), **metadata: str) -> Complex2:
    return Complex2(tuple(str(x) for x in labels), tuple(edges), (), metadata)


def complete_graph(n: int, prefix: str = "") -> Complex2:
    return simple_graph([f"{prefix}{i}" for i in range(n)],
                 [(i, j) for i in range(n) for j in range(i + 1, n)])


def point(label: str = "pt") -> Complex2:
    return Complex2((label,), (), (), {"kind": "point"})


def is_point(c: Complex2) -> bool:
    return c.metadata.get("kind") == "point"
