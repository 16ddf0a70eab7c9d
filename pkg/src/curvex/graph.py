"""Isomorphism and automorphism search, orientation, nerves and quotients.

The search is individualization/refinement: vertex colours are refined
by hashed neighbour-colour multisets until stable, then the first
smallest non-singleton cell is split by trying every candidate image.
Automorphism groups are computed one base point at a time, testing
each point of the refined cell that is not already in the orbit
generated so far.  The group order is the product of the orbit sizes.
"""

from __future__ import annotations

import json
import os
import sys
import time
from collections import Counter, defaultdict
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .complex import Complex2, orient, reverse
from .errors import (DeadlineExceeded, EmptyCoverSet, MixedOrientation,
                     NotAnAutomorphism, SizeLimitExceeded)

DEFAULT_VERTEX_LIMIT = 10_000


def vertex_limit() -> int:
    value = os.environ.get("CURVEX_LIMIT_VERTICES")
    return int(value) if value else DEFAULT_VERTEX_LIMIT


# -- permutations ------------------------------------------------------------


@dataclass(frozen=True)
class VertexPermutation:
    """Bijection ``i -> mapping[i]`` on the vertex indices of one complex."""

    mapping: tuple[int, ...]

    def __post_init__(self):
        m = tuple(int(x) for x in self.mapping)
        if sorted(m) != list(range(len(m))):
            raise ValueError("mapping is not a bijection of 0..n-1")
        object.__setattr__(self, "mapping", m)

    @classmethod
    def identity(cls, n: int) -> "VertexPermutation":
        return cls(tuple(range(n)))

    def __len__(self):
        return len(self.mapping)

    def __call__(self, i: int) -> int:
        return self.mapping[i]

    def compose(self, other: "VertexPermutation") -> "VertexPermutation":
        """``self after other``."""
        return VertexPermutation(tuple(self.mapping[j] for j in other.mapping))

    __mul__ = compose

    def inverse(self) -> "VertexPermutation":
        inv = [0] * len(self.mapping)
        for i, j in enumerate(self.mapping):
            inv[j] = i
        return VertexPermutation(tuple(inv))

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self.mapping))


def _as_mapping(p) -> tuple[int, ...]:
    return p.mapping if isinstance(p, VertexPermutation) else tuple(p)


def is_automorphism(c: Complex2, p, respect_triangles: bool = True) -> bool:
    m = _as_mapping(p)
    if len(m) != c.n_vertices:
        return False
    image = Counter(tuple(sorted((m[u], m[v]))) for u, v in c.edges)
    if image != c.edge_counter:
        return False
    if respect_triangles:
        have = Counter(tuple(sorted(t)) for t in c.triangles)
        image = Counter(tuple(sorted(m[x] for x in t)) for t in c.triangles)
        if image != have:
            return False
    return True


@dataclass(frozen=True)
class AutGroup:
    """Generators and exact order of a finite permutation group.

    ``orientation_preserving_index`` is 1 or 2 when every generator either
    preserves or reverses all triangle orientations, and ``None`` when some
    generator mixes them (possible only for disconnected triangulations) or
    when triangles were not taken into account.
    """

    generators: tuple[VertexPermutation, ...]
    order: int
    orientation_preserving_index: int | None
    degree: int
    base: tuple[int, ...] = ()
    orbit_sizes: tuple[int, ...] = ()

    def elements(self, limit: int = 10**6) -> list[VertexPermutation]:
        """Closure of the generators by breadth-first multiplication."""
        ident = tuple(range(self.degree))
        seen = {ident}
        frontier = [ident]
        gens = [g.mapping for g in self.generators]
        while frontier:
            nxt = []
            for x in frontier:
                for g in gens:
                    y = tuple(g[i] for i in x)
                    if y not in seen:
                        seen.add(y)
                        if len(seen) > limit:
                            raise SizeLimitExceeded(f"group has more than {limit} elements")
                        nxt.append(y)
            frontier = nxt
        return [VertexPermutation(x) for x in sorted(seen)]

    def to_dict(self) -> dict:
        return {
            "order": self.order,
            "orientation_preserving_index": self.orientation_preserving_index,
            "degree": self.degree,
            "generators": [list(g.mapping) for g in self.generators],
            "base": list(self.base),
            "orbit_sizes": list(self.orbit_sizes),
        }

    def to_json(self, indent: int | None = None) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    def verify_order(self, limit: int = 10**6) -> bool | None:
        """Compare ``order`` with the enumerated closure; ``None`` if too big."""
        if self.order > limit:
            return None
        return len(self.elements(limit)) == self.order


# -- refinement machinery ----------------------------------------------------

_M1 = np.uint64(0xBF58476D1CE4E5B9)
_M2 = np.uint64(0x94D049BB133111EB)


def _mix(x: np.ndarray) -> np.ndarray:
    # splitmix64 finalizer; wraps mod 2**64
    z = x.astype(np.uint64) + np.uint64(0x9E3779B97F4A7C15)
    z = (z ^ (z >> np.uint64(30))) * _M1
    z = (z ^ (z >> np.uint64(27))) * _M2
    return z ^ (z >> np.uint64(31))


class _Structure:
    """Array view of a (multi)graph with optional triangles and colours."""

    def __init__(self, n: int, edges: Sequence[tuple[int, int]],
                 triangles: Sequence[Sequence[int]] = (), colors: Sequence[int] | None = None):
        self.n = n
        src = np.array([u for u, v in edges] + [v for u, v in edges], dtype=np.int64)
        dst = np.array([v for u, v in edges] + [u for u, v in edges], dtype=np.int64)
        order = np.argsort(src, kind="stable")
        self.src = src[order]
        self.dst = dst[order]
        deg = np.bincount(self.src, minlength=n) if len(src) else np.zeros(n, dtype=np.int64)
        starts = np.zeros(n, dtype=np.int64)
        if n:
            starts[1:] = np.cumsum(deg)[:-1]
        self.has_nb = deg > 0
        self.starts = starts[self.has_nb]
        self.edge_keys = np.sort(np.array(
            [min(u, v) * n + max(u, v) for u, v in edges], dtype=np.int64))
        self.tri_keys = None
        if triangles:
            self.tri_keys = sorted(tuple(sorted(t)) for t in triangles)
        self.colors = np.zeros(n, dtype=np.int64) if colors is None else np.asarray(colors, dtype=np.int64)

    def neighbour_hash(self, col: np.ndarray) -> np.ndarray:
        out = np.zeros(self.n, dtype=np.uint64)
        if len(self.dst):
            vals = _mix(col[self.dst])
            out[self.has_nb] = np.add.reduceat(vals, self.starts)
        return out


def _refine(a: _Structure, ca: np.ndarray, b: _Structure, cb: np.ndarray):
    """Refine both colourings in lockstep; ``None`` when they disagree."""
    na = a.n
    k = -1
    while True:
        keys = np.empty((na + b.n, 2), dtype=np.uint64)
        keys[:na, 0] = ca
        keys[na:, 0] = cb
        keys[:na, 1] = a.neighbour_hash(ca)
        keys[na:, 1] = b.neighbour_hash(cb)
        uniq, inv = np.unique(keys, axis=0, return_inverse=True)
        inv = inv.reshape(-1)
        ca, cb = inv[:na], inv[na:]
        if len(uniq) == k:
            break
        k = len(uniq)
    if not np.array_equal(np.bincount(ca, minlength=k), np.bincount(cb, minlength=k)):
        return None
    return ca, cb


def _leaf_map(a: _Structure, ca: np.ndarray, b: _Structure, cb: np.ndarray):
    m = np.empty(a.n, dtype=np.int64)
    inv_b = np.empty(len(cb), dtype=np.int64)
    inv_b[cb] = np.arange(len(cb))
    m[:] = inv_b[ca]
    if len(a.edge_keys):
        u = a.edge_keys // a.n
        v = a.edge_keys % a.n
        mu, mv = m[u], m[v]
        keys = np.sort(np.minimum(mu, mv) * b.n + np.maximum(mu, mv))
        if not np.array_equal(keys, b.edge_keys):
            return None
    if a.tri_keys is not None:
        image = sorted(tuple(sorted(int(m[x]) for x in t)) for t in a.tri_keys)
        if image != b.tri_keys:
            return None
    return tuple(int(x) for x in m)


class _Search:
    def __init__(self, a: _Structure, b: _Structure, deadline: float | None):
        self.a = a
        self.b = b
        self.deadline = deadline

    def run(self, ca, cb):
        if self.deadline is not None and time.monotonic() > self.deadline:
            raise DeadlineExceeded("search deadline passed")
        refined = _refine(self.a, ca, self.b, cb)
        if refined is None:
            return None
        ca, cb = refined
        counts = np.bincount(ca)
        if counts.max(initial=0) <= 1:
            return _leaf_map(self.a, ca, self.b, cb)
        target = _choose_cell(counts)
        v = int(np.flatnonzero(ca == target)[0])
        fresh = len(counts)
        for w in np.flatnonzero(cb == target):
            ca2 = ca.copy()
            cb2 = cb.copy()
            ca2[v] = fresh
            cb2[int(w)] = fresh
            found = self.run(ca2, cb2)
            if found is not None:
                return found
        return None


def _choose_cell(counts: np.ndarray) -> int:
    big = np.flatnonzero(counts > 1)
    return int(big[np.argmin(counts[big])])


def _structure(c: Complex2, respect_triangles: bool, colors=None) -> _Structure:
    return _Structure(c.n_vertices, c.edges, c.triangles if respect_triangles else (), colors)


def _ensure_recursion(n: int):
    need = 4 * n + 1000
    if sys.getrecursionlimit() < need:
        sys.setrecursionlimit(need)


def find_isomorphism(a: _Structure, b: _Structure, prefix: Sequence[tuple[int, int]] = (),
                     deadline: float | None = None):
    """Low-level entry: isomorphism of two structures extending ``prefix``."""
    if a.n != b.n or len(a.edge_keys) != len(b.edge_keys):
        return None
    if (a.tri_keys is None) != (b.tri_keys is None):
        return None
    _ensure_recursion(a.n)
    ca = a.colors.copy()
    cb = b.colors.copy()
    base = int(max(ca.max(initial=0), cb.max(initial=0))) + 1
    for i, (v, w) in enumerate(prefix):
        ca[v] = base + i
        cb[w] = base + i
    return _Search(a, b, deadline).run(ca, cb)


def graph_isomorphic(a: Complex2, b: Complex2, respect_triangles: bool = True,
                     deadline: float | None = None) -> VertexPermutation | None:
    """An isomorphism ``a -> b`` as a vertex permutation, or ``None``.

    Edges (with multiplicity) and, if requested, triangles as vertex sets
    must correspond; triangle orientation is ignored.  Labels play no role.
    """
    if a.n_vertices != b.n_vertices or a.n_edges != b.n_edges:
        return None
    if respect_triangles and a.n_triangles != b.n_triangles:
        return None
    found = find_isomorphism(_structure(a, respect_triangles), _structure(b, respect_triangles),
                             deadline=deadline)
    return None if found is None else VertexPermutation(found)


def automorphism_group(c: Complex2, respect_triangles: bool = True, limit: int | None = None,
                       deadline: float | None = None, colors: Sequence[int] | None = None) -> AutGroup:
    """Full automorphism group of ``c`` (edges, plus triangles if flagged).

    ``colors`` optionally restricts to colour-preserving automorphisms.
    """
    limit = vertex_limit() if limit is None else limit
    n = c.n_vertices
    if n > limit:
        raise SizeLimitExceeded(f"{n} vertices exceeds the automorphism search limit {limit}")
    st = _structure(c, respect_triangles, colors)
    gens, base, orbits = _schreier_search(st, deadline)
    order = 1
    for size in orbits:
        order *= size
    perms = tuple(VertexPermutation(g) for g in gens)
    index = None
    if respect_triangles and c.triangles:
        index = orientation_index(c, perms)
    elif not c.triangles:
        index = 1
    return AutGroup(perms, order, index, n, tuple(base), tuple(orbits))


def _schreier_search(st: _Structure, deadline):
    _ensure_recursion(st.n)
    n = st.n
    if n == 0:
        return [], [], []
    # descend to a discrete partition, recording the cell at each level
    levels = []
    ca = st.colors.copy()
    prefix: list[int] = []
    while True:
        ca, _ = _refine(st, ca, st, ca)
        counts = np.bincount(ca)
        if counts.max() <= 1:
            break
        target = _choose_cell(counts)
        cell = [int(x) for x in np.flatnonzero(ca == target)]
        b = cell[0]
        levels.append((list(prefix), b, cell))
        prefix.append(b)
        ca = ca.copy()
        ca[b] = len(counts)
    gens: list[tuple[int, ...]] = []
    orbit_sizes = []
    for pre, b, cell in reversed(levels):
        orbit = _orbit(b, gens)
        for w in cell:
            if w in orbit:
                continue
            pairs = [(x, x) for x in pre] + [(b, w)]
            found = find_isomorphism(st, st, pairs, deadline)
            if found is not None:
                gens.append(found)
                orbit = _orbit(b, gens)
        orbit_sizes.append(len(orbit))
    gens.reverse()  # outermost level first
    orbit_sizes.reverse()
    return gens, [b for _, b, _ in levels], orbit_sizes


def _orbit(x: int, gens: Sequence[Sequence[int]]) -> set[int]:
    seen = {x}
    stack = [x]
    while stack:
        y = stack.pop()
        for g in gens:
            z = g[y]
            if z not in seen:
                seen.add(z)
                stack.append(z)
    return seen


def orbits(n: int, gens: Iterable) -> list[list[int]]:
    """Orbits of the generated group, each sorted, ordered by least member."""
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for g in gens:
        m = _as_mapping(g)
        for i in range(n):
            ri, rj = find(i), find(m[i])
            if ri != rj:
                parent[max(ri, rj)] = min(ri, rj)
    groups = defaultdict(list)
    for i in range(n):
        groups[find(i)].append(i)
    return sorted(groups.values(), key=lambda o: o[0])


# -- orientation -------------------------------------------------------------


def _triangle_graph_connected(c: Complex2) -> bool:
    if not c.triangles:
        return True
    by_edge = defaultdict(list)
    for i, (a, b, d) in enumerate(c.triangles):
        for e in ((a, b), (b, d), (a, d)):
            by_edge[tuple(sorted(e))].append(i)
    seen = {0}
    stack = [0]
    while stack:
        i = stack.pop()
        a, b, d = c.triangles[i]
        for e in ((a, b), (b, d), (a, d)):
            for j in by_edge[tuple(sorted(e))]:
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
    return len(seen) == len(c.triangles)


def _orientation_action(c: Complex2, m: Sequence[int]) -> str:
    image = Counter(orient(*(m[x] for x in t)) for t in c.triangles)
    if image == c.triangle_counter:
        return "preserve"
    if Counter(reverse(t) for t in image.elements()) == c.triangle_counter:
        return "reverse"
    return "mixed"


def is_orientation_preserving(c: Complex2, p) -> bool:
    """Whether the automorphism ``p`` keeps every triangle's cyclic orientation.

    Raises :class:`MixedOrientation` when ``p`` preserves some triangles and
    reverses others on a complex whose triangles are edge-connected.
    """
    m = _as_mapping(p)
    if not is_automorphism(c, m, respect_triangles=True):
        raise NotAnAutomorphism("permutation is not an automorphism of the complex")
    action = _orientation_action(c, m)
    if action == "mixed":
        if _triangle_graph_connected(c):
            raise MixedOrientation("automorphism preserves some triangle orientations and reverses others")
        return False
    return action == "preserve"


def orientation_index(c: Complex2, gens: Sequence[VertexPermutation]) -> int | None:
    """Index of the orientation-preserving subgroup, from the generators' actions."""
    actions = {_orientation_action(c, g.mapping) for g in gens}
    if "mixed" in actions:
        return None
    return 2 if "reverse" in actions else 1


# -- surface structure ---------------------------------------------------------


def is_closed_surface(c: Complex2) -> bool:
    """Each edge in exactly two triangles and every vertex link one cycle."""
    if not c.triangles:
        return False
    per_pair = Counter()
    for a, b, d in c.triangles:
        for e in ((a, b), (b, d), (a, d)):
            per_pair[tuple(sorted(e))] += 1
    for e, k in c.edge_counter.items():
        if k != 1 or per_pair[e] != 2:
            return False
    if set(per_pair) != set(c.edge_counter):
        return False
    links = defaultdict(list)
    for t in c.triangles:
        a, b, d = t
        links[a].append((b, d))
        links[b].append((d, a))
        links[d].append((a, b))
    for v in range(c.n_vertices):
        arcs = links.get(v)
        if not arcs or not _single_cycle(arcs):
            return False
    return True


def _single_cycle(arcs: list[tuple[int, int]]) -> bool:
    # link as a multigraph: 2-regular and connected
    deg = Counter()
    adj = defaultdict(list)
    for i, (x, y) in enumerate(arcs):
        deg[x] += 1
        deg[y] += 1
        adj[x].append(i)
        adj[y].append(i)
    if any(k != 2 for k in deg.values()):
        return False
    start = arcs[0][0]
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for i in adj[x]:
            for y in arcs[i]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
    return len(seen) == len(deg)


def trace_faces(c: Complex2) -> list[list[int]]:
    """Faces of the rotation system read off the oriented triangles.

    Around each vertex ``v`` the rotation sends ``x`` to ``y`` for every
    oriented triangle ``(v, x, y)``; faces are the orbits of the dart map
    ``(u, w) -> (w, rot_w(u))``.  Requires a simple edge set and single-cycle
    links.
    """
    rot = defaultdict(dict)
    for a, b, d in c.triangles:
        rot[a][b] = d
        rot[b][d] = a
        rot[d][a] = b
    darts = set()
    for u, w in c.edges:
        darts.add((u, w))
        darts.add((w, u))
    faces = []
    while darts:
        start = min(darts)
        face = []
        dart = start
        while True:
            darts.discard(dart)
            face.append(dart[0])
            u, w = dart
            dart = (w, rot[w][u])
            if dart == start:
                break
        faces.append(face)
    return faces


def genus_from_faces(c: Complex2) -> int:
    f = len(trace_faces(c))
    chi = c.n_vertices - c.n_edges + f
    return (2 - chi) // 2


# -- nerve and quotients -------------------------------------------------------


def nerve(c: Complex2, cover: Sequence[Iterable[int]]) -> Complex2:
    """One vertex per cover set, an edge wherever two sets meet."""
    sets = [frozenset(s) for s in cover]
    for i, s in enumerate(sets):
        if not s:
            raise EmptyCoverSet(f"cover set {i} is empty")
        if not all(0 <= v < c.n_vertices for v in s):
            raise ValueError(f"cover set {i} names a vertex outside the complex")
    if sets and frozenset().union(*sets) != frozenset(range(c.n_vertices)):
        raise ValueError("cover does not exhaust the vertex set")
    edges = [(i, j) for i in range(len(sets)) for j in range(i + 1, len(sets)) if sets[i] & sets[j]]
    meta = {"kind": "nerve", "cover": json.dumps([sorted(s) for s in sets])}
    return Complex2(tuple(f"U{i}" for i in range(len(sets))), tuple(edges), (), meta)


def _edge_action(c: Complex2, m: Sequence[int]) -> list[int]:
    # parallel copies of a pair are matched in list order
    slots = defaultdict(list)
    for i, e in enumerate(c.edges):
        slots[e].append(i)
    copy_no = {}
    for e, idx in slots.items():
        for k, i in enumerate(idx):
            copy_no[i] = k
    out = []
    for i, (u, v) in enumerate(c.edges):
        image = tuple(sorted((m[u], m[v])))
        out.append(slots[image][copy_no[i]])
    return out


def _triangle_action(c: Complex2, m: Sequence[int]) -> list[int]:
    slots = defaultdict(list)
    for i, t in enumerate(c.triangles):
        slots[t].append(i)
    copy_no = {}
    for idx in slots.values():
        for k, i in enumerate(idx):
            copy_no[i] = k
    out = []
    for i, t in enumerate(c.triangles):
        image = orient(*(m[x] for x in t))
        if image not in slots:
            image = reverse(image)
        targets = slots[image]
        out.append(targets[copy_no[i] % len(targets)])
    return out


def quotient_by_action(c: Complex2, gens: Sequence) -> Complex2:
    """Orbit complex of ``c`` under the group generated by ``gens``.

    Orbit vertices are ordered and labelled by their least member.  Edge
    orbits whose endpoints fall in one vertex orbit are dropped, as are
    triangle orbits that do not span three distinct vertex orbits; both are
    counted in the metadata.
    """
    maps = [_as_mapping(g) for g in gens]
    for m in maps:
        if not is_automorphism(c, m, respect_triangles=True):
            raise NotAnAutomorphism("generator is not an automorphism of the complex")
    vorbits = orbits(c.n_vertices, maps)
    where = {}
    for k, orb in enumerate(vorbits):
        for v in orb:
            where[v] = k
    eorbits = orbits(c.n_edges, [_edge_action(c, m) for m in maps])
    torbits = orbits(c.n_triangles, [_triangle_action(c, m) for m in maps])
    edges = []
    collapsed = 0
    for orb in eorbits:
        u, v = c.edges[orb[0]]
        if where[u] == where[v]:
            collapsed += 1
        else:
            edges.append((where[u], where[v]))
    tris = []
    dropped = 0
    for orb in torbits:
        image = tuple(where[x] for x in c.triangles[orb[0]])
        if len(set(image)) == 3:
            tris.append(image)
        else:
            dropped += 1
    meta = {
        "kind": "quotient",
        "orbits": json.dumps(vorbits),
        "collapsed_edges": str(collapsed),
        "collapsed_triangles": str(dropped),
    }
    labels = tuple(c.vertices[orb[0]] for orb in vorbits)
    return Complex2(labels, tuple(edges), tuple(tris), meta)


def descend(p, blocks: Sequence[Sequence[int]]) -> VertexPermutation | None:
    """Permutation induced on ``blocks`` by ``p``, or ``None`` if ``p`` breaks them."""
    m = _as_mapping(p)
    where = {}
    for k, blk in enumerate(blocks):
        for v in blk:
            where[v] = k
    image = []
    for blk in blocks:
        targets = {where[m[v]] for v in blk}
        if len(targets) != 1:
            return None
        image.append(targets.pop())
    if sorted(image) != list(range(len(blocks))):
        return None
    return VertexPermutation(tuple(image))
