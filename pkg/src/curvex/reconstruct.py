"""Reading the curve complex back off the star graph of a product surface.

The local dimension at a vertex is the largest family of pairwise
non-adjacent neighbours.  The maximal complete subgraphs through a
vertex (its fibers) come from triangle closure, since every triangle of
a product changes a single coordinate.  Fibers that face each other
across a perfect matching are parallel; parallel classes are the axes,
and the sub-products are the components of the graph restricted to a
set of axes.  A sub-product fixing k + 1 coordinates is a k-simplex of
the curve complex.
"""

from __future__ import annotations

import json
import time
from collections import defaultdict
from dataclasses import dataclass, field
from itertools import combinations

from .complex import Complex2
from .errors import (DeadlineExceeded, NeighborhoodTooLarge, SizeLimitExceeded,
                     UnsupportedInput, VertexSetMismatch)
from .graph import automorphism_group, is_automorphism
from .simplicial import SimplicialComplex, simplicial_isomorphic

DEFAULT_NEIGHBOR_GUARD = 24
MAX_AXES = 5
MAX_FIBER = 30


def _check_deadline(deadline):
    if deadline is not None and time.monotonic() > deadline:
        raise DeadlineExceeded("reconstruction deadline passed")


def _max_independent(masks: list[int]) -> int:
    """Size of a maximum independent set; ``masks[i]`` is the neighbour bitmask of ``i``.

    Branches on the closed neighbourhood of a minimum-degree vertex, one of
    whose members lies in some maximum independent set.
    """
    memo: dict[int, int] = {}
    closed = [m | (1 << i) for i, m in enumerate(masks)]

    def solve(cand: int) -> int:
        if cand == 0:
            return 0
        hit = memo.get(cand)
        if hit is not None:
            return hit
        low_v, low_deg = -1, 1 << 30
        c = cand
        while c:
            bit = c & -c
            v = bit.bit_length() - 1
            c ^= bit
            deg = (masks[v] & cand).bit_count()
            if deg < low_deg:
                low_v, low_deg = v, deg
        best = 0
        c = closed[low_v] & cand
        while c:
            bit = c & -c
            u = bit.bit_length() - 1
            c ^= bit
            best = max(best, 1 + solve(cand & ~closed[u]))
        memo[cand] = best
        return best

    return solve((1 << len(masks)) - 1)


def local_dimension(c: Complex2, v: int, guard: int = DEFAULT_NEIGHBOR_GUARD,
                    within: frozenset[int] | None = None) -> int:
    """Largest number of neighbours of ``v`` no two of which are adjacent.

    ``within`` restricts the count to the full subgraph on that vertex set.
    """
    nb = c.neighbors[v] if within is None else c.neighbors[v] & within
    nb = sorted(nb)
    if len(nb) > guard:
        raise NeighborhoodTooLarge(f"vertex {v} has {len(nb)} neighbours, guard is {guard}")
    pos = {w: i for i, w in enumerate(nb)}
    masks = [0] * len(nb)
    for i, w in enumerate(nb):
        for x in c.neighbors[w]:
            j = pos.get(x)
            if j is not None:
                masks[i] |= 1 << j
    return _max_independent(masks)


def fibers_through(c: Complex2, v: int) -> list[list[int]]:
    """Maximal triangle-closed fans at ``v``, each returned with ``v`` included."""
    nb = sorted(c.neighbors[v])
    inside = set(nb)
    parent = {w: w for w in nb}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for w in nb:
        for x in c.neighbors[w]:
            if x in inside:
                a, b = find(w), find(x)
                if a != b:
                    parent[max(a, b)] = min(a, b)
    classes = defaultdict(list)
    for w in nb:
        classes[find(w)].append(w)
    return sorted((sorted([v] + ws) for ws in classes.values()), key=lambda f: (f[0], f[1:]))


@dataclass
class SubgraphFamily:
    """Sub-product vertex sets with their dimensions, plus inclusion data."""

    members: list[tuple[frozenset[int], int]]
    axes: int
    certified: list[bool] = field(default_factory=list)

    def by_dimension(self) -> dict[int, int]:
        out: dict[int, int] = defaultdict(int)
        for _, d in self.members:
            out[d] += 1
        return dict(sorted(out.items()))

    def contains(self, i: int, j: int) -> bool:
        """Whether member ``j`` is a subset of member ``i``."""
        return self.members[j][0] <= self.members[i][0]

    def inclusion_order(self) -> list[tuple[int, int]]:
        """Covering pairs ``(small, big)`` where ``big`` has one more dimension."""
        by_dim = defaultdict(list)
        for k, (_, d) in enumerate(self.members):
            by_dim[d].append(k)
        pairs = []
        for d, small in by_dim.items():
            for s in small:
                for b in by_dim.get(d + 1, ()):
                    if self.members[s][0] <= self.members[b][0]:
                        pairs.append((s, b))
        return pairs


def _all_fibers(c: Complex2, guard: int, deadline):
    through: dict[int, list[frozenset[int]]] = {}
    seen: dict[frozenset[int], int] = {}
    fibers: list[frozenset[int]] = []
    dims = set()
    for v in range(c.n_vertices):
        _check_deadline(deadline)
        fans = [frozenset(f) for f in fibers_through(c, v)]
        for f in fans:
            if len(f) > MAX_FIBER:
                raise SizeLimitExceeded(f"fiber of size {len(f)} exceeds {MAX_FIBER}")
            if any(not (c.neighbors[x] >= f - {x}) for x in f):
                raise UnsupportedInput("a fiber is not complete; input is not a star-flavour product")
            if f not in seen:
                seen[f] = len(fibers)
                fibers.append(f)
        d = local_dimension(c, v, guard)
        if d != len(fans):
            raise UnsupportedInput(f"vertex {v}: {len(fans)} fibers but local dimension {d}")
        dims.add(d)
        through[v] = fans
    if len(dims) > 1:
        raise UnsupportedInput("local dimension is not constant")
    return fibers, seen, through, (dims.pop() if dims else 0)


def _axes(c: Complex2, fibers, seen, through) -> list[int]:
    """Parallel class of each fiber."""
    parent = list(range(len(fibers)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, f in enumerate(fibers):
        x0 = min(f)
        for y in c.neighbors[x0] - f:
            for g in through[y]:
                j = seen[g]
                if j == i or find(i) == find(j) or (f & g):
                    continue
                if _matched(c, f, g):
                    a, b = find(i), find(j)
                    parent[max(a, b)] = min(a, b)
    roots = sorted({find(i) for i in range(len(fibers))})
    label = {r: k for k, r in enumerate(roots)}
    return [label[find(i)] for i in range(len(fibers))]


def _matched(c: Complex2, f, g) -> bool:
    if len(f) != len(g):
        return False
    hit = set()
    for x in f:
        nb = c.neighbors[x] & g
        if len(nb) != 1:
            return False
        hit |= nb
    return len(hit) == len(g)


def maximal_subsurface_subgraphs(c: Complex2, guard: int = DEFAULT_NEIGHBOR_GUARD,
                                 deadline: float | None = None) -> SubgraphFamily:
    """All sub-products of a star-flavour product graph, detected from the graph alone."""
    if c.n_vertices == 0:
        return SubgraphFamily([], 0)
    fibers, seen, through, d = _all_fibers(c, guard, deadline)
    axis = _axes(c, fibers, seen, through) if fibers else []
    n_axes = (max(axis) + 1) if axis else 0
    if n_axes > MAX_AXES:
        raise SizeLimitExceeded(f"{n_axes} axes exceeds the limit {MAX_AXES}")
    if n_axes != d:
        raise UnsupportedInput(f"found {n_axes} parallel classes but local dimension {d}")
    members: list[tuple[frozenset[int], int]] = []
    for k in range(n_axes, -1, -1):
        for chosen in combinations(range(n_axes), k):
            _check_deadline(deadline)
            keep = set(chosen)
            gens_edges = [(min(f), x) for f, a in zip(fibers, axis) if a in keep for x in f]
            comps = _components(c.n_vertices, gens_edges)
            members.extend((frozenset(comp), k) for comp in comps)
    if len({m for m, _ in members}) != len(members):
        raise UnsupportedInput("sub-products are not distinct; a factor has fewer than two vertices")
    family = SubgraphFamily(members, n_axes)
    family.certified = [_certify(c, m, k, through, axis, seen, guard) for m, k in members]
    return family


def _components(n: int, edges) -> list[list[int]]:
    parent = list(range(n))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for u, v in edges:
        a, b = find(u), find(v)
        if a != b:
            parent[max(a, b)] = min(a, b)
    groups = defaultdict(list)
    for i in range(n):
        groups[find(i)].append(i)
    return sorted(groups.values(), key=lambda g: g[0])


def _certify(c: Complex2, member: frozenset[int], k: int, through, axis, seen, guard) -> bool:
    """Recognizer plus the neighbour-independence maximality argument."""
    if local_dimension(c, min(member), guard, within=member) != k:
        return False
    for v in member:
        # one neighbour per fiber of the member through v
        inner = [min(f - {v}) for f in through[v] if f <= member]
        if len(inner) != k:
            return False
        if any(c.adjacent(a, b) for a, b in combinations(inner, 2)):
            return False
        for w in c.neighbors[v] - member:
            if any(c.adjacent(w, a) for a in inner):
                return False
    return True


def reconstruct_curve_complex(c: Complex2, guard: int = DEFAULT_NEIGHBOR_GUARD,
                              deadline: float | None = None) -> SimplicialComplex:
    """Curve complex of the product whose star graph is ``c``.

    Curves are the sub-products of codimension one; a sub-product of
    codimension k + 1 is the k-simplex spanned by the curves containing it.
    """
    family = maximal_subsurface_subgraphs(c, guard, deadline)
    d = family.axes
    curves = [m for m, k in family.members if k == d - 1]
    simplices = []
    for m, k in family.members:
        if k == d:
            continue
        face = [i for i, cm in enumerate(curves) if m <= cm]
        if len(face) != d - k:
            raise UnsupportedInput("sub-product lies on the wrong number of curves")
        simplices.append(face)
    return SimplicialComplex.from_simplices([f"C{i}" for i in range(len(curves))], simplices)


def check_aut_inclusion(cp: Complex2, cs: Complex2, deadline: float | None = None) -> dict:
    """Check that every automorphism of the pants graph is one of the star graph."""
    if cp.vertices != cs.vertices:
        raise VertexSetMismatch("pants and star complexes must share the same vertex list")
    acp = automorphism_group(cp, respect_triangles=False, deadline=deadline)
    acs = automorphism_group(cs, respect_triangles=False, deadline=deadline)
    bad = [i for i, g in enumerate(acp.generators) if not is_automorphism(cs, g, respect_triangles=False)]
    inclusion = not bad
    index = acs.order // acp.order if inclusion and acs.order % acp.order == 0 else None
    return {
        "inclusion": inclusion,
        "aut_cp_order": acp.order,
        "aut_cs_order": acs.order,
        "index": index,
        "generators_checked": len(acp.generators),
        "failing_generators": bad,
    }


def reconstruction_report(cs: Complex2, factor_sizes: list[int] | None = None,
                          cp: Complex2 | None = None, guard: int = 64,
                          deadline: float | None = None) -> dict:
    """JSON-ready summary: member counts, round-trip check and automorphism orders."""
    from .complex import complete_graph, point
    from .product import direct_curve_complex

    family = maximal_subsurface_subgraphs(cs, guard, deadline)
    rebuilt = reconstruct_curve_complex(cs, guard, deadline)
    if factor_sizes is None and "factor_sizes" in cs.metadata:
        sizes = json.loads(cs.metadata["factor_sizes"])
        points = json.loads(cs.metadata.get("point_factors", "[]")) or [False] * len(sizes)
        factor_sizes = [0 if pt else n for n, pt in zip(sizes, points)]
    roundtrip = None
    if factor_sizes is not None:
        factors = [point() if n == 0 else complete_graph(n) for n in factor_sizes]
        roundtrip = simplicial_isomorphic(rebuilt, direct_curve_complex(factors), deadline) is not None
    acs = automorphism_group(cs, respect_triangles=False, deadline=deadline)
    aut_cp = None
    if cp is not None:
        aut_cp = check_aut_inclusion(cp, cs, deadline)["aut_cp_order"]
    return {
        "members": len(family.members),
        "by_dimension": {str(k): v for k, v in family.by_dimension().items()},
        "roundtrip_iso": roundtrip,
        "aut_cp_order": aut_cp,
        "aut_cs_order": acs.order,
    }
