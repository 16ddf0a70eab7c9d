"""Truncated inverse systems of level quotients and their automorphisms."""

from __future__ import annotations

from dataclasses import dataclass, field
from .complex import Complex2, point
from .errors import NoUniqueTop, ProjectionMismatch, WrongType
from .graph import (AutGroup, VertexPermutation, automorphism_group, descend, is_automorphism,
                    is_orientation_preserving, orientation_index)
from .level import (DEFAULT_MODULUS_LIMIT, _check_modulus, cusps_of, farey_level, project_level,
                    psl2_enumerate)
from .farey import complete_closure
from .product import ProductComplex, product_pants, product_star
from .surface import SurfaceSpec, _spec


@dataclass
class Tower:
    """Stages indexed by modulus with projections for every divisible pair."""

    levels: list[int]
    stages: dict[int, Complex2]
    projections: dict[tuple[int, int], tuple[int, ...]]
    surface: SurfaceSpec
    products: dict[int, ProductComplex] = field(default_factory=dict, repr=False)

    def top(self) -> int:
        tops = [a for a in self.levels if all(a % b == 0 for b in self.levels)]
        if len(tops) != 1:
            raise NoUniqueTop(f"levels {self.levels} have no unique maximal element")
        return tops[0]

    def fibers(self, big: int, small: int) -> list[list[int]]:
        """Preimages of the vertices of stage ``small`` in stage ``big``."""
        vmap = self.projections[big, small]
        blocks = [[] for _ in range(self.stages[small].n_vertices)]
        for v, w in enumerate(vmap):
            blocks[w].append(v)
        return blocks


def _factor(t, m: int, limit: int) -> Complex2:
    if t == (0, 3):
        return point()
    if t in ((0, 4), (1, 1)):
        return farey_level(m, limit)
    raise WrongType(f"component {t} has modular dimension > 1; only dimension <= 1 pieces are supported")


def surface_product(surface, m: int, star: bool = False,
                    limit: int = DEFAULT_MODULUS_LIMIT) -> ProductComplex:
    """Level-``m`` product over the pieces of ``surface``; star flavour on request."""
    surface = _spec(surface)
    _check_modulus(m, limit)
    factors = [_factor(t, m, limit) for t in surface.components]
    if not factors:
        raise WrongType("the empty surface has no pieces")
    if star:
        return product_star([complete_closure(f) for f in factors])
    return product_pants(factors)


def _stage(surface: SurfaceSpec, m: int, limit: int) -> ProductComplex:
    return product_pants([_factor(t, m, limit) for t in surface.components])


def _projection(surface: SurfaceSpec, big: ProductComplex, small: ProductComplex,
                a: int, b: int, limit: int) -> tuple[int, ...]:
    maps = []
    for t in surface.components:
        maps.append((0,) if t == (0, 3) else project_level(a, b, limit))
    return tuple(small.vertex_of([mp[x] for mp, x in zip(maps, coord)]) for coord in big.coords)


def _check_projection(big: Complex2, small: Complex2, vmap) -> None:
    if set(vmap) != set(range(small.n_vertices)):
        raise ProjectionMismatch("projection is not surjective")
    edges = set(small.edges)
    for u, v in big.edges:
        if tuple(sorted((vmap[u], vmap[v]))) not in edges:
            raise ProjectionMismatch(f"edge {(u, v)} does not map to an edge")
    tris = {tuple(sorted(t)) for t in small.triangles}
    for t in big.triangles:
        if tuple(sorted(vmap[x] for x in t)) not in tris:
            raise ProjectionMismatch(f"triangle {t} does not map to a triangle")


def build_tower(surface, levels, limit: int = DEFAULT_MODULUS_LIMIT) -> Tower:
    """Stages ``product of farey_level(m)`` over the surface's pieces, for each ``m``."""
    surface = _spec(surface)
    levels = sorted(set(int(m) for m in levels))
    if not levels:
        raise ValueError("a tower needs at least one level")
    for m in levels:
        _check_modulus(m, limit)
    for t in surface.components:
        _factor(t, 2, limit)
    products = {m: _stage(surface, m, limit) for m in levels}
    stages = {m: p.flattened for m, p in products.items()}
    projections = {}
    for a in levels:
        for b in levels:
            if a != b and a % b == 0:
                vmap = _projection(surface, products[a], products[b], a, b, limit)
                _check_projection(stages[a], stages[b], vmap)
                projections[a, b] = vmap
    tower = Tower(levels, stages, projections, surface, products)
    bad = composition_failures(tower)
    if bad:
        raise ProjectionMismatch(f"projections do not compose for {bad}")
    return tower


def composition_failures(t: Tower) -> list[tuple[int, int, int]]:
    """Triples ``c | b | a`` where ``pi(a, c) != pi(b, c) o pi(a, b)``."""
    bad = []
    for a in t.levels:
        for b in t.levels:
            for c in t.levels:
                if a != b and b != c and a % b == 0 and b % c == 0:
                    ab, bc, ac = t.projections[a, b], t.projections[b, c], t.projections[a, c]
                    if any(ac[v] != bc[ab[v]] for v in range(len(ab))):
                        bad.append((a, b, c))
    return bad


def _augmented(t: Tower, top: int):
    """Top stage plus one coloured node per projection fiber, joined to its members."""
    base = t.stages[top]
    n = base.n_vertices
    labels = list(base.vertices)
    edges = list(base.edges)
    colors = [0] * n
    lower = [m for m in t.levels if m != top]
    for k, m in enumerate(lower):
        for j, blk in enumerate(t.fibers(top, m)):
            node = len(labels)
            labels.append(f"#fiber:{m}:{j}")
            colors.append(k + 1)
            edges.extend((v, node) for v in blk)
    return Complex2(tuple(labels), tuple(edges), base.triangles, {}), colors


def compatible_automorphisms(t: Tower) -> AutGroup:
    """Automorphisms of the top stage that descend to every lower stage."""
    top = t.top()
    stage = t.stages[top]
    n = stage.n_vertices
    if len(t.levels) == 1:
        return automorphism_group(stage, respect_triangles=True)
    aug, colors = _augmented(t, top)
    full = automorphism_group(aug, respect_triangles=True, colors=colors)
    gens = tuple(VertexPermutation(g.mapping[:n]) for g in full.generators)
    for g in gens:
        if not is_automorphism(stage, g):
            raise ProjectionMismatch("restricted generator is not an automorphism of the top stage")
        for m in t.levels:
            if m != top and descend(g, t.fibers(top, m)) is None:
                raise ProjectionMismatch(f"generator does not permute the fibers over level {m}")
    index = orientation_index(stage, gens) if stage.triangles else 1
    return AutGroup(gens, full.order, index, n, full.base, full.orbit_sizes)


def restrict(t: Tower, g: VertexPermutation, level: int) -> VertexPermutation:
    """Action induced on stage ``level`` by a compatible automorphism of the top stage."""
    top = t.top()
    if level == top:
        return g
    image = descend(g, t.fibers(top, level))
    if image is None:
        raise ProjectionMismatch(f"permutation does not descend to level {level}")
    return image


def psl2_image_in_aut(m: int, limit: int = DEFAULT_MODULUS_LIMIT) -> dict:
    """How PSL2(Z/m) sits inside the automorphisms of ``farey_level(m)``."""
    _check_modulus(m, limit)
    grp = psl2_enumerate(m, limit)
    stage = farey_level(m, limit)
    cusps = cusps_of(stage)
    where = {v: i for i, v in enumerate(cusps)}
    perms = set()
    kernel = 0
    preserving = True
    ident = tuple(range(len(cusps)))
    for i in range(grp.order):
        g = grp.element(i)
        p = tuple(where[g.act(v)] for v in cusps)
        if p == ident:
            kernel += 1
        if p not in perms:
            perms.add(p)
            preserving = preserving and is_orientation_preserving(stage, p)
    aut = automorphism_group(stage, respect_triangles=True)
    idx = aut.orientation_preserving_index
    aut_plus = aut.order // idx if idx else None
    return {
        "m": m,
        "group_order": grp.order,
        "image_order": len(perms),
        "kernel_order": kernel,
        "faithful": kernel == 1,
        "aut_order": aut.order,
        "orientation_index": idx,
        "aut_plus_order": aut_plus,
        "in_aut_plus": preserving,
        "index_in_aut_plus": (aut_plus // len(perms)) if aut_plus and aut_plus % len(perms) == 0 else None,
    }


def tower_report(t: Tower) -> dict:
    top = t.top()
    comp = compatible_automorphisms(t)
    psl2 = {}
    if any(c in ((0, 4), (1, 1)) for c in t.surface.components):
        psl2 = psl2_image_in_aut(top)
    return {
        "levels": t.levels,
        "stage_sizes": {str(m): [s.n_vertices, s.n_edges, s.n_triangles] for m, s in t.stages.items()},
        "compatible_order": comp.order,
        "psl2_image": psl2,
    }

