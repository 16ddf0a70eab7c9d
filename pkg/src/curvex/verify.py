"""Batch invariant checks behind ``curvex verify``.

Each check returns ``(passed, detail)``; :func:`run_suite` times them
against their budgets and collects one row per check.
"""

from __future__ import annotations

import random
import time
from math import prod
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import Callable

from .complex import Complex2, complete_graph, is_point, point
from .farey import complete_closure
from .graph import (automorphism_group, descend, genus_from_faces, graph_isomorphic,
                    is_automorphism, is_closed_surface, nerve)
from .level import farey_level, gstar_level, psl2_enumerate, verify_against_ball
from .product import (direct_curve_complex, expected_counts, product_pants, product_star,
                      subcomplex_intersection)
from .reconstruct import check_aut_inclusion, fibers_through, local_dimension, reconstruct_curve_complex
from .simplicial import simplicial_isomorphic
from .solids import complete_bipartite, icosahedron, octahedron, tetrahedron
from .tower import build_tower, compatible_automorphisms, composition_failures, psl2_image_in_aut, restrict

GUARD = 64


@dataclass
class Row:
    name: str
    passed: bool
    detail: str
    seconds: float
    budget: float

    @property
    def status(self) -> str:
        if not self.passed:
            return "FAIL"
        return "PASS" if self.seconds <= self.budget else "SLOW"

    @property
    def ok(self) -> bool:
        return self.passed and self.seconds <= self.budget


def suite_factors() -> dict[str, Complex2]:
    return {"F2": farey_level(2), "F3": farey_level(3), "F5": farey_level(5),
            "K3": gstar_level(2), "K4": gstar_level(3), "pt": point()}


def factor_lists(names, max_len: int = 3):
    for k in range(1, max_len + 1):
        yield from combinations_with_replacement(names, k)


def star_suite(max_len: int = 3) -> list[list[Complex2]]:
    """Star factor lists, one per multiset of factor sizes."""
    f = suite_factors()
    pool = {"K3": f["K3"], "K4": f["K4"], "K12": complete_closure(f["F5"]), "pt": f["pt"]}
    return [[pool[n] for n in names] for names in factor_lists(list(pool), max_len)]


def pants_suite(max_len: int = 3) -> list[list[Complex2]]:
    f = suite_factors()
    return [[f[n] for n in names] for names in factor_lists(["F2", "F3", "F5", "pt"], max_len)]


# -- checks ------------------------------------------------------------------------


def check_level_counts():
    for m in range(2, 14):
        order = psl2_enumerate(m).order
        c = farey_level(m)
        want = (order // m, order // 2, order // 3)
        got = (c.n_vertices, c.n_edges, c.n_triangles)
        if got != want or order % 3:
            return False, f"m={m}: got {got}, want {want}"
    return True, "m=2..13 match |PSL2(Z/m)|/m, /2, /3"


def check_surfaces():
    chi_expected = {2: 2, 3: 2, 4: 2, 5: 2, 7: -4}
    for m in range(2, 14):
        c = farey_level(m)
        if not is_closed_surface(c):
            return False, f"m={m} is not a closed surface"
        chi = c.euler_characteristic()
        if chi % 2 or (2 - chi) // 2 != genus_from_faces(c):
            return False, f"m={m}: Euler characteristic {chi} disagrees with face tracing"
        if m in chi_expected and chi != chi_expected[m]:
            return False, f"m={m}: chi={chi}, want {chi_expected[m]}"
    return True, "closed oriented surfaces; chi(2,3,4,5,7) = 2,2,2,2,-4"


def check_named_solids():
    for m, solid in ((3, tetrahedron), (4, octahedron), (5, icosahedron)):
        if graph_isomorphic(farey_level(m), solid()) is None:
            return False, f"farey_level({m}) is not isomorphic to {solid.__name__}"
    return True, "levels 3,4,5 = tetrahedron, octahedron, icosahedron"


def check_ball_oracle():
    for m, depth in ((2, 8), (3, 10), (4, 10), (5, 12)):
        rep = verify_against_ball(m, depth)
        if not (rep["match"] and rep["stabilized"]):
            return False, f"({m},{depth}): {rep}"
    return True, "ball projections match and are stable"


def check_orientation_split():
    for m in range(3, 8):
        aut = automorphism_group(farey_level(m), respect_triangles=True)
        if aut.orientation_preserving_index != 2:
            return False, f"m={m}: index {aut.orientation_preserving_index}"
        rep = psl2_image_in_aut(m)
        if not rep["in_aut_plus"]:
            return False, f"m={m}: PSL2 image leaves Aut+"
    return True, "index 2 and PSL2(Z/m) inside Aut+ for m=3..7"


def check_product_formulas():
    f = suite_factors()
    for names in factor_lists(list(f), 3):
        fs = [f[n] for n in names]
        closures = [complete_closure(x) for x in fs]
        star = product_star(closures).flattened
        if (star.n_vertices, star.n_edges) != expected_counts(closures, "star"):
            return False, f"star {names}"
        if not any(x.metadata.get("flavor") == "star" for x in fs):
            pants = product_pants(fs).flattened
            if (pants.n_vertices, pants.n_edges) != expected_counts(fs, "pants"):
                return False, f"pants {names}"
    return True, "all lists of <= 3 factors"


def _non_point(fs):
    return sum(1 for x in fs if not is_point(x))


def check_local_structure():
    for fs in star_suite():
        c = product_star(fs).flattened
        k = _non_point(fs)
        for v in range(c.n_vertices):
            d = local_dimension(c, v, GUARD)
            if d != k or len(fibers_through(c, v)) != d:
                return False, f"sizes {[x.n_vertices for x in fs]} vertex {v}: {d} vs {k}"
    return True, "local dimension = number of non-point factors = fiber count"


def check_roundtrip():
    for fs in star_suite():
        c = product_star(fs).flattened
        rebuilt = reconstruct_curve_complex(c, GUARD)
        if simplicial_isomorphic(rebuilt, direct_curve_complex(fs)) is None:
            return False, f"sizes {[x.n_vertices for x in fs]}"
    return True, "reconstruction matches the direct curve complex"


def random_pair(rng: random.Random, sizes, clash: bool):
    """Two random partial tuples; ``clash`` forces a disagreement on one coordinate."""
    rho = {i: rng.randrange(n) for i, n in enumerate(sizes) if rng.random() < 0.5}
    sigma = {i: rng.randrange(n) for i, n in enumerate(sizes) if rng.random() < 0.5}
    for i in set(rho) & set(sigma):
        sigma[i] = rho[i]
    if clash:
        i = rng.choice([j for j, n in enumerate(sizes) if n >= 2])
        rho[i] = rng.randrange(sizes[i])
        sigma[i] = (rho[i] + rng.randrange(1, sizes[i])) % sizes[i]
    return rho, sigma


def _cut_oracle(p, rho, sigma):
    # tuples in both cuts, and the star edge count over the free coordinates
    inside = {c for c in p.coords if all(c[i] == x for i, x in rho.items())}
    inside &= {c for c in p.coords if all(c[i] == x for i, x in sigma.items())}
    fixed = set(rho) | set(sigma)
    free = [n for i, n in enumerate(p.sizes) if i not in fixed]
    total = prod(free)
    edges = sum(total // n * n * (n - 1) // 2 for n in free) if inside else 0
    return {p.flattened.vertices[p.vertex_of(c)] for c in inside}, edges


def check_intersections(seed: int = 0, pairs: int = 100):
    rng = random.Random(seed)
    for fs in star_suite():
        p = product_star(fs)
        if all(n < 2 for n in p.sizes):
            continue
        for clash in (False, True):
            for _ in range(pairs):
                rho, sigma = random_pair(rng, p.sizes, clash)
                got = subcomplex_intersection(p, rho, sigma)
                labels, n_edges = _cut_oracle(p, rho, sigma) if not clash else (set(), 0)
                if set(got.vertices) != labels or got.n_edges != n_edges:
                    return False, f"sizes {p.sizes}: {rho} vs {sigma}"
    return True, f"{pairs} compatible + {pairs} incompatible pairs per product"


def check_aut_inclusion_suite():
    for fs in pants_suite(2):
        cp = product_pants(fs).flattened
        cs = complete_closure(cp)
        rep = check_aut_inclusion(cp, cs)
        if not rep["inclusion"]:
            return False, f"sizes {[x.n_vertices for x in fs]}: {rep}"
    return True, "Aut(pants) generators are star automorphisms"


def check_towers():
    for levels in ([2, 4, 8], [2, 3, 6]):
        t = build_tower("1,1", levels)
        if composition_failures(t):
            return False, f"{levels}: composition fails"
        grp = compatible_automorphisms(t)
        if grp.verify_order() is not True:
            return False, f"{levels}: order {grp.order} not confirmed by closure"
        top = t.top()
        gens = list(grp.generators)
        for g in gens:
            for h in gens + [g.inverse()]:
                gh = g.compose(h)
                if not is_automorphism(t.stages[top], gh):
                    return False, f"{levels}: product leaves Aut"
                for m in levels:
                    if m == top:
                        continue
                    if descend(gh, t.fibers(top, m)) is None:
                        return False, f"{levels}: product not compatible"
                    if restrict(t, gh, m) != restrict(t, g, m).compose(restrict(t, h, m)):
                        return False, f"{levels}: restriction is not multiplicative"
                    if not is_automorphism(t.stages[m], restrict(t, g, m)):
                        return False, f"{levels}: restriction is not an automorphism"
    return True, "composition law, closed subgroup, homomorphic restrictions"


def check_nerve():
    p = product_star([complete_graph(3), complete_graph(3)])
    cover = [[p.vertex_of((a, b)) for b in range(3)] for a in range(3)]
    cover += [[p.vertex_of((a, b)) for a in range(3)] for b in range(3)]
    n = nerve(p.flattened, cover)
    if graph_isomorphic(n, complete_bipartite(3, 3)) is None:
        return False, "nerve is not K3,3"
    return True, "axis-fiber nerve of K3xK3 is K3,3"


CHECKS: list[tuple[str, Callable, float]] = [
    ("level-quotient counts", check_level_counts, 10),
    ("surface checks", check_surfaces, 10),
    ("named-solid isomorphisms", check_named_solids, 5),
    ("ball oracle agreement", check_ball_oracle, 60),
    ("automorphism/orientation split", check_orientation_split, 60),
    ("product formulas", check_product_formulas, 10),
    ("local structure suite", check_local_structure, 30),
    ("reconstruction round-trip", check_roundtrip, 120),
    ("subcomplex intersections", check_intersections, 10),
    ("Aut inclusion suite", check_aut_inclusion_suite, 120),
    ("tower suite", check_towers, 60),
    ("nerve check", check_nerve, 1),
]

SUITES = {"default": [name for name, _, _ in CHECKS]}


def run_suite(name: str = "default") -> list[Row]:
    if name not in SUITES:
        raise ValueError(f"unknown suite {name!r}; known: {sorted(SUITES)}")
    wanted = set(SUITES[name])
    rows = []
    for label, fn, budget in CHECKS:
        if label not in wanted:
            continue
        start = time.perf_counter()
        try:
            passed, detail = fn()
        except Exception as exc:  # a crashing check is a failing row
            passed, detail = False, f"{type(exc).__name__}: {exc}"
        rows.append(Row(label, passed, detail, time.perf_counter() - start, budget))
    return rows


def format_table(rows: list[Row]) -> str:
    width = max(len(r.name) for r in rows)
    lines = [f"{'check':<{width}}  status  seconds  budget  detail"]
    for r in rows:
        lines.append(f"{r.name:<{width}}  {r.status:<6}  {r.seconds:7.2f}  {r.budget:6.0f}  {r.detail}")
    return "\n".join(lines)
