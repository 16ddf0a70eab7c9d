import pytest

from oracles import genus_by_euler, psl2_order

from curvex import (CosetGeometry, complete_graph, cusp_class, farey_level, genus_from_faces,
                    graph_isomorphic, gstar_level, is_closed_surface, project_level, psl2_enumerate,
                    psl2_order_formula, verify_against_ball)
from curvex.errors import DivisibilityError, ModulusLimitExceeded
from curvex.level import Psl2ModM, T_QUAD, cusps_of


@pytest.mark.parametrize("m,order", [(2, 6), (3, 12), (5, 60)])
def test_small_group_orders(m, order):
    assert psl2_enumerate(m).order == order == psl2_order(m)


@pytest.mark.parametrize("m", range(2, 14))
def test_order_formula_matches_enumeration(m):
    assert psl2_enumerate(m).order == psl2_order_formula(m)


def test_group_multiplication_closed():
    g = psl2_enumerate(4)
    for i in range(g.order):
        for j in range(0, g.order, 5):
            assert 0 <= g.mul(i, j) < g.order
    t = Psl2ModM(5, *T_QUAD)
    x = t
    for _ in range(4):
        x = x @ t
    assert x.quad == (1, 0, 0, 1)


def test_modulus_limit():
    with pytest.raises(ModulusLimitExceeded):
        farey_level(99999)
    with pytest.raises(ModulusLimitExceeded):
        psl2_enumerate(1)


@pytest.mark.parametrize("m", range(2, 14))
def test_level_counts(m):
    n = psl2_order(m) if m <= 6 else psl2_enumerate(m).order
    c = farey_level(m)
    assert (c.n_vertices, c.n_edges, c.n_triangles) == (n // m, n // 2, n // 3)


@pytest.mark.parametrize("m", [2, 3, 5, 6, 7])
def test_coset_geometry_incidence(m):
    geo = CosetGeometry.build(m)
    n = geo.group.order
    assert (len(geo.vertex_cosets), len(geo.edge_cosets), len(geo.triangle_cosets)) == (n // m, n // 2, n // 3)
    assert all(len(vs) == 2 for vs in geo.incidence(geo.edge_cosets))
    assert all(len(vs) == 3 for vs in geo.incidence(geo.triangle_cosets))


@pytest.mark.parametrize("m,counts", [(2, (3, 3, 2)), (3, (4, 6, 4)), (5, (12, 30, 20))])
def test_named_levels(m, counts):
    c = farey_level(m)
    assert (c.n_vertices, c.n_edges, c.n_triangles) == counts


@pytest.mark.parametrize("m", range(2, 14))
def test_levels_are_closed_surfaces(m):
    c = farey_level(m)
    assert is_closed_surface(c)
    chi = c.euler_characteristic()
    assert chi % 2 == 0
    assert genus_from_faces(c) == genus_by_euler(c.n_vertices, c.n_edges, c.n_triangles)


def test_genus_spot_values():
    assert genus_from_faces(farey_level(5)) == 0
    assert farey_level(7).euler_characteristic() == -4
    assert genus_from_faces(farey_level(7)) == 3


def test_cusp_labels():
    assert cusp_class(3, 5, 4) == cusp_class(-3, -5, 4)
    assert farey_level(4).vertices[farey_level(4).index["(1:0) mod 4"]] == "(1:0) mod 4"
    assert len(set(cusps_of(farey_level(6)))) == farey_level(6).n_vertices


@pytest.mark.parametrize("m,n", [(2, 3), (3, 4), (5, 12)])
def test_gstar_levels_are_complete(m, n):
    assert graph_isomorphic(gstar_level(m), complete_graph(n)) is not None


def test_project_4_to_2():
    vmap = project_level(4, 2)
    assert len(vmap) == 6 and set(vmap) == {0, 1, 2}


def test_project_identity():
    assert project_level(5, 5) == tuple(range(12))


def test_projection_composition():
    for a, b, c in ((12, 6, 3), (12, 4, 2), (8, 4, 2), (6, 3, 3)):
        ab, bc, ac = project_level(a, b), project_level(b, c), project_level(a, c)
        assert all(ac[v] == bc[ab[v]] for v in range(len(ab)))


def test_projections_from_6_are_simplicial():
    for small in (2, 3):
        vmap = project_level(6, small)
        big, low = farey_level(6), farey_level(small)
        assert all(tuple(sorted((vmap[u], vmap[v]))) in set(low.edges) for u, v in big.edges)


def test_projection_needs_divisibility():
    with pytest.raises(DivisibilityError):
        project_level(5, 2)


@pytest.mark.parametrize("m,depth", [(2, 8), (3, 10)])
def test_ball_oracle(m, depth):
    rep = verify_against_ball(m, depth)
    assert rep["match"] and rep["stabilized"]


def test_shallow_ball_reports_honestly():
    rep = verify_against_ball(5, 2)
    assert rep["match"] is False
    assert rep["stabilized"] is False
    assert rep["vertices_hit"] <= 12
