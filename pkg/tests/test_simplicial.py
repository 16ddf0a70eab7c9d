from curvex import SimplicialComplex, complete_graph, direct_curve_complex, simplicial_isomorphic


def square_boundary(labels="abcd"):
    return SimplicialComplex.from_simplices(labels, [(0, 1), (1, 2), (2, 3), (3, 0)])


def test_from_simplices_adds_vertices():
    c = SimplicialComplex.from_simplices("abc", [(0, 1)])
    assert c.f_vector() == [3, 1]
    assert c.dimension == 1
    assert c.is_closed_under_faces()


def test_not_closed_under_faces():
    c = SimplicialComplex("abc", {0: [frozenset((0,))], 2: [frozenset((0, 1, 2))]})
    assert not c.is_closed_under_faces()


def test_isomorphic_relabelled_squares():
    a = square_boundary()
    b = SimplicialComplex.from_simplices("wxyz", [(0, 2), (2, 1), (1, 3), (3, 0)])
    assert simplicial_isomorphic(a, b) is not None


def test_filled_triangle_vs_hollow():
    full = SimplicialComplex.from_simplices("abc", [(0, 1), (1, 2), (0, 2), (0, 1, 2)])
    hollow = SimplicialComplex.from_simplices("abc", [(0, 1), (1, 2), (0, 2)])
    assert simplicial_isomorphic(full, hollow) is None


def test_serialization_and_skeleton():
    dc = direct_curve_complex([complete_graph(2)] * 3)
    doc = dc.to_dict()
    assert doc["f_vector"] == [6, 12, 8]
    sk = dc.skeleton()
    assert (sk.n_vertices, sk.n_edges, sk.n_triangles) == (6, 12, 8)
