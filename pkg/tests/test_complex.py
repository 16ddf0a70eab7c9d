import json

import pytest

from curvex import Complex2, complete_graph, orient, point, simple_graph
from curvex.complex import reverse
from curvex.level import farey_level


def test_orient_is_cyclic_class():
    assert orient(2, 0, 1) == orient(0, 1, 2) == orient(1, 2, 0) == (0, 1, 2)
    assert orient(0, 2, 1) == (0, 2, 1)
    assert reverse((0, 1, 2)) == orient(0, 2, 1)


def test_validation_errors():
    with pytest.raises(ValueError):
        Complex2(("a", "a"), (), (), {})
    with pytest.raises(ValueError):
        Complex2(("a", "b"), ((0, 2),), (), {})
    with pytest.raises(ValueError):
        Complex2(("a", "b"), ((1, 1),), (), {})
    with pytest.raises(ValueError):
        # boundary pair (0, 2) missing
        Complex2(("a", "b", "c"), ((0, 1), (1, 2)), ((0, 1, 2),), {})


def test_parallel_edges_kept():
    c = Complex2(("a", "b"), ((0, 1), (1, 0)), (), {})
    assert c.n_edges == 2
    assert c.edge_counter[(0, 1)] == 2
    assert c.degree(0) == 1


def test_basic_queries():
    k4 = complete_graph(4)
    assert k4.is_complete() and k4.is_connected()
    assert k4.euler_characteristic() == 4 - 6
    two = simple_graph("abcd", [(0, 1), (2, 3)])
    assert not two.is_connected()
    assert point().n_vertices == 1


def test_induced_keeps_order_and_triangles():
    c = farey_level(3)
    sub = c.induced([3, 1, 0])
    assert sub.vertices == (c.vertices[0], c.vertices[1], c.vertices[3])
    assert sub.n_edges == 3 and sub.n_triangles == 1


def test_json_roundtrip_and_format():
    c = farey_level(4)
    doc = json.loads(c.to_json())
    assert set(doc) == {"vertices", "edges", "triangles", "metadata"}
    assert doc["vertices"][0] == {"id": 0, "label": c.vertices[0]}
    back = Complex2.from_json(c.to_json())
    assert back == c


def test_dot_is_edges_only():
    dot = farey_level(2).to_dot()
    assert dot.startswith("graph G {")
    assert dot.count(" -- ") == 3
    assert "triangles: 2" in dot


def test_relabel_moves_labels():
    c = simple_graph("abc", [(0, 1)])
    r = c.relabel([2, 0, 1])
    assert r.vertices == ("b", "c", "a")
    assert r.edges == ((0, 2),)


def test_induced_output_passes_validation():
    c = farey_level(7)
    for subset in (range(0, 24, 2), range(5, 20), [0, 23, 11, 7]):
        sub = c.induced(subset)
        again = Complex2(sub.vertices, sub.edges, sub.triangles, sub.metadata)
        assert again == sub
