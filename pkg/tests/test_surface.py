import pytest
from hypothesis import given, strategies as st

from curvex import (EXCEPTIONAL_CLASSES, SurfaceSpec, cut_type, disjoint_union, exceptional_partners,
                    is_hyperbolic, modular_dimension, separating_cuts)
from curvex.errors import InvalidCut, NonHyperbolicType


def test_modular_dimension_examples():
    assert modular_dimension((0, 4)) == 1
    assert modular_dimension((1, 1)) == 1
    assert modular_dimension((0, 3)) == 0
    assert modular_dimension("1,1+1,1") == 2
    assert modular_dimension(SurfaceSpec()) == 0


def test_modular_dimension_rejects_torus():
    with pytest.raises(NonHyperbolicType):
        modular_dimension((1, 0))


def test_hyperbolicity():
    assert is_hyperbolic((1, 1))
    assert not is_hyperbolic((1, 0))
    assert not is_hyperbolic((0, 2))
    assert is_hyperbolic("0,4+2,0")


def test_parse_and_print():
    s = SurfaceSpec.parse("1,1+0,4")
    assert s.components == ((0, 4), (1, 1))
    assert str(s) == "0,4+1,1"
    assert SurfaceSpec.parse("") == SurfaceSpec()
    with pytest.raises(ValueError):
        SurfaceSpec.parse("1,1,1")
    with pytest.raises(ValueError):
        SurfaceSpec.parse("-1,3")


def test_disjoint_union():
    u = disjoint_union((1, 1), (0, 4))
    assert u.multiset == SurfaceSpec.of((1, 1), (0, 4)).multiset
    assert modular_dimension(u) == 2
    assert disjoint_union(SurfaceSpec(), (0, 5)) == SurfaceSpec.of((0, 5))
    assert disjoint_union((0, 4), (0, 4)).multiset[(0, 4)] == 2


def test_cut_examples():
    assert cut_type((2, 1)) == SurfaceSpec.of((1, 3))
    assert cut_type((1, 1)) == SurfaceSpec.of((0, 3))
    assert modular_dimension(cut_type((1, 1))) == 0
    s = cut_type((0, 4), "separating", ((0, 3), (0, 3)))
    assert modular_dimension(s) == 0


def test_cut_errors():
    with pytest.raises(InvalidCut):
        cut_type((0, 4))
    with pytest.raises(InvalidCut):
        cut_type((0, 4), "separating", ((0, 2), (0, 4)))
    with pytest.raises(InvalidCut):
        cut_type((0, 3), "separating", ((0, 3), (0, 2)))
    with pytest.raises(InvalidCut):
        cut_type((1, 1), "sideways")


def test_exceptional_partners():
    assert exceptional_partners((1, 2)) == [(0, 5)]
    assert exceptional_partners((1, 1)) == [(0, 4)]
    assert exceptional_partners((3, 0)) == []
    for cls in EXCEPTIONAL_CLASSES:
        for t in cls:
            for u in exceptional_partners(t):
                assert t in exceptional_partners(u)


hyperbolic = st.tuples(st.integers(0, 4), st.integers(0, 6)).filter(lambda t: 2 * t[0] - 2 + t[1] > 0)


@given(hyperbolic)
def test_cuts_drop_dimension_by_one(t):
    want = modular_dimension(t) - 1
    if t[0] >= 1:
        assert modular_dimension(cut_type(t)) == want
    for pieces in separating_cuts(t):
        assert modular_dimension(cut_type(t, "separating", pieces)) == want


@given(st.lists(hyperbolic, max_size=3), st.lists(hyperbolic, max_size=3), st.lists(hyperbolic, max_size=3))
def test_union_is_a_commutative_monoid(a, b, c):
    a, b, c = SurfaceSpec(tuple(a)), SurfaceSpec(tuple(b)), SurfaceSpec(tuple(c))
    assert disjoint_union(a, b) == disjoint_union(b, a)
    assert disjoint_union(disjoint_union(a, b), c) == disjoint_union(a, disjoint_union(b, c))
    assert modular_dimension(disjoint_union(a, b)) == modular_dimension(a) + modular_dimension(b)
