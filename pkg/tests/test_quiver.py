"""Vertex-level invariants: arrows, slopes, ranks, duality, components."""

from fractions import Fraction

import pytest

from p3bundles import (
    Direction,
    arrow_target,
    c1_vertex,
    component_class,
    dual_vertex,
    format_vertex,
    make_vertex,
    on_pi,
    on_sigma,
    rank_vertex,
    slope_vertex,
    weyl_dim,
)
from p3bundles.errors import InvalidInputError


def all_vertices(max_l1=6, ts=(-2, -1, 0, 1, 2)):
    for l1 in range(max_l1 + 1):
        for l2 in range(l1 + 1):
            for t in ts:
                yield make_vertex(l1, l2, t)


def test_make_vertex_validates():
    with pytest.raises(InvalidInputError):
        make_vertex(1, 2, 0)
    with pytest.raises(InvalidInputError):
        make_vertex(1, -1, 0)


def test_arrow_examples():
    assert arrow_target(make_vertex(1, 0, 0), Direction.V1) == make_vertex(0, 0, -1)
    assert arrow_target(make_vertex(1, 1, 5), Direction.V1) is None
    assert arrow_target(make_vertex(0, 0, 0), Direction.V0) == make_vertex(1, 1, -2)


def test_slope_examples():
    assert slope_vertex(make_vertex(0, 0, 7)) == 7
    assert slope_vertex(make_vertex(1, 0, 0)) == Fraction(1, 3)
    assert slope_vertex(make_vertex(2, 1, -1)) == 0


def test_rank_examples():
    assert rank_vertex(make_vertex(0, 0, 3)) == 1
    assert rank_vertex(make_vertex(1, 0, 5)) == 3
    assert rank_vertex(make_vertex(2, 1, 0)) == 8


def test_rank_equals_weyl_dim():
    for v in all_vertices(5, ts=(0,)):
        assert rank_vertex(v) == weyl_dim((v.l1, v.l2), 3)


def test_c1_examples():
    assert c1_vertex(make_vertex(1, 0, 0)) == 1
    assert c1_vertex(make_vertex(0, 0, -4)) == -4
    assert c1_vertex(make_vertex(2, 1, 0)) == 8


def test_c1_always_integral():
    for v in all_vertices(8):
        assert c1_vertex(v) == rank_vertex(v) * slope_vertex(v)


def test_component_examples():
    assert component_class(make_vertex(0, 0, 0)) == 0
    assert component_class(make_vertex(1, 0, 0)) == 1
    assert component_class(make_vertex(1, 1, -1)) == 3


def test_arrows_lower_slope_and_preserve_component():
    for v in all_vertices(5):
        for d in Direction:
            w = arrow_target(v, d)
            if w is None:
                continue
            assert slope_vertex(w) == slope_vertex(v) - Fraction(4, 3)
            assert component_class(w) == component_class(v)


def test_border_planes():
    v = make_vertex(3, 0, 1)
    assert on_pi(v) and not on_sigma(v)
    w = make_vertex(2, 2, 1)
    assert on_sigma(w) and not on_pi(w)
    o = make_vertex(0, 0, 1)
    assert on_pi(o) and on_sigma(o)
    for u in all_vertices(5):
        assert on_pi(u) == (arrow_target(u, Direction.V2) is None)
        assert on_sigma(u) == (arrow_target(u, Direction.V1) is None)
        assert arrow_target(u, Direction.V0) is not None


def test_dual_examples():
    assert dual_vertex(make_vertex(0, 0, 5)) == make_vertex(0, 0, -5)
    assert dual_vertex(make_vertex(1, 0, 0)) == make_vertex(1, 1, -1)


def test_dual_involution_and_invariants():
    for v in all_vertices(6):
        w = dual_vertex(v)
        assert dual_vertex(w) == v
        assert rank_vertex(w) == rank_vertex(v)
        assert slope_vertex(w) == -slope_vertex(v)
        assert c1_vertex(w) == -c1_vertex(v)


def test_dual_exchanges_arrow_directions():
    # an arrow v -> v+V0 dualizes to an arrow (dual of the target) -V1-> dual(v),
    # and V2 arrows dualize to V2 arrows
    for v in all_vertices(4, ts=(0, 1)):
        w0 = arrow_target(v, Direction.V0)
        assert arrow_target(dual_vertex(w0), Direction.V1) == dual_vertex(v)
        w2 = arrow_target(v, Direction.V2)
        if w2 is not None:
            assert arrow_target(dual_vertex(w2), Direction.V2) == dual_vertex(v)
        w1 = arrow_target(v, Direction.V1)
        if w1 is not None:
            assert arrow_target(dual_vertex(w1), Direction.V0) == dual_vertex(v)


def test_format():
    assert format_vertex(make_vertex(2, 1, -3)) == "S^{2,1}Q(-3)"
    assert str(make_vertex(0, 0, 0)) == "S^{0,0}Q(0)"
