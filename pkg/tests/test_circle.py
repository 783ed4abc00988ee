import math

import numpy as np
import pytest

from core.boundary import BoundaryPoint, PI
from core.circle import (Arc, ArcUnion, arc_image, containment_slack, merge_points_to_arcs, overlap_length,
                         strictly_inside)
from core.errors import DegenerateArc, EmptyInput
from core.moebius import MoebiusMap, compose


@pytest.fixture
def positive_reals():
    """The arc (0, ∞)."""
    return Arc.from_reals(0.0, math.inf)


def test_from_reals_orientation(positive_reals):
    """from_reals(x, y) covers the reals going up from x to y."""
    assert positive_reals.contains(BoundaryPoint.from_real(3.0).theta)
    assert not positive_reals.contains(BoundaryPoint.from_real(-3.0).theta)
    assert positive_reals.length == pytest.approx(PI / 2)
    through_infinity = Arc.from_reals(1.0, -1.0)
    assert through_infinity.contains(0.0)
    assert not through_infinity.contains(BoundaryPoint.from_real(0.0).theta)


def test_real_endpoints(positive_reals):
    """Endpoints come back as (x, y)."""
    x, y = positive_reals.real_endpoints()
    assert x == pytest.approx(0.0, abs=1e-12)
    assert math.isinf(y)
    assert positive_reals.to_json()[1] == 'inf'


def test_degenerate_arc_rejected():
    """Arcs shorter than the degenerate length raise unless point-like."""
    with pytest.raises(DegenerateArc):
        Arc.from_angles(0.3, 0.3 + 1e-16)
    assert Arc.between(0.3, 0.3).point_like


def test_closed_and_open_containment():
    """Endpoints belong only to the closed arc."""
    arc = Arc.from_angles(0.2, 0.8)
    assert arc.contains(0.5)
    assert not arc.contains(0.2)
    assert arc.contains(0.2, closed=True)
    assert arc.contains(0.8, closed=True)
    assert not arc.contains(1.0, closed=True)


def test_merged_joins_overlaps():
    """Overlapping arcs merge, separated ones stay apart."""
    union = ArcUnion.merged([Arc.from_angles(0.1, 0.4), Arc.from_angles(0.3, 0.6), Arc.from_angles(1.0, 1.2)])
    assert len(union) == 2
    assert union.arcs[0].length == pytest.approx(0.5)
    assert union.total_length == pytest.approx(0.7)


def test_merged_wraps_past_infinity():
    """Arcs on both sides of angle 0 join into one."""
    union = ArcUnion.merged([Arc.from_angles(PI - 0.2, PI + 0.1), Arc.from_angles(0.05, 0.3)])
    assert len(union) == 1
    assert union.arcs[0].length == pytest.approx(0.5)
    assert union.contains(0.0)


def test_merged_full_circle():
    """Arcs covering everything become the full circle."""
    union = ArcUnion.merged([Arc.from_angles(0.0, 2.0), Arc.from_angles(1.9, PI + 0.1)])
    assert union.full
    assert union.to_json() == 'full'
    assert union.total_length == PI


def test_gaps():
    """Gaps are the complementary open arcs."""
    union = ArcUnion.merged([Arc.from_angles(0.1, 0.4), Arc.from_angles(1.0, 1.2)])
    gaps = union.gaps()
    assert len(gaps) == 2
    assert sum(g.length for g in gaps) + union.total_length == pytest.approx(PI)


def test_arc_image_under_dilation(positive_reals):
    """2z maps [1, ∞] onto [2, ∞]."""
    arc = Arc.from_reals(1.0, math.inf)
    image = arc_image(MoebiusMap.affine(2, 0), arc)
    x, y = image.real_endpoints()
    assert x == pytest.approx(2.0)
    assert math.isinf(y)
    assert arc_image(MoebiusMap.affine(2, 0), positive_reals).length == pytest.approx(PI / 2)


def test_strict_containment_with_margin():
    """Inner arcs must keep a positive distance from the outer boundary."""
    outer = ArcUnion((Arc.from_angles(0.1, 1.0),))
    inner = ArcUnion((Arc.from_angles(0.3, 0.5),))
    touching = ArcUnion((Arc.from_angles(0.1, 0.5),))
    assert strictly_inside(inner, outer)
    assert containment_slack(inner, outer) == pytest.approx(0.2)
    assert strictly_inside(inner, outer, margin=0.19)
    assert not strictly_inside(inner, outer, margin=0.21)
    assert not strictly_inside(touching, outer)
    assert strictly_inside(inner, ArcUnion.circle())
    assert not strictly_inside(ArcUnion.circle(), outer)


def test_containment_across_infinity():
    """Containment works for arcs through angle 0."""
    outer = ArcUnion((Arc.from_angles(PI - 0.5, PI + 0.5),))
    inner = ArcUnion((Arc.from_angles(PI - 0.1, PI + 0.1),))
    assert strictly_inside(inner, outer)
    assert not strictly_inside(outer, inner)


def test_merge_points_to_arcs():
    """Clusters of points become hull arcs split at wide gaps."""
    points = [BoundaryPoint(t) for t in (0.10, 0.11, 0.12, 1.00, 1.01)]
    hull = merge_points_to_arcs(points, gap=0.05)
    assert len(hull) == 2
    assert hull.arcs[0].start.theta == pytest.approx(0.10)
    assert hull.arcs[0].length == pytest.approx(0.02)
    assert merge_points_to_arcs([BoundaryPoint(0.5)], 0.05).arcs[0].point_like
    dense = [BoundaryPoint(k * PI / 100) for k in range(100)]
    assert merge_points_to_arcs(dense, 0.05).full
    with pytest.raises(EmptyInput):
        merge_points_to_arcs([], 0.05)


def test_overlap_length():
    """Overlap of closed arcs, including disjoint and nested cases."""
    a = Arc.from_angles(0.0 + 0.1, 0.5)
    b = Arc.from_angles(0.3, 0.9)
    assert overlap_length(a, b) == pytest.approx(0.2)
    assert overlap_length(a, Arc.from_angles(1.0, 1.5)) == 0.0
    assert overlap_length(b, Arc.from_angles(0.4, 0.6)) == pytest.approx(0.2)


def _random_map(rng):
    phi, s, t = rng.uniform(0, PI), rng.uniform(0.3, 3.0), rng.uniform(-3.0, 3.0)
    return compose(MoebiusMap.rotation(float(phi)), MoebiusMap.affine(float(s), float(t)))


def _random_arc(rng):
    start = float(rng.uniform(0, PI))
    return Arc.from_angles(start, start + float(rng.uniform(0.1, 2.5)))


def test_arc_image_respects_composition():
    """Mapping by f ∘ g is mapping by g, then by f."""
    rng = np.random.default_rng(99)
    for _ in range(100):
        f, g, arc = _random_map(rng), _random_map(rng), _random_arc(rng)
        direct = arc_image(compose(f, g), arc)
        stepwise = arc_image(f, arc_image(g, arc))
        assert direct.start.distance(stepwise.start) < 1e-9
        assert direct.length == pytest.approx(stepwise.length, abs=1e-9)


def test_arc_image_keeps_disjoint_pieces_disjoint():
    """The two halves of an arc map to arcs that only share an endpoint."""
    rng = np.random.default_rng(100)
    for _ in range(100):
        m, arc = _random_map(rng), _random_arc(rng)
        middle = arc.start.theta + arc.length / 2.0
        first = arc_image(m, Arc.from_angles(arc.start.theta, middle))
        second = arc_image(m, Arc.from_angles(middle, arc.start.theta + arc.length))
        assert overlap_length(first, second) < 1e-9
        assert first.length + second.length == pytest.approx(arc_image(m, arc).length, abs=1e-9)


def test_near_full_image_is_not_collapsed():
    """An arc around the repelling point of a huge dilation covers almost everything."""
    m = MoebiusMap.affine(1e32, 0)
    image = arc_image(m, Arc.from_reals(-1.0, 1.0))
    assert not image.point_like
    assert image.length > PI - 1e-9
    assert not image.contains(0.0)
    assert arc_image(m, Arc.from_reals(1.0, 2.0)).point_like


if __name__ == '__main__':
    pytest.main([__file__])
