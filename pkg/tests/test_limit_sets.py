import math
from fractions import Fraction

import numpy as np
import pytest

from core.boundary import BoundaryPoint, PI
from core.errors import PreconditionFailed
from core.exact_affine import ExactAffine
from core.moebius import MoebiusMap, compose
from system.explorer.affine import f0_tuple
from system.limit_sets.cores import compute_cores, core_invariants
from system.limit_sets.elementary import ElementaryKind, elementary_check
from system.limit_sets.limit_sets import (LimitMethod, affine_limit_interval, backward_limit_set,
                                          forward_limit_set, limit_interval_gaps, ls_inter_full_interval,
                                          revalidate_points)
from system.limit_sets.nonsd import nonsd_inference


@pytest.fixture
def hump():
    """2z and z/2 + 1."""
    return (MoebiusMap.affine(2, 0), MoebiusMap.affine(Fraction(1, 2), 1))


@pytest.fixture
def uh_pair():
    """4z and (5z + 4)/(4z + 5)."""
    return (MoebiusMap.affine(4, 0), MoebiusMap.from_coefficients(5, 4, 4, 5))


@pytest.fixture
def halving():
    """z/2."""
    return MoebiusMap.affine(Fraction(1, 2), 0)


def test_hump_forward_limit_set_is_one_interval(hump):
    """The forward limit set of 2z, z/2 + 1 is [2, ∞]."""
    approx = forward_limit_set(hump, depth=12, gap=0.02)
    assert approx.method is LimitMethod.FIXED_POINTS
    assert not approx.hull.full
    assert len(approx.hull) == 1
    arc = approx.hull.arcs[0]
    assert arc.start.distance(BoundaryPoint(0.0)) <= 0.05
    assert arc.end.distance(BoundaryPoint.from_real(2.0)) <= 0.05
    assert all(p.is_infinity or p.to_real() >= 2.0 - 1e-9 for p in approx.points)
    assert revalidate_points(hump, approx)


def test_hump_backward_limit_set(hump):
    """Backward points come from the inverses and lie in [-∞, 0]."""
    approx = backward_limit_set(hump, depth=8, gap=0.02)
    assert approx.side == 'backward'
    assert any(abs(p.to_real()) < 1e-9 for p in approx.points)
    assert all(p.is_infinity or p.to_real() <= 1e-9 for p in approx.points)
    assert revalidate_points(hump, approx)


def test_orbit_closure_without_hyperbolic_words():
    """A parabolic tuple falls back to the orbit of i."""
    approx = forward_limit_set((MoebiusMap.affine(1, 1),), depth=6, gap=0.02)
    assert approx.method is LimitMethod.ORBIT_CLOSURE


def test_affine_limit_interval(hump):
    """[d/(1 - c), ∞] with d = 1, c = 1/2."""
    f, g = (ExactAffine.from_map(m) for m in hump)
    lower, upper = affine_limit_interval(f, g)
    assert lower == 2
    assert math.isinf(upper)


def test_affine_limit_interval_preconditions():
    """Every violated hypothesis is listed."""
    with pytest.raises(PreconditionFailed) as info:
        affine_limit_interval(ExactAffine(Fraction(1, 2), 1), ExactAffine(2, 1))
    assert len(info.value.violations) == 3


def test_ls_inter_dyadic_is_full(halving):
    """z/2 and (z + 1)/2 fill [0, 1]."""
    g = MoebiusMap.affine(Fraction(1, 2), Fraction(1, 2))
    assert ls_inter_full_interval(halving, g, 0.0, 1.0)
    approx = forward_limit_set((halving, g), depth=12, gap=0.01)
    assert limit_interval_gaps(approx, 0.0, 1.0, min_width=0.01) == []


def test_ls_inter_ternary_has_gap(halving):
    """z/2 and (z + 2)/3 leave the gap (1/2, 2/3)."""
    g = MoebiusMap.affine(Fraction(1, 3), Fraction(2, 3))
    assert not ls_inter_full_interval(halving, g, 0.0, 1.0)
    approx = forward_limit_set((halving, g), depth=12, gap=0.01)
    gaps = limit_interval_gaps(approx, 0.0, 1.0, min_width=0.01)
    low, high = max(gaps, key=lambda ab: ab[1] - ab[0])
    assert low <= 0.55 and high >= 0.62
    assert low >= 0.5 - 1e-9 and high <= 2 / 3 + 1e-9


def test_ls_inter_preconditions(halving):
    """The hypotheses on x, y and the maps are checked."""
    g = MoebiusMap.affine(Fraction(1, 2), Fraction(1, 2))
    with pytest.raises(PreconditionFailed):
        ls_inter_full_interval(halving, g, 1.0, 0.0)
    with pytest.raises(PreconditionFailed):
        ls_inter_full_interval(MoebiusMap.affine(Fraction(1, 2), Fraction(1, 4)), g, 0.0, 1.0)


def test_elementary_kinds(uh_pair):
    """Common boundary point, common interior point, invariant pair, none."""
    f0 = elementary_check(f0_tuple())
    assert f0.kind is ElementaryKind.COMMON_BOUNDARY_FIXED
    assert f0.point.is_infinity
    rotations = elementary_check((MoebiusMap.rotation(0.3), MoebiusMap.rotation(0.5)))
    assert rotations.kind is ElementaryKind.COMMON_INTERIOR_FIXED
    assert rotations.interior == pytest.approx(1j)
    swapped = elementary_check((MoebiusMap.affine(2, 0), MoebiusMap.from_coefficients(0, -1, 1, 0)))
    assert swapped.kind is ElementaryKind.INVARIANT_PAIR
    assert not elementary_check(uh_pair).is_elementary


def test_cores_of_uniformly_hyperbolic_pair(uh_pair):
    """Forward and backward cores meet at most in endpoints."""
    forward = forward_limit_set(uh_pair, depth=8, gap=0.02)
    backward = backward_limit_set(uh_pair, depth=8, gap=0.02)
    cores = compute_cores(forward, backward)
    assert not cores.degenerate
    invariants = core_invariants(uh_pair, cores, forward, backward)
    assert invariants['boundary_intersection']
    assert invariants['hull_inside_core']


def test_cores_of_hump_pair(hump):
    """Each core is its hull and the cores meet only at ∞."""
    forward = forward_limit_set(hump, depth=10, gap=0.02)
    backward = backward_limit_set(hump, depth=10, gap=0.02)
    cores = compute_cores(forward, backward)
    assert len(cores.forward) == 1
    assert cores.witness_gaps
    assert all(w.side in ('forward', 'backward') for w in cores.witness_gaps)
    invariants = core_invariants(hump, cores, forward, backward)
    assert all(invariants.values()), invariants


def test_cores_need_matching_gaps(hump):
    """Hulls built with different gaps are rejected."""
    forward = forward_limit_set(hump, depth=6, gap=0.02)
    backward = backward_limit_set(hump, depth=6, gap=0.05)
    with pytest.raises(PreconditionFailed):
        compute_cores(forward, backward)


def test_nonsd_inference_on_f0():
    """The repelling point 1 of 5z - 4 lies inside the forward hull of 2z + 1, z/3."""
    maps = f0_tuple()
    forward = forward_limit_set(maps, depth=7, gap=0.02)
    backward = backward_limit_set(maps, depth=7, gap=0.02)
    conclusion = nonsd_inference(maps, forward, backward, inverse_free_certified=True, sub_depth=10)
    assert conclusion is not None
    assert conclusion.point.to_real() == pytest.approx(1.0)
    assert conclusion.generators == (1, 2)
    assert conclusion.hypotheses['not_a_group']
    assert not conclusion.hypotheses['non_elementary']
    assert any('elementary' in a for a in conclusion.assumptions)


def test_nonsd_inference_records_inverse_assumption():
    """Without an inverse-free certificate the assumption is stated."""
    maps = f0_tuple()
    forward = forward_limit_set(maps, depth=6, gap=0.02)
    backward = backward_limit_set(maps, depth=6, gap=0.02)
    conclusion = nonsd_inference(maps, forward, backward, inverse_free_depth=4, sub_depth=8)
    assert any('length 4' in a for a in conclusion.assumptions)


def test_nonsd_inference_silent_for_disjoint_limit_sets(uh_pair):
    """Disjoint limit sets give no conclusion."""
    forward = forward_limit_set(uh_pair, depth=8, gap=0.02)
    backward = backward_limit_set(uh_pair, depth=8, gap=0.02)
    assert nonsd_inference(uh_pair, forward, backward) is None


def _conjugators(count, seed=23):
    rng = np.random.default_rng(seed)
    result = []
    for _ in range(count):
        phi, s, t = rng.uniform(0, PI), rng.uniform(0.5, 2.0), rng.uniform(-2.0, 2.0)
        result.append(compose(MoebiusMap.rotation(float(phi)), MoebiusMap.affine(float(s), float(t))))
    return result


def _random_hump(rng):
    """a z and c z + d with a > 1 > c > 0 and d > 0."""
    a = Fraction(int(rng.integers(3, 7)), 2)
    c = Fraction(int(rng.integers(3, 8)), 10)
    d = Fraction(int(rng.integers(1, 5)), 2)
    return MoebiusMap.affine(a, 0), MoebiusMap.affine(c, d)


def test_cores_invariants_on_random_rank_one_pairs():
    """Seeded rank-one pairs satisfy every core property."""
    rng = np.random.default_rng(5)
    for _ in range(20):
        maps = _random_hump(rng)
        forward = forward_limit_set(maps, depth=8, gap=0.02)
        backward = backward_limit_set(maps, depth=8, gap=0.02)
        cores = compute_cores(forward, backward)
        assert not cores.degenerate
        invariants = core_invariants(maps, cores, forward, backward)
        assert all(invariants.values()), (maps, invariants)


@pytest.mark.parametrize('conjugator', _conjugators(4))
def test_elementary_check_follows_conjugation(uh_pair, conjugator):
    """Conjugation keeps the kind and moves the common fixed data along."""
    def moved(maps):
        return elementary_check(tuple(g.conjugate(conjugator) for g in maps))

    boundary = moved(f0_tuple())
    assert boundary.kind is ElementaryKind.COMMON_BOUNDARY_FIXED
    assert boundary.point.distance(conjugator.act_on_point(BoundaryPoint(0.0))) < 1e-9
    interior = moved((MoebiusMap.rotation(0.3), MoebiusMap.rotation(0.5)))
    assert interior.kind is ElementaryKind.COMMON_INTERIOR_FIXED
    assert interior.interior == pytest.approx(conjugator.act_on_upper(1j), abs=1e-9)
    swapped = moved((MoebiusMap.affine(2, 0), MoebiusMap.from_coefficients(0, -1, 1, 0)))
    assert swapped.kind is ElementaryKind.INVARIANT_PAIR
    assert moved(uh_pair).kind is ElementaryKind.NON_ELEMENTARY


@pytest.mark.parametrize('pair', ['hump', 'uh_pair'])
def test_forward_limit_set_is_mapped_into_itself(pair, request):
    """Generators move approximation points to points near the approximation."""
    maps = request.getfixturevalue(pair)
    approx = forward_limit_set(maps, depth=10, gap=0.02)
    for g in maps:
        for p in approx.points:
            image = g.act_on_point(p)
            assert min(image.distance(q) for q in approx.points) <= 0.05


def test_affine_limit_interval_matches_hull():
    """Seeded rank-one pairs: the hull runs from d/(1 - c) to ∞ and nothing lies below."""
    rng = np.random.default_rng(8)
    for _ in range(20):
        maps = _random_hump(rng)
        lower, _ = affine_limit_interval(*(ExactAffine.from_map(m) for m in maps))
        approx = forward_limit_set(maps, depth=14, gap=0.05)
        bottom = BoundaryPoint.from_real(float(lower))
        assert all(p.is_infinity or p.to_real() >= float(lower) - 1e-9 for p in approx.points)
        assert min(p.distance(bottom) for p in approx.points) <= 0.05
        assert min(p.distance(BoundaryPoint(0.0)) for p in approx.points) <= 0.05
        assert approx.hull.contains(bottom.theta, tol=0.05)


if __name__ == '__main__':
    pytest.main([__file__])
