"""Rank-one intervals and the two-generator discreteness tests."""
import logging
from dataclasses import dataclass
from itertools import permutations

from core.boundary import BoundaryPoint, PI, circular_distance
from core.circle import Arc, arc_image
from core.errors import CommonFixedPoint, DegenerateArc, PreconditionFailed
from core.moebius import MapClass, classify_map, commutator, fixed_points

logger = logging.getLogger(__name__)

INVARIANCE_TOL = 1e-10


def is_strictly_invariant(g, interval, tol=INVARIANCE_TOL):
    """g maps the open arc into itself (closures may touch) but not onto itself."""
    image = arc_image(g, interval)
    offset = (image.start.theta - interval.start.theta) % PI
    if offset > PI - tol:
        offset -= PI
    inside = offset >= -tol and offset + image.length <= interval.length + tol
    onto = abs(offset) <= tol and abs(image.length - interval.length) <= tol
    return inside and not onto


def _dedupe(points):
    kept = []
    for p in points:
        if all(circular_distance(p.theta, q.theta) > 1e-12 for q in kept):
            kept.append(p)
    return kept


def _candidate_endpoints(maps):
    """Fixed points with their images, then midpoints of the gaps between them."""
    base = []
    for g in maps:
        base.extend(fixed_points(g).boundary_points())
    base = _dedupe(base)
    images = [g.act_on_point(p) for g in maps for p in base]
    points = _dedupe(base + images)
    midpoints = []
    for p in points:
        ahead = [(q.theta - p.theta) % PI for q in points if q is not p]
        ahead = [step for step in ahead if step > 0]
        if ahead:
            midpoints.append(BoundaryPoint(p.theta + min(ahead) / 2.0))
    return points, _dedupe(midpoints)


def rank_one_test(maps):
    """An open arc every generator maps strictly into itself, or None."""
    if any(classify_map(g) in (MapClass.ELLIPTIC, MapClass.IDENTITY) for g in maps):
        return None
    points, midpoints = _candidate_endpoints(maps)
    # endpoints from the maps themselves are tried before any midpoint
    for pool in (points, points + midpoints):
        for p, q in permutations(pool, 2):
            try:
                interval = Arc(p, q)
            except DegenerateArc:
                continue
            if all(is_strictly_invariant(g, interval) for g in maps):
                logger.info(f'Rank-one interval {interval.to_json()}')
                return interval
    return None


def mapped_into(maps, interval):
    """True when some generator maps the arc strictly into itself,
    making the arc a candidate member of the interval family."""
    return any(is_strictly_invariant(g, interval) for g in maps)


@dataclass(frozen=True)
class JorgensenResult:
    value: float
    satisfied: bool


def jorgensen_check(f, g):
    """|tr(f)^2 - 4| + |tr[f, g] - 2| >= 1."""
    value = abs(f.trace ** 2 - 4.0) + abs(abs(commutator(f, g).trace) - 2.0)
    return JorgensenResult(value, value >= 1.0)


def antiparallel_check(f, g, tol=INVARIANCE_TOL):
    """True when (f, g) has no rank-one interval."""
    boundary = []
    for name, m in (('f', f), ('g', g)):
        fp = fixed_points(m)
        if fp.map_class not in (MapClass.HYPERBOLIC, MapClass.PARABOLIC):
            raise PreconditionFailed(f'{name} is {fp.map_class.value}')
        boundary.append(fp.boundary_points())
    for p in boundary[0]:
        for q in boundary[1]:
            if p.distance(q) <= tol:
                raise CommonFixedPoint(f'f and g share the fixed point {p!r}')
    return rank_one_test((f, g)) is None
