"""Arcs and finite arc unions on the boundary circle."""
import logging
import math
from dataclasses import dataclass
from typing import Tuple

from config import Config
from core.boundary import BoundaryPoint, PI, normalize_angle
from core.errors import DegenerateArc, EmptyInput
from core.moebius import fixed_points

logger = logging.getLogger(__name__)

# Width left uncovered by a numerically near-full arc image.
_NEAR_FULL_GAP = 1e-12


@dataclass(frozen=True)
class Arc:
    """Open arc swept from ``start`` to ``end`` in increasing angle.

    A point-like arc has start == end and stands for a single point
    (the image of an arc under a strongly contracting map).
    """
    start: BoundaryPoint
    end: BoundaryPoint
    point_like: bool = False

    def __post_init__(self):
        if self.point_like:
            object.__setattr__(self, 'end', self.start)
        elif self.length < Config.DEGENERATE_ARC_LENGTH:
            raise DegenerateArc(f'arc from {self.start!r} to {self.end!r} has length {self.length!r}')

    @classmethod
    def from_angles(cls, start, end):
        return cls(BoundaryPoint(start), BoundaryPoint(end))

    @classmethod
    def between(cls, start, end):
        """Arc between two angles, collapsing to a point if they coincide."""
        if (normalize_angle(end) - normalize_angle(start)) % PI < Config.DEGENERATE_ARC_LENGTH:
            return cls.point(start)
        return cls.from_angles(start, end)

    @classmethod
    def from_reals(cls, x, y):
        """Points traversed going from x towards increasing reals until y."""
        return cls(BoundaryPoint.from_real(y), BoundaryPoint.from_real(x))

    @classmethod
    def around(cls, theta, radius):
        return cls.from_angles(theta - radius, theta + radius)

    @classmethod
    def point(cls, theta):
        return cls(BoundaryPoint(theta), BoundaryPoint(theta), point_like=True)

    @property
    def length(self):
        if self.point_like:
            return 0.0
        return (self.end.theta - self.start.theta) % PI

    @property
    def midpoint(self):
        return normalize_angle(self.start.theta + self.length / 2.0)

    def offset(self, theta):
        return (theta - self.start.theta) % PI

    def contains(self, theta, closed=False, tol=0.0):
        offset = self.offset(theta)
        if closed:
            if offset > PI - tol:
                return True
            return offset <= self.length + tol
        return tol < offset < self.length - tol

    def fattened(self, delta):
        if delta <= 0:
            return self
        return Arc.from_angles(self.start.theta - delta, self.start.theta + self.length + delta)

    def real_endpoints(self):
        """(x, y) such that Arc.from_reals(x, y) is this arc."""
        return self.end.to_real(), self.start.to_real()

    def to_json(self):
        return [_real_json(x) for x in self.real_endpoints()]


def _real_json(x):
    if math.isinf(x):
        return 'inf'
    return x


@dataclass(frozen=True)
class ArcUnion:
    """Finitely many arcs with pairwise disjoint closures, sorted by start."""
    arcs: Tuple[Arc, ...] = ()
    full: bool = False

    @classmethod
    def circle(cls):
        return cls((), full=True)

    @classmethod
    def merged(cls, arcs, tol=0.0):
        """Canonical union: overlapping or touching arcs are joined."""
        spans = sorted((a.start.theta, a.start.theta + a.length) for a in arcs)
        if not spans:
            return cls()
        joined = []
        for start, end in spans:
            if joined and start <= joined[-1][1] + tol:
                joined[-1][1] = max(joined[-1][1], end)
            else:
                joined.append([start, end])
        # the last span may wrap past pi onto the first ones
        while len(joined) > 1 and joined[-1][1] - PI >= joined[0][0] - tol:
            first = joined.pop(0)
            joined[-1][1] = max(joined[-1][1], first[1] + PI)
        if len(joined) == 1 and joined[0][1] - joined[0][0] >= PI - tol:
            return cls.circle()
        if any(end - start >= PI for start, end in joined):
            return cls.circle()
        result = [Arc.between(start, end) for start, end in joined]
        return cls(tuple(sorted(result, key=lambda a: a.start.theta)))

    def __len__(self):
        return len(self.arcs)

    def __iter__(self):
        return iter(self.arcs)

    @property
    def is_empty(self):
        return not self.full and not self.arcs

    @property
    def total_length(self):
        if self.full:
            return PI
        return sum(a.length for a in self.arcs)

    def contains(self, theta, closed=True, tol=0.0):
        if self.full:
            return True
        return any(a.contains(theta, closed=closed, tol=tol) for a in self.arcs)

    def fattened(self, delta):
        if self.full or delta <= 0:
            return self
        return ArcUnion.merged([a.fattened(delta) for a in self.arcs])

    def gaps(self):
        """Open complementary arcs between consecutive components."""
        if self.full or not self.arcs:
            return []
        result = []
        count = len(self.arcs)
        for i, arc in enumerate(self.arcs):
            following = self.arcs[(i + 1) % count]
            start = arc.start.theta + arc.length
            end = following.start.theta
            if count == 1:
                end = arc.start.theta
            result.append(Arc.between(start, end))
        return [g for g in result if not g.point_like]

    def image(self, m):
        if self.full:
            return self
        return ArcUnion.merged([arc_image(m, a) for a in self.arcs])

    def to_json(self):
        if self.full:
            return 'full'
        return [a.to_json() for a in self.arcs]


def arc_image(m, arc):
    """Image of an arc under an orientation-preserving map."""
    if not arc.point_like and arc.length < Config.DEGENERATE_ARC_LENGTH:
        raise DegenerateArc(f'arc of length {arc.length!r}')
    start = m.act_on_angle(arc.start.theta)
    if arc.point_like:
        return Arc.point(start)
    end = m.act_on_angle(arc.end.theta)
    image = Arc.between(start, end)
    middle = m.act_on_angle(arc.midpoint)
    if image.point_like or not image.contains(middle, closed=True):
        # endpoints collided numerically: the image is tiny unless the arc
        # holds the repelling point, in which case it is nearly everything
        repelling = fixed_points(m).repelling
        if repelling is not None and arc.contains(repelling.theta):
            logger.debug(f'Image of an arc around the repelling point {repelling!r} is nearly the circle')
            return Arc.from_angles(start, start + PI - _NEAR_FULL_GAP)
        if image.point_like:
            return image
        logger.debug(f'Collapsing numerically reversed image near {middle!r}')
        return Arc.point(middle)
    return image


def containment_slack(inner, outer):
    """Least distance from inner's arcs to the boundary of the outer arc
    containing each of them; negative when some arc is not contained."""
    if outer.full:
        return PI if not inner.full else 0.0
    if inner.full:
        return -PI
    slack = PI
    for arc in inner.arcs:
        best = -PI
        for candidate in outer.arcs:
            if candidate.point_like:
                continue
            offset = candidate.offset(arc.start.theta)
            if offset > (PI + candidate.length) / 2.0:
                offset -= PI
            room = min(offset, candidate.length - offset - arc.length)
            best = max(best, room)
        slack = min(slack, best)
    return slack


def strictly_inside(inner, outer, margin=0.0):
    """True when the closure of inner, fattened by margin, lies in outer."""
    if outer.full:
        return True
    if inner.full:
        return False
    if not inner.arcs:
        return True
    return containment_slack(inner, outer) > margin


def merge_points_to_arcs(points, gap):
    """Group circle points into closed hull arcs split at gaps wider than ``gap``."""
    if not points:
        raise EmptyInput('no points to merge')
    thetas = sorted(p.theta for p in points)
    count = len(thetas)
    if count == 1:
        return ArcUnion((Arc.point(thetas[0]),))
    steps = [thetas[i + 1] - thetas[i] for i in range(count - 1)]
    steps.append(thetas[0] + PI - thetas[-1])
    splits = [i for i, step in enumerate(steps) if step > gap]
    if not splits:
        return ArcUnion.circle()
    arcs = []
    for k, split in enumerate(splits):
        first = (split + 1) % count
        last = splits[(k + 1) % len(splits)]
        arcs.append(Arc.between(thetas[first], thetas[last]))
    return ArcUnion(tuple(sorted(arcs, key=lambda a: a.start.theta)))


def overlap_length(first, second):
    """Measure of the intersection of two closed arcs."""
    if first.point_like or second.point_like:
        return 0.0
    total = 0.0
    for a, b in ((first, second), (second, first)):
        offset = a.offset(b.start.theta)
        if offset < a.length:
            total += min(a.length - offset, b.length)
    return min(total, first.length, second.length)
