"""Detect tuples with a finite orbit in the closed upper half-plane."""
import logging
from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Optional, Tuple

from config import Config
from core.boundary import BoundaryPoint, circular_distance
from core.moebius import MapClass, classify_map, fixed_points

logger = logging.getLogger(__name__)


class ElementaryKind(str, Enum):
    COMMON_BOUNDARY_FIXED = 'common_boundary_fixed'
    COMMON_INTERIOR_FIXED = 'common_interior_fixed'
    INVARIANT_PAIR = 'invariant_pair'
    NON_ELEMENTARY = 'non_elementary'


@dataclass(frozen=True)
class ElementaryStatus:
    kind: ElementaryKind
    point: Optional[BoundaryPoint] = None
    interior: Optional[complex] = None
    pair: Optional[Tuple[BoundaryPoint, BoundaryPoint]] = None

    @property
    def is_elementary(self):
        return self.kind is not ElementaryKind.NON_ELEMENTARY


def _moves(g, p, q=None, tol=Config.FIXED_POINT_TOL):
    image = g.act_on_angle(p.theta)
    if circular_distance(image, p.theta) <= tol:
        return p
    if q is not None and circular_distance(image, q.theta) <= tol:
        return q
    return None


def elementary_check(maps, tol=Config.FIXED_POINT_TOL):
    moving = [g for g in maps if classify_map(g) is not MapClass.IDENTITY]
    if not moving:
        return ElementaryStatus(ElementaryKind.COMMON_INTERIOR_FIXED, interior=1j)

    candidates = []
    for g in moving:
        for p in fixed_points(g).boundary_points():
            if all(circular_distance(p.theta, q.theta) > tol for q in candidates):
                candidates.append(p)

    for p in candidates:
        if all(_moves(g, p, tol=tol) is p for g in moving):
            return ElementaryStatus(ElementaryKind.COMMON_BOUNDARY_FIXED, point=p)

    interiors = [fixed_points(g).interior for g in moving]
    if all(z is not None for z in interiors) and all(abs(z - interiors[0]) <= tol * max(1.0, abs(z))
                                                      for z in interiors):
        return ElementaryStatus(ElementaryKind.COMMON_INTERIOR_FIXED, interior=interiors[0])

    for p, q in combinations(candidates, 2):
        if all(_moves(g, p, q, tol) is not None and _moves(g, q, p, tol) is not None for g in moving):
            return ElementaryStatus(ElementaryKind.INVARIANT_PAIR, pair=(p, q))

    return ElementaryStatus(ElementaryKind.NON_ELEMENTARY)
