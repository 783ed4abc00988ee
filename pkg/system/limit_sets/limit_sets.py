"""Forward and backward limit set approximations and their closed forms."""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Tuple

from config import Config
from core.boundary import BoundaryPoint, PI
from core.circle import Arc, ArcUnion, merge_points_to_arcs
from core.errors import PreconditionFailed
from core.moebius import MapClass, disc_to_boundary, fixed_points, upper_to_disc
from system.explorer.words import Word, enumerate_words
from system.hyperbolicity.rank_one import is_strictly_invariant

logger = logging.getLogger(__name__)


class LimitMethod(str, Enum):
    FIXED_POINTS = 'fixed_points'
    ORBIT_CLOSURE = 'orbit_closure'


@dataclass(frozen=True)
class LimitSetApprox:
    """Points of a limit set approximation, each with the word that
    produced it. Backward witnesses index the inverted generators."""
    points: Tuple[BoundaryPoint, ...]
    witnesses: Tuple[Word, ...]
    depth: int
    method: LimitMethod
    hull: ArcUnion
    gap: float
    side: str = 'forward'

    def __len__(self):
        return len(self.points)


def forward_limit_set(maps, depth=Config.LIMIT_DEPTH, gap=Config.HULL_GAP,
                      node_budget=Config.NODE_BUDGET, side='forward'):
    found = {}

    def collect_fixed(word, product):
        data = fixed_points(product)
        if data.map_class is MapClass.HYPERBOLIC:
            found.setdefault(round(data.attracting.theta, 12), (data.attracting, word))
        return False

    enumerate_words(maps, depth, collect_fixed, node_budget)
    method = LimitMethod.FIXED_POINTS
    if not found:
        method = LimitMethod.ORBIT_CLOSURE

        def collect_orbit(word, product):
            w = upper_to_disc(product.act_on_upper(1j))
            if 1.0 - abs(w) <= Config.ORBIT_BOUNDARY_TOL:
                point = disc_to_boundary(w)
                found.setdefault(round(point.theta, 12), (point, word))
            return False

        enumerate_words(maps, depth, collect_orbit, node_budget)

    points = tuple(p for p, _ in found.values())
    witnesses = tuple(w for _, w in found.values())
    hull = merge_points_to_arcs(list(points), gap) if points else ArcUnion()
    logger.info(f'{side.capitalize()} limit set: {len(points)} points by {method.value}, '
                f'{"full circle" if hull.full else f"{len(hull)} hull arcs"}')
    return LimitSetApprox(points, witnesses, depth, method, hull, gap, side)


def backward_limit_set(maps, depth=Config.LIMIT_DEPTH, gap=Config.HULL_GAP, node_budget=Config.NODE_BUDGET):
    return forward_limit_set(tuple(g.inverse() for g in maps), depth, gap, node_budget, side='backward')


def affine_limit_interval(f, g):
    """[d/(1-c), ∞] for f = az and g = cz + d with 0 < c < 1 < a."""
    violations = []
    if f.kappa != 0:
        violations.append(f'f must fix 0, found translation part {f.kappa}')
    if not f.lam > 1:
        violations.append(f'f multiplier {f.lam} must exceed 1')
    if not 0 < g.lam < 1:
        violations.append(f'g multiplier {g.lam} must lie in (0, 1)')
    elif not g.kappa / (1 - g.lam) > 0:
        violations.append(f'd/(1-c) = {g.kappa / (1 - g.lam)} must be positive')
    if violations:
        raise PreconditionFailed(violations)
    return g.kappa / (1 - g.lam), math.inf


def ls_inter_full_interval(f, g, x, y, tol=Config.FIXED_POINT_TOL):
    """Whether the forward limit set of (f, g) is all of [x, y], given
    f(x) = x, g(y) = y and both maps sending (x, y) strictly into itself."""
    violations = []
    if not x < y:
        violations.append(f'x = {x} must be below y = {y}')
    px, py = BoundaryPoint.from_real(x), BoundaryPoint.from_real(y)
    if px.distance(f.act_on_point(px)) > tol:
        violations.append('f does not fix x')
    if py.distance(g.act_on_point(py)) > tol:
        violations.append('g does not fix y')
    if not violations:
        interval = Arc.from_reals(x, y)
        for name, m in (('f', f), ('g', g)):
            if not is_strictly_invariant(m, interval):
                violations.append(f'{name} does not map ({x}, {y}) strictly into itself')
    if violations:
        raise PreconditionFailed(violations)

    def position(point):
        # distance travelled from x towards increasing reals
        return (px.theta - point.theta) % PI

    return position(g.act_on_point(px)) <= position(f.act_on_point(py)) + 1e-12


def limit_interval_gaps(approx, lower, upper, min_width=0.01):
    """Real sub-intervals of (lower, upper) longer than min_width holding no approximation point."""
    inside = sorted(p.to_real() for p in approx.points if lower - 1e-12 <= p.to_real() <= upper + 1e-12)
    edges = [lower] + inside + [upper]
    return [(a, b) for a, b in zip(edges, edges[1:]) if b - a > min_width]


def revalidate_points(maps, approx, tol=1e-9):
    """Check every fixed-point witness still produces its point."""
    generators = maps if approx.side == 'forward' else tuple(g.inverse() for g in maps)
    if approx.method is not LimitMethod.FIXED_POINTS:
        return True
    for point, word in zip(approx.points, approx.witnesses):
        data = fixed_points(word.evaluate(generators))
        if data.attracting is None or data.attracting.distance(point) > tol:
            logger.warning(f'Point {point!r} no longer re-validates for word {word}')
            return False
    return True
