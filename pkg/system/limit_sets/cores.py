"""Forward and backward cores built from limit set hulls."""
import logging
from dataclasses import dataclass
from typing import Dict, Tuple

from core.boundary import BoundaryPoint
from core.circle import Arc, ArcUnion, overlap_length, strictly_inside
from core.errors import PreconditionFailed

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class GapWitness:
    side: str
    gap: Arc
    point: BoundaryPoint


@dataclass(frozen=True)
class CoreSet:
    forward: ArcUnion
    backward: ArcUnion
    witness_gaps: Tuple[GapWitness, ...]
    degenerate: bool = False


def _core(hull, opposite, side):
    if hull.full:
        return ArcUnion.circle(), [], True
    if not hull.arcs:
        return ArcUnion(), [], False
    pieces = list(hull.arcs)
    removed = []
    for gap in hull.gaps():
        hit = next((p for p in opposite.points if gap.contains(p.theta)), None)
        if hit is None:
            pieces.append(gap)
        else:
            removed.append(GapWitness(side, gap, hit))
    return ArcUnion.merged(pieces, tol=1e-15), removed, False


def compute_cores(forward, backward):
    """Each hull with the complementary gaps that miss the opposite limit set filled in."""
    if forward.gap != backward.gap:
        raise PreconditionFailed(f'gap parameters differ: {forward.gap} and {backward.gap}')
    forward_core, forward_removed, forward_full = _core(forward.hull, backward, 'forward')
    backward_core, backward_removed, backward_full = _core(backward.hull, forward, 'backward')
    degenerate = forward_full or backward_full
    if degenerate:
        logger.warning('A limit set hull covers the whole circle; cores are degenerate')
    return CoreSet(forward_core, backward_core, tuple(forward_removed + backward_removed), degenerate)


def core_invariants(maps, cores, forward, backward, tol=None):
    """Evaluate the structural properties cores satisfy for finite-rank tuples.

    Returns a dict from property name to bool; tolerances default to the
    hull gap.
    """
    tol = forward.gap if tol is None else tol
    fc, bc = cores.forward, cores.backward
    result: Dict[str, bool] = {}

    result['boundary_intersection'] = all(
        overlap_length(a, b) <= tol for a in fc.arcs for b in bc.arcs)

    def near_limit_points(core, approx):
        return all(min(BoundaryPoint(t).distance(p) for p in approx.points) <= tol
                   for arc in core.arcs for t in (arc.start.theta, arc.end.theta))

    result['boundary_in_limit_set'] = (near_limit_points(fc, forward) and near_limit_points(bc, backward))
    result['hull_inside_core'] = (all(fc.contains(p.theta, tol=tol) for p in forward.points) and
                                  all(bc.contains(p.theta, tol=tol) for p in backward.points))
    result['finite_alternating'] = (0 < len(fc) <= 64 and len(fc) == len(bc))
    forward_ok = all(strictly_inside(fc.image(g), fc.fattened(tol)) for g in maps)
    backward_ok = all(strictly_inside(bc.image(g.inverse()), bc.fattened(tol)) for g in maps)
    result['invariant_under_generators'] = forward_ok and backward_ok
    return result
