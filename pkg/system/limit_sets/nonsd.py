"""Infer failure of semidiscreteness from overlapping limit sets."""
import logging
import math
from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Tuple

from config import Config
from core.boundary import BoundaryPoint
from core.errors import BudgetExceeded
from system.explorer.words import Word
from system.limit_sets.elementary import elementary_check
from system.limit_sets.limit_sets import forward_limit_set

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NotSemidiscreteConclusion:
    """A backward limit point inside the forward hull of a sub-tuple.

    ``generators`` are the 1-based indices of the sub-tuple whose forward
    limit set was used; ``bracket`` are the forward witness words on
    either side of the point.
    """
    point: BoundaryPoint
    backward_word: Word
    bracket: Tuple[Word, Word]
    generators: Tuple[int, ...]
    hypotheses: Dict[str, bool] = field(default_factory=dict)
    assumptions: List[str] = field(default_factory=list)
    provenance: str = ('an interior forward limit point that is also a backward limit point '
                       'forces either a non-discrete group or a non-semidiscrete semigroup')


SUB_TUPLE_WORD_CAP = 20000


def _sub_depth(size, depth, node_budget):
    # keep size ** depth within the word cap
    cap = min(node_budget, SUB_TUPLE_WORD_CAP)
    return max(1, min(depth, int(math.log(cap) / math.log(size)))) if size > 1 else depth


def _bracket(approx, theta, arc):
    before, after = None, None
    best_before, best_after = math.inf, math.inf
    for p, word in zip(approx.points, approx.witnesses):
        if arc is not None and not arc.contains(p.theta, closed=True):
            continue
        ahead = (p.theta - theta) % math.pi
        behind = (theta - p.theta) % math.pi
        if 0 < ahead < best_after:
            best_after, after = ahead, word
        if 0 < behind < best_before:
            best_before, before = behind, word
    return before, after


def _first_interior_hit(approx, backward, gap):
    for point, word in zip(backward.points, backward.witnesses):
        if approx.hull.full:
            return point, word, None
        for arc in approx.hull.arcs:
            offset = arc.offset(point.theta)
            if gap <= offset <= arc.length - gap:
                return point, word, arc
    return None


def nonsd_inference(maps, forward, backward, inverse_free_certified=False, inverse_free_depth=None,
                    scan_sub_tuples=True, sub_depth=Config.NONSD_SUB_DEPTH, node_budget=Config.NODE_BUDGET):
    """Conclusion that the tuple is not semidiscrete, or None."""
    status = elementary_check(maps)
    sources = []
    if scan_sub_tuples and len(maps) >= 3:
        for size in range(2, len(maps)):
            for indices in combinations(range(len(maps)), size):
                sub = tuple(maps[i] for i in indices)
                try:
                    approx = forward_limit_set(sub, _sub_depth(size, sub_depth, node_budget),
                                               forward.gap, node_budget)
                except BudgetExceeded as e:
                    logger.warning(f'Skipping sub-tuple {indices}: {e}')
                    continue
                sources.append((tuple(i + 1 for i in indices), approx))
    sources.append((tuple(range(1, len(maps) + 1)), forward))

    for generators, approx in sources:
        if not approx.points:
            continue
        hit = _first_interior_hit(approx, backward, forward.gap)
        if hit is None:
            continue
        point, word, arc = hit
        before, after = _bracket(approx, point.theta, arc)
        hypotheses = {
            'non_elementary': not status.is_elementary,
            'not_a_group': bool(inverse_free_certified),
        }
        assumptions = []
        if status.is_elementary:
            assumptions.append(f'elementary tuple ({status.kind.value}): interior overlap used '
                               'without the non-elementary hypothesis')
        if not inverse_free_certified:
            depth = inverse_free_depth if inverse_free_depth is not None else 'unknown'
            assumptions.append(f'the generated semigroup is assumed not to be a discrete group '
                               f'(no inverse pair up to length {depth})')
        logger.info(f'Backward point {point!r} lies inside the forward hull of generators {generators}')
        return NotSemidiscreteConclusion(point, word, (before, after), generators, hypotheses, assumptions)
    return None
