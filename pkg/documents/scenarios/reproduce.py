"""Scripted reproduction scenarios checked against manifest.json."""
import json
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path

import pandas as pd

from config import config as presets
from core.boundary import BoundaryPoint
from core.circle import ArcUnion
from core.errors import CommonFixedPoint, UnknownScenario
from core.exact_affine import ExactAffine
from core.moebius import MoebiusMap, identity_distance
from documents.figures.disc_figures import draw_tuple_figure
from system.explorer.affine import extended_f0, f0_tuple, hump_bound, translation_accumulation
from system.explorer.words import Word
from system.hyperbolicity.multicone import FailureReason, find_multicone
from system.hyperbolicity.rank_one import antiparallel_check, jorgensen_check, rank_one_test
from system.limit_sets.cores import compute_cores, core_invariants
from system.limit_sets.limit_sets import (affine_limit_interval, backward_limit_set, forward_limit_set,
                                          limit_interval_gaps, ls_inter_full_interval)
from system.loci.classifier import classify

logger = logging.getLogger(__name__)

MANIFEST = Path(__file__).with_name('manifest.json')

HUMP = (MoebiusMap.affine(2, 0), MoebiusMap.affine(Fraction(1, 2), 1))
UH_PAIR = (MoebiusMap.affine(4, 0), MoebiusMap.from_coefficients(5, 4, 4, 5))
ANTIPARALLEL = (MoebiusMap.from_coefficients(10, 12, 3, 10), MoebiusMap.from_coefficients(5, -3, -3, 5))
CROSSING = (MoebiusMap.affine(2, 0), MoebiusMap.from_coefficients(7, -6, 3, -2))
DIAGONAL = (MoebiusMap.affine(2, 0), MoebiusMap.affine(3, 0))


@dataclass(frozen=True)
class CheckResult:
    scenario: str
    check: str
    expected: object
    observed: object
    passed: bool
    provenance: str


def load_manifest(path=MANIFEST):
    with open(path, 'r') as f:
        return json.load(f)


def _point_label(point):
    x = point.to_real()
    return 'inf' if math.isinf(x) else x


def _compare(check_entry, observed):
    expected = check_entry['expected']
    mode = check_entry.get('mode')
    if observed is None:
        return False
    if mode == 'max':
        return observed <= expected
    if mode == 'contains':
        low, high = observed
        return low <= expected[0] and expected[1] <= high
    if 'tolerance' in check_entry:
        return abs(observed - expected) <= check_entry['tolerance']
    return observed == expected


def _f0(cfg):
    maps = f0_tuple()
    report = classify(maps, cfg)
    evidence = report.semidiscrete.evidence or {}
    approach = evidence.get('witness')
    exhibited = Word((1, 3, 1, 1, 1, 2, 2, 2, 2))
    exhibited_distance = identity_distance(exhibited.evaluate(maps))
    multicone = find_multicone(maps)
    touch = multicone.touch_point if getattr(multicone, 'reason', None) is FailureReason.LIMIT_SETS_TOUCH else None
    observed = {
        'exact_certificate': report.in_E.status == 'certified_no',
        'approach_length_max': len(approach.word) if approach else None,
        'approach_distance_max': approach.distance if approach else None,
        'exhibited_distance': exhibited_distance,
        'approach_revalidates': approach.revalidate(maps) if approach else None,
        'approach_within_exhibited': approach.distance <= exhibited_distance + 1e-12 if approach else None,
        'elementary_point': _point_label(report.elementary.point) if report.elementary.point else None,
        'nonsd_point': report.nonsd.point.to_real() if report.nonsd else None,
        'touch_point': _point_label(touch) if touch else None,
        'in_P': report.in_P.status,
    }
    g12 = forward_limit_set(maps[:2], cfg.NONSD_SUB_DEPTH, cfg.HULL_GAP)
    return observed, maps, {'forward': g12.hull}


def _f0_extended(cfg):
    maps = extended_f0(4)
    report = classify(maps, cfg)
    observed = {
        'size': len(maps),
        'exact_certificate': report.in_E.status == 'certified_no',
        'in_P': report.in_P.status,
    }
    return observed, maps, {'forward': report.forward.hull if report.forward else None}


def _hump(cfg):
    f, g = (ExactAffine.from_map(m) for m in HUMP)
    closed = translation_accumulation(f, g, 3)
    multicone = find_multicone(HUMP)
    touch = multicone.touch_point if getattr(multicone, 'reason', None) is FailureReason.LIMIT_SETS_TOUCH else None
    interval = rank_one_test(HUMP)
    observed = {
        'accumulation_n3': str(closed.kappa),
        'hump_bound': str(hump_bound(f, g)),
        'jorgensen_value': jorgensen_check(*HUMP).value,
        'rank_one_found': interval is not None,
        'touch_point': _point_label(touch) if touch else None,
    }
    return observed, HUMP, {'rank one': ArcUnion((interval,)) if interval else None}


def _limitset(cfg):
    f, g = (ExactAffine.from_map(m) for m in HUMP)
    lower, _ = affine_limit_interval(f, g)
    approx = forward_limit_set(HUMP, depth=14, gap=0.02)
    error = None
    if not approx.hull.full and len(approx.hull) == 1:
        arc = approx.hull.arcs[0]
        low_theta = BoundaryPoint.from_real(float(lower)).theta
        error = max(arc.start.distance(BoundaryPoint(0.0)), arc.end.distance(BoundaryPoint(low_theta)))
    observed = {
        'interval_lower': str(lower),
        'single_arc': not approx.hull.full and len(approx.hull) == 1,
        'endpoint_error_max': error,
    }
    return observed, HUMP, {'forward': approx.hull}


def _ls_inter(cfg):
    f = MoebiusMap.affine(Fraction(1, 2), 0)
    dyadic = MoebiusMap.affine(Fraction(1, 2), Fraction(1, 2))
    ternary = MoebiusMap.affine(Fraction(1, 3), Fraction(2, 3))
    full = forward_limit_set((f, dyadic), depth=12, gap=0.01)
    split = forward_limit_set((f, ternary), depth=12, gap=0.01)
    gaps = limit_interval_gaps(split, 0.0, 1.0, min_width=0.01)
    widest = max(gaps, key=lambda ab: ab[1] - ab[0]) if gaps else None
    observed = {
        'dyadic_full': ls_inter_full_interval(f, dyadic, 0.0, 1.0),
        'dyadic_gaps': len(limit_interval_gaps(full, 0.0, 1.0, min_width=0.01)),
        'ternary_full': ls_inter_full_interval(f, ternary, 0.0, 1.0),
        'ternary_gap': list(widest) if widest else None,
    }
    return observed, (f, ternary), {'forward': split.hull}


def _jorgensen(cfg):
    scaled = MoebiusMap.affine(4, 0)
    observed = {
        'hump_value': jorgensen_check(*HUMP).value,
        'hump_rank_one': rank_one_test(HUMP) is not None,
        'scaled_value': jorgensen_check(scaled, MoebiusMap.affine(1, 1)).value,
    }
    return observed, HUMP, {}


def _antiparallel(cfg):
    try:
        antiparallel_check(*DIAGONAL)
        raised = False
    except CommonFixedPoint:
        raised = True
    observed = {
        'antiparallel_pair': antiparallel_check(*ANTIPARALLEL),
        'rank_one_pair': antiparallel_check(*CROSSING),
        'common_fixed_point_error': raised,
    }
    return observed, ANTIPARALLEL, {}


def _cores(cfg):
    results = {}
    unions = {}
    for name, maps in (('uh', UH_PAIR), ('hump', HUMP)):
        forward = forward_limit_set(maps, cfg.LIMIT_DEPTH + 2, cfg.HULL_GAP)
        backward = backward_limit_set(maps, cfg.LIMIT_DEPTH + 2, cfg.HULL_GAP)
        cores = compute_cores(forward, backward)
        results[name] = (maps, forward, backward, cores)
        if name == 'uh':
            unions = {'forward core': cores.forward, 'backward core': cores.backward}
    uh = core_invariants(*_invariant_args(results['uh']))
    hump = core_invariants(*_invariant_args(results['hump']))
    observed = {
        'uh_disjoint': uh['boundary_intersection'] and not _overlapping(results['uh'][3]),
        'hump_boundary_only': hump['boundary_intersection'],
        'hump_invariants': all(hump.values()),
    }
    return observed, UH_PAIR, unions


def _invariant_args(entry):
    maps, forward, backward, cores = entry
    return maps, cores, forward, backward


def _overlapping(cores):
    return any(cores.backward.contains(a.start.theta) or cores.backward.contains(a.end.theta)
               for a in cores.forward.arcs)


SCENARIOS = {
    'f0': _f0,
    'f0-extended': _f0_extended,
    'hump': _hump,
    'limitset': _limitset,
    'ls-inter': _ls_inter,
    'jorgensen-rank1': _jorgensen,
    'antiparallel': _antiparallel,
    'cores': _cores,
}


def run_scenario(name, output_dir='output', cfg=None, manifest=None):
    """Run one scenario; returns the pass/fail table and the figure path."""
    if name not in SCENARIOS:
        raise UnknownScenario(f'unknown scenario {name!r}; choose from {", ".join(SCENARIOS)}')
    cfg = cfg or presets['default']
    manifest = manifest or load_manifest()
    entry = manifest[name]
    logger.info(f'Reproducing {name}: {entry["description"]}')
    observed, maps, unions = SCENARIOS[name](cfg)
    rows = []
    for check, check_entry in entry['checks'].items():
        value = observed.get(check)
        rows.append(CheckResult(name, check, check_entry['expected'], value, _compare(check_entry, value),
                                check_entry['provenance']))
    figure = draw_tuple_figure(maps, Path(output_dir) / entry['figure'], unions, title=name)
    frame = pd.DataFrame([vars(r) for r in rows])
    failed = frame[~frame['passed']]
    if len(failed):
        logger.error(f'{len(failed)} check(s) failed in {name}: {list(failed["check"])}')
    return frame, figure
