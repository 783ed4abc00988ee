"""Assemble every certificate into a per-tuple locus report."""
import logging
import time
from dataclasses import dataclass, field
from typing import Any, List, Optional, Tuple

from config import config as presets
from core.circle import Arc
from core.errors import BudgetExceeded
from core.moebius import MapClass, classify_map
from system.explorer.affine import ExactCertificate, Refuted, certify_no_elliptic_affine
from system.explorer.words import (Word, WitnessKind, WordWitness, find_elliptic_or_identity,
                                   inverse_free_violation, refute_semidiscrete)
from system.hyperbolicity.multicone import (FailureReason, MulticoneCertificate, NegativeCertificate,
                                            NegativeKind, find_multicone)
from system.hyperbolicity.rank_one import rank_one_test
from system.hyperbolicity.spectral import SpectralEstimate, lower_spectral_estimate
from system.limit_sets.cores import CoreSet, compute_cores
from system.limit_sets.elementary import ElementaryStatus, elementary_check
from system.limit_sets.limit_sets import LimitSetApprox, backward_limit_set, forward_limit_set
from system.limit_sets.nonsd import NotSemidiscreteConclusion, nonsd_inference

logger = logging.getLogger(__name__)

# Status values
CERTIFIED_YES = 'certified_yes'
CERTIFIED_NO = 'certified_no'
UNKNOWN = 'unknown'
WITNESS = 'witness'
NONE_UP_TO_DEPTH = 'none_up_to_depth'
VIOLATION = 'violation'
CERTIFIED_NO_VIOLATION = 'certified_no_violation'
REFUTED_WITNESS = 'refuted_witness'
REFUTED_BY_INFERENCE = 'refuted_by_inference'
NO_REFUTATION = 'no_refutation'
YES = 'yes'
NO = 'no'


@dataclass(frozen=True)
class StatusEntry:
    status: str
    evidence: Any = None
    detail: str = ''


@dataclass
class LociReport:
    generator_classes: Tuple[MapClass, ...]
    elementary: ElementaryStatus
    in_H: StatusEntry = StatusEntry(UNKNOWN)
    in_E: StatusEntry = StatusEntry(UNKNOWN)
    inverse_free: StatusEntry = StatusEntry(UNKNOWN)
    semidiscrete: StatusEntry = StatusEntry(NO_REFUTATION)
    in_P: StatusEntry = StatusEntry(UNKNOWN)
    rank_one: Optional[Arc] = None
    spectral: Optional[SpectralEstimate] = None
    forward: Optional[LimitSetApprox] = None
    backward: Optional[LimitSetApprox] = None
    cores: Optional[CoreSet] = None
    nonsd: Optional[NotSemidiscreteConclusion] = None
    partial: bool = False
    stages: List[str] = field(default_factory=list)
    consistency: Optional['ConsistencyVerdict'] = None

    @property
    def size(self):
        return len(self.generator_classes)


@dataclass(frozen=True)
class ConsistencyVerdict:
    consistent: bool
    rules_checked: Tuple[str, ...]
    violations: Tuple[str, ...]


def sdc_crosscheck(report):
    """Rules that no report may break: H is inside S and disjoint from E,
    and P-membership agrees with its definition and with rank one."""
    checked, violations = [], []

    def rule(name, broken, message):
        checked.append(name)
        if broken:
            violations.append(f'{name}: {message}')

    hyperbolic = report.in_H.status == CERTIFIED_YES
    rule('H_inside_S', hyperbolic and report.semidiscrete.status != NO_REFUTATION,
         'a certified multicone coexists with a semidiscreteness refutation')
    rule('H_inverse_free', hyperbolic and report.inverse_free.status == VIOLATION,
         'a certified multicone coexists with an inverse pair')
    rule('H_disjoint_E', hyperbolic and report.in_E.status == WITNESS,
         'a certified multicone coexists with an elliptic word')
    if report.size >= 3:
        in_p = report.in_P.status == YES
        rule('P_definition', in_p and not (report.elementary.is_elementary
                                           and report.inverse_free.status != VIOLATION
                                           and report.in_E.status != WITNESS
                                           and report.semidiscrete.status in (REFUTED_WITNESS,
                                                                              REFUTED_BY_INFERENCE)),
             'P membership without all defining properties')
        rule('P_not_rank_one', in_p and report.rank_one is not None,
             'a rank-one tuple lies in the closure of the principal component')
        rule('P_not_H', in_p and hyperbolic, 'P and H are disjoint')
    return ConsistencyVerdict(not violations, tuple(checked), tuple(violations))


def _stage(report, name):
    report.stages.append(name)
    logger.info(f'Stage: {name}')


def classify(maps, cfg=None):
    """Run every stage within the preset's budgets and assemble the report."""
    cfg = cfg or presets['default']
    started = time.perf_counter()
    report = LociReport(tuple(classify_map(g) for g in maps), elementary_check(maps))
    report.stages.extend(['generator_classes', 'elementary'])
    budget = cfg.NODE_BUDGET

    _stage(report, 'exact_affine')
    exact = certify_no_elliptic_affine(maps, cfg.PERMUTATION_CAP)
    exact_certified = isinstance(exact, ExactCertificate)

    _stage(report, 'elliptic_search')
    if exact_certified:
        report.in_E = StatusEntry(CERTIFIED_NO, exact, 'no product has multiplier 1')
    elif isinstance(exact, Refuted):
        word = Word(exact.letters)
        report.in_E = StatusEntry(WITNESS, WordWitness(word, word.evaluate(maps), WitnessKind.IDENTITY, 0.0),
                                  'a product is exactly the identity')
    else:
        try:
            witness = find_elliptic_or_identity(maps, cfg.ELLIPTIC_DEPTH, budget)
            report.in_E = (StatusEntry(WITNESS, witness) if witness
                           else StatusEntry(NONE_UP_TO_DEPTH, cfg.ELLIPTIC_DEPTH))
        except BudgetExceeded as e:
            logger.warning(f'Elliptic search skipped: {e}')
            report.partial = True

    _stage(report, 'inverse_search')
    if exact_certified:
        report.inverse_free = StatusEntry(CERTIFIED_NO_VIOLATION, exact, 'only hyperbolic products')
    else:
        try:
            violation = inverse_free_violation(maps, cfg.INVERSE_DEPTH, node_budget=budget)
            report.inverse_free = (StatusEntry(VIOLATION, violation) if violation
                                   else StatusEntry(NONE_UP_TO_DEPTH, cfg.INVERSE_DEPTH))
        except BudgetExceeded as e:
            logger.warning(f'Inverse search skipped: {e}')
            report.partial = True

    _stage(report, 'multicone')
    multicone = find_multicone(maps, seed_depth=cfg.SEED_DEPTH, radii=cfg.RADII_COUNT, max_iter=cfg.MAX_ITER,
                               margin=cfg.CERT_MARGIN, max_components=cfg.MAX_COMPONENTS, node_budget=budget)
    hyperbolic = isinstance(multicone, MulticoneCertificate)
    if hyperbolic and report.inverse_free.status == NONE_UP_TO_DEPTH:
        report.inverse_free = StatusEntry(CERTIFIED_NO_VIOLATION, multicone, 'uniformly hyperbolic')

    _stage(report, 'limit_sets')
    try:
        report.forward = forward_limit_set(maps, cfg.LIMIT_DEPTH, cfg.HULL_GAP, budget)
        report.backward = backward_limit_set(maps, cfg.LIMIT_DEPTH, cfg.HULL_GAP, budget)
        report.cores = compute_cores(report.forward, report.backward)
        if not hyperbolic:
            report.nonsd = nonsd_inference(maps, report.forward, report.backward,
                                           inverse_free_certified=report.inverse_free.status == CERTIFIED_NO_VIOLATION,
                                           inverse_free_depth=cfg.INVERSE_DEPTH, sub_depth=cfg.NONSD_SUB_DEPTH,
                                           node_budget=budget)
    except BudgetExceeded as e:
        logger.warning(f'Limit set stage skipped: {e}')
        report.partial = True

    _stage(report, 'rank_one')
    report.rank_one = rank_one_test(maps)

    _stage(report, 'identity_approach')
    approach = None
    if not hyperbolic:
        try:
            approach = refute_semidiscrete(maps, cfg.REFUTE_MAX_LEN, cfg.BEAM_WIDTH, cfg.IDENTITY_THRESHOLD, budget,
                                           cfg.EXPONENT_MAX, cfg.LOG_WINDOW, cfg.PERMUTATION_CAP)
        except BudgetExceeded as e:
            logger.warning(f'Identity approach search incomplete: {e}')
            report.partial = True

    if approach is not None:
        report.semidiscrete = StatusEntry(REFUTED_WITNESS, {'witness': approach, 'inference': report.nonsd},
                                          f'product within {approach.distance:.4f} of the identity')
    elif report.nonsd is not None:
        report.semidiscrete = StatusEntry(REFUTED_BY_INFERENCE, {'witness': None, 'inference': report.nonsd})
    else:
        report.semidiscrete = StatusEntry(NO_REFUTATION, None,
                                          'uniformly hyperbolic' if hyperbolic else 'nothing found within budget')

    report.in_H = _hyperbolicity_status(report, multicone, approach, cfg.APPROACH_CERTIFY_DISTANCE)

    _stage(report, 'spectral')
    try:
        report.spectral = lower_spectral_estimate(maps, cfg.SPECTRAL_DEPTH, budget)
    except BudgetExceeded as e:
        logger.warning(f'Spectral estimate skipped: {e}')
        report.partial = True

    report.in_P = _principal_status(report)
    report.consistency = sdc_crosscheck(report)
    if not report.consistency.consistent:
        logger.error(f'Inconsistent report: {report.consistency.violations}')
    logger.info(f'Classified {len(maps)}-tuple in {time.perf_counter() - started:.2f}s')
    return report


def _hyperbolicity_status(report, multicone, approach, certify_distance):
    if report.in_E.status == WITNESS:
        witness = report.in_E.evidence
        return StatusEntry(CERTIFIED_NO, NegativeCertificate(NegativeKind.ELLIPTIC_WORD,
                                                             f'word {witness.word} is {witness.kind.value}', witness))
    if isinstance(multicone, MulticoneCertificate):
        return StatusEntry(CERTIFIED_YES, multicone)
    if multicone.reason is FailureReason.NON_HYPERBOLIC_GENERATOR:
        return StatusEntry(CERTIFIED_NO, NegativeCertificate.from_failure(multicone))
    if multicone.reason is FailureReason.LIMIT_SETS_TOUCH:
        return StatusEntry(CERTIFIED_NO, NegativeCertificate.from_failure(multicone))
    if approach is not None and approach.distance <= certify_distance:
        return StatusEntry(CERTIFIED_NO, NegativeCertificate(NegativeKind.IDENTITY_APPROACH,
                                                             f'word {approach.word} is within '
                                                             f'{approach.distance:.4g} of the identity',
                                                             approach))
    if approach is not None:
        return StatusEntry(UNKNOWN, multicone, f'{multicone.detail}; closest identity approach '
                                               f'{approach.distance:.4g} exceeds {certify_distance:.4g}')
    return StatusEntry(UNKNOWN, multicone, multicone.detail)


def _principal_status(report):
    if report.in_H.status == CERTIFIED_YES:
        return StatusEntry(NO, None, 'uniformly hyperbolic')
    if not report.elementary.is_elementary:
        return StatusEntry(NO, None, 'non-elementary')
    if report.in_E.status == WITNESS:
        return StatusEntry(NO, None, 'contains an elliptic or identity element')
    if report.inverse_free.status == VIOLATION:
        return StatusEntry(NO, None, 'not inverse-free')
    if report.rank_one is not None:
        return StatusEntry(UNKNOWN, report.rank_one, 'rank one: in the closure of the principal component')
    if report.size < 3:
        return StatusEntry(UNKNOWN, None, 'two-generator tuples are outside this classification')
    if report.semidiscrete.status not in (REFUTED_WITNESS, REFUTED_BY_INFERENCE):
        return StatusEntry(UNKNOWN, None, 'semidiscreteness not refuted')
    if report.in_E.status != CERTIFIED_NO or report.inverse_free.status != CERTIFIED_NO_VIOLATION:
        return StatusEntry(UNKNOWN, None, 'elliptic or inverse freedom only checked up to depth')
    return StatusEntry(YES, {'elementary': report.elementary, 'semidiscrete': report.semidiscrete.evidence})
