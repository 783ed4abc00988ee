"""Multicone certificates: finite arc unions mapped compactly into themselves."""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

import numpy as np

from config import Config
from core.boundary import BoundaryPoint, PI
from core.circle import Arc, ArcUnion, arc_image, containment_slack, strictly_inside
from core.errors import BudgetExceeded
from core.moebius import MapClass, classify_map, fixed_points
from system.explorer.words import Word, enumerate_words

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MulticoneCertificate:
    multicone: ArcUnion
    margin: float
    per_generator_images: Tuple[ArcUnion, ...]
    word_depth_used: int
    achieved_margin: float
    radius: float
    fattening: float = 0.0


class FailureReason(str, Enum):
    NON_HYPERBOLIC_GENERATOR = 'non_hyperbolic_generator'
    LIMIT_SETS_TOUCH = 'limit_sets_touch'
    BUDGET = 'budget'
    COMPONENT_CAP = 'component_cap'


@dataclass(frozen=True)
class MulticoneFailure:
    reason: FailureReason
    detail: str
    generator_index: Optional[int] = None
    touch_point: Optional[BoundaryPoint] = None
    forward_word: Optional[Word] = None
    backward_word: Optional[Word] = None

    @property
    def certifies_not_uniformly_hyperbolic(self):
        return self.reason in (FailureReason.NON_HYPERBOLIC_GENERATOR, FailureReason.LIMIT_SETS_TOUCH)


class NegativeKind(str, Enum):
    ELLIPTIC_WORD = 'elliptic_word'
    NON_HYPERBOLIC_GENERATOR = 'non_hyperbolic_generator'
    LIMIT_SETS_TOUCH = 'limit_sets_touch'
    IDENTITY_APPROACH = 'identity_approach'


@dataclass(frozen=True)
class NegativeCertificate:
    """Evidence that a tuple is not uniformly hyperbolic."""
    kind: NegativeKind
    detail: str
    witness: object = None

    @classmethod
    def from_failure(cls, failure):
        kind = {FailureReason.NON_HYPERBOLIC_GENERATOR: NegativeKind.NON_HYPERBOLIC_GENERATOR,
                FailureReason.LIMIT_SETS_TOUCH: NegativeKind.LIMIT_SETS_TOUCH}[failure.reason]
        return cls(kind, failure.detail, failure)


@dataclass(frozen=True)
class MulticoneVerification:
    ok: bool
    failing_generator: Optional[int] = None
    failing_arc: Optional[Arc] = None
    failing_word: Optional[Word] = None

    def __bool__(self):
        return self.ok


def _collect_fixed_points(maps, depth, node_budget):
    attracting, repelling = {}, {}

    def visit(word, product):
        data = fixed_points(product)
        if data.map_class is MapClass.HYPERBOLIC:
            attracting.setdefault(round(data.attracting.theta, 12), (data.attracting.theta, word))
            repelling.setdefault(round(data.repelling.theta, 12), (data.repelling.theta, word))
        return False

    enumerate_words(maps, depth, visit, node_budget)
    return list(attracting.values()), list(repelling.values())


def _shares(count):
    """1/2, 1/4, 3/4, 1/8, 7/8, ... of the way across each gap."""
    shares = [0.5]
    j = 2
    while len(shares) < count:
        shares.extend((2.0 ** -j, 1.0 - 2.0 ** -j))
        j += 1
    return shares[:count]


def _cluster_seed(attracting, repelling, share):
    """One arc per run of attracting points met between two repelling points
    going around the circle, reaching ``share`` of the way into each
    neighbouring gap. Returns the seed and its narrowest clearance."""
    marked = sorted([(theta, True) for theta in attracting] + [(theta, False) for theta in repelling])
    first = next(i for i, (_, is_attracting) in enumerate(marked) if not is_attracting)
    ring = marked[first:] + [(theta + PI, flag) for theta, flag in marked[:first]]
    ring.append((ring[0][0] + PI, False))
    arcs, clearance = [], PI
    previous, run = ring[0][0], []
    for theta, is_attracting in ring[1:]:
        if is_attracting:
            run.append(theta)
            continue
        if run:
            before, after = run[0] - previous, theta - run[-1]
            arcs.append(Arc.from_angles(run[0] - share * before, run[-1] + share * after))
            clearance = min(clearance, share * before, share * after)
            run = []
        previous = theta
    return ArcUnion.merged(arcs), clearance


def _grow(maps, seed, repelling, max_iter, max_components):
    """Stable candidate and whether the component cap stopped the iteration."""
    current = seed
    for _ in range(max_iter):
        if current.full:
            return None, False
        images = [arc_image(g, arc) for g in maps for arc in current.arcs]
        following = ArcUnion.merged(list(current.arcs) + images)
        if len(following) > max_components:
            return None, True
        if following.full or any(following.contains(theta, closed=True) for theta in repelling):
            return None, False
        if strictly_inside(ArcUnion.merged(images), current.fattened(Config.STABILITY_FATTENING)):
            return following, False
        current = following
    return None, False


def _fattening_schedule(radius):
    return (0.0, 1e-6, 1e-5, 1e-4, 1e-3, radius / 8, radius / 4, radius / 2)


def _certify(maps, candidate, repelling, margin, radius, depth, max_components):
    for delta in _fattening_schedule(radius):
        cone = candidate.fattened(delta)
        if cone.full or len(cone) > max_components:
            continue
        if any(cone.contains(theta, closed=True) for theta in repelling):
            continue
        images = tuple(cone.image(g) for g in maps)
        if all(strictly_inside(image, cone, margin) for image in images):
            achieved = min(containment_slack(image, cone) for image in images)
            return MulticoneCertificate(cone, margin, images, depth, achieved, radius, delta)
    return None


def find_multicone(maps, seed_depth=Config.SEED_DEPTH, radii=Config.RADII_COUNT,
                   max_iter=Config.MAX_ITER, margin=Config.CERT_MARGIN,
                   max_components=Config.MAX_COMPONENTS, touch_tol=Config.TOUCH_TOL,
                   node_budget=Config.NODE_BUDGET):
    """Certificate that the tuple is uniformly hyperbolic, or the reason none was found."""
    for index, g in enumerate(maps, start=1):
        map_class = classify_map(g)
        if map_class is not MapClass.HYPERBOLIC:
            return MulticoneFailure(FailureReason.NON_HYPERBOLIC_GENERATOR,
                                    f'generator {index} is {map_class.value}', generator_index=index)
    try:
        attracting, repelling = _collect_fixed_points(maps, seed_depth, node_budget)
    except BudgetExceeded as e:
        return MulticoneFailure(FailureReason.BUDGET, str(e))

    forward = np.array([theta for theta, _ in attracting])
    backward = np.array([theta for theta, _ in repelling])
    diff = np.abs(forward[:, None] - backward[None, :])
    circular = np.minimum(diff, PI - diff)
    i, j = np.unravel_index(np.argmin(circular), circular.shape)
    closest = float(circular[i, j])
    if closest < touch_tol:
        point = BoundaryPoint(attracting[i][0])
        logger.info(f'Limit set approximations touch at {point!r}')
        return MulticoneFailure(FailureReason.LIMIT_SETS_TOUCH,
                                f'attracting and repelling points within {closest:.3g}',
                                touch_point=point, forward_word=attracting[i][1],
                                backward_word=repelling[j][1])

    forward_thetas = [theta for theta, _ in attracting]
    backward_thetas = [theta for theta, _ in repelling]
    # seeds relative to the local gaps first, then balls of a common radius
    seeds = [_cluster_seed(forward_thetas, backward_thetas, share) for share in _shares(radii)]
    base = closest / 2.0
    for step in range(radii):
        radius = base * 2.0 ** -step
        seeds.append((ArcUnion.merged([Arc.around(theta, radius) for theta in forward_thetas]), radius))

    capped = 0
    for seed, radius in seeds:
        candidate, hit_cap = _grow(maps, seed, backward_thetas, max_iter, max_components)
        capped += hit_cap
        if candidate is None:
            continue
        certificate = _certify(maps, candidate, backward_thetas, margin, radius, seed_depth, max_components)
        if certificate is not None:
            logger.info(f'Multicone with {len(certificate.multicone)} arcs at radius {radius:.3g}')
            return certificate
    if capped:
        logger.warning(f'Component cap of {max_components} hit by {capped} of {len(seeds)} seeds')
        return MulticoneFailure(FailureReason.COMPONENT_CAP,
                                f'more than {max_components} components for {capped} of {len(seeds)} seeds')
    return MulticoneFailure(FailureReason.BUDGET, f'no multicone from {len(seeds)} seeds')


def verify_multicone(maps, certificate, n_words=Config.VERIFY_WORDS, max_word_len=Config.VERIFY_WORD_LEN,
                     seed=Config.RANDOM_SEED):
    """Independent re-check of a certificate, including random long words."""
    cone = certificate.multicone
    if cone.full or len(ArcUnion.merged(cone.arcs)) != len(cone):
        return MulticoneVerification(False)
    for index, g in enumerate(maps, start=1):
        image = cone.image(g)
        if not strictly_inside(image, cone, certificate.margin):
            bad = next((a for a in cone.arcs
                        if not strictly_inside(ArcUnion((arc_image(g, a),)), cone, certificate.margin)), None)
            return MulticoneVerification(False, failing_generator=index, failing_arc=bad)

    rng = np.random.default_rng(seed)
    for _ in range(n_words):
        length = int(rng.integers(1, max_word_len + 1))
        letters = [int(x) for x in rng.integers(1, len(maps) + 1, size=length)]
        arcs = list(cone.arcs)
        for letter in letters:
            arcs = [arc_image(maps[letter - 1], a) for a in arcs]
        if not strictly_inside(ArcUnion.merged(arcs), cone):
            return MulticoneVerification(False, failing_word=Word(letters))
    return MulticoneVerification(True)


@dataclass(frozen=True)
class GrowthFit:
    slope: float
    log_constant: float
    lengths: Tuple[int, ...]
    min_log_norms: Tuple[float, ...]

    @property
    def growth_rate(self):
        return math.exp(self.slope)


def fit_growth(maps, n_words=Config.VERIFY_WORDS, max_word_len=Config.VERIFY_WORD_LEN, seed=Config.RANDOM_SEED):
    """Lower envelope log ||A_w|| >= log C + n log(lambda) over random words."""
    rng = np.random.default_rng(seed)
    matrices = np.array([g.matrix() for g in maps])
    lowest = {}
    for _ in range(n_words):
        length = int(rng.integers(1, max_word_len + 1))
        letters = rng.integers(0, len(maps), size=length)
        product = np.eye(2)
        for letter in letters:
            product = matrices[letter] @ product
        value = math.log(max(1.0, float(np.linalg.norm(product, ord=2))))
        lowest[length] = min(lowest.get(length, math.inf), value)
    lengths = np.array(sorted(lowest))
    values = np.array([lowest[n] for n in lengths])
    if len(lengths) < 2:
        return GrowthFit(0.0, float(values[0]) if len(values) else 0.0, tuple(lengths), tuple(values))
    slope, _ = np.polyfit(lengths, values, 1)
    constant = float(np.min(values - slope * lengths))
    return GrowthFit(float(slope), constant, tuple(int(n) for n in lengths), tuple(float(v) for v in values))
