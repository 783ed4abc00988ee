"""Exact reasoning for tuples of affine maps with rational coefficients."""
import itertools
import logging
import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import reduce
from typing import Dict, List, Optional, Tuple

from sympy import isprime
from sympy.utilities.iterables import multiset_permutations

from config import Config
from core.errors import BudgetExceeded, InvalidMap, PreconditionFailed
from core.exact_affine import ExactAffine
from core.moebius import MoebiusMap

logger = logging.getLogger(__name__)

# f0: 2z + 1, z/3, 5z - 4
F0_COEFFICIENTS = ((2, 1), (Fraction(1, 3), 0), (5, -4))


@dataclass(frozen=True)
class ExactAffineTuple:
    maps: Tuple[ExactAffine, ...]
    primes: Tuple[int, ...]
    conjugation_point: Optional[Fraction] = None

    @property
    def exponent_vectors(self):
        """One row per generator, one column per prime."""
        return [m.exponent_vector(self.primes) for m in self.maps]

    def evaluate(self, letters):
        lam, kappa = Fraction(1), Fraction(0)
        for letter in letters:
            g = self.maps[letter - 1]
            lam, kappa = g.lam * lam, g.lam * kappa + g.kappa
        return lam, kappa


def _rational_sqrt(value):
    if value < 0:
        return None
    num, den = math.isqrt(value.numerator), math.isqrt(value.denominator)
    if num * num == value.numerator and den * den == value.denominator:
        return Fraction(num, den)
    return None


def _rational_fixed_points(coefficients):
    a, b, c, d = coefficients
    if c == 0:
        return [] if a == d else [b / (d - a)]
    root = _rational_sqrt((d - a) ** 2 + 4 * b * c)
    if root is None:
        return []
    return sorted({(a - d + root) / (2 * c), (a - d - root) / (2 * c)})


def _fixes(coefficients, p):
    a, b, c, d = coefficients
    return c * p * p + (d - a) * p - b == 0


def _conjugate_to_infinity(coefficients, p):
    """C ∘ m ∘ C^-1 for C(z) = -1/(z - p), which sends p to ∞."""
    a, b, c, d = coefficients
    # C = [[0, -1], [1, -p]], C^-1 = [[-p, 1], [-1, 0]]
    m = ((a * -p + b * -1, a), (c * -p + d * -1, c))
    return (-m[1][0], -m[1][1], m[0][0] - p * m[1][0], m[0][1] - p * m[1][1])


def exact_affine_tuple(maps):
    """The tuple as exact affine maps, after moving a shared rational
    fixed point to ∞ if needed. None when that is impossible."""
    if any(m.exact is None for m in maps):
        return None
    coefficients = [m.exact for m in maps]
    point = None
    if any(c[2] != 0 for c in coefficients):
        candidates = next((_rational_fixed_points(c) for c in coefficients if c[2] != 0), [])
        shared = [p for p in candidates if all(_fixes(c, p) for c in coefficients)]
        if not shared:
            return None
        point = shared[0]
        coefficients = [_conjugate_to_infinity(c, point) for c in coefficients]
        logger.debug(f'Conjugated shared fixed point {point} to ∞')
    try:
        affine = tuple(ExactAffine.from_matrix(*c) for c in coefficients)
    except InvalidMap:
        return None
    primes = sorted({p for m in affine for p in m.factors})
    return ExactAffineTuple(affine, tuple(primes), point)


def fourier_motzkin(constraints, variables, constraint_cap=Config.FM_CONSTRAINT_CAP):
    """Solve {row . x <= rhs} exactly; returns a rational point or None.

    ``constraints`` is a list of (coefficients, rhs) pairs over Fractions.
    """
    def normalized(rows):
        seen = {}
        for coefficients, rhs in rows:
            scale = max((abs(c) for c in coefficients), default=0)
            if scale == 0:
                if rhs < 0:
                    return None
                continue
            key = tuple(c / scale for c in coefficients)
            bound = rhs / scale
            if key not in seen or bound < seen[key]:
                seen[key] = bound
        return [(list(k), v) for k, v in seen.items()]

    current = normalized([(list(map(Fraction, c)), Fraction(r)) for c, r in constraints])
    if current is None:
        return None
    stages = []
    for k in range(variables - 1, -1, -1):
        stages.append((k, current))
        upper = [row for row in current if row[0][k] > 0]
        lower = [row for row in current if row[0][k] < 0]
        rest = [row for row in current if row[0][k] == 0]
        combined = list(rest)
        for (cu, ru), (cl, rl) in itertools.product(upper, lower):
            wu, wl = -cl[k], cu[k]
            combined.append(([wu * x + wl * y for x, y in zip(cu, cl)], wu * ru + wl * rl))
        if len(combined) > constraint_cap:
            raise BudgetExceeded(f'elimination produced {len(combined)} constraints')
        current = normalized(combined)
        if current is None:
            return None

    solution = [Fraction(0)] * variables
    for k, rows in reversed(stages):
        low, high = None, None
        for coefficients, rhs in rows:
            ck = coefficients[k]
            if ck == 0:
                continue
            bound = (rhs - sum(coefficients[j] * solution[j] for j in range(k))) / ck
            if ck > 0:
                high = bound if high is None else min(high, bound)
            else:
                low = bound if low is None else max(low, bound)
        solution[k] = low if low is not None else (high if high is not None else Fraction(0))
    return solution


def cancelling_combination(exponent_vectors, constraint_cap=Config.FM_CONSTRAINT_CAP):
    """Non-negative integer counts, not all zero, with zero total exponents."""
    n = len(exponent_vectors)
    primes = len(exponent_vectors[0]) if exponent_vectors else 0
    constraints = []
    for i in range(n):
        constraints.append(([-1 if j == i else 0 for j in range(n)], 0))
    constraints.append(([1] * n, 1))
    constraints.append(([-1] * n, -1))
    for p in range(primes):
        row = [exponent_vectors[i][p] for i in range(n)]
        constraints.append((row, 0))
        constraints.append(([-x for x in row], 0))
    solution = fourier_motzkin(constraints, n, constraint_cap)
    if solution is None:
        return None
    common = reduce(lambda acc, x: acc * x.denominator // math.gcd(acc, x.denominator), solution, 1)
    counts = [int(x * common) for x in solution]
    divisor = reduce(math.gcd, counts)
    counts = [c // divisor for c in counts]
    for p in range(primes):
        if sum(counts[i] * exponent_vectors[i][p] for i in range(n)) != 0:
            raise ArithmeticError('elimination returned a non-cancelling vector')
    return counts


@dataclass(frozen=True)
class ExactCertificate:
    """No product of the generators has multiplier 1: every word is hyperbolic."""
    primes: Tuple[int, ...]
    exponent_vectors: Tuple[Tuple[int, ...], ...]
    conjugation_point: Optional[Fraction] = None
    certified = True


@dataclass(frozen=True)
class Refuted:
    """A word whose product is exactly the identity."""
    letters: Tuple[int, ...]
    certified = False


@dataclass(frozen=True)
class Inapplicable:
    reason: str
    cancelling_counts: Optional[Tuple[int, ...]] = None
    certified = False


def _letters_from_counts(counts):
    return [i + 1 for i, c in enumerate(counts) for _ in range(c)]


def certify_no_elliptic_affine(maps, permutation_cap=Config.PERMUTATION_CAP):
    exact = exact_affine_tuple(maps)
    if exact is None:
        return Inapplicable('generators are not affine over the rationals')
    if any(m.residual != 1 for m in exact.maps):
        return Inapplicable('a multiplier could not be factored')
    vectors = exact.exponent_vectors
    counts = cancelling_combination(vectors) if exact.primes else [1] + [0] * (len(vectors) - 1)
    if counts is None:
        logger.info(f'Exact certificate over primes {exact.primes}')
        return ExactCertificate(exact.primes, tuple(tuple(v) for v in vectors), exact.conjugation_point)
    letters = _letters_from_counts(counts)
    for tried, order in enumerate(multiset_permutations(letters)):
        if tried >= permutation_cap:
            break
        lam, kappa = exact.evaluate(order)
        if lam == 1 and kappa == 0:
            return Refuted(tuple(order))
    return Inapplicable('a cancelling exponent combination exists', tuple(counts))


def _bounded_counts(size, max_total, cap):
    """Count vectors with entries in [0, cap] and 1 <= sum <= max_total."""
    def extend(prefix, remaining):
        if len(prefix) == size:
            if sum(prefix) > 0:
                yield tuple(prefix)
            return
        for value in range(min(cap, remaining) + 1):
            yield from extend(prefix + [value], remaining - value)
    return extend([], max_total)


def _affine_distance(lam, kappa):
    s = math.sqrt(float(lam))
    return math.sqrt((s - 1) ** 2 + (float(kappa) / s) ** 2 + (1 / s - 1) ** 2)


def _greedy_order(exact, counts):
    remaining = list(counts)
    lam, kappa = Fraction(1), Fraction(0)
    order = []
    while any(remaining):
        best = None
        for i, left in enumerate(remaining):
            if not left:
                continue
            g = exact.maps[i]
            step = (g.lam * lam, g.lam * kappa + g.kappa)
            if best is None or abs(step[1]) < abs(best[1][1]):
                best = (i, step)
        i, (lam, kappa) = best
        remaining[i] -= 1
        order.append(i + 1)
    return order, lam, kappa


def affine_identity_approach(exact, max_len=Config.REFUTE_MAX_LEN, exponent_max=Config.EXPONENT_MAX,
                             log_window=Config.LOG_WINDOW, permutation_cap=Config.PERMUTATION_CAP,
                             candidates=Config.MULTISET_CANDIDATES):
    """Best word (as letters) found by choosing exponent multisets whose
    multiplier is near 1 and ordering them to shrink the translation part."""
    logs = [math.log(float(m.lam)) for m in exact.maps]
    pool = []
    for counts in _bounded_counts(len(logs), max_len, exponent_max):
        drift = abs(sum(c * l for c, l in zip(counts, logs)))
        if drift < log_window:
            pool.append((drift, sum(counts), counts))
    pool.sort()
    best = None
    for _, _, counts in pool[:candidates]:
        letters = _letters_from_counts(counts)
        total = math.factorial(sum(counts))
        for c in counts:
            total //= math.factorial(c)
        if total <= permutation_cap:
            for order in multiset_permutations(letters):
                lam, kappa = exact.evaluate(order)
                distance = _affine_distance(lam, kappa)
                if best is None or (distance, len(order), order) < best[:3]:
                    best = (distance, len(order), order)
        else:
            order, lam, kappa = _greedy_order(exact, counts)
            distance = _affine_distance(lam, kappa)
            if best is None or (distance, len(order), order) < best[:3]:
                best = (distance, len(order), order)
    if best is None:
        return None
    logger.debug(f'Affine search best distance {best[0]:.5f}')
    return tuple(best[2])


def translation_accumulation(f, g, n):
    """Closed form of g^n ∘ f^n for affine f, g with multipliers a*c = 1."""
    if f.lam * g.lam != 1:
        raise PreconditionFailed(f'multipliers {f.lam} and {g.lam} are not reciprocal')
    if f.lam == 1:
        raise PreconditionFailed('f and g are translations')
    a, b, c, d = f.lam, f.kappa, g.lam, g.kappa
    shift = (1 - c ** n) * (d / (1 - c) - b / (1 - a))
    return ExactAffine(1, shift)


def hump_bound(f, g):
    """Lower bound on translations reachable as products, d/(1-c) - b/(1-a)."""
    return g.kappa / (1 - g.lam) - f.kappa / (1 - f.lam)


def f0_tuple():
    return tuple(MoebiusMap.affine(Fraction(lam), Fraction(kappa)) for lam, kappa in F0_COEFFICIENTS)


def extended_f0(size):
    """f0 padded with maps p*z + k or z/p + k for primes p > 5 that fix none of -1, 0, 1."""
    if size < 3:
        raise PreconditionFailed('extended tuples have at least three generators')
    maps = list(f0_tuple())
    primes = (p for p in itertools.count(7) if isprime(p))
    flip = False
    while len(maps) < size:
        p = next(primes)
        lam = Fraction(1, p) if flip else Fraction(p)
        flip = not flip
        kappa = 1
        while any(lam * x + kappa == x for x in (-1, 0, 1)):
            kappa += 1
        maps.append(MoebiusMap.affine(lam, Fraction(kappa)))
    return tuple(maps)
