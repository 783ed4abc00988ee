"""Word enumeration over a generator tuple and the searches built on it."""
import logging
import math
from dataclasses import dataclass
from enum import Enum
from typing import Optional, Tuple

from config import Config
from core.errors import BudgetExceeded
from core.moebius import MapClass, MoebiusMap, classify_map, compose, identity_distance, psl_distance

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class Word:
    """Generator indices (1-based) in application order: the first
    letter is applied first, so the product is A_last ∘ ... ∘ A_first."""
    letters: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, 'letters', tuple(int(i) for i in self.letters))
        if not self.letters:
            raise ValueError('words are non-empty')

    def __len__(self):
        return len(self.letters)

    def __add__(self, other):
        return Word(self.letters + other.letters)

    def evaluate(self, maps, keep_exact=False):
        result = MoebiusMap.identity()
        for letter in self.letters:
            result = compose(maps[letter - 1], result, keep_exact=keep_exact)
        return result

    def __str__(self):
        return ' '.join(str(i) for i in self.letters)


class WitnessKind(str, Enum):
    ELLIPTIC = 'elliptic'
    IDENTITY = 'identity'
    INVERSE = 'inverse'
    IDENTITY_APPROACH = 'identity_approach'


@dataclass(frozen=True)
class WordWitness:
    word: Word
    product: MoebiusMap
    kind: WitnessKind
    distance: Optional[float] = None
    partial: bool = False

    def revalidate(self, maps, tol=Config.IDENTITY_TOL):
        """Re-evaluate the word and check the claimed property."""
        product = self.word.evaluate(maps)
        if psl_distance(product, self.product) > tol * max(1.0, product.frobenius_norm() ** 2):
            return False
        if self.kind is WitnessKind.ELLIPTIC:
            return classify_map(product) is MapClass.ELLIPTIC
        if self.kind in (WitnessKind.IDENTITY, WitnessKind.INVERSE):
            return identity_distance(product) <= tol * max(1.0, product.frobenius_norm() ** 2)
        return self.distance is not None and abs(identity_distance(product) - self.distance) <= 1e-9


def word_count(generator_count, max_len):
    return sum(generator_count ** k for k in range(1, max_len + 1))


def enumerate_words(maps, max_len, visitor, node_budget=Config.NODE_BUDGET):
    """Visit every word up to ``max_len`` by length, then lexicographically.

    ``visitor(word, product)`` returns True to stop. Returns the number
    of words visited.
    """
    total = word_count(len(maps), max_len)
    if total > node_budget:
        raise BudgetExceeded(f'{total} words up to length {max_len} exceed budget {node_budget}')
    level = [((), MoebiusMap.identity())]
    visited = 0
    for length in range(1, max_len + 1):
        following = []
        for letters, product in level:
            for index, g in enumerate(maps, start=1):
                extended = compose(g, product)
                word = letters + (index,)
                visited += 1
                if visitor(Word(word), extended):
                    return visited
                if length < max_len:
                    following.append((word, extended))
        level = following
    return visited


def find_elliptic_or_identity(maps, max_len, node_budget=Config.NODE_BUDGET):
    """First word (shortest, then lexicographic) whose product is elliptic or the identity."""
    found = []

    def visit(word, product):
        map_class = classify_map(product)
        if map_class is MapClass.IDENTITY:
            found.append(WordWitness(word, product, WitnessKind.IDENTITY, identity_distance(product)))
        elif map_class is MapClass.ELLIPTIC:
            found.append(WordWitness(word, product, WitnessKind.ELLIPTIC))
        return bool(found)

    enumerate_words(maps, max_len, visit, node_budget)
    if found:
        logger.info(f'Found {found[0].kind.value} word {found[0].word}')
        return found[0]
    return None


def _trace_key(product):
    return round(math.log1p(abs(product.trace)) * 1e8)


def inverse_free_violation(maps, max_len, tol=Config.IDENTITY_TOL, node_budget=Config.NODE_BUDGET):
    """Words u, v with P(v) ∘ P(u) = I, reported as the concatenated word u v."""
    buckets = {}
    found = []

    def visit(word, product):
        key = _trace_key(product)
        buckets.setdefault(key, []).append((word, product))
        # inverse pairs share |tr|
        for neighbour in (key - 1, key, key + 1):
            for other, other_product in buckets.get(neighbour, ()):
                scale = max(1.0, product.frobenius_norm() * other_product.frobenius_norm())
                joined = compose(product, other_product)
                if identity_distance(joined) <= tol * scale:
                    witness = other + word
                    found.append(WordWitness(witness, joined, WitnessKind.INVERSE,
                                             identity_distance(joined)))
                    return True
        return False

    enumerate_words(maps, max_len, visit, node_budget)
    if found:
        logger.info(f'Inverse-free violation: {found[0].word}')
        return found[0]
    return None


def _beam_search(maps, max_len, beam_width, node_budget):
    """Keep the ``beam_width`` products of each length closest to the identity."""
    beam = []
    for index, g in enumerate(maps, start=1):
        beam.append((identity_distance(g), (index,), g))
    beam.sort(key=lambda t: (t[0], t[1]))
    beam = beam[:beam_width]
    best = beam[0]
    nodes = len(maps)
    for _ in range(2, max_len + 1):
        candidates = []
        for _, letters, product in beam:
            for index, g in enumerate(maps, start=1):
                extended = compose(g, product)
                candidates.append((identity_distance(extended), letters + (index,), extended))
        nodes += len(candidates)
        if nodes > node_budget:
            raise BudgetExceeded('beam search exceeded node budget',
                                 partial=WordWitness(Word(best[1]), best[2],
                                                     WitnessKind.IDENTITY_APPROACH, best[0], partial=True))
        candidates.sort(key=lambda t: (t[0], t[1]))
        beam = candidates[:beam_width]
        if (beam[0][0], len(beam[0][1])) < (best[0], len(best[1])):
            best = beam[0]
    return best


def refute_semidiscrete(maps, max_len=Config.REFUTE_MAX_LEN, beam_width=Config.BEAM_WIDTH,
                        threshold=Config.IDENTITY_THRESHOLD, node_budget=Config.NODE_BUDGET,
                        exponent_max=Config.EXPONENT_MAX, log_window=Config.LOG_WINDOW,
                        permutation_cap=Config.PERMUTATION_CAP):
    """Search for a word whose product lies within ``threshold`` of the identity.

    Runs a beam search and, for tuples conjugate to affine maps over the
    rationals, an exact search over cancelling exponent multisets.
    """
    from system.explorer.affine import affine_identity_approach, exact_affine_tuple

    best = None
    partial = False
    try:
        distance, letters, product = _beam_search(maps, max_len, beam_width, node_budget)
        best = WordWitness(Word(letters), product, WitnessKind.IDENTITY_APPROACH, distance)
    except BudgetExceeded as e:
        logger.warning(f'Beam search stopped early: {e}')
        best = e.partial
        partial = True

    exact = exact_affine_tuple(maps)
    if exact is not None:
        found = affine_identity_approach(exact, max_len, exponent_max, log_window, permutation_cap)
        if found is not None:
            word = Word(found)
            product = word.evaluate(maps)
            candidate = WordWitness(word, product, WitnessKind.IDENTITY_APPROACH, identity_distance(product))
            if best is None or (candidate.distance, len(word)) < (best.distance, len(best.word)):
                best = candidate

    if best is not None and best.distance < threshold:
        logger.info(f'Identity approach {best.distance:.4f} by word {best.word}')
        if partial:
            return WordWitness(best.word, best.product, best.kind, best.distance, partial=True)
        return best
    if partial:
        raise BudgetExceeded('no identity approach found before budget ran out', partial=best)
    return None
