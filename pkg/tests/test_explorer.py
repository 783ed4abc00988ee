import itertools
from fractions import Fraction

import numpy as np
import pytest

from core.errors import BudgetExceeded, PreconditionFailed
from core.exact_affine import ExactAffine
from core.moebius import MapClass, MoebiusMap, classify_map, identity_distance
from system.explorer.affine import (ExactCertificate, Inapplicable, Refuted, cancelling_combination,
                                    certify_no_elliptic_affine, exact_affine_tuple, extended_f0, f0_tuple,
                                    fourier_motzkin, hump_bound, translation_accumulation)
from system.explorer.words import (Word, WitnessKind, enumerate_words, find_elliptic_or_identity,
                                   inverse_free_violation, refute_semidiscrete, word_count)

EXHIBITED = Word((1, 3, 1, 1, 1, 2, 2, 2, 2))


@pytest.fixture
def f0():
    """2z + 1, z/3, 5z - 4."""
    return f0_tuple()


@pytest.fixture
def inverse_pair():
    """2z and z/2."""
    return (MoebiusMap.affine(2, 0), MoebiusMap.affine(Fraction(1, 2), 0))


@pytest.fixture
def hump():
    """2z and z/2 + 1."""
    return (MoebiusMap.affine(2, 0), MoebiusMap.affine(Fraction(1, 2), 1))


def test_word_application_order():
    """The first letter is applied first."""
    maps = (MoebiusMap.affine(2, 0), MoebiusMap.affine(1, 1))
    assert Word((1, 2)).evaluate(maps)(0.0) == pytest.approx(1.0)
    assert Word((2, 1)).evaluate(maps)(0.0) == pytest.approx(2.0)
    assert str(Word((1, 2)) + Word((3,))) == '1 2 3'
    with pytest.raises(ValueError):
        Word(())


def test_exhibited_f0_word(f0):
    """1 3 1 1 1 2 2 2 2 is 80/81 z + 15/81, about 0.1866 from the identity."""
    product = EXHIBITED.evaluate(f0, keep_exact=True)
    assert ExactAffine.from_map(product) == ExactAffine(Fraction(80, 81), Fraction(15, 81))
    assert identity_distance(product) == pytest.approx(0.1866, abs=1e-3)


def test_enumeration_order_and_count():
    """Words come by length, then lexicographically."""
    seen = []
    maps = (MoebiusMap.affine(2, 0), MoebiusMap.affine(3, 0))
    visited = enumerate_words(maps, 3, lambda word, product: seen.append(word.letters) and False)
    assert visited == word_count(2, 3) == 14
    assert seen[:6] == [(1,), (2,), (1, 1), (1, 2), (2, 1), (2, 2)]


def test_enumeration_budget():
    """Budgets are checked before any work is done."""
    maps = (MoebiusMap.affine(2, 0), MoebiusMap.affine(3, 0))
    with pytest.raises(BudgetExceeded):
        enumerate_words(maps, 30, lambda word, product: False, node_budget=1000)


def test_find_identity_word(inverse_pair):
    """2z then z/2 is the identity at length two."""
    witness = find_elliptic_or_identity(inverse_pair, 4)
    assert witness.kind is WitnessKind.IDENTITY
    assert witness.word == Word((1, 2))
    assert witness.revalidate(inverse_pair)


def test_find_elliptic_word():
    """A rotation is found at length one."""
    maps = (MoebiusMap.affine(2, 0), MoebiusMap.rotation(0.7))
    witness = find_elliptic_or_identity(maps, 3)
    assert witness.kind is WitnessKind.ELLIPTIC
    assert witness.word == Word((2,))
    assert classify_map(witness.product) is MapClass.ELLIPTIC


def test_no_elliptic_word_in_diagonal_pair():
    """2z and 3z generate only hyperbolic words."""
    maps = (MoebiusMap.affine(2, 0), MoebiusMap.affine(3, 0))
    assert find_elliptic_or_identity(maps, 5) is None
    assert inverse_free_violation(maps, 5) is None


def test_inverse_free_violation(inverse_pair):
    """The concatenated witness evaluates to the identity."""
    witness = inverse_free_violation(inverse_pair, 3)
    assert witness.kind is WitnessKind.INVERSE
    assert witness.word == Word((1, 2))
    assert identity_distance(witness.word.evaluate(inverse_pair)) < 1e-10


def test_refute_semidiscrete_on_f0(f0):
    """A word of length at most 9 comes within 0.25 of the identity."""
    witness = refute_semidiscrete(f0, max_len=9, beam_width=64, threshold=0.25)
    assert witness is not None
    assert len(witness.word) <= 9
    assert witness.distance <= identity_distance(EXHIBITED.evaluate(f0)) + 1e-12
    assert witness.revalidate(f0)


def test_refute_semidiscrete_finds_nothing_for_diagonal_pair():
    """Products of 2z and 3z stay away from the identity."""
    maps = (MoebiusMap.affine(2, 0), MoebiusMap.affine(3, 0))
    assert refute_semidiscrete(maps, max_len=6, beam_width=16, threshold=0.25) is None


def test_refute_semidiscrete_finds_nothing_for_hump(hump):
    """Every product of 2z and z/2 + 1 with multiplier 1 translates by at least 1."""
    assert refute_semidiscrete(hump, max_len=9, beam_width=64, threshold=0.25) is None


def test_exact_certificate_for_f0(f0):
    """Primes 2, 3 and 5 appear in separate generators, so no product has multiplier 1."""
    result = certify_no_elliptic_affine(f0)
    assert isinstance(result, ExactCertificate)
    assert result.primes == (2, 3, 5)
    assert result.exponent_vectors == ((1, 0, 0), (0, -1, 0), (0, 0, 1))


def test_exact_certificate_for_extended_f0():
    """Extra generators with fresh primes keep the certificate."""
    maps = extended_f0(5)
    assert len(maps) == 5
    assert isinstance(certify_no_elliptic_affine(maps), ExactCertificate)
    for m in maps[3:]:
        g = ExactAffine.from_map(m)
        assert all(g(x) != x for x in (-1, 0, 1))


def test_exact_refutation(inverse_pair):
    """2z and z/2 compose to the identity exactly."""
    result = certify_no_elliptic_affine(inverse_pair)
    assert isinstance(result, Refuted)
    assert sorted(result.letters) == [1, 2]


def test_cancelling_but_no_identity(hump):
    """2z and z/2 + 1 cancel multipliers without composing to the identity."""
    result = certify_no_elliptic_affine(hump)
    assert isinstance(result, Inapplicable)
    assert result.cancelling_counts == (1, 1)


def test_non_affine_tuple_is_inapplicable():
    """Maps without a shared rational fixed point are out of scope."""
    maps = (MoebiusMap.affine(4, 0), MoebiusMap.from_coefficients(5, 4, 4, 5))
    assert isinstance(certify_no_elliptic_affine(maps), Inapplicable)
    assert exact_affine_tuple(maps) is None


def test_shared_fixed_point_is_moved_to_infinity():
    """Maps fixing 0 are conjugated to affine maps."""
    maps = (MoebiusMap.from_coefficients(1, 0, 1, 1), MoebiusMap.from_coefficients(2, 0, 1, 1))
    exact = exact_affine_tuple(maps)
    assert exact is not None
    assert exact.conjugation_point == 0
    assert exact.maps[0].is_translation


def test_fourier_motzkin():
    """Feasible systems return a point, infeasible ones None."""
    solution = fourier_motzkin([([1, 1], 4), ([-1, 0], -1), ([0, -1], -1)], 2)
    assert solution[0] >= 1 and solution[1] >= 1 and sum(solution) <= 4
    assert fourier_motzkin([([1], 1), ([-1], -2)], 1) is None


def test_cancelling_combination():
    """Exponent rows 1 and -2 cancel with counts 2 and 1."""
    assert cancelling_combination([[1], [-2]]) == [2, 1]
    assert cancelling_combination([[1, 0], [0, 1]]) is None


def test_translation_accumulation_closed_form(hump):
    """g^3 ∘ f^3 is z + 7/4 for f = 2z, g = z/2 + 1."""
    f, g = (ExactAffine.from_map(m) for m in hump)
    closed = translation_accumulation(f, g, 3)
    assert closed.kappa == Fraction(7, 4)
    assert g.power(3).compose(f.power(3)) == closed
    assert hump_bound(f, g) == 2


def test_translation_accumulation_precondition():
    """Multipliers must be reciprocal."""
    with pytest.raises(PreconditionFailed):
        translation_accumulation(ExactAffine(2, 0), ExactAffine(Fraction(1, 3), 1), 2)


def _random_affine_tuple(rng):
    maps = []
    for _ in range(int(rng.integers(2, 4))):
        a, b, c = (int(x) for x in rng.integers(-2, 3, size=3))
        lam = Fraction(2) ** a * Fraction(3) ** b * Fraction(5) ** c
        maps.append(MoebiusMap.affine(lam, int(rng.integers(-3, 4))))
    return tuple(maps)


def _unit_multiplier_counts(maps, max_total=6):
    multipliers = [ExactAffine.from_map(m).lam for m in maps]
    for counts in itertools.product(range(max_total + 1), repeat=len(maps)):
        if 1 <= sum(counts) <= max_total:
            product = Fraction(1)
            for lam, c in zip(multipliers, counts):
                product *= lam ** c
            if product == 1:
                return counts
    return None


def test_exact_certificate_agrees_with_brute_force():
    """Seeded affine tuples: certificates only where no short product has multiplier 1."""
    rng = np.random.default_rng(314)
    for _ in range(100):
        maps = _random_affine_tuple(rng)
        result = certify_no_elliptic_affine(maps)
        brute = _unit_multiplier_counts(maps)
        if isinstance(result, ExactCertificate):
            assert brute is None, maps
        elif brute is not None:
            assert not result.certified
        if isinstance(result, Refuted):
            assert exact_affine_tuple(maps).evaluate(result.letters) == (1, 0)
        if isinstance(result, Inapplicable) and result.cancelling_counts is not None:
            lam = Fraction(1)
            for g, c in zip(maps, result.cancelling_counts):
                lam *= ExactAffine.from_map(g).lam ** c
            assert lam == 1


def test_translation_accumulation_matches_products():
    """The closed form equals g^n ∘ f^n exactly for n up to 20."""
    rng = np.random.default_rng(2718)
    for _ in range(10):
        a = Fraction(2) ** int(rng.integers(1, 3)) * Fraction(3) ** int(rng.integers(-1, 2))
        b, d = (Fraction(int(x), int(y)) for x, y in rng.integers(1, 9, size=(2, 2)))
        f, g = ExactAffine(a, b), ExactAffine(1 / a, -d)
        for n in range(1, 21):
            assert g.power(n).compose(f.power(n)) == translation_accumulation(f, g, n)


if __name__ == '__main__':
    pytest.main([__file__])
