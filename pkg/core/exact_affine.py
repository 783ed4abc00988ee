"""Exact affine maps z -> lam*z + kappa over the rationals."""
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict

from sympy import factorint

from core.errors import InvalidMap
from core.moebius import MoebiusMap

logger = logging.getLogger(__name__)

# Integers beyond this many bits are left unfactored.
FACTOR_BIT_LIMIT = 200


def prime_exponents(value):
    """Signed prime exponents of a positive rational and the unfactored residual."""
    value = Fraction(value)
    if value <= 0:
        raise InvalidMap(f'{value} is not positive')
    exponents = {}
    residual = Fraction(1)
    for part, sign in ((value.numerator, 1), (value.denominator, -1)):
        if part.bit_length() > FACTOR_BIT_LIMIT:
            logger.warning(f'Skipping factorization of a {part.bit_length()}-bit integer')
            residual *= Fraction(part) ** sign
            continue
        for prime, power in factorint(part).items():
            exponents[int(prime)] = exponents.get(int(prime), 0) + sign * int(power)
    return {p: e for p, e in sorted(exponents.items()) if e != 0}, residual


@dataclass(frozen=True)
class ExactAffine:
    lam: Fraction
    kappa: Fraction
    factors: Dict[int, int] = field(default=None, compare=False, repr=False)
    residual: Fraction = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, 'lam', Fraction(self.lam))
        object.__setattr__(self, 'kappa', Fraction(self.kappa))
        if self.lam <= 0:
            raise InvalidMap(f'multiplier {self.lam} must be positive')
        if self.factors is None:
            factors, residual = prime_exponents(self.lam)
            object.__setattr__(self, 'factors', factors)
            object.__setattr__(self, 'residual', residual)

    @classmethod
    def from_map(cls, m):
        if m.exact is None:
            raise InvalidMap('map has no exact coefficients')
        a, b, c, d = m.exact
        if c != 0:
            raise InvalidMap('map does not fix ∞')
        return cls(a / d, b / d)

    @classmethod
    def from_matrix(cls, a, b, c, d):
        if c != 0:
            raise InvalidMap('map does not fix ∞')
        return cls(Fraction(a) / Fraction(d), Fraction(b) / Fraction(d))

    @property
    def is_translation(self):
        return self.lam == 1

    @property
    def is_identity(self):
        return self.lam == 1 and self.kappa == 0

    @property
    def fixed_point(self):
        """Finite fixed point, or None for translations."""
        if self.lam == 1:
            return None
        return self.kappa / (1 - self.lam)

    def __call__(self, z):
        return self.lam * z + self.kappa

    def compose(self, other):
        """self ∘ other."""
        return ExactAffine(self.lam * other.lam, self.lam * other.kappa + self.kappa)

    def inverse(self):
        return ExactAffine(1 / self.lam, -self.kappa / self.lam)

    def power(self, n):
        if n < 0:
            return self.inverse().power(-n)
        result = ExactAffine(1, 0)
        for _ in range(n):
            result = self.compose(result)
        return result

    def exponent_vector(self, primes):
        return [self.factors.get(p, 0) for p in primes]

    def to_moebius(self):
        return MoebiusMap.from_coefficients(self.lam, self.kappa, 0, 1)

    def __str__(self):
        return f'{self.lam}*z + {self.kappa}'
