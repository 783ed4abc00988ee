"""Real Möbius maps as normalized elements of PSL(2,R)."""
import cmath
import logging
import math
from dataclasses import dataclass, field
from enum import Enum
from fractions import Fraction
from typing import Optional, Tuple

import numpy as np

from config import Config
from core.boundary import BoundaryPoint, INF, normalize_angle
from core.errors import AmbiguousClass, InvalidMap

logger = logging.getLogger(__name__)

# Products whose entries exceed this are not renormalized; ad - bc is
# no longer computed reliably in floating point there.
_RENORMALIZE_LIMIT = 1e6


class MapClass(str, Enum):
    IDENTITY = 'identity'
    ELLIPTIC = 'elliptic'
    PARABOLIC = 'parabolic'
    HYPERBOLIC = 'hyperbolic'


def _canonical_sign(coefficients):
    for value in coefficients:
        if value != 0:
            if value < 0:
                return tuple(-x for x in coefficients)
            return tuple(coefficients)
    return tuple(coefficients)


def _is_exact(value):
    return isinstance(value, (int, Fraction)) and not isinstance(value, bool)


@dataclass(frozen=True)
class MoebiusMap:
    """z -> (az + b)/(cz + d) with ad - bc = 1 and a canonical sign.

    ``exact`` keeps the unnormalized rational coefficients when the map
    was built from integers or fractions; it is dropped by float-only
    operations.
    """
    a: float
    b: float
    c: float
    d: float
    exact: Optional[Tuple[Fraction, Fraction, Fraction, Fraction]] = field(
        default=None, compare=False, repr=False)

    @classmethod
    def from_coefficients(cls, a, b, c, d):
        coefficients = (a, b, c, d)
        exact = None
        if all(_is_exact(x) for x in coefficients):
            exact = _canonical_sign(tuple(Fraction(x) for x in coefficients))
            det = float(exact[0] * exact[3] - exact[1] * exact[2])
        else:
            try:
                values = [float(x) for x in coefficients]
            except (TypeError, ValueError) as e:
                raise InvalidMap(f'non-numeric coefficient: {e}')
            if not all(math.isfinite(x) for x in values):
                raise InvalidMap(f'non-finite coefficient in {coefficients!r}')
            det = values[0] * values[3] - values[1] * values[2]
        if not det > 0:
            raise InvalidMap(f'determinant {det!r} is not positive')
        scale = math.sqrt(det)
        values = _canonical_sign(tuple(float(x) / scale for x in coefficients))
        return cls(*values, exact=exact)

    @classmethod
    def identity(cls):
        return cls(1.0, 0.0, 0.0, 1.0, exact=(Fraction(1), Fraction(0), Fraction(0), Fraction(1)))

    @classmethod
    def affine(cls, lam, kappa):
        """z -> lam * z + kappa."""
        return cls.from_coefficients(lam, kappa, 0, 1)

    @classmethod
    def rotation(cls, phi):
        """Elliptic map fixing i that shifts boundary angles by phi."""
        cos, sin = math.cos(phi), math.sin(phi)
        return cls.from_coefficients(cos, -sin, sin, cos)

    @classmethod
    def from_matrix(cls, matrix):
        (a, b), (c, d) = matrix
        return cls.from_coefficients(a, b, c, d)

    @property
    def coefficients(self):
        return self.a, self.b, self.c, self.d

    @property
    def trace(self):
        return self.a + self.d

    @property
    def is_affine(self):
        return self.c == 0

    def matrix(self):
        return np.array([[self.a, self.b], [self.c, self.d]], dtype=float)

    def frobenius_norm(self):
        return math.sqrt(self.a ** 2 + self.b ** 2 + self.c ** 2 + self.d ** 2)

    def spectral_norm(self):
        return float(np.linalg.norm(self.matrix(), ord=2))

    def __call__(self, x):
        """Action on the extended real line."""
        if math.isinf(x):
            return self.a / self.c if self.c != 0 else INF
        denominator = self.c * x + self.d
        if denominator == 0:
            return INF
        return (self.a * x + self.b) / denominator

    def act_on_angle(self, theta):
        u, v = math.cos(theta), math.sin(theta)
        return normalize_angle(math.atan2(self.c * u + self.d * v, self.a * u + self.b * v))

    def act_on_point(self, point):
        return BoundaryPoint(self.act_on_angle(point.theta))

    def act_on_upper(self, z):
        return (self.a * z + self.b) / (self.c * z + self.d)

    def inverse(self):
        exact = None
        if self.exact is not None:
            a, b, c, d = self.exact
            exact = _canonical_sign((d, -b, -c, a))
        values = _canonical_sign((self.d, -self.b, -self.c, self.a))
        return MoebiusMap(*values, exact=exact)

    def compose(self, other, keep_exact=False):
        """self ∘ other."""
        return compose(self, other, keep_exact=keep_exact)

    def conjugate(self, g, keep_exact=False):
        """g ∘ self ∘ g^-1."""
        return compose(compose(g, self, keep_exact), g.inverse(), keep_exact)

    def __repr__(self):
        return f'MoebiusMap(a={self.a!r}, b={self.b!r}, c={self.c!r}, d={self.d!r})'


def compose(m1, m2, keep_exact=False):
    """The map z -> m1(m2(z))."""
    a = m1.a * m2.a + m1.b * m2.c
    b = m1.a * m2.b + m1.b * m2.d
    c = m1.c * m2.a + m1.d * m2.c
    d = m1.c * m2.b + m1.d * m2.d
    if max(abs(a), abs(b), abs(c), abs(d)) < _RENORMALIZE_LIMIT:
        det = a * d - b * c
        if det > 0:
            scale = math.sqrt(det)
            a, b, c, d = a / scale, b / scale, c / scale, d / scale
    exact = None
    if keep_exact and m1.exact is not None and m2.exact is not None:
        p, q, r, s = m1.exact
        t, u, v, w = m2.exact
        exact = _canonical_sign((p * t + q * v, p * u + q * w, r * t + s * v, r * u + s * w))
    return MoebiusMap(*_canonical_sign((a, b, c, d)), exact=exact)


def commutator(f, g):
    """[f, g] = f ∘ g ∘ f^-1 ∘ g^-1."""
    keep = f.exact is not None and g.exact is not None
    return compose(compose(f, g, keep), compose(f.inverse(), g.inverse(), keep), keep)


def psl_distance(m1, m2):
    """Frobenius distance in PSL(2,R), minimized over the sign of m2."""
    minus = math.sqrt(sum((x - y) ** 2 for x, y in zip(m1.coefficients, m2.coefficients)))
    plus = math.sqrt(sum((x + y) ** 2 for x, y in zip(m1.coefficients, m2.coefficients)))
    return min(minus, plus)


def identity_distance(m):
    return psl_distance(m, MoebiusMap.identity())


def _exactly_parabolic(m):
    if m.exact is None:
        return False
    a, b, c, d = m.exact
    return (a + d) ** 2 == 4 * (a * d - b * c)


def classify_map(m, strict=False, tol=Config.CLASSIFY_TOL):
    """Identity, elliptic, parabolic or hyperbolic by |tr|.

    In strict mode a float trace within ``tol`` of 2 raises AmbiguousClass;
    exact rational maps are decided by exact arithmetic instead.
    """
    if identity_distance(m) <= tol:
        return MapClass.IDENTITY
    t = abs(m.trace)
    gap = t - 2.0
    if strict and abs(gap) <= tol and not _exactly_parabolic(m):
        raise AmbiguousClass(m.trace, tol)
    if gap < -tol:
        return MapClass.ELLIPTIC
    if gap > tol:
        return MapClass.HYPERBOLIC
    return MapClass.PARABOLIC


@dataclass(frozen=True)
class FixedPointData:
    map_class: MapClass
    attracting: Optional[BoundaryPoint] = None
    repelling: Optional[BoundaryPoint] = None
    interior: Optional[complex] = None
    multiplier: Optional[float] = None

    @property
    def fixes_everything(self):
        return self.map_class is MapClass.IDENTITY

    def boundary_points(self):
        return [p for p in (self.attracting, self.repelling) if p is not None]


def _eigen_direction(a, b, c, d, mu):
    first = (b, mu - a)
    second = (mu - d, c)
    if math.hypot(*first) >= math.hypot(*second):
        return BoundaryPoint.from_vector(*first)
    return BoundaryPoint.from_vector(*second)


def fixed_points(m, tol=Config.CLASSIFY_TOL):
    """Fixed points by eigenvector, with the derivative at the repelling point."""
    map_class = classify_map(m, tol=tol)
    if map_class is MapClass.IDENTITY:
        return FixedPointData(map_class)

    a, b, c, d = m.coefficients
    t = a + d
    if t < 0:
        a, b, c, d, t = -a, -b, -c, -d, -t

    if map_class is MapClass.ELLIPTIC:
        root = math.sqrt(max(4.0 - t * t, 0.0))
        z = complex((a - d) / (2 * c), root / (2 * abs(c)))
        return FixedPointData(map_class, interior=z)

    if map_class is MapClass.PARABOLIC:
        return FixedPointData(map_class, attracting=_eigen_direction(a, b, c, d, t / 2.0))

    mu = (t + math.sqrt(t * t - 4.0)) / 2.0
    attracting = _eigen_direction(a, b, c, d, mu)
    repelling = _eigen_direction(a, b, c, d, 1.0 / mu)
    return FixedPointData(map_class, attracting=attracting, repelling=repelling,
                          multiplier=mu * mu)


def hyperbolic_from_fixed_points(attracting, repelling, multiplier):
    """Hyperbolic map with the given boundary fixed points and derivative
    ``multiplier`` > 1 at the repelling point."""
    if not multiplier > 1:
        raise InvalidMap(f'multiplier {multiplier!r} must exceed 1')
    if attracting.distance(repelling) == 0:
        raise InvalidMap('attracting and repelling points coincide')
    s = math.sqrt(multiplier)
    basis = np.array([attracting.vector(), repelling.vector()]).T
    matrix = basis @ np.diag([s, 1.0 / s]) @ np.linalg.inv(basis)
    return MoebiusMap.from_matrix(matrix)


def upper_to_disc(z):
    """Cayley map from the upper half-plane to the unit disc."""
    return (z - 1j) / (z + 1j)


def disc_to_boundary(w):
    return BoundaryPoint(-cmath.phase(w) / 2.0)
