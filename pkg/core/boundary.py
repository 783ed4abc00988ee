"""Points of the boundary circle R ∪ {∞} in the angle chart x = cot(theta)."""
import math
from dataclasses import dataclass

PI = math.pi
INF = math.inf

# Angles this close to 0 or pi are the point at infinity.
_WRAP_EPS = 1e-14


def normalize_angle(theta):
    theta = math.fmod(theta, PI)
    if theta < 0:
        theta += PI
    if theta >= PI - _WRAP_EPS or theta < _WRAP_EPS:
        theta = 0.0
    return theta


def circular_distance(alpha, beta):
    diff = abs(normalize_angle(alpha) - normalize_angle(beta))
    return min(diff, PI - diff)


@dataclass(frozen=True, order=True)
class BoundaryPoint:
    """A point of the extended real line, stored as an angle in [0, pi).

    Increasing theta corresponds to decreasing x, and theta = 0 is ∞.
    """
    theta: float

    def __post_init__(self):
        object.__setattr__(self, 'theta', normalize_angle(float(self.theta)))

    @classmethod
    def from_real(cls, x):
        if math.isinf(x):
            return cls(0.0)
        return cls(math.atan2(1.0, float(x)))

    @classmethod
    def from_vector(cls, u, v):
        if u == 0 and v == 0:
            raise ValueError('zero vector has no projective class')
        return cls(math.atan2(v, u))

    @property
    def is_infinity(self):
        return self.theta == 0.0

    def to_real(self):
        if self.is_infinity:
            return INF
        return math.cos(self.theta) / math.sin(self.theta)

    def vector(self):
        return math.cos(self.theta), math.sin(self.theta)

    def disc_angle(self):
        """Angle of this point on the unit circle after the Cayley map."""
        return (-2.0 * self.theta) % (2.0 * PI)

    def distance(self, other):
        return circular_distance(self.theta, other.theta)

    def __repr__(self):
        x = self.to_real()
        return f'BoundaryPoint({"inf" if math.isinf(x) else repr(x)})'
