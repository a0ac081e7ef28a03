"""Closed-form region predicates for the 4-cycle stochastic spectral region.

A nonreal eigenvalue lambda = a + ib of the 4-cycle row-stochastic family
lies in the region described by three constraints on (a, b_plus):

    0 <= a <= 1,        a + b_plus <= 1,        G(a, b_plus) >= 0,

where G(a, b) = (b^2 + a^2 + a)^2 + 2 a^2 - b^2.  The right edge is the
segment a + b = 1 and the left boundary is the curve G = 0 joining i to 0.
This module evaluates the polynomials behind those predicates and
classifies points against band tolerances; everything is a pure function
of its arguments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from .errors import DomainError

# Band half-width for boundary classification and the real-axis gate.
# Both separate root-finder noise from genuine constraint violations and
# are overridable per call (and from the CLI).
EPS_BAND = 1e-9
EPS_REAL = 1e-10


@dataclass(frozen=True)
class SpectralPoint:
    """A candidate eigenvalue a + ib with its derived quantities.

    Construction accepts every finite (a, b); admissibility is decided by
    :func:`classify`, not here.
    """

    a: float
    b: float
    b_plus: float = field(init=False)
    r: float = field(init=False)

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise DomainError(f"spectral point must be finite, got ({self.a}, {self.b})")
        object.__setattr__(self, "a", float(self.a))
        object.__setattr__(self, "b", float(self.b))
        object.__setattr__(self, "b_plus", abs(self.b))
        object.__setattr__(self, "r", self.a * self.a + self.b * self.b)

    @classmethod
    def of(cls, lam: complex) -> "SpectralPoint":
        return cls(lam.real, lam.imag)

    def as_complex(self) -> complex:
        return complex(self.a, self.b)

    def upper(self) -> "SpectralPoint":
        """The representative with nonnegative imaginary part."""
        return self if self.b >= 0.0 else SpectralPoint(self.a, self.b_plus)


class RegionKind(Enum):
    INTERIOR = "Interior"
    RIGHT_EDGE = "RightEdge"
    LEFT_CURVE = "LeftCurve"
    REAL_AXIS = "RealAxis"
    EXTERIOR = "Exterior"


class Constraint(Enum):
    A_RANGE = "ARange"
    RIGHT_EDGE = "RightEdge"
    G_SIGN = "GSign"


@dataclass(frozen=True)
class RegionVerdict:
    """Classification of a point, with the signed margins that decided it."""

    kind: RegionKind
    violated: tuple
    g_value: float
    right_slack: float  # 1 - a - b_plus
    a: float

    @property
    def admissible(self) -> bool:
        return self.kind in (RegionKind.INTERIOR, RegionKind.RIGHT_EDGE, RegionKind.LEFT_CURVE)


def eval_g(a: float, b: float) -> float:
    """Left-boundary polynomial G(a,b) = (b^2+a^2+a)^2 + 2a^2 - b^2."""
    s = b * b + a * a + a
    return s * s + 2.0 * a * a - b * b


def eval_g_r_form(a: float, b: float) -> float:
    """G rewritten in r = a^2 + b^2: r^2 + (2a-1) r + 4a^2.

    Algebraically identical to :func:`eval_g`; kept as an independent
    evaluation route for consistency checks.
    """
    r = a * a + b * b
    return r * r + (2.0 * a - 1.0) * r + 4.0 * a * a


def eval_n(a: float, b: float) -> float:
    """N(a,b) = 4a^3 - 3a^2 - 4ab^2 + b^2, affine in s = b^2 with slope 1-4a."""
    return 4.0 * a ** 3 - 3.0 * a * a - 4.0 * a * b * b + b * b


def discriminant(a: float) -> float:
    """Discriminant 1 - 4a - 12a^2 = -(2a+1)(6a-1) of G as a quadratic in s = b^2."""
    return 1.0 - 4.0 * a - 12.0 * a * a


def s_roots(a: float) -> tuple:
    """Both roots (s_minus, s_plus) of s^2 + (2a^2+2a-1) s + (a^2+a)^2 + 2a^2.

    G(a, b) <= 0 exactly when b^2 lies between them.  The smaller root is
    computed from the product of the roots, which stays accurate for small
    a where the direct subtraction cancels catastrophically.
    """
    disc = discriminant(a)
    if disc < 0.0:
        raise DomainError(f"no real roots in s: discriminant({a}) = {disc} < 0")
    neg_b = 1.0 - 2.0 * a - 2.0 * a * a  # -(2a^2+2a-1), positive on [0, 1/6]
    c = (a * a + a) ** 2 + 2.0 * a * a
    s_plus = 0.5 * (neg_b + math.sqrt(disc))
    s_minus = c / s_plus if s_plus > 0.0 else 0.5 * neg_b
    return s_minus, s_plus


def s_minus(a: float) -> float:
    """Smaller root of G in s = b^2; defined while discriminant(a) >= 0."""
    return s_roots(a)[0]


def s_zero(a: float) -> float:
    """Unique root s_0(a) = a^2 (3-4a) / (1-4a) of N in s = b^2, for a < 1/4."""
    if a >= 0.25:
        raise DomainError(f"s_zero requires a < 1/4, got {a}")
    return a * a * (3.0 - 4.0 * a) / (1.0 - 4.0 * a)


def factorization_residual(a: float, b: float) -> float:
    """Residual of the identity |lambda|^6 - N(a,b) = |lambda-1|^2 G(a,b).

    Analytically zero for every finite (a, b); numerically tiny relative to
    the cubed modulus.
    """
    r = a * a + b * b
    mz2 = (a - 1.0) * (a - 1.0) + b * b
    return r ** 3 - eval_n(a, b) - mz2 * eval_g(a, b)


def classify(p: SpectralPoint, eps_band: float = EPS_BAND, eps_real: float = EPS_REAL) -> RegionVerdict:
    """Classify a point against the region constraints.

    Points with |b| <= eps_real are reported as RealAxis (the region
    statement concerns nonreal eigenvalues only).  Otherwise each violated
    constraint is collected; with none violated, band hits on the right
    edge and the left curve are reported, the right edge winning the
    tie at the corner i.  The a-range check tolerates eps_band of
    root-finder noise below 0 and treats a >= 1 - eps_band as exterior:
    no constructor exists there for nonreal targets.
    """
    if eps_band <= 0.0 or eps_real <= 0.0:
        raise DomainError("tolerances must be positive")
    a, bp = p.a, p.b_plus
    g = eval_g(a, bp)
    right_slack = 1.0 - a - bp
    if bp <= eps_real:
        return RegionVerdict(RegionKind.REAL_AXIS, (), g, right_slack, a)
    violated = []
    if a < -eps_band or a >= 1.0 - eps_band:
        violated.append(Constraint.A_RANGE)
    if right_slack < -eps_band:
        violated.append(Constraint.RIGHT_EDGE)
    if g < -eps_band:
        violated.append(Constraint.G_SIGN)
    if violated:
        return RegionVerdict(RegionKind.EXTERIOR, tuple(violated), g, right_slack, a)
    if abs(right_slack) <= eps_band:
        return RegionVerdict(RegionKind.RIGHT_EDGE, (), g, right_slack, a)
    if abs(g) <= eps_band:
        return RegionVerdict(RegionKind.LEFT_CURVE, (), g, right_slack, a)
    return RegionVerdict(RegionKind.INTERIOR, (), g, right_slack, a)
