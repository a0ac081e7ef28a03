"""Trigonometric machinery behind the region characterization.

For a target lambda = a + ib with b > 0 and z = lambda - 1 = x + iy, each
gap t in (0, 1] corresponds bijectively to an angle u = Arg(z + t) in
[m, M) with m = Arg(lambda), M = Arg(lambda - 1); the map back is
t(u) = y cot u - x.  The function

    F(u) = log|z + t(u)| - log t(u) = log(y csc u) - log(y cot u - x)

is strictly convex, and lambda is an eigenvalue of the family exactly when
four angles in [m, M) sum to 2*pi with F-values summing to zero.  Two
regimes split on the sign of 3m + M - 2*pi: in the tight regime the sum
Psi attains a finite maximum 3 F(m) + F(U) at the vertex (U, m, m, m) with
U = 2*pi - 3m (a majorization/Karamata argument); otherwise the supremum
is infinite along u -> M.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import _scalar
from .errors import DomainError, RegimeError
from .region import SpectralPoint, eval_n

TWO_PI = _scalar.TWO_PI
HALF_PI = 0.5 * math.pi

# Below this gap value F saturates to +inf; the realization solver keeps
# its own, much larger, floor on t.
T_FLOOR = 1e-300

# Angle-vector membership in the feasible set: sum must be 2*pi to within
# this (vectors are built by solving for one coordinate, so this is slack
# for rounding only).
SUM_TOL = 1e-12


class Regime(Enum):
    TIGHT = "Tight"
    UNBOUNDED = "Unbounded"


@dataclass(frozen=True)
class AngleFrame:
    """Per-target geometry: shifted coordinates, angle window, and regime."""

    point: SpectralPoint
    x: float
    y: float
    m: float
    M: float
    regime: Regime
    U: float | None

    @property
    def tight(self) -> bool:
        return self.regime is Regime.TIGHT


def build_frame(p: SpectralPoint) -> AngleFrame:
    """Angle frame for a target with b > 0 and 0 <= a < 1.

    Angles come from the two-argument arctangent, never from b/a, so the
    a = 0 column is exact.  The regime boundary 3m + M = 2*pi itself is
    classified Unbounded.
    """
    if p.b <= 0.0:
        raise DomainError(f"frame requires b > 0, got b={p.b} (conjugate first)")
    if not (0.0 <= p.a < 1.0):
        raise DomainError(f"frame requires 0 <= a < 1, got a={p.a}")
    m, M = _scalar.frame_angles(p.a, p.b)
    tight = 3.0 * m + M > TWO_PI
    return AngleFrame(
        point=p,
        x=p.a - 1.0,
        y=p.b,
        m=m,
        M=M,
        regime=Regime.TIGHT if tight else Regime.UNBOUNDED,
        U=TWO_PI - 3.0 * m if tight else None,
    )


def _check_u(f: AngleFrame, u: float):
    if not (f.m <= u < f.M):
        raise DomainError(f"u={u} outside [m, M) = [{f.m}, {f.M})")


def t_of_u(f: AngleFrame, u: float) -> float:
    """Gap value t(u) = y cot u - x; decreases from t(m) = 1 to 0 as u -> M."""
    _check_u(f, u)
    return _scalar.t_of_u_xy(f.x, f.y, u)


def F(f: AngleFrame, u: float) -> float:
    """F(u) = log(y csc u) - log(y cot u - x); +inf once t(u) underflows."""
    _check_u(f, u)
    return _scalar.f_of_u_xy(f.x, f.y, u, T_FLOOR)


def F_second(f: AngleFrame, u: float) -> float:
    """Closed-form second derivative (x^2+y^2) / ((y cot u - x)^2 sin^2 u) > 0.

    Defined on all of [m, M) like F itself (the formula needs only
    t(u) > 0); finite-difference cross-checks must stay strictly interior
    where both one-sided probes are in domain.
    """
    _check_u(f, u)
    t = _scalar.t_of_u_xy(f.x, f.y, u)
    su = math.sin(u)
    return (f.x * f.x + f.y * f.y) / (t * t * su * su)


@dataclass(frozen=True)
class AngleVector:
    """Four angles summing to 2*pi (membership in the feasible set)."""

    u1: float
    u2: float
    u3: float
    u4: float

    def __post_init__(self):
        s = self.u1 + self.u2 + self.u3 + self.u4
        if abs(s - TWO_PI) > SUM_TOL:
            raise DomainError(f"angle sum {s} deviates from 2*pi by {abs(s - TWO_PI):.3e}")

    def as_tuple(self):
        return (self.u1, self.u2, self.u3, self.u4)


def psi(f: AngleFrame, uv: AngleVector) -> float:
    """Psi(u) = sum of F over the four coordinates."""
    return sum(F(f, u) for u in uv.as_tuple())


def max_psi_tight(f: AngleFrame) -> float:
    """The tight-regime maximum of Psi, 3 F(m) + F(U).

    Agrees with log(|lambda|^6 / N(a, b)) and is nonnegative exactly when
    G(a, b) >= 0.
    """
    if not f.tight:
        raise RegimeError(f"max_psi_tight requires the tight regime (3m+M = {3 * f.m + f.M:.6f} <= 2*pi)")
    return 3.0 * F(f, f.m) + F(f, f.U)


def max_psi_tight_log_form(f: AngleFrame) -> float:
    """Independent evaluation of the tight-regime maximum, log(|lambda|^6 / N)."""
    if not f.tight:
        raise RegimeError("log-form maximum requires the tight regime")
    p = f.point
    return math.log(p.r ** 3 / eval_n(p.a, p.b))


def regime_witness(f: AngleFrame) -> float:
    """tan(3m) - b/(1-a) from the algebraic triple-angle form.

    Positive exactly when 3m + M > 2*pi, on the lemma range a > 0 and
    b^2 > 3a^2 (where 3m lies in (pi, 3pi/2) and the tangent comparison is
    monotone).  The a = 0 column needs no witness: there
    3m + M = 5*pi/2 - arctan(b) > 2*pi always.
    """
    a, b = f.point.a, f.point.b
    if a <= 0.0:
        raise DomainError("regime witness requires a > 0")
    if b * b <= 3.0 * a * a:
        raise DomainError(f"regime witness requires b^2 > 3a^2, got b^2={b * b}, 3a^2={3 * a * a}")
    tan3m = b * (b * b - 3.0 * a * a) / (a * (3.0 * b * b - a * a))
    return tan3m - b / (1.0 - a)


def feasible_vector(f: AngleFrame, u1: float, u2: float, u3: float) -> AngleVector | None:
    """Complete (u1, u2, u3) with u4 = 2*pi - u1 - u2 - u3, or None if infeasible."""
    u4 = TWO_PI - u1 - u2 - u3
    if not (f.m <= u4 < f.M):
        return None
    return AngleVector(u1, u2, u3, u4)
