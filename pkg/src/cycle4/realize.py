"""Constructive inverse solver: parameters realizing an admissible eigenvalue.

Dispatch follows the region classification:

* right edge (a + b = 1): all four parameters equal 1 - b, closed form;
* left curve (G = 0): the one-parameter subfamily, alpha recovered from
  the target in closed form;
* strict interior: the intermediate-value construction.  Psi is negative
  at the all-pi/2 vector and positive at a constructed endpoint (the
  maximizing vertex in the tight regime, an angle pushed toward M
  otherwise); bisection along the segment brings |Psi| under tolerance.

Every certificate is verified against the eigensolver, an independent
code path from the construction itself.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

from . import angles
from .angles import AngleFrame, AngleVector, Regime, build_frame
from .errors import (
    ConvergenceError,
    DomainError,
    NotOnCurve,
    NotStrictInterior,
    OutsideRegion,
    VerificationError,
)
from .matrix import GapParams, MatrixParams, al_alpha_of, eigenvalues
from .region import EPS_BAND, EPS_REAL, RegionKind, SpectralPoint, classify, eval_g

HALF_PI = 0.5 * math.pi
TWO_PI = angles.TWO_PI

EIG_TOL = 1e-8
PSI_TOL = 1e-10
BISECT_BUDGET = 200
# Gap floor for the unbounded-regime endpoint schedule: parameters resolve
# gaps only down to 1 - PARAM_MAX, and F stays comfortably finite here.
T_FLOOR = 1e-12
EPS_START = 1e-2


class Method(Enum):
    INTERIOR_IVT = "InteriorIVT"
    RIGHT_EDGE = "RightEdge"
    LEFT_CURVE = "LeftCurve"


@dataclass(frozen=True)
class RealizationCertificate:
    """A realized target: parameters plus the residual evidence."""

    target: SpectralPoint
    params: MatrixParams
    gaps: GapParams
    angles: AngleVector | None
    method: Method
    eig_residual: float
    psi_residual: float | None


def _verified_residual(params: MatrixParams, lam: complex) -> float:
    _, dist = eigenvalues(params).nearest(lam)
    if dist > EIG_TOL:
        raise VerificationError(f"nearest eigenvalue is {dist:.3e} from target {lam} (tol {EIG_TOL})")
    return dist


def realize_right_edge(x: float) -> RealizationCertificate:
    """Realize lambda = (1 - x) + ix on the right edge, x in (0, 1].

    All-equal parameters 1 - x give (z + x)^4 = x^4 whose nonreal roots
    are exactly 1 - x +/- ix.
    """
    if not (0.0 < x <= 1.0):
        raise DomainError(f"right edge requires x in (0, 1], got {x}")
    params = MatrixParams(1.0 - x, 1.0 - x, 1.0 - x, 1.0 - x)
    target = SpectralPoint(1.0 - x, x)
    resid = _verified_residual(params, target.as_complex())
    return RealizationCertificate(
        target=target,
        params=params,
        gaps=GapParams(x, x, x, x),
        angles=None,
        method=Method.RIGHT_EDGE,
        eig_residual=resid,
        psi_residual=None,
    )


def realize_left_curve(p: SpectralPoint, eps_band: float = EPS_BAND) -> RealizationCertificate:
    """Realize a point of the left curve G = 0 via the one-parameter subfamily."""
    target = p.upper()
    a, b = target.a, target.b
    if b <= 0.0:
        raise DomainError("left-curve realization requires b != 0")
    if not (0.0 <= a < 1.0 and a + b <= 1.0 + eps_band):
        raise DomainError(f"left-curve target out of range: a={a}, b={b}")
    g = eval_g(a, b)
    if abs(g) > eps_band:
        raise NotOnCurve(f"|G(a,b)| = {abs(g):.3e} exceeds the band {eps_band}")
    alpha_c = al_alpha_of(target.as_complex())
    if abs(alpha_c.imag) > 1e-8:
        raise NotOnCurve(f"recovered alpha has imaginary part {alpha_c.imag:.3e}")
    alpha = alpha_c.real
    if not (0.0 <= alpha < 1.0):
        raise DomainError(f"recovered alpha={alpha} outside [0, 1)")
    params = MatrixParams(alpha, 0.0, 0.0, 0.0)
    resid = _verified_residual(params, target.as_complex())
    return RealizationCertificate(
        target=p,
        params=params,
        gaps=GapParams(1.0 - alpha, 1.0, 1.0, 1.0),
        angles=None,
        method=Method.LEFT_CURVE,
        eig_residual=resid,
        psi_residual=None,
    )


def _positive_endpoint(f: AngleFrame) -> tuple:
    """An angle vector with Psi > 0, per regime.

    Tight: the maximizing vertex (U, m, m, m); Psi there equals the
    closed-form maximum, positive since G > 0 strictly.  Unbounded: push
    one angle toward M, halving the offset until Psi turns positive; the
    gap floor bounds how deep the schedule may go.
    """
    if f.tight:
        u1 = (f.U, f.m, f.m, f.m)
        psi1 = sum(angles.F(f, u) for u in u1)
        return u1, psi1
    eps = EPS_START
    while True:
        u4 = f.M - eps
        if u4 < f.m or angles.t_of_u(f, u4) < T_FLOOR:
            raise ConvergenceError(
                f"endpoint schedule hit the gap floor {T_FLOOR} before Psi turned positive "
                f"(target a={f.point.a}, b={f.point.b})"
            )
        uu = (TWO_PI - u4) / 3.0
        u1 = (uu, uu, uu, u4)
        psi1 = sum(angles.F(f, u) for u in u1)
        if psi1 > 0.0:
            return u1, psi1
        eps *= 0.5


def _bisect_segment(f: AngleFrame, u0, u1):
    """Bisection of Psi along the segment u0 -> u1 to |Psi| <= PSI_TOL.

    Keeps the sign bracket invariant.  When the crossing sits in the steep
    log-blowup zone, adjacent representable values of the segment
    parameter can straddle the tolerance; in that case a second bracketed
    bisection finishes the job: spreading two equal coordinates by +/-
    sigma preserves the angle sum and, by strict convexity, increases Psi
    monotonically from the negative side of the stall.
    """

    def point(tau):
        return tuple((1.0 - tau) * p + tau * q for p, q in zip(u0, u1))

    lo, hi = 0.0, 1.0
    for _ in range(BISECT_BUDGET):
        mid = 0.5 * (lo + hi)
        uv = point(mid)
        phi = sum(angles.F(f, u) for u in uv)
        if abs(phi) <= PSI_TOL:
            return uv, abs(phi)
        if phi < 0.0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-15:
            break
    else:
        raise ConvergenceError(f"segment bisection exhausted {BISECT_BUDGET} iterations")

    # Stalled at float resolution in tau: refine from the negative side.
    base = point(lo)
    phi_lo = sum(angles.F(f, u) for u in base)
    if not phi_lo < 0.0:
        raise ConvergenceError("lost the sign bracket at the bisection stall")
    b1, b2, b3, b4 = base
    sig_cap = min(f.M - 1e-9 - b1, b2 - f.m)
    if sig_cap <= 0.0:
        raise ConvergenceError("no room to spread coordinates at the bisection stall")

    def psi_spread(s):
        return angles.F(f, b1 + s) + angles.F(f, b2 - s) + angles.F(f, b3) + angles.F(f, b4)

    s_hi = min(1e-8, 0.5 * sig_cap)
    grow = 0
    while psi_spread(s_hi) <= 0.0:
        s_hi *= 2.0
        grow += 1
        if s_hi > sig_cap or grow > 120:
            raise ConvergenceError("spread refinement could not bracket Psi = 0")
    s_lo = 0.0
    for _ in range(BISECT_BUDGET):
        s_mid = 0.5 * (s_lo + s_hi)
        phi = psi_spread(s_mid)
        if abs(phi) <= PSI_TOL:
            return (b1 + s_mid, b2 - s_mid, b3, b4), abs(phi)
        if phi < 0.0:
            s_lo = s_mid
        else:
            s_hi = s_mid
    raise ConvergenceError(f"spread bisection exhausted {BISECT_BUDGET} iterations")


def realize_interior(p: SpectralPoint, eps_band: float = EPS_BAND) -> RealizationCertificate:
    """Realize a strict-interior point by the intermediate-value construction."""
    target = p.upper()
    a, b = target.a, target.b
    if b <= 0.0 or not (0.0 <= a < 1.0) or not (a + b < 1.0 - eps_band) or not (eval_g(a, b) > eps_band):
        raise NotStrictInterior(
            f"(a={a}, b={b}) is not strictly interior: needs 0 <= a < 1, a+b < 1-{eps_band}, G > {eps_band}"
        )
    f = build_frame(target)
    u0 = (HALF_PI, HALF_PI, HALF_PI, HALF_PI)
    psi0 = 4.0 * angles.F(f, HALF_PI)
    u1, psi1 = _positive_endpoint(f)
    if not (psi0 < 0.0 and psi1 > 0.0):
        raise ConvergenceError(f"invalid IVT bracket: Psi(u0)={psi0}, Psi(u1)={psi1}")
    uv, psi_resid = _bisect_segment(f, u0, u1)
    ts = []
    for u in uv:
        t = angles.t_of_u(f, u)
        if t > 1.0:
            if t > 1.0 + 1e-12:
                raise ConvergenceError(f"recovered gap {t} exceeds 1 beyond rounding slack")
            t = 1.0
        ts.append(t)
    gaps = GapParams(*ts)
    params = MatrixParams(*(max(0.0, 1.0 - t) for t in ts))
    resid = _verified_residual(params, target.as_complex())
    return RealizationCertificate(
        target=p,
        params=params,
        gaps=gaps,
        angles=AngleVector(*uv),
        method=Method.INTERIOR_IVT,
        eig_residual=resid,
        psi_residual=psi_resid,
    )


def realize(p: SpectralPoint, eps_band: float = EPS_BAND, eps_real: float = EPS_REAL) -> RealizationCertificate:
    """Realize any admissible point, routing on its classification.

    Targets below the real axis are solved through their conjugate; the
    parameters are identical because the matrix is real.
    """
    verdict = classify(p, eps_band=eps_band, eps_real=eps_real)
    if verdict.kind is RegionKind.RIGHT_EDGE:
        cert = realize_right_edge(p.b_plus)
    elif verdict.kind is RegionKind.LEFT_CURVE:
        cert = realize_left_curve(p, eps_band=eps_band)
    elif verdict.kind is RegionKind.INTERIOR:
        cert = realize_interior(p, eps_band=eps_band)
    else:
        raise OutsideRegion(verdict)
    # The routes may solve for a snapped or conjugated representative;
    # report the residual against the point actually requested.
    resid = _verified_residual(cert.params, p.as_complex())
    return RealizationCertificate(
        target=p,
        params=cert.params,
        gaps=cert.gaps,
        angles=cert.angles,
        method=cert.method,
        eig_residual=resid,
        psi_residual=cert.psi_residual,
    )
