"""The 4-cycle row-stochastic matrix family and its spectra.

A(alpha, beta, gamma, delta) moves state k to state k or k+1 (mod 4) with
weights given by four parameters in [0, 1).  Its characteristic polynomial
is the monic quartic

    p(w) = (w - alpha)(w - beta)(w - gamma)(w - delta) - t1 t2 t3 t4,

with gaps t_k = 1 - parameter.  Row sums are 1, so p(1) = 0 exactly; the
eigensolver deflates that root by synthetic division, solves the residual
cubic in closed form, polishes on the original quartic, and records
residuals.  The one-parameter subfamily with beta = gamma = delta = 0
traces the left boundary curve of the nonreal spectral region.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _scalar
from .errors import DomainError, NotAnEigenvalue, SolverError

# Parameters this close to 1 give gaps below the deflation's conditioning
# floor; reject rather than return garbage.
PARAM_MAX = 1.0 - 1e-12
GAP_MIN = 1e-12
RESIDUAL_TOL = 1e-10
ONE_TOL = 1e-12
CLOSURE_TOL = 1e-8


@dataclass(frozen=True)
class MatrixParams:
    """Diagonal parameters (alpha, beta, gamma, delta), each in [0, 1)."""

    alpha: float
    beta: float
    gamma: float
    delta: float

    def __post_init__(self):
        for name, v in self.as_dict().items():
            if not (0.0 <= v <= PARAM_MAX):
                raise DomainError(f"{name}={v} outside [0, 1 - 1e-12]")

    def as_dict(self):
        return {"alpha": self.alpha, "beta": self.beta, "gamma": self.gamma, "delta": self.delta}

    def as_tuple(self):
        return (self.alpha, self.beta, self.gamma, self.delta)


@dataclass(frozen=True)
class GapParams:
    """Off-diagonal gaps t_k = 1 - parameter, each in (0, 1]."""

    t1: float
    t2: float
    t3: float
    t4: float

    def __post_init__(self):
        for name, v in zip(("t1", "t2", "t3", "t4"), self.as_tuple()):
            if not (GAP_MIN <= v <= 1.0):
                raise DomainError(f"{name}={v} outside [1e-12, 1]")

    def as_tuple(self):
        return (self.t1, self.t2, self.t3, self.t4)


def gaps_of(params: MatrixParams) -> GapParams:
    """Componentwise 1 - p.  The round trip through params_of is exact
    (bit-for-bit) whenever 1 - (1 - p) == p in binary64, which holds for
    every multiple of 2^-53 and for all p >= 1/2."""
    a, b, g, d = params.as_tuple()
    return GapParams(1.0 - a, 1.0 - b, 1.0 - g, 1.0 - d)


def params_of(gaps: GapParams) -> MatrixParams:
    t1, t2, t3, t4 = gaps.as_tuple()
    return MatrixParams(1.0 - t1, 1.0 - t2, 1.0 - t3, 1.0 - t4)


def as_matrix(params: MatrixParams) -> np.ndarray:
    """The 4x4 row-stochastic matrix itself."""
    a, b, g, d = params.as_tuple()
    return np.array(
        [
            [a, 1.0 - a, 0.0, 0.0],
            [0.0, b, 1.0 - b, 0.0],
            [0.0, 0.0, g, 1.0 - g],
            [1.0 - d, 0.0, 0.0, d],
        ]
    )


def char_poly(params: MatrixParams) -> np.ndarray:
    """Monic characteristic quartic, coefficients in descending degree."""
    c3, c2, c1, c0 = _scalar.char_coeffs(*params.as_tuple())
    return np.array([1.0, c3, c2, c1, c0])


@dataclass(frozen=True)
class Spectrum:
    """All four roots (the forced root 1 included) with quartic residuals."""

    roots: tuple
    residuals: tuple

    def nonreal_pair(self, eps_real: float = 1e-10):
        """The conjugate pair (upper member first), or None if all roots are real."""
        for w in self.roots:
            if w.imag > eps_real:
                return w, w.conjugate()
        return None

    def real_roots(self, eps_real: float = 1e-10):
        return tuple(w.real for w in self.roots if abs(w.imag) <= eps_real)

    def nearest(self, lam: complex):
        """(root, distance) of the spectrum point closest to lam."""
        best = min(self.roots, key=lambda w: abs(w - lam))
        return best, abs(best - lam)


def eigenvalues(params: MatrixParams) -> Spectrum:
    """Spectrum of A(params) via exact deflation of 1 plus a closed-form cubic.

    Every root is Newton-polished on the original quartic; the nonreal
    pair (when present) is symmetrized to an exact conjugate pair.  Raises
    SolverError if any polished residual exceeds RESIDUAL_TOL.
    """
    r0, r1, r2, r3, _ = _scalar.family_roots(*params.as_tuple())
    c3, c2, c1, c0 = _scalar.char_coeffs(*params.as_tuple())
    roots = (r0, r1, r2, r3)
    residuals = tuple(abs(_scalar.quartic_at(c3, c2, c1, c0, w)) for w in roots)
    worst = max(residuals)
    if worst > RESIDUAL_TOL:
        raise SolverError(f"root residual {worst:.3e} exceeds {RESIDUAL_TOL} for params {params.as_tuple()}")
    return Spectrum(roots, residuals)


@dataclass(frozen=True)
class Eigvec:
    """Eigenvector normalized to v1 = 1, with the cyclic closure residual."""

    v: tuple
    closure_residual: float


def eigenvector(params: MatrixParams, lam: complex) -> Eigvec:
    """Eigenvector of a nonreal eigenvalue by the forward recursion.

    v1 = 1, v_{k+1} = (lam - param_k) / (1 - param_k) * v_k; the last row
    closes exactly when lam is in the spectrum.  No entry vanishes for
    nonreal lam since all gaps are positive.
    """
    if lam.imag == 0.0:
        raise DomainError("eigenvector recursion is defined for nonreal eigenvalues")
    a, b, g, d = params.as_tuple()
    v1 = complex(1.0, 0.0)
    v2 = (lam - a) / (1.0 - a) * v1
    v3 = (lam - b) / (1.0 - b) * v2
    v4 = (lam - g) / (1.0 - g) * v3
    closure = abs((lam - d) * v4 - (1.0 - d) * v1)
    if closure > CLOSURE_TOL:
        raise NotAnEigenvalue(f"closure residual {closure:.3e} exceeds {CLOSURE_TOL}: {lam} is not an eigenvalue")
    return Eigvec((v1, v2, v3, v4), closure)


def al_alpha_of(lam: complex) -> complex:
    """Recover alpha of the left-boundary subfamily from one of its eigenvalues.

    For nonreal lam the constraint lam^3 (lam - alpha) = 1 - alpha inverts
    to alpha = (lam^4 - 1) / (lam^3 - 1); the imaginary part of the result
    vanishes exactly on the curve G = 0.
    """
    lam3 = lam * lam * lam
    den = lam3 - 1.0
    if abs(den) < 1e-12:
        raise DomainError(f"lambda^3 too close to 1 (|lam^3-1|={abs(den):.3e})")
    return (lam3 * lam - 1.0) / den


def al_params(alpha: float) -> MatrixParams:
    """The left-boundary subfamily member (alpha, 0, 0, 0)."""
    return MatrixParams(alpha, 0.0, 0.0, 0.0)
