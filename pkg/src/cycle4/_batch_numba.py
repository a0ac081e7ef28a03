"""Numba-compiled batch kernels: scalar loops over the shared numeric core.

Each public function here has a twin of identical signature and semantics
in :mod:`cycle4._batch_numpy`; tests cross-check the two on shared inputs.
"""

from __future__ import annotations

import math

import numpy as np
from numba import njit

from . import _scalar

_JIT = dict(cache=True, nogil=True)

_char_coeffs = njit(**_JIT)(_scalar.char_coeffs)
_deflate_one = njit(**_JIT)(_scalar.deflate_one)
_quartic_at = njit(**_JIT)(_scalar.quartic_at)
_quartic_newton = njit(**_JIT)(_scalar.quartic_newton)
_cubic_roots = njit(**_JIT)(_scalar.cubic_roots)

TWO_PI = _scalar.TWO_PI


@njit(**_JIT)
def _upper_pair_root(al, be, ga, de):
    c3, c2, c1, c0 = _char_coeffs(al, be, ga, de)
    q2, q1, q0 = _deflate_one(c3, c2, c1, c0)
    w1, w2, w3, has_pair = _cubic_roots(q2, q1, q0)
    if not has_pair:
        return 0.0, 0.0, 0.0, False
    wa = _quartic_newton(c3, c2, c1, c0, w2)
    wb = _quartic_newton(c3, c2, c1, c0, w3)
    wbc = complex(wb.real, -wb.imag)
    ra = abs(_quartic_at(c3, c2, c1, c0, wa))
    rb = abs(_quartic_at(c3, c2, c1, c0, wbc))
    if rb < ra:
        wa = wbc
        ra = rb
    return wa.real, abs(wa.imag), ra, True


@njit(**_JIT)
def necessity_block(params, eps_real, tol_a, tol_edge, tol_g, resid_tol, g_offset):
    """Necessity predicates on the nonreal root of each sampled parameter tuple.

    Returns (viol, aa, bb): viol[i] is the normalized excess (<= 0 passes),
    or -1 for trials whose spectrum is entirely real.  g_offset corrupts G
    for the harness self-test.
    """
    n = params.shape[0]
    viol = np.empty(n)
    aa = np.zeros(n)
    bb = np.zeros(n)
    for i in range(n):
        a, b, resid, has_pair = _upper_pair_root(
            params[i, 0], params[i, 1], params[i, 2], params[i, 3]
        )
        if not has_pair or b <= eps_real:
            viol[i] = -1.0
            continue
        g = (b * b + a * a + a) ** 2 + 2.0 * a * a - b * b + g_offset
        v = -a - tol_a
        if a - 1.0 - tol_a > v:
            v = a - 1.0 - tol_a
        if a + b - 1.0 - tol_edge > v:
            v = a + b - 1.0 - tol_edge
        if -g - tol_g > v:
            v = -g - tol_g
        if resid - resid_tol > v:
            v = resid - resid_tol
        viol[i] = v
        aa[i] = a
        bb[i] = b
    return viol, aa, bb


@njit(**_JIT)
def identities_block(samples, break_factorization):
    """Six relative residuals per trial; returns (worst rel, argmax check id).

    samples is (n, 10) uniform [0,1) draws mapped to each check's box.
    break_factorization perturbs N inside check 0 for the self-test.
    """
    n = samples.shape[0]
    viol = np.empty(n)
    which = np.empty(n, dtype=np.int64)
    for i in range(n):
        u = samples[i]
        worst = -1.0
        wid = 0
        # (0) |lambda|^6 - N = |lambda-1|^2 G on [-2,2]^2
        a = -2.0 + 4.0 * u[0]
        b = -2.0 + 4.0 * u[1]
        r3 = (a * a + b * b) ** 3
        nv = 4.0 * a ** 3 - 3.0 * a * a - 4.0 * a * b * b + b * b
        if break_factorization:
            nv += 1e-3
        mz2 = (a - 1.0) ** 2 + b * b
        g = (b * b + a * a + a) ** 2 + 2.0 * a * a - b * b
        sc = max(max(1.0, abs(r3)), max(abs(nv), abs(mz2 * g)))
        rel = abs(r3 - nv - mz2 * g) / sc
        worst = rel
        # (1) discriminant expansion 1-4a-12a^2 = -(2a+1)(6a-1)
        a = -2.0 + 4.0 * u[2]
        lhs = 1.0 - 4.0 * a - 12.0 * a * a
        rhs = -(2.0 * a + 1.0) * (6.0 * a - 1.0)
        rel = abs(lhs - rhs) / max(max(1.0, abs(lhs)), abs(rhs))
        if rel > worst:
            worst = rel
            wid = 1
        # (2) (1-6a+16a^3)^2 = (1-4a)^2 (1-4a-12a^2) + 256 a^6 on (0, 1/6)
        a = u[3] / 6.0
        lhs = (1.0 - 6.0 * a + 16.0 * a ** 3) ** 2
        rhs = (1.0 - 4.0 * a) ** 2 * (1.0 - 4.0 * a - 12.0 * a * a) + 256.0 * a ** 6
        rel = abs(lhs - rhs) / max(max(1.0, abs(lhs)), abs(rhs))
        if rel > worst:
            worst = rel
            wid = 2
        # (3) tan(3m) closed form vs direct tangent on b^2 > 3a^2
        a = 0.01 + 0.49 * u[4]
        bmin = math.sqrt(3.0) * a * 1.005
        b = bmin + (2.0 - bmin) * u[5]
        alg = b * (b * b - 3.0 * a * a) / (a * (3.0 * b * b - a * a))
        direct = math.tan(3.0 * math.atan2(b, a))
        rel = abs(alg - direct) / max(max(1.0, abs(alg)), abs(direct))
        if rel > worst:
            worst = rel
            wid = 3
        # (4) Im(alpha) |lambda^3-1|^2 = b |lambda-1|^2 G over the region box
        a = 0.999 * u[6]
        b = 1e-3 + (1.0 - 1e-3) * u[7]
        lam = complex(a, b)
        lam3 = lam * lam * lam
        q = lam3 - 1.0
        qq = q.real * q.real + q.imag * q.imag
        alpha = (lam3 * lam - 1.0) / q
        g = (b * b + a * a + a) ** 2 + 2.0 * a * a - b * b
        lhs = alpha.imag * qq
        rhs = b * ((a - 1.0) ** 2 + b * b) * g
        rel = abs(lhs - rhs) / max(max(1.0, abs(lhs)), abs(rhs))
        if rel > worst:
            worst = rel
            wid = 4
        # (5) G definitional form vs r-form on [-2,2]^2
        a = -2.0 + 4.0 * u[8]
        b = -2.0 + 4.0 * u[9]
        g1 = (b * b + a * a + a) ** 2 + 2.0 * a * a - b * b
        r = a * a + b * b
        g2 = r * r + (2.0 * a - 1.0) * r + 4.0 * a * a
        rel = abs(g1 - g2) / max(max(1.0, abs(g1)), abs(g2))
        if rel > worst:
            worst = rel
            wid = 5
        viol[i] = worst
        which[i] = wid
    return viol, which


@njit(**_JIT)
def convexity_block(samples, h, m_inset, top_inset, drop_sin2):
    """Closed-form second derivative vs central difference per sampled frame.

    samples is (n, 3): (a-box, b-box, u-fraction) uniforms; the probe angle
    is uniform on [m + m_inset, M - top_inset).  Returns (rel, f2):
    relative FD mismatch and the closed-form value (must be positive).
    drop_sin2 corrupts the closed form for the self-test.
    """
    n = samples.shape[0]
    rel = np.empty(n)
    f2 = np.empty(n)
    for i in range(n):
        a = 0.99 * samples[i, 0]
        b = 0.01 + 1.99 * samples[i, 1]
        x = a - 1.0
        y = b
        m = math.atan2(b, a)
        mm = math.atan2(b, a - 1.0)
        u = m + m_inset + (mm - m - m_inset - top_inset) * samples[i, 2]
        t = y * math.cos(u) / math.sin(u) - x
        su = math.sin(u)
        closed = (x * x + y * y) / (t * t) if drop_sin2 else (x * x + y * y) / (t * t * su * su)
        fp = math.log(y / math.sin(u + h)) - math.log(y * math.cos(u + h) / math.sin(u + h) - x)
        f0 = math.log(y / su) - math.log(t)
        fm = math.log(y / math.sin(u - h)) - math.log(y * math.cos(u - h) / math.sin(u - h) - x)
        fd = (fp - 2.0 * f0 + fm) / (h * h)
        rel[i] = abs(closed - fd) / abs(closed)
        f2[i] = closed
    return rel, f2


@njit(**_JIT)
def karamata_scan(x, y, m, mm, u_top, grid_n, closed_max, closed_offset):
    """Grid search of Psi over the feasible set against the closed-form max.

    Enumerates (u1, u2, u3) on grid_n^3 points of [m, U], keeps vectors
    whose fourth angle lands in [m, M), and returns (max excess over the
    closed form, gap at the maximizing vertex, feasible count).
    closed_offset corrupts the closed form for the self-test.
    """
    target = closed_max + closed_offset
    grid = np.empty(grid_n)
    ftab = np.empty(grid_n)
    step = (u_top - m) / (grid_n - 1)
    for i in range(grid_n):
        u = m + step * i
        grid[i] = u
        t = y * math.cos(u) / math.sin(u) - x
        ftab[i] = math.log(y / math.sin(u)) - math.log(t)
    excess = -math.inf
    count = 0
    for i in range(grid_n):
        for j in range(grid_n):
            s2 = grid[i] + grid[j]
            for k in range(grid_n):
                u4 = TWO_PI - s2 - grid[k]
                if u4 < m or u4 >= mm:
                    continue
                t4 = y * math.cos(u4) / math.sin(u4) - x
                psi = ftab[i] + ftab[j] + ftab[k] + math.log(y / math.sin(u4)) - math.log(t4)
                count += 1
                if psi - target > excess:
                    excess = psi - target
    u4 = TWO_PI - 3.0 * grid[0]
    t4 = y * math.cos(u4) / math.sin(u4) - x
    vertex = 3.0 * ftab[0] + math.log(y / math.sin(u4)) - math.log(t4)
    return excess, abs(vertex - target), count
