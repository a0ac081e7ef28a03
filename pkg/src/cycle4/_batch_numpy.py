"""Pure-numpy vectorized fallbacks for the batch kernels.

Signature-compatible with :mod:`cycle4._batch_numba`; selected with
``CYCLE4_BACKEND=numpy``.  The cubic branches are handled with masks
instead of per-trial control flow; a guarded vectorized Newton polish
mirrors the scalar one.
"""

from __future__ import annotations

import math

import numpy as np

from ._scalar import TWO_PI


def _quartic_at(c3, c2, c1, c0, w):
    return (((w + c3) * w + c2) * w + c1) * w + c0


def _upper_pair_roots(params, eps_real):
    """Vectorized nonreal-root extraction for a (n, 4) parameter block.

    Returns (a, b, resid, nonreal mask).
    """
    al, be, ga, de = params[:, 0], params[:, 1], params[:, 2], params[:, 3]
    e1 = al + be + ga + de
    e2 = al * be + al * ga + al * de + be * ga + be * de + ga * de
    e3 = al * be * ga + al * be * de + al * ga * de + be * ga * de
    e4 = al * be * ga * de
    tprod = (1 - al) * (1 - be) * (1 - ga) * (1 - de)
    c3, c2, c1, c0 = -e1, e2, -e3, e4 - tprod
    q2 = c3 + 1.0
    q1 = c2 + q2
    q0 = c1 + q1
    shift = q2 / 3.0
    p = q1 - q2 * q2 / 3.0
    q = 2.0 * q2 ** 3 / 27.0 - q2 * q1 / 3.0 + q0
    disc = 0.25 * q * q + p ** 3 / 27.0
    has_pair = disc > 0.0
    s = np.sqrt(np.where(has_pair, disc, 0.0))
    u3 = -0.5 * q + s
    v3 = -0.5 * q - s
    cu = np.copysign(np.abs(u3) ** (1.0 / 3.0), u3)
    cv = np.copysign(np.abs(v3) ** (1.0 / 3.0), v3)
    re = -0.5 * (cu + cv) - shift
    im = 0.5 * math.sqrt(3.0) * np.abs(cu - cv)
    w = re + 1j * im
    wc = re - 1j * im
    for cand in (w, wc):
        pw = _quartic_at(c3, c2, c1, c0, cand)
        for _ in range(3):
            dp = ((4.0 * cand + 3.0 * c3) * cand + 2.0 * c2) * cand + c1
            safe = dp != 0
            step = np.where(safe, pw / np.where(safe, dp, 1.0), 0.0)
            wnew = cand - step
            pnew = _quartic_at(c3, c2, c1, c0, wnew)
            better = np.abs(pnew) < np.abs(pw)
            cand[...] = np.where(better, wnew, cand)
            pw = np.where(better, pnew, pw)
    wc = np.conj(wc)
    ra = np.abs(_quartic_at(c3, c2, c1, c0, w))
    rb = np.abs(_quartic_at(c3, c2, c1, c0, wc))
    pick_b = rb < ra
    best = np.where(pick_b, wc, w)
    resid = np.where(pick_b, rb, ra)
    a = best.real
    b = np.abs(best.imag)
    nonreal = has_pair & (b > eps_real)
    return a, b, resid, nonreal


def necessity_block(params, eps_real, tol_a, tol_edge, tol_g, resid_tol, g_offset):
    """Vectorized twin of the numba necessity kernel."""
    a, b, resid, nonreal = _upper_pair_roots(params, eps_real)
    g = (b * b + a * a + a) ** 2 + 2.0 * a * a - b * b + g_offset
    v = np.maximum(-a - tol_a, a - 1.0 - tol_a)
    v = np.maximum(v, a + b - 1.0 - tol_edge)
    v = np.maximum(v, -g - tol_g)
    v = np.maximum(v, resid - resid_tol)
    viol = np.where(nonreal, v, -1.0)
    return viol, np.where(nonreal, a, 0.0), np.where(nonreal, b, 0.0)


def _rel(lhs, rhs):
    return np.abs(lhs - rhs) / np.maximum(1.0, np.maximum(np.abs(lhs), np.abs(rhs)))


def identities_block(samples, break_factorization):
    """Vectorized twin of the numba identities kernel."""
    u = samples
    rels = np.empty((u.shape[0], 6))
    a = -2.0 + 4.0 * u[:, 0]
    b = -2.0 + 4.0 * u[:, 1]
    r3 = (a * a + b * b) ** 3
    nv = 4.0 * a ** 3 - 3.0 * a * a - 4.0 * a * b * b + b * b
    if break_factorization:
        nv = nv + 1e-3
    mz2 = (a - 1.0) ** 2 + b * b
    g = (b * b + a * a + a) ** 2 + 2.0 * a * a - b * b
    sc = np.maximum.reduce([np.ones_like(r3), np.abs(r3), np.abs(nv), np.abs(mz2 * g)])
    rels[:, 0] = np.abs(r3 - nv - mz2 * g) / sc

    a = -2.0 + 4.0 * u[:, 2]
    rels[:, 1] = _rel(1.0 - 4.0 * a - 12.0 * a * a, -(2.0 * a + 1.0) * (6.0 * a - 1.0))

    a = u[:, 3] / 6.0
    lhs = (1.0 - 6.0 * a + 16.0 * a ** 3) ** 2
    rhs = (1.0 - 4.0 * a) ** 2 * (1.0 - 4.0 * a - 12.0 * a * a) + 256.0 * a ** 6
    rels[:, 2] = _rel(lhs, rhs)

    a = 0.01 + 0.49 * u[:, 4]
    bmin = math.sqrt(3.0) * a * 1.005
    b = bmin + (2.0 - bmin) * u[:, 5]
    alg = b * (b * b - 3.0 * a * a) / (a * (3.0 * b * b - a * a))
    direct = np.tan(3.0 * np.arctan2(b, a))
    rels[:, 3] = _rel(alg, direct)

    a = 0.999 * u[:, 6]
    b = 1e-3 + (1.0 - 1e-3) * u[:, 7]
    lam = a + 1j * b
    lam3 = lam * lam * lam
    q = lam3 - 1.0
    qq = q.real * q.real + q.imag * q.imag
    alpha = (lam3 * lam - 1.0) / q
    g = (b * b + a * a + a) ** 2 + 2.0 * a * a - b * b
    rels[:, 4] = _rel(alpha.imag * qq, b * ((a - 1.0) ** 2 + b * b) * g)

    a = -2.0 + 4.0 * u[:, 8]
    b = -2.0 + 4.0 * u[:, 9]
    g1 = (b * b + a * a + a) ** 2 + 2.0 * a * a - b * b
    r = a * a + b * b
    g2 = r * r + (2.0 * a - 1.0) * r + 4.0 * a * a
    rels[:, 5] = _rel(g1, g2)

    return rels.max(axis=1), rels.argmax(axis=1).astype(np.int64)


def convexity_block(samples, h, m_inset, top_inset, drop_sin2):
    """Vectorized twin of the numba convexity kernel."""
    a = 0.99 * samples[:, 0]
    b = 0.01 + 1.99 * samples[:, 1]
    x = a - 1.0
    y = b
    m = np.arctan2(b, a)
    mm = np.arctan2(b, a - 1.0)
    u = m + m_inset + (mm - m - m_inset - top_inset) * samples[:, 2]
    t = y * np.cos(u) / np.sin(u) - x
    su = np.sin(u)
    closed = (x * x + y * y) / (t * t) if drop_sin2 else (x * x + y * y) / (t * t * su * su)

    def f_at(uu):
        return np.log(y / np.sin(uu)) - np.log(y * np.cos(uu) / np.sin(uu) - x)

    fd = (f_at(u + h) - 2.0 * f_at(u) + f_at(u - h)) / (h * h)
    return np.abs(closed - fd) / np.abs(closed), closed


def karamata_scan(x, y, m, mm, u_top, grid_n, closed_max, closed_offset):
    """Vectorized twin of the numba grid scan."""
    target = closed_max + closed_offset
    grid = np.linspace(m, u_top, grid_n)
    t = y * np.cos(grid) / np.sin(grid) - x
    ftab = np.log(y / np.sin(grid)) - np.log(t)
    u4 = TWO_PI - (grid[:, None, None] + grid[None, :, None] + grid[None, None, :])
    feas = (u4 >= m) & (u4 < mm)
    with np.errstate(divide="ignore", invalid="ignore"):
        t4 = y * np.cos(u4) / np.sin(u4) - x
        f4 = np.log(y / np.sin(u4)) - np.log(t4)
    psi = ftab[:, None, None] + ftab[None, :, None] + ftab[None, None, :] + f4
    excess = float(np.max(np.where(feas, psi, -np.inf)) - target)
    uv4 = TWO_PI - 3.0 * grid[0]
    tv4 = y * math.cos(uv4) / math.sin(uv4) - x
    vertex = 3.0 * ftab[0] + math.log(y / math.sin(uv4)) - math.log(tv4)
    return excess, abs(vertex - target), int(feas.sum())
