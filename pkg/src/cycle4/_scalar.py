"""Scalar numeric core shared by the plain-Python API and the numba kernels.

Every function here is written in numba-compatible style (math/cmath plus
tuples of floats and complex) so the batch backend can compile the exact
same code paths that the single-call API executes.  Nothing in this module
validates input; the public wrappers do that.
"""

from __future__ import annotations

import math

TWO_PI = 2.0 * math.pi


def char_coeffs(al, be, ga, de):
    """Monic quartic coefficients (c3, c2, c1, c0) of the family's characteristic
    polynomial (w-al)(w-be)(w-ga)(w-de) - (1-al)(1-be)(1-ga)(1-de)."""
    e1 = al + be + ga + de
    e2 = al * be + al * ga + al * de + be * ga + be * de + ga * de
    e3 = al * be * ga + al * be * de + al * ga * de + be * ga * de
    e4 = al * be * ga * de
    tprod = (1.0 - al) * (1.0 - be) * (1.0 - ga) * (1.0 - de)
    return -e1, e2, -e3, e4 - tprod


def deflate_one(c3, c2, c1, c0):
    """Synthetic division of the monic quartic by (w - 1).

    The quotient is monic cubic w^3 + q2 w^2 + q1 w + q0; the remainder is
    the quartic at 1, which vanishes analytically for row-stochastic input
    and is discarded.
    """
    q2 = c3 + 1.0
    q1 = c2 + q2
    q0 = c1 + q1
    return q2, q1, q0


def quartic_at(c3, c2, c1, c0, w):
    return (((w + c3) * w + c2) * w + c1) * w + c0


def quartic_newton(c3, c2, c1, c0, w):
    """Guarded Newton polish of one (real or complex) quartic root.

    Up to three steps; each is kept only if it shrinks the residual, so
    the result never leaves the basin it started in.  (Self-contained so
    the batch backend can compile it as a leaf.)
    """
    pw = (((w + c3) * w + c2) * w + c1) * w + c0
    for _ in range(3):
        dp = ((4.0 * w + 3.0 * c3) * w + 2.0 * c2) * w + c1
        if dp == 0.0:
            break
        w2 = w - pw / dp
        pw2 = (((w2 + c3) * w2 + c2) * w2 + c1) * w2 + c0
        if abs(pw2) >= abs(pw):
            break
        w = w2
        pw = pw2
    return w


def cubic_roots(b2, b1, b0):
    """Closed-form roots of the monic real cubic w^3 + b2 w^2 + b1 w + b0.

    Returns (w1, w2, w3, has_pair): when has_pair, w1 is the real root and
    (w2, w3) is an exact conjugate pair (upper first); otherwise all three
    are real.  Branch choice follows the sign of the depressed-cubic
    discriminant: Cardano for one real root, the trigonometric form for
    three.
    """
    shift = b2 / 3.0
    p = b1 - b2 * b2 / 3.0
    q = 2.0 * b2 ** 3 / 27.0 - b2 * b1 / 3.0 + b0
    disc = 0.25 * q * q + p ** 3 / 27.0
    if disc > 0.0:
        s = math.sqrt(disc)
        u3 = -0.5 * q + s
        v3 = -0.5 * q - s
        cu = math.copysign(abs(u3) ** (1.0 / 3.0), u3)
        cv = math.copysign(abs(v3) ** (1.0 / 3.0), v3)
        w1 = cu + cv - shift
        re = -0.5 * (cu + cv) - shift
        im = 0.5 * math.sqrt(3.0) * abs(cu - cv)
        return complex(w1, 0.0), complex(re, im), complex(re, -im), True
    if p >= 0.0:
        # disc <= 0 with p >= 0 forces p = q = 0: triple root.
        w = -shift
        return complex(w, 0.0), complex(w, 0.0), complex(w, 0.0), False
    rr = 2.0 * math.sqrt(-p / 3.0)
    arg = 3.0 * q / (p * rr)
    if arg > 1.0:
        arg = 1.0
    elif arg < -1.0:
        arg = -1.0
    th = math.acos(arg) / 3.0
    w1 = rr * math.cos(th) - shift
    w2 = rr * math.cos(th - TWO_PI / 3.0) - shift
    w3 = rr * math.cos(th - 2.0 * TWO_PI / 3.0) - shift
    return complex(w1, 0.0), complex(w2, 0.0), complex(w3, 0.0), False


def family_roots(al, be, ga, de):
    """All four spectrum roots of A(al, be, ga, de), polished and symmetrized.

    Returns (r0, r1, r2, r3, has_pair).  r0 is the exact root 1; when
    has_pair, r2 = conj(r3) is the nonreal pair with r2 in the upper half
    plane.  Real roots are polished with real Newton steps so they stay
    exactly real; the pair member with the smaller polished residual is
    mirrored onto its conjugate, preserving the real-matrix symmetry.
    """
    c3, c2, c1, c0 = char_coeffs(al, be, ga, de)
    q2, q1, q0 = deflate_one(c3, c2, c1, c0)
    w1, w2, w3, has_pair = cubic_roots(q2, q1, q0)
    if has_pair:
        wr = quartic_newton(c3, c2, c1, c0, w1.real)
        wa = quartic_newton(c3, c2, c1, c0, w2)
        wb = quartic_newton(c3, c2, c1, c0, w3)
        wbc = complex(wb.real, -wb.imag)
        if abs(quartic_at(c3, c2, c1, c0, wbc)) < abs(quartic_at(c3, c2, c1, c0, wa)):
            wa = wbc
        up = complex(wa.real, abs(wa.imag))
        return complex(1.0, 0.0), complex(wr, 0.0), up, complex(up.real, -up.imag), True
    p1 = quartic_newton(c3, c2, c1, c0, w1.real)
    p2 = quartic_newton(c3, c2, c1, c0, w2.real)
    p3 = quartic_newton(c3, c2, c1, c0, w3.real)
    return complex(1.0, 0.0), complex(p1, 0.0), complex(p2, 0.0), complex(p3, 0.0), False


def upper_pair_root(al, be, ga, de):
    """The upper-half-plane nonreal root of the family, if any.

    Returns (a, b, residual, has_pair); (a, b) are meaningful only when
    has_pair.  This is the per-trial workhorse of the Monte-Carlo
    necessity kernel.
    """
    c3, c2, c1, c0 = char_coeffs(al, be, ga, de)
    q2, q1, q0 = deflate_one(c3, c2, c1, c0)
    w1, w2, w3, has_pair = cubic_roots(q2, q1, q0)
    if not has_pair:
        return 0.0, 0.0, 0.0, False
    wa = quartic_newton(c3, c2, c1, c0, w2)
    wb = quartic_newton(c3, c2, c1, c0, w3)
    wbc = complex(wb.real, -wb.imag)
    ra = abs(quartic_at(c3, c2, c1, c0, wa))
    rb = abs(quartic_at(c3, c2, c1, c0, wbc))
    if rb < ra:
        wa = wbc
        ra = rb
    return wa.real, abs(wa.imag), ra, True


def frame_angles(a, b):
    """(m, M) = (Arg(lambda), Arg(lambda - 1)) via the two-argument arctangent."""
    return math.atan2(b, a), math.atan2(b, a - 1.0)


def t_of_u_xy(x, y, u):
    """Gap value t(u) = y cot u - x for the shifted point z = x + iy."""
    return y * math.cos(u) / math.sin(u) - x


def f_of_u_xy(x, y, u, t_floor):
    """F(u) = log|z + t(u)| - log t(u) = log(y csc u) - log(y cot u - x).

    Saturates to +inf once t(u) falls below t_floor, where the logarithm
    would overflow anyway.
    """
    t = t_of_u_xy(x, y, u)
    if t < t_floor:
        return math.inf
    return math.log(y / math.sin(u)) - math.log(t)
