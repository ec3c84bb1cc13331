"""Square-to-disc rectifiers obeying the radial constraint.

Every rectifier maps a point ``(x, y)`` of the square ``[-1, 1]^2`` to a
point ``(u, v)`` of the unit disc along the same ray from the origin, so
only the distance to the center changes::

    (u, v) = t(x, y) * (x, y) / |(x, y)|

The kinds differ in the choice of ``t``:

* squircle: ``t = s = sqrt(x^2 + y^2 - x^2 y^2)`` (Guasti squircle contours)
* isosquare: ``t = max(|x|, |y|)`` (concentric squares to concentric circles)
* blended isosquare: isosquare output lerped toward ``(x, y)``
* equiareal squircle: ``t^2 = s E(asin s, 1/s)``, ring-area preserving
"""
from __future__ import annotations

import enum

import numpy as np
from scipy import special

from .exceptions import DomainError, NumericError

SQUARE_TOL = 1e-9
ORIGIN_EPS = 1e-14
# beyond this rho the blended isosquare radius is no longer monotone along
# the diagonal, so the map folds and leaves the unit disc
BLENDED_RHO_MONOTONE = 0.5 * (1.0 + np.sqrt(2.0))


class RectifierKind(str, enum.Enum):
    SQUIRCLE = "squircle"
    ISOSQUARE = "isosquare"
    BLENDED_ISOSQUARE = "blended-isosquare"
    EQUIAREAL_SQUIRCLE = "equiareal-squircle"
    NONE = "none"


def _square(x, y):
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if np.any(~np.isfinite(x)) or np.any(~np.isfinite(y)):
        raise DomainError("non-finite square coordinate")
    if np.any(np.abs(x) > 1 + SQUARE_TOL) or np.any(np.abs(y) > 1 + SQUARE_TOL):
        raise DomainError("point outside the square [-1, 1]^2")
    return np.clip(x, -1.0, 1.0), np.clip(y, -1.0, 1.0)


def _along_ray(x, y, t):
    """Place radius ``t`` on the ray through ``(x, y)``; the origin stays put."""
    q = np.hypot(x, y)
    far = q > ORIGIN_EPS
    scale = np.divide(t, q, out=np.zeros_like(q), where=far)
    return scale * x, scale * y


def squircle_radius(x, y):
    xx, yy = x * x, y * y
    return np.sqrt(np.maximum(xx + yy - xx * yy, 0.0))


def squircle_to_disc(x, y):
    x, y = _square(x, y)
    return _along_ray(x, y, squircle_radius(x, y))


def isosquare_to_disc(x, y):
    # right/top/left/bottom walls give t = x, y, -x, -y: the larger of |x|, |y|
    x, y = _square(x, y)
    return _along_ray(x, y, np.maximum(np.abs(x), np.abs(y)))


def blended_isosquare_to_disc(x, y, rho=1.0):
    """Isosquare blended toward the identity with ``tau = (u^2 + v^2)^rho``.

    For ``rho`` above ``BLENDED_RHO_MONOTONE`` the blend overshoots the rim
    near the diagonals; the result is clamped back onto the unit disc.
    """
    rho = float(rho)
    if not rho >= 0:
        raise DomainError(f"rho must be >= 0, got {rho}")
    x, y = _square(x, y)
    u, v = isosquare_to_disc(x, y)
    tau = (u * u + v * v) ** rho
    ub = tau * u + (1.0 - tau) * x
    vb = tau * v + (1.0 - tau) * y
    rad = np.hypot(ub, vb)
    shrink = np.divide(1.0, rad, out=np.ones_like(rad), where=rad > 1.0)
    return ub * shrink, vb * shrink


def incomplete_elliptic_e(phi, k):
    """Legendre incomplete elliptic integral of the second kind ``E(phi, k)``.

    ``k`` is the modulus (not the parameter ``m = k^2``) and may exceed 1 as
    long as ``k sin(phi) <= 1``. Evaluated in Carlson symmetric form.
    """
    phi = np.asarray(phi, dtype=float)
    k = np.asarray(k, dtype=float)
    if np.any(phi < 0) or np.any(phi > 0.5 * np.pi + SQUARE_TOL):
        raise DomainError("phi outside [0, pi/2]")
    if np.any(k < 0):
        raise DomainError("modulus must be >= 0")
    phi = np.minimum(phi, 0.5 * np.pi)
    sn = np.sin(phi)
    ksn = k * sn
    if np.any(ksn > 1 + SQUARE_TOL):
        raise DomainError("k sin(phi) > 1: integrand is imaginary")
    c2 = np.cos(phi) ** 2
    d2 = np.maximum(1.0 - ksn * ksn, 0.0)
    both_zero = (c2 == 0.0) & (d2 == 0.0)
    # E(pi/2, 1) = 1; Carlson terms are individually infinite there
    c2s = np.where(both_zero, 1.0, c2)
    rf = special.elliprf(c2s, d2, 1.0)
    rd = special.elliprd(c2s, d2, 1.0)
    e = sn * rf - (k * k / 3.0) * sn ** 3 * rd
    return np.where(both_zero, 1.0, e)


def equiareal_radius(s):
    """Disc radius ``t(s) = sqrt(s E(asin s, 1/s))`` for squircle contour ``s``.

    With ``phi = asin s`` and ``k = 1/s`` the Carlson form collapses to
    ``t^2 = s^2 [R_F(1 - s^2, 0, 1) - R_D(1 - s^2, 0, 1) / 3]``, which has no
    ``1/s`` factor and tends to ``pi s^2 / 4`` at the center.
    """
    s = np.asarray(s, dtype=float)
    if np.any(np.isnan(s)) or np.any(s < 0) or np.any(s > 1 + SQUARE_TOL):
        raise DomainError("squircle level outside [0, 1]")
    s = np.minimum(s, 1.0)
    rim = s == 1.0
    c2 = np.where(rim, 0.5, 1.0 - s * s)
    t2 = s * s * (special.elliprf(c2, 0.0, 1.0) - special.elliprd(c2, 0.0, 1.0) / 3.0)
    return np.where(rim, 1.0, np.sqrt(np.maximum(t2, 0.0)))


def equiareal_squircle_to_disc(x, y):
    x, y = _square(x, y)
    return _along_ray(x, y, equiareal_radius(squircle_radius(x, y)))


def rectify(x, y, kind=RectifierKind.SQUIRCLE, rho=1.0):
    """Dispatch on ``kind``; ``NONE`` is the identity (output stays a disc)."""
    kind = RectifierKind(kind)
    if kind is RectifierKind.SQUIRCLE:
        return squircle_to_disc(x, y)
    if kind is RectifierKind.ISOSQUARE:
        return isosquare_to_disc(x, y)
    if kind is RectifierKind.BLENDED_ISOSQUARE:
        return blended_isosquare_to_disc(x, y, rho)
    if kind is RectifierKind.EQUIAREAL_SQUIRCLE:
        return equiareal_squircle_to_disc(x, y)
    return np.asarray(x, dtype=float), np.asarray(y, dtype=float)


def rect_to_ellipse(x, y, a=1.0, b=1.0, kind=RectifierKind.SQUIRCLE, rho=1.0):
    """Rectangle ``[-a, a] x [-b, b]`` to the inscribed ellipse.

    Scales down to the square, applies the base rectifier and scales back.
    """
    kind = RectifierKind(kind)
    if kind is RectifierKind.NONE:
        raise DomainError("rect_to_ellipse needs a base rectifier")
    g, h = rectify(np.asarray(x, dtype=float) / a, np.asarray(y, dtype=float) / b, kind, rho)
    return a * g, b * h


def disc_to_square_numeric(u, v, kind=RectifierKind.SQUIRCLE, rho=1.0, max_iter=100):
    """Invert a rectifier by bisection along each point's ray.

    Rectified radius is monotone in the distance along a fixed ray, so the
    preimage is bracketed by the origin and the square's edge.
    """
    kind = RectifierKind(kind)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if kind is RectifierKind.NONE:
        return u.copy(), v.copy()
    if kind is RectifierKind.BLENDED_ISOSQUARE and rho > BLENDED_RHO_MONOTONE:
        raise DomainError(f"blended isosquare is not invertible for rho > {BLENDED_RHO_MONOTONE:.4f}")
    target = np.hypot(u, v)
    if np.any(target > 1 + SQUARE_TOL):
        raise DomainError("point outside the unit disc")
    target = np.minimum(target, 1.0)
    q = np.where(target > 0, target, 1.0)
    cx, cy = u / q, v / q
    edge = 1.0 / np.maximum(np.abs(cx), np.abs(cy))
    lo = np.zeros_like(target)
    hi = edge.copy()
    for _ in range(max_iter):
        mid = 0.5 * (lo + hi)
        gu, gv = rectify(np.clip(mid * cx, -1, 1), np.clip(mid * cy, -1, 1), kind, rho)
        below = np.hypot(gu, gv) < target
        lo = np.where(below, mid, lo)
        hi = np.where(below, hi, mid)
        if np.all(hi - lo <= 4 * np.finfo(float).eps * edge):
            break
    rad = 0.5 * (lo + hi)
    x = np.clip(rad * cx, -1, 1)
    y = np.clip(rad * cy, -1, 1)
    gu, gv = rectify(x, y, kind, rho)
    if np.any(np.hypot(gu - u, gv - v) > 1e-8):
        raise NumericError("disc-to-square bisection did not converge")
    zero = target == 0
    return np.where(zero, 0.0, x), np.where(zero, 0.0, y)
