"""Cylindrical projections between Mercator (conformal) and Lambert (equal-area).

All cylindrical maps have the form ``x = k lon``, ``y = f(lat)``. The blended
map

    y = (1 + beta) / (2 beta) [q^beta - (1 - beta)^beta],
    q = (1 - beta + sin lat) / (1 - (1 - beta) sin lat)

(odd extension for lat < 0) equals ``sin(lat)`` at ``beta = 1`` and tends to
Mercator as ``beta -> 0``. The power terms are evaluated in log space so
small betas keep full precision.
"""
from __future__ import annotations

import numpy as np

from .exceptions import ConfigError, DomainError
from .render import render_rows, sample_equirect
from .validation import check_panorama

BEHRMANN = np.radians(30.0)
GALL_PETERS = np.radians(45.0)
TOBLER_SQUARE = np.radians(55.65)
RANGE_TOL = 1e-9


def _arr(a):
    return np.asarray(a, dtype=float)


def check_blend(beta):
    beta = float(beta)
    if not (0.0 < beta <= 1.0):
        raise DomainError(f"cylindrical blend needs 0 < beta <= 1, got {beta}; use Mercator for beta = 0")
    return beta


def check_std_lat(phi0):
    phi0 = float(phi0)
    if not (0.0 <= phi0 < 0.5 * np.pi):
        raise DomainError(f"standard latitude must be in [0, pi/2), got {phi0}")
    return phi0


def mercator_fwd(phi):
    """``ln tan(pi/4 + phi/2)``; the poles give +-inf."""
    phi = _arr(phi)
    with np.errstate(divide="ignore"):
        # arctanh(sin phi) is the same function without the tan blow-up near pi/2
        y = np.arctanh(np.sin(phi))
    y = np.where(phi >= 0.5 * np.pi, np.inf, y)
    return np.where(phi <= -0.5 * np.pi, -np.inf, y)


def mercator_inv(y):
    return 0.5 * np.pi - 2.0 * np.arctan(np.exp(-_arr(y)))


def lambert_cyl_fwd(phi):
    return np.sin(_arr(phi))


def lambert_cyl_inv(y):
    y = _arr(y)
    if np.any(np.abs(y) > 1 + RANGE_TOL):
        raise DomainError("Lambert cylindrical y outside [-1, 1]")
    return np.arcsin(np.clip(y, -1.0, 1.0))


def blended_cyl_fwd(phi, beta):
    beta = check_blend(beta)
    phi = _arr(phi)
    sign = np.where(phi < 0, -1.0, 1.0)
    s = np.sin(np.abs(phi))
    if beta == 1.0:
        return np.sin(phi)
    c = 1.0 - beta
    # log q - log(1 - beta), exactly 0 at the equator
    dlog = np.log1p(s / c) - np.log1p(-c * s)
    y = (1.0 + beta) / (2.0 * beta) * np.exp(beta * np.log(c)) * np.expm1(beta * dlog)
    return sign * y


def blended_cyl_ymax(beta):
    """Height of the upper half of the blended map (its value at the pole)."""
    return float(blended_cyl_fwd(0.5 * np.pi, beta))


def blended_cyl_inv(y, beta):
    beta = check_blend(beta)
    y = _arr(y)
    ymax = blended_cyl_ymax(beta)
    if np.any(np.isnan(y)) or np.any(np.abs(y) > ymax + RANGE_TOL * (1 + ymax)):
        raise DomainError(f"y outside the blended range [-{ymax:.6g}, {ymax:.6g}]")
    sign = np.where(y < 0, -1.0, 1.0)
    ay = np.minimum(np.abs(y), ymax)
    if beta == 1.0:
        return sign * np.arcsin(ay)
    c = 1.0 - beta
    cb = np.exp(beta * np.log(c))
    # [(1-beta)^beta + 2 beta y / (1 + beta)]^(1/beta) = c * exp(L / beta)
    L = np.log1p(2.0 * beta * ay / ((1.0 + beta) * cb))
    q = c * np.exp(L / beta)
    s = c * np.expm1(L / beta) / (q * c + 1.0)
    return sign * np.arcsin(np.clip(s, 0.0, 1.0))


def generalized_cea_fwd(lon, phi, phi0=0.0):
    """Cylindrical equal-area map with standard latitude ``phi0``."""
    c = np.cos(check_std_lat(phi0))
    return _arr(lon) * c, np.sin(_arr(phi)) / c


def generalized_cea_inv(x, y, phi0=0.0):
    c = np.cos(check_std_lat(phi0))
    return _arr(x) / c, lambert_cyl_inv(_arr(y) * c)


def blended_generalized_fwd(lon, phi, beta, phi0=0.0):
    """Blend between Mercator and the equal-area map with standard latitude ``phi0``."""
    beta = check_blend(beta)
    cb = np.cos(check_std_lat(phi0)) ** beta
    return _arr(lon) * cb, blended_cyl_fwd(phi, beta) / cb


def blended_generalized_inv(x, y, beta, phi0=0.0):
    beta = check_blend(beta)
    cb = np.cos(check_std_lat(phi0)) ** beta
    return _arr(x) / cb, blended_cyl_inv(_arr(y) * cb, beta)


def cylindrical_extent(beta=None, phi0=0.0, mercator_lat=np.radians(85.0)):
    """Half-width and half-height ``(xmax, ymax)`` of the rendered rectangle.

    ``beta=None`` selects Mercator, cut off at ``mercator_lat``.
    """
    if beta is None:
        return np.pi, float(mercator_fwd(mercator_lat))
    x, y = blended_generalized_fwd(np.pi, 0.5 * np.pi, beta, phi0)
    return float(x), float(y)


def project_cylindrical(img, beta=None, phi0=0.0, out_width=None, out_height=None,
                        interpolation="bilinear", threads=None, mercator_lat=np.radians(85.0)):
    """Re-render an equirectangular panorama through a blended cylindrical map.

    ``beta=None`` renders plain Mercator between +-``mercator_lat``. Returns a
    float RGBA array; every pixel has a source sample.
    """
    img = check_panorama(img)
    if img.shape[2] == 1:
        img = np.repeat(img, 3, axis=2)
    img = img[:, :, :3]
    try:
        if beta is not None:
            beta = check_blend(beta)
        phi0 = check_std_lat(phi0)
    except DomainError as exc:
        raise ConfigError(str(exc)) from None
    H_in, W_in = img.shape[:2]
    W = int(out_width or W_in)
    H = int(out_height or H_in)
    if W < 1 or H < 1:
        raise ConfigError("output dimensions must be >= 1")
    xmax, ymax = cylindrical_extent(beta, phi0, mercator_lat)

    def chunk(lo, hi):
        j, i = np.mgrid[lo:hi, 0:W]
        x = xmax * (-1.0 + 2.0 * (i + 0.5) / W)
        y = ymax * (1.0 - 2.0 * (j + 0.5) / H)
        if beta is None:
            lon, lat = x, mercator_inv(y)
        else:
            lon, lat = blended_generalized_inv(x, y, beta, phi0)
        out = np.empty((hi - lo, W, 4))
        out[..., :3] = sample_equirect(img, lon, lat, interpolation)
        out[..., 3] = 1.0
        return out

    return render_rows(H, threads, chunk)

