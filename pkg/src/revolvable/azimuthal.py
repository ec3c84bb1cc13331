"""Polar azimuthal projection kernels (south polar aspect).

Four latitude laws ``lat = f(r)`` are provided, all evaluated on a sphere of
radius 1/2 so that the equal-area disc has unit radius:

==================  ==========================================  ==============
name                latitude                                    radial span
==================  ==========================================  ==============
stereographic       2 atan(r) - pi/2                            [0, inf)
lambert             2 asin(r) - pi/2                            [0, 1]
blended             2 atan(r / sqrt(1 - beta^2 r^2)) - pi/2      [0, 1/beta]
normalized          2 atan(r / (beta sqrt(1 - r^2))) - pi/2      [0, 1]
==================  ==========================================  ==============

Longitude follows ``lon = atan2(u, v)``, i.e. ``u = r sin(lon)`` and
``v = r cos(lon)``. All functions are vectorized over numpy arrays.
"""
from __future__ import annotations

import numpy as np

from .exceptions import DomainError

BETA_MIN = 1e-3
DISC_TOL = 1e-9

HALF_PI = 0.5 * np.pi


def check_beta(beta, allow_zero=False):
    """Validate a blend parameter and return it as a float.

    The normalized projection requires ``beta >= BETA_MIN``; the unnormalized
    blend also accepts ``beta == 0`` (pure stereographic) when ``allow_zero``.
    """
    try:
        beta = float(beta)
    except (TypeError, ValueError):
        raise DomainError(f"beta must be a real number, got {beta!r}") from None
    lo = 0.0 if allow_zero else BETA_MIN
    if not (lo <= beta <= 1.0):
        raise DomainError(f"beta={beta} outside [{lo:g}, 1]")
    return beta


def _radius(r, rmax=1.0):
    r = np.asarray(r, dtype=float)
    if np.any(np.isnan(r)) or np.any(r < -DISC_TOL) or np.any(r > rmax + DISC_TOL):
        raise DomainError(f"radius outside [0, {rmax:g}]")
    return np.clip(r, 0.0, rmax)


def normalize_geo(lon, lat):
    """Bring arbitrary angles into lon in [-pi, pi], lat in [-pi/2, pi/2].

    Latitudes past a pole are reflected over it (and the longitude turned by
    pi), so the returned pair names the same point on the sphere.
    """
    lon = np.asarray(lon, dtype=float)
    lat = np.asarray(lat, dtype=float)
    lat_w = np.remainder(lat + HALF_PI, 2 * np.pi) - HALF_PI
    over = lat_w > HALF_PI
    lat_w = np.where(over, np.pi - lat_w, lat_w)
    lon = np.where(over, lon + np.pi, lon)
    inside = (lon >= -np.pi) & (lon <= np.pi)
    lon = np.where(inside, lon, np.remainder(lon + np.pi, 2 * np.pi) - np.pi)
    return lon, lat_w


def lat_from_r_stereographic(r):
    r = np.asarray(r, dtype=float)
    if np.any(np.isnan(r)) or np.any(r < -DISC_TOL):
        raise DomainError("stereographic radius must be >= 0")
    return 2.0 * np.arctan(np.maximum(r, 0.0)) - HALF_PI


def lat_from_r_lambert(r):
    r = _radius(r, 1.0)
    return 2.0 * np.arcsin(r) - HALF_PI


def lat_from_r_blended(r, beta):
    """Latitude of the unnormalized blend; the disc has radius ``1/beta``."""
    beta = check_beta(beta, allow_zero=True)
    if beta == 0.0:
        return lat_from_r_stereographic(r)
    r = _radius(r, 1.0 / beta)
    br = beta * r
    # atan2 returns exactly pi/2 on the rim where the root vanishes
    root = np.sqrt(np.maximum((1.0 - br) * (1.0 + br), 0.0))
    return 2.0 * np.arctan2(r, root) - HALF_PI


def lat_from_r_normalized(r, beta):
    """Latitude of the normalized blend, which always fills the unit disc."""
    beta = check_beta(beta)
    r = _radius(r, 1.0)
    # atan2(1, 0) is exactly pi/2, so the rim needs no special case
    root = beta * np.sqrt((1.0 - r) * (1.0 + r))
    return 2.0 * np.arctan2(r, root) - HALF_PI


def _check_lat(lat):
    lat = np.asarray(lat, dtype=float)
    if np.any(np.isnan(lat)) or np.any(np.abs(lat) > HALF_PI + DISC_TOL):
        raise DomainError("latitude outside [-pi/2, pi/2]")
    return np.clip(lat, -HALF_PI, HALF_PI)


def r_from_lat_normalized(lat, beta):
    """Inverse of :func:`lat_from_r_normalized`; returns r in [0, 1]."""
    beta = check_beta(beta)
    a = 0.5 * _check_lat(lat) + 0.25 * np.pi
    s = np.sin(a)
    r = beta * s / np.hypot(np.cos(a), beta * s)
    return np.clip(r, 0.0, 1.0)


def r_from_lat_blended(lat, beta):
    """Inverse of :func:`lat_from_r_blended`; returns r in [0, 1/beta]."""
    beta = check_beta(beta, allow_zero=True)
    a = 0.5 * _check_lat(lat) + 0.25 * np.pi
    s = np.sin(a)
    with np.errstate(divide="ignore"):
        r = s / np.hypot(np.cos(a), beta * s)
    if beta > 0.0:
        r = np.clip(r, 0.0, 1.0 / beta)
    return r


def _azimuth(u, v):
    lon = np.arctan2(u, v)
    return np.where((u == 0.0) & (v == 0.0), 0.0, lon)


def disc_to_geo(u, v, beta):
    """Map unit-disc points to ``(lon, lat)`` with the normalized blend."""
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    lat = lat_from_r_normalized(np.hypot(u, v), beta)
    return _azimuth(u, v), lat


def geo_to_disc(lon, lat, beta):
    """Inverse of :func:`disc_to_geo`."""
    r = r_from_lat_normalized(lat, beta)
    lon = np.asarray(lon, dtype=float)
    return r * np.sin(lon), r * np.cos(lon)


def check_axes(a, b=1.0):
    a, b = float(a), float(b)
    if not (np.isfinite(a) and np.isfinite(b) and a >= b > 0):
        raise DomainError(f"ellipse axes need a >= b > 0, got a={a}, b={b}")
    return a, b


def elliptical_disc_to_geo(u, v, beta, a=1.0, b=1.0):
    """Normalized blend on the ellipse ``u^2/a^2 + v^2/b^2 <= 1``.

    Longitude is ``atan2(a*u, b*v)``; with ``a == b`` this is the circular
    case exactly.
    """
    a, b = check_axes(a, b)
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    if a == b:
        return disc_to_geo(u / a, v / b, beta)
    lat = lat_from_r_normalized(np.hypot(u / a, v / b), beta)
    return _azimuth(a * u, b * v), lat


def elliptical_geo_to_disc(lon, lat, beta, a=1.0, b=1.0):
    """Inverse of :func:`elliptical_disc_to_geo`."""
    a, b = check_axes(a, b)
    r = r_from_lat_normalized(lat, beta)
    lon = np.asarray(lon, dtype=float)
    if a == b:
        return a * r * np.sin(lon), b * r * np.cos(lon)
    # position angle psi on the unit circle with atan2(a^2 sin psi, b^2 cos psi) = lon
    psi = np.arctan2(b * b * np.sin(lon), a * a * np.cos(lon))
    return a * r * np.sin(psi), b * r * np.cos(psi)
