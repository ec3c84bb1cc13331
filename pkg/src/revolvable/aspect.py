"""Rotational aspect of the sphere as a post-process on geodetic coordinates."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError


@dataclass(frozen=True)
class AspectSpec:
    """Which sphere point becomes the projection center, plus a roll about it.

    Angles are radians. The default puts the South Pole (nadir) at the center,
    which is the canonical aspect of every kernel in :mod:`revolvable.azimuthal`.
    """

    center_lon: float = 0.0
    center_lat: float = -0.5 * np.pi
    roll: float = 0.0

    def __post_init__(self):
        if not all(np.isfinite([self.center_lon, self.center_lat, self.roll])):
            raise DomainError("aspect angles must be finite")


def _rz(angle):
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]])


def _ry(angle):
    c, s = np.cos(angle), np.sin(angle)
    return np.array([[c, 0.0, s], [0.0, 1.0, 0.0], [-s, 0.0, c]])


def geo_to_vec(lon, lat):
    """Unit vectors ``(cos lat cos lon, cos lat sin lon, sin lat)``, shape (..., 3)."""
    lon = np.asarray(lon, dtype=float)
    lat = np.asarray(lat, dtype=float)
    c = np.cos(lat)
    return np.stack([c * np.cos(lon), c * np.sin(lon), np.sin(lat)], axis=-1)


def vec_to_geo(vec):
    """Inverse of :func:`geo_to_vec`; vectors are renormalized, lon = 0 at the poles."""
    vec = np.asarray(vec, dtype=float)
    x, y, z = vec[..., 0], vec[..., 1], vec[..., 2]
    rho = np.hypot(x, y)
    if np.any((rho == 0) & (z == 0)):
        raise DomainError("zero vector has no direction")
    lat = np.arctan2(z, rho)
    lon = np.where(rho == 0, 0.0, np.arctan2(y, x))
    return lon, lat


def rotation_from_spec(spec: AspectSpec = AspectSpec()):
    """Rotation ``Rz(roll) Ry(lat0 + pi/2) Rz(-lon0)`` taking the center to the South Pole."""
    return _rz(spec.roll) @ _ry(spec.center_lat + 0.5 * np.pi) @ _rz(-spec.center_lon)


def apply_aspect(lon, lat, R):
    """Rotate geodetic coordinates by the 3x3 rotation ``R``."""
    R = np.asarray(R, dtype=float)
    if R.shape != (3, 3):
        raise DomainError("rotation must be a 3x3 matrix")
    return vec_to_geo(geo_to_vec(lon, lat) @ R.T)
