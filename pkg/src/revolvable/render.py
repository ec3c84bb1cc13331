"""Backward-sampling renderer from an equirectangular panorama to a square.

For every output pixel the chain is::

    pixel -> plane (x, y) -> rectifier -> disc (u, v) -> (lon, lat)
          -> aspect rotation -> equirectangular sample

Equirectangular convention: pixel ``(i, j)`` of a ``W x H`` panorama has its
center at ``lon = -pi + 2 pi (i + 0.5) / W`` and ``lat = pi/2 - pi (j + 0.5) / H``.
Columns wrap around in longitude; rows are clamped in latitude.
"""
from __future__ import annotations

import os
import tempfile
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from PIL import Image

from . import azimuthal
from .aspect import AspectSpec, apply_aspect, rotation_from_spec
from .exceptions import ConfigError, DomainError, ImageIOError
from .rectifiers import RectifierKind, rect_to_ellipse
from .validation import check_panorama, check_threads

INTERPOLATIONS = ("nearest", "bilinear")


@dataclass(frozen=True)
class ProjectionConfig:
    """Everything the renderer needs besides the panorama itself.

    ``ellipse_a`` is the semi-major axis with the semi-minor fixed at 1, so a
    rectified output must have ``out_width / out_height == ellipse_a``.
    ``ceiling_lat`` is the latitude shown on the image rim (``pi/2`` keeps the
    whole sphere). ``background`` is an RGBA fill in [0, 1] for pixels without
    a source sample.
    """

    beta: float = 0.5
    rectifier: RectifierKind = RectifierKind.SQUIRCLE
    rho: float = 1.0
    ellipse_a: float = 1.0
    aspect: AspectSpec = field(default_factory=AspectSpec)
    ceiling_lat: float = 0.5 * np.pi
    out_width: int = 512
    out_height: int = 512
    interpolation: str = "bilinear"
    background: tuple = (0.0, 0.0, 0.0, 0.0)

    def __post_init__(self):
        try:
            object.__setattr__(self, "beta", azimuthal.check_beta(self.beta))
            object.__setattr__(self, "rectifier", RectifierKind(self.rectifier))
            azimuthal.check_axes(self.ellipse_a, 1.0)
        except (DomainError, ValueError) as exc:
            raise ConfigError(str(exc)) from None
        if not self.rho >= 0:
            raise ConfigError(f"rho must be >= 0, got {self.rho}")
        if not (-0.5 * np.pi < self.ceiling_lat <= 0.5 * np.pi):
            raise ConfigError("ceiling latitude must lie in (-90, 90] degrees")
        if int(self.out_width) < 1 or int(self.out_height) < 1:
            raise ConfigError("output dimensions must be >= 1")
        if self.interpolation not in INTERPOLATIONS:
            raise ConfigError(f"interpolation must be one of {INTERPOLATIONS}")
        if len(self.background) != 4:
            raise ConfigError("background must be an RGBA 4-tuple")
        if self.rectifier is not RectifierKind.NONE:
            if abs(self.out_width - self.ellipse_a * self.out_height) > 1:
                raise ConfigError(
                    f"output {self.out_width}x{self.out_height} does not match "
                    f"ellipse axes {self.ellipse_a:g}:1"
                )

    @property
    def axes(self):
        return self.ellipse_a, 1.0


def pixel_to_plane(i, j, width, height, a=1.0, b=1.0):
    """Pixel centers to plane coordinates in ``[-a, a] x [-b, b]``, y pointing up."""
    i = np.asarray(i, dtype=float)
    j = np.asarray(j, dtype=float)
    x = a * (-1.0 + 2.0 * (i + 0.5) / width)
    y = b * (1.0 - 2.0 * (j + 0.5) / height)
    return x, y


def plane_to_source(x, y, config: ProjectionConfig, rotation=None):
    """Trace plane points back to panorama coordinates.

    Returns ``(lon, lat, valid)``; ``valid`` is False only outside the
    inscribed ellipse when no rectifier is used.
    """
    a, b = config.axes
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if config.rectifier is RectifierKind.NONE:
        valid = (x / a) ** 2 + (y / b) ** 2 <= 1.0
        u = np.where(valid, x, 0.0)
        v = np.where(valid, y, 0.0)
    else:
        valid = np.ones(x.shape, dtype=bool)
        u, v = rect_to_ellipse(x, y, a, b, config.rectifier, config.rho)
    if config.ceiling_lat < 0.5 * np.pi:
        r_cap = azimuthal.r_from_lat_normalized(config.ceiling_lat, config.beta)
        u, v = u * r_cap, v * r_cap
    lon, lat = azimuthal.elliptical_disc_to_geo(u, v, config.beta, a, b)
    if rotation is None:
        rotation = rotation_from_spec(config.aspect)
    if not np.array_equal(rotation, np.eye(3)):
        # output frame -> panorama frame is the inverse rotation
        lon, lat = apply_aspect(lon, lat, np.asarray(rotation).T)
    return lon, lat, valid


def geo_to_pixel(lon, lat, width, height):
    """Continuous panorama pixel coordinates ``(col, row)`` of a geo point."""
    col = (np.asarray(lon, dtype=float) + np.pi) * (width / (2 * np.pi)) - 0.5
    row = (0.5 * np.pi - np.asarray(lat, dtype=float)) * (height / np.pi) - 0.5
    return col, row


def nearest_pixel(lon, lat, width, height):
    """Integer ``(col, row)`` of the panorama pixel containing a geo point."""
    col, row = geo_to_pixel(lon, lat, width, height)
    i = np.mod(np.floor(col + 0.5).astype(np.int64), width)
    j = np.clip(np.floor(row + 0.5).astype(np.int64), 0, height - 1)
    return i, j


def sample_equirect(img, lon, lat, interpolation="bilinear"):
    """Sample a ``(H, W, C)`` panorama at geo points; returns shape ``lon.shape + (C,)``."""
    img = np.asarray(img, dtype=float)
    H, W = img.shape[:2]
    if img.ndim == 2:
        img = img[:, :, None]
    if interpolation == "nearest":
        i, j = nearest_pixel(lon, lat, W, H)
        return img[j, i]
    if interpolation != "bilinear":
        raise ConfigError(f"unknown interpolation {interpolation!r}")
    col, row = geo_to_pixel(lon, lat, W, H)
    row = np.clip(row, 0.0, H - 1.0)
    c0 = np.floor(col)
    r0 = np.floor(row)
    fc = (col - c0)[..., None]
    fr = (row - r0)[..., None]
    c0 = c0.astype(np.int64)
    r0 = r0.astype(np.int64)
    c1 = np.mod(c0 + 1, W)
    c0 = np.mod(c0, W)
    r1 = np.minimum(r0 + 1, H - 1)
    top = img[r0, c0] * (1.0 - fc) + img[r0, c1] * fc
    bottom = img[r1, c0] * (1.0 - fc) + img[r1, c1] * fc
    return top * (1.0 - fr) + bottom * fr


def _row_chunks(height, threads):
    n = max(1, min(height, threads * 4))
    edges = np.linspace(0, height, n + 1).astype(int)
    return [(lo, hi) for lo, hi in zip(edges[:-1], edges[1:]) if hi > lo]


def render_rows(height, threads, render_chunk):
    """Run ``render_chunk(row_lo, row_hi)`` over row bands and stack the results.

    Every output row is produced by exactly one call, so the result does not
    depend on ``threads``.
    """
    threads = check_threads(threads) or os.cpu_count() or 1
    chunks = _row_chunks(height, threads)
    if threads == 1 or len(chunks) == 1:
        parts = [render_chunk(lo, hi) for lo, hi in chunks]
    else:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(lambda c: render_chunk(*c), chunks))
    return np.concatenate(parts, axis=0)


def project(img, config: ProjectionConfig = ProjectionConfig(), threads=None):
    """Render a panorama into a revolvable overhead view.

    Returns an ``(out_height, out_width, 4)`` float RGBA array in [0, 1].
    """
    img = check_panorama(img)
    if img.shape[2] == 1:
        img = np.repeat(img, 3, axis=2)
    img = img[:, :, :3]
    W, H = int(config.out_width), int(config.out_height)
    a, b = config.axes
    R = rotation_from_spec(config.aspect)
    background = np.asarray(config.background, dtype=float)

    def chunk(lo, hi):
        j, i = np.mgrid[lo:hi, 0:W]
        x, y = pixel_to_plane(i, j, W, H, a, b)
        lon, lat, valid = plane_to_source(x, y, config, R)
        rgb = sample_equirect(img, lon, lat, config.interpolation)
        out = np.empty((hi - lo, W, 4))
        out[..., :3] = rgb
        out[..., 3] = 1.0
        out[~valid] = background
        out[~valid, 3] = 0.0
        return out

    return render_rows(H, threads, chunk)


def to_uint8(arr):
    arr = np.asarray(arr)
    if arr.dtype == np.uint8:
        return arr
    return np.clip(np.round(np.asarray(arr, dtype=float) * 255.0), 0, 255).astype(np.uint8)


def read_image(path, mode="RGB"):
    """Read a PNG or JPEG into a float ``(H, W, C)`` array in [0, 1]."""
    path = os.fspath(path)
    try:
        with Image.open(path) as im:
            im.load()
            if im.width == 0 or im.height == 0:
                raise ImageIOError(f"{path}: image has zero size")
            arr = np.asarray(im.convert(mode))
    except ImageIOError:
        raise
    except (OSError, ValueError, SyntaxError) as exc:
        raise ImageIOError(f"cannot read image {path}: {exc}") from None
    return check_panorama(arr)


def write_image(path, image):
    """Write a float [0, 1] or uint8 image as PNG, atomically (temp file + rename)."""
    path = os.fspath(path)
    if os.path.splitext(path)[1].lower() != ".png":
        raise ImageIOError(f"{path}: only PNG output is supported")
    data = to_uint8(image)
    if data.ndim == 3 and data.shape[2] == 1:
        data = data[:, :, 0]
    directory = os.path.dirname(os.path.abspath(path))
    tmp = None
    try:
        with tempfile.NamedTemporaryFile(dir=directory, suffix=".png", delete=False) as fh:
            tmp = fh.name
            Image.fromarray(data).save(fh, format="PNG")
        os.replace(tmp, path)
    except (OSError, ValueError, TypeError) as exc:
        if tmp is not None and os.path.exists(tmp):
            os.unlink(tmp)
        raise ImageIOError(f"cannot write image {path}: {exc}") from None
