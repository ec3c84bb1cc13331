"""Distortion metrics of the rectified projection and the blend-parameter search.

The projection is viewed as a parametrized surface: plane point ``(x, y)``
goes to a point on the sphere of radius 1/2. The first fundamental form
``[[E, F], [F, G]]`` of that surface is measured per sample point and its
eigenvalues ``sigma1 >= sigma2`` give

* conformal error ``e_c = 1 - min(sigma2 / sigma1, 1)``
* equiareal error ``e_q = 1 - min(sigma1 sigma2, 1 / (sigma1 sigma2))``

Both are weighted by the gradient saliency ``e1`` of the source panorama and
summed into ``e_total``; :func:`optimize_beta` minimizes it over beta.
"""
from __future__ import annotations

import csv
import math
import os
from dataclasses import dataclass, replace
from typing import NamedTuple

import numpy as np

from . import azimuthal
from .aspect import rotation_from_spec
from .exceptions import ConfigError, DomainError
from .rectifiers import RectifierKind, rect_to_ellipse
from .render import ProjectionConfig, nearest_pixel, pixel_to_plane, plane_to_source, write_image
from .validation import check_panorama

FD_STEP = 1e-5
TIE_RTOL = 1e-9
INV_PHI = (math.sqrt(5) - 1) / 2


class FundamentalForm(NamedTuple):
    E: np.ndarray
    F: np.ndarray
    G: np.ndarray


class SigmaPair(NamedTuple):
    sigma1: np.ndarray
    sigma2: np.ndarray


@dataclass(frozen=True)
class OptimizerConfig:
    """Weights, search range and sampling of the beta search."""

    kc: float = 2.0
    kq: float = 1.0
    beta_min: float = azimuthal.BETA_MIN
    beta_max: float = 1.0
    tol: float = 0.005
    grid: int = 16
    resolution: int = 128
    h: float = FD_STEP

    def __post_init__(self):
        if self.kc < 0 or self.kq < 0 or self.kc + self.kq <= 0:
            raise ConfigError("kc and kq must be >= 0 with a positive sum")
        if not self.tol > 0:
            raise ConfigError("tolerance must be > 0")
        if not (azimuthal.BETA_MIN <= self.beta_min < self.beta_max <= 1.0):
            raise ConfigError(f"need {azimuthal.BETA_MIN:g} <= beta_min < beta_max <= 1")
        if int(self.grid) < 2:
            raise ConfigError("coarse grid needs at least 2 points")
        if int(self.resolution) < 1:
            raise ConfigError("metric resolution must be >= 1")
        if not (0 < self.h < 0.01):
            raise ConfigError("finite-difference step must be in (0, 0.01)")


@dataclass
class DistortionField:
    """Per-sample metric arrays on the output-plane grid (row 0 at the top).

    Entries outside ``valid`` are NaN.
    """

    x: np.ndarray
    y: np.ndarray
    valid: np.ndarray
    sigma1: np.ndarray
    sigma2: np.ndarray
    e_c: np.ndarray
    e_q: np.ndarray
    e1: np.ndarray | None = None

    @property
    def shape(self):
        return self.x.shape


def _embed(lon, lat):
    c = 0.5 * np.cos(lat)
    return c * np.cos(lon), c * np.sin(lon), 0.5 * np.sin(lat)


def surface_fn(x, y, beta):
    """Closed-form sphere point for the squircle rectifier and normalized blend."""
    beta = azimuthal.check_beta(beta)
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    xx, yy = x * x, y * y
    s2 = np.maximum(xx + yy - xx * yy, 0.0)
    q = np.sqrt(xx + yy)
    b2 = beta * beta
    den = b2 + (1.0 - b2) * s2
    wall = np.sqrt(np.maximum((1.0 - xx) * (1.0 - yy), 0.0))
    common = np.divide(beta * np.sqrt(s2) * wall, q * den, out=np.zeros_like(q), where=q > 0)
    f1 = y * common
    f2 = x * common
    f3 = ((1.0 + b2) * s2 - b2) / (2.0 * den)
    return f1, f2, f3


def surface_fn_disc(u, v, beta, form="normalized"):
    """Sphere point for a disc point, skipping the rectifier.

    ``form="normalized"`` uses the unit-disc blend that the renderer uses;
    ``form="blended"`` uses the unnormalized blend (disc radius ``1/beta``),
    whose ``beta -> 0`` limit is the stereographic projection.
    """
    u = np.asarray(u, dtype=float)
    v = np.asarray(v, dtype=float)
    r = np.hypot(u, v)
    if form == "normalized":
        lat = azimuthal.lat_from_r_normalized(r, beta)
    elif form == "blended":
        lat = azimuthal.lat_from_r_blended(r, beta)
    else:
        raise ValueError(f"unknown form {form!r}")
    lon = np.where(r > 0, np.arctan2(u, v), 0.0)
    return _embed(lon, lat)


def fundamental_form(f, x, y, beta, h=FD_STEP, domain="square", bounds=(1.0, 1.0)):
    """First fundamental form of ``f(x, y, beta) -> (f1, f2, f3)`` by central differences.

    Points must keep ``2h`` clearance from the domain boundary (the rectangle
    ``bounds`` for ``domain="square"``, the unit circle for ``"disc"``).
    """
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if domain == "square":
        a, b = bounds
        inside = (np.abs(x) <= a - 2 * h) & (np.abs(y) <= b - 2 * h)
    elif domain == "disc":
        inside = np.hypot(x, y) <= 1.0 - 2 * h
    else:
        raise ValueError(f"unknown domain {domain!r}")
    if not np.all(inside):
        raise DomainError("evaluation point closer than 2h to the boundary")
    fxp, fxm = f(x + h, y, beta), f(x - h, y, beta)
    fyp, fym = f(x, y + h, beta), f(x, y - h, beta)
    dx = [(p - m) / (2 * h) for p, m in zip(fxp, fxm)]
    dy = [(p - m) / (2 * h) for p, m in zip(fyp, fym)]
    E = sum(d * d for d in dx)
    G = sum(d * d for d in dy)
    F = sum(p * q for p, q in zip(dx, dy))
    return FundamentalForm(E, F, G)


def singular_values(ff: FundamentalForm) -> SigmaPair:
    """Eigenvalues of the symmetric 2x2 form, ``sigma1 >= sigma2 >= 0``."""
    E, F, G = (np.asarray(c, dtype=float) for c in ff)
    half_tr = 0.5 * (E + G)
    root = np.hypot(0.5 * (E - G), F)
    s1 = np.maximum(half_tr + root, 0.0)
    det = np.maximum(E * G - F * F, 0.0)
    # det / s1 keeps the small eigenvalue accurate
    s2 = np.divide(det, s1, out=np.zeros_like(s1), where=s1 > 0)
    return SigmaPair(s1, np.minimum(s2, s1))


def errors_from_sigma(sigma: SigmaPair):
    """Conformal and equiareal errors ``(e_c, e_q)``, both in [0, 1]."""
    s1 = np.asarray(sigma.sigma1, dtype=float)
    s2 = np.asarray(sigma.sigma2, dtype=float)
    p = s1 * s2
    with np.errstate(over="ignore"):
        prod = np.divide(1.0, p, out=np.zeros_like(p), where=p > 0)
    prod = np.minimum(p, prod)
    ratio = np.divide(s2, s1, out=np.zeros_like(s1), where=s1 > 0)
    return 1.0 - np.minimum(ratio, 1.0), 1.0 - prod


def saliency_e1(img):
    """L1 norm of the grayscale gradient, per panorama pixel.

    Horizontal differences are central with longitude wraparound; vertical
    ones are central inside and one-sided on the top and bottom rows. Both
    are per-pixel derivatives (central differences are halved).
    """
    gray = check_panorama(img).mean(axis=2)
    H, W = gray.shape
    gx = 0.5 * (np.roll(gray, -1, axis=1) - np.roll(gray, 1, axis=1))
    gy = np.gradient(gray, axis=0) if H >= 2 else np.zeros_like(gray)
    return np.abs(gx) + np.abs(gy)


def _plane_surface(config: ProjectionConfig):
    """Point function ``(x, y, beta) -> sphere point`` for a projection config."""
    a, b = config.axes
    kind = config.rectifier
    if kind is RectifierKind.SQUIRCLE and a == b == 1.0 and config.ceiling_lat >= 0.5 * np.pi:
        return surface_fn

    def f(x, y, beta):
        if kind is RectifierKind.NONE:
            u, v = x, y
        else:
            u, v = rect_to_ellipse(x, y, a, b, kind, config.rho)
        if config.ceiling_lat < 0.5 * np.pi:
            r_cap = azimuthal.r_from_lat_normalized(config.ceiling_lat, beta)
            u, v = u * r_cap, v * r_cap
        return _embed(*azimuthal.elliptical_disc_to_geo(u, v, beta, a, b))

    return f


def metric_grid(opt: OptimizerConfig, config: ProjectionConfig):
    """Pixel centers of the metric-resolution image and the sample mask."""
    a, b = config.axes
    n = int(opt.resolution)
    nx = max(1, int(round(n * a / b)))
    j, i = np.mgrid[0:n, 0:nx]
    x, y = pixel_to_plane(i, j, nx, n, a, b)
    h = opt.h
    if config.rectifier is RectifierKind.NONE:
        valid = np.hypot(x / a, y / b) <= 1.0 - 4 * h / min(a, b)
    else:
        valid = (np.abs(x) <= a - 2 * h) & (np.abs(y) <= b - 2 * h)
    return x, y, valid


def _config_for(beta, config):
    if config is None:
        return ProjectionConfig(beta=beta)
    return replace(config, beta=beta)


def distortion_field(beta, opt: OptimizerConfig = OptimizerConfig(), config=None, img=None, e1_map=None):
    """Evaluate sigma, e_c, e_q (and e1 when a panorama is given) on the metric grid."""
    cfg = _config_for(beta, config)
    x, y, valid = metric_grid(opt, cfg)
    f = _plane_surface(cfg)
    a, b = cfg.axes
    ff = fundamental_form(f, x[valid], y[valid], cfg.beta, opt.h, "square", (a, b))
    sig = singular_values(ff)
    ec, eq = errors_from_sigma(sig)

    def scatter(vals):
        out = np.full(x.shape, np.nan)
        out[valid] = vals
        return out

    e1 = None
    if e1_map is None and img is not None:
        e1_map = saliency_e1(img)
    if e1_map is not None:
        lon, lat, _ = plane_to_source(x[valid], y[valid], cfg, rotation_from_spec(cfg.aspect))
        H, W = e1_map.shape
        ci, rj = nearest_pixel(lon, lat, W, H)
        e1 = scatter(e1_map[rj, ci])
    return DistortionField(x, y, valid, scatter(sig.sigma1), scatter(sig.sigma2), scatter(ec), scatter(eq), e1)


class _Objective:
    """``e_total`` as a function of beta with the saliency map computed once."""

    def __init__(self, img, opt, config):
        self.opt = opt
        self.config = config
        self.e1_map = saliency_e1(img)
        self.calls = 0

    def __call__(self, beta):
        self.calls += 1
        fld = distortion_field(beta, self.opt, self.config, e1_map=self.e1_map)
        v = fld.valid
        cost = fld.e1[v] * (self.opt.kc * fld.e_c[v] + self.opt.kq * fld.e_q[v])
        return float(np.sum(cost))


def total_error(img, beta, opt: OptimizerConfig = OptimizerConfig(), config=None):
    """Saliency-weighted distortion ``sum e1 (kc e_c + kq e_q)`` at one beta."""
    return _Objective(img, opt, config)(beta)


def _better(fa, fb, scale):
    """True when ``fa`` beats ``fb`` by more than the tie tolerance."""
    return fa < fb - TIE_RTOL * scale


def golden_section(f, a, b, tol):
    """Golden-section search on ``[a, b]``; returns every ``(x, f(x))`` evaluated.

    Ties move the bracket right, toward larger arguments.
    """
    history = []

    def g(x):
        fx = f(x)
        history.append((x, fx))
        return fx

    c = b - INV_PHI * (b - a)
    d = a + INV_PHI * (b - a)
    fc, fd = g(c), g(d)
    while b - a > tol:
        scale = max(abs(fc), abs(fd), 1e-300)
        if _better(fc, fd, scale):
            b, d, fd = d, c, fc
            c = b - INV_PHI * (b - a)
            fc = g(c)
        else:
            a, c, fc = c, d, fd
            d = a + INV_PHI * (b - a)
            fd = g(d)
    return history


def _pick(points):
    """Minimum over ``(beta, value)`` pairs, ties resolved to the larger beta."""
    best = min(v for _, v in points)
    scale = max(max(abs(v) for _, v in points), 1e-300)
    return max((b, v) for b, v in points if not _better(best, v, scale))


def optimize_beta(img, opt: OptimizerConfig = OptimizerConfig(), config=None):
    """Coarse grid scan then golden-section refinement of ``e_total`` over beta.

    Returns ``(beta_star, e_total_star)``.
    """
    objective = _Objective(img, opt, config)
    grid = np.linspace(opt.beta_min, opt.beta_max, int(opt.grid))
    points = [(float(b), objective(b)) for b in grid]
    k = int(np.searchsorted(grid, _pick(points)[0]))
    lo, hi = grid[max(k - 1, 0)], grid[min(k + 1, len(grid) - 1)]
    points += golden_section(objective, float(lo), float(hi), opt.tol)
    return _pick(points)


def dense_scan(img, n=512, opt: OptimizerConfig = OptimizerConfig(), config=None):
    """Evaluate ``e_total`` on ``n`` evenly spaced betas; returns ``(betas, values)``."""
    objective = _Objective(img, opt, config)
    betas = np.linspace(opt.beta_min, opt.beta_max, n)
    return betas, np.array([objective(b) for b in betas])


def write_heatmap(path, values, vmax=1.0):
    """Grayscale PNG of a metric field scaled from ``[0, vmax]``; NaN is black."""
    vals = np.nan_to_num(np.asarray(values, dtype=float), nan=0.0)
    if vmax is None:
        vmax = float(vals.max()) if vals.size else 0.0
    scaled = vals / vmax if vmax > 0 else np.zeros_like(vals)
    write_image(path, np.clip(scaled, 0.0, 1.0))


def write_metrics_csv(path, fld: DistortionField):
    """CSV with header ``row,col,e_c,e_q,e1``, one line per metric sample."""
    e1 = fld.e1 if fld.e1 is not None else np.full(fld.shape, np.nan)
    tmp = f"{os.fspath(path)}.tmp"
    with open(tmp, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["row", "col", "e_c", "e_q", "e1"])
        rows, cols = fld.shape
        for r in range(rows):
            for c in range(cols):
                w.writerow([r, c, repr(float(fld.e_c[r, c])), repr(float(fld.e_q[r, c])), repr(float(e1[r, c]))])
    os.replace(tmp, path)
