"""scikit-learn style front ends.

``fit`` learns the blend parameter from a panorama (when ``beta="auto"``),
``transform`` renders. Both take a single ``(H, W[, C])`` equirectangular
image as ``X``::

    proj = RevolvableProjector(beta="auto", size=(768, 768)).fit(pano)
    out = proj.transform(pano)          # (768, 768, 4) RGBA in [0, 1]
    proj.beta_, proj.e_total_
"""
from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.utils.validation import check_is_fitted

from .aspect import AspectSpec
from .cylindrical import check_blend, check_std_lat, project_cylindrical
from .distortion import OptimizerConfig, optimize_beta, total_error
from .exceptions import ConfigError, DomainError
from .render import ProjectionConfig, project
from .validation import check_panorama, check_threads


class RevolvableProjector(TransformerMixin, BaseEstimator):
    """Rectified blended azimuthal projection of a spherical panorama.

    Parameters
    ----------
    beta : float in [1e-3, 1] or "auto"
        Blend between the (near-)stereographic and Lambert azimuthal ends.
        ``"auto"`` picks the value minimizing the saliency-weighted
        distortion during :meth:`fit`.
    rectifier : {"squircle", "isosquare", "blended-isosquare", "equiareal-squircle", "none"}
    rho : float
        Roundness of the blended isosquare rectifier.
    ellipse : float
        Semi-major axis (semi-minor is 1); output width / height must match.
    center_lon, center_lat, roll : float
        Aspect in radians; the default centers the nadir.
    crop_lat : float
        Latitude (radians) shown on the image rim; ``pi/2`` keeps the ceiling.
    size : (width, height) or None
        Output size; defaults to ``(round(512 * ellipse), 512)``.
    kc, kq, beta_min, beta_max, tol, grid, resolution
        Distortion weights and search settings used by ``beta="auto"``.
    n_threads : int or None
        Rendering threads; ``None`` uses all cores. Output does not depend on it.
    """

    def __init__(self, beta=0.5, rectifier="squircle", rho=1.0, ellipse=1.0,
                 center_lon=0.0, center_lat=-0.5 * np.pi, roll=0.0, crop_lat=0.5 * np.pi,
                 size=None, interpolation="bilinear", kc=2.0, kq=1.0, beta_min=1e-3,
                 beta_max=1.0, tol=0.005, grid=16, resolution=128, n_threads=None):
        self.beta = beta
        self.rectifier = rectifier
        self.rho = rho
        self.ellipse = ellipse
        self.center_lon = center_lon
        self.center_lat = center_lat
        self.roll = roll
        self.crop_lat = crop_lat
        self.size = size
        self.interpolation = interpolation
        self.kc = kc
        self.kq = kq
        self.beta_min = beta_min
        self.beta_max = beta_max
        self.tol = tol
        self.grid = grid
        self.resolution = resolution
        self.n_threads = n_threads

    def _optimizer_config(self):
        return OptimizerConfig(kc=self.kc, kq=self.kq, beta_min=self.beta_min, beta_max=self.beta_max,
                               tol=self.tol, grid=self.grid, resolution=self.resolution)

    def _projection_config(self, beta):
        if self.size is None:
            width, height = int(round(512 * self.ellipse)), 512
        else:
            width, height = self.size
        try:
            aspect = AspectSpec(self.center_lon, self.center_lat, self.roll)
        except DomainError as exc:
            raise ConfigError(str(exc)) from None
        return ProjectionConfig(beta=beta, rectifier=self.rectifier, rho=self.rho, ellipse_a=self.ellipse,
                                aspect=aspect, ceiling_lat=self.crop_lat, out_width=width,
                                out_height=height, interpolation=self.interpolation)

    def fit(self, X, y=None):
        X = check_panorama(X)
        check_threads(self.n_threads)
        opt = self._optimizer_config()
        if isinstance(self.beta, str):
            if self.beta != "auto":
                raise ConfigError(f"beta must be a number or 'auto', got {self.beta!r}")
            config = self._projection_config(1.0)
            beta, err = optimize_beta(X, opt, config)
        else:
            config = self._projection_config(self.beta)
            beta, err = config.beta, None
        self.config_ = self._projection_config(beta)
        self.beta_ = float(beta)
        self.e_total_ = total_error(X, beta, opt, self.config_) if err is None else err
        return self

    def transform(self, X):
        check_is_fitted(self, "config_")
        return project(X, self.config_, threads=self.n_threads)

    def score(self, X, y=None):
        """Negative total distortion of the fitted projection on ``X`` (higher is better)."""
        check_is_fitted(self, "config_")
        return -total_error(X, self.beta_, self._optimizer_config(), self.config_)


class CylindricalProjector(TransformerMixin, BaseEstimator):
    """Blended cylindrical re-projection of an equirectangular panorama.

    ``beta=None`` renders plain Mercator (cut at ``mercator_lat``); otherwise
    ``0 < beta <= 1`` blends toward the equal-area map with standard latitude
    ``phi0`` (radians). ``size=None`` keeps the input dimensions.
    """

    def __init__(self, beta=1.0, phi0=0.0, size=None, interpolation="bilinear",
                 mercator_lat=np.radians(85.0), n_threads=None):
        self.beta = beta
        self.phi0 = phi0
        self.size = size
        self.interpolation = interpolation
        self.mercator_lat = mercator_lat
        self.n_threads = n_threads

    def fit(self, X, y=None):
        check_panorama(X)
        try:
            self.beta_ = None if self.beta is None else check_blend(self.beta)
            self.phi0_ = check_std_lat(self.phi0)
        except DomainError as exc:
            raise ConfigError(str(exc)) from None
        return self

    def transform(self, X):
        check_is_fitted(self, "phi0_")
        width, height = self.size if self.size is not None else (None, None)
        return project_cylindrical(X, self.beta_, self.phi0_, width, height, self.interpolation,
                                   self.n_threads, self.mercator_lat)
