"""Revolvable overhead-view panoramas.

An equirectangular panorama is mapped through a blended azimuthal projection
(stereographic to Lambert equal-area, controlled by ``beta``) and then
stretched from the disc onto a square or ellipse-bounded rectangle, so the
result can be rotated in-plane like a tabletop view.
"""
__version__ = "0.1.0"

from .aspect import AspectSpec, apply_aspect, rotation_from_spec
from .azimuthal import disc_to_geo, geo_to_disc
from .cylindrical import blended_cyl_fwd, blended_cyl_inv, project_cylindrical
from .distortion import OptimizerConfig, distortion_field, optimize_beta, total_error
from .estimators import CylindricalProjector, RevolvableProjector
from .exceptions import ConfigError, DomainError, ImageIOError, NumericError, RevolvableError
from .rectifiers import RectifierKind, rectify
from .render import ProjectionConfig, project, read_image, write_image

__all__ = [
    "AspectSpec", "ConfigError", "CylindricalProjector", "DomainError", "ImageIOError",
    "NumericError", "OptimizerConfig", "ProjectionConfig", "RectifierKind", "RevolvableError",
    "RevolvableProjector", "apply_aspect", "blended_cyl_fwd", "blended_cyl_inv", "disc_to_geo",
    "distortion_field", "geo_to_disc", "optimize_beta", "project", "project_cylindrical",
    "read_image", "rectify", "rotation_from_spec", "total_error", "write_image",
]
