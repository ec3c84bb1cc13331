"""Input validation helpers for panoramas and image sizes."""
from __future__ import annotations

import re
import warnings

import numpy as np

from .exceptions import ConfigError


class AspectRatioWarning(UserWarning):
    """The panorama is not (close to) the 2:1 equirectangular shape."""


def check_panorama(X, copy=False):
    """Return ``X`` as a float64 ``(H, W, C)`` array with values in [0, 1].

    Integer images are scaled by their dtype maximum; 2-D arrays become a
    single channel. Images far from 2:1 are accepted with a warning.
    """
    X = np.asarray(X)
    if X.ndim == 2:
        X = X[:, :, None]
    if X.ndim != 3:
        raise ConfigError(f"panorama must be (H, W) or (H, W, C), got shape {X.shape}")
    H, W, C = X.shape
    if H < 1 or W < 1 or C < 1:
        raise ConfigError(f"panorama has an empty dimension: {X.shape}")
    if np.issubdtype(X.dtype, np.integer):
        X = X.astype(float) / np.iinfo(X.dtype).max
    elif np.issubdtype(X.dtype, np.floating) or X.dtype == bool:
        X = np.array(X, dtype=float, copy=copy)
    else:
        raise ConfigError(f"unsupported pixel dtype {X.dtype}")
    if not np.all(np.isfinite(X)):
        raise ConfigError("panorama contains non-finite values")
    if abs(W - 2 * H) > 1:
        warnings.warn(f"panorama is {W}x{H}, not 2:1 equirectangular", AspectRatioWarning, stacklevel=2)
    return X


def parse_size(text):
    """Parse ``"WxH"`` into ``(W, H)``."""
    m = re.fullmatch(r"\s*(\d+)\s*[xX]\s*(\d+)\s*", str(text))
    if not m:
        raise ConfigError(f"size must look like 512x512, got {text!r}")
    w, h = int(m.group(1)), int(m.group(2))
    if w < 1 or h < 1:
        raise ConfigError(f"size must be positive, got {text!r}")
    return w, h


def check_threads(n):
    if n is None:
        return None
    n = int(n)
    if n < 1:
        raise ConfigError(f"threads must be >= 1, got {n}")
    return n
