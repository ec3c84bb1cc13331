"""Synthetic equirectangular panoramas used as test fixtures."""
import numpy as np
from scipy import ndimage


def _geo(width, height):
    i, j = np.meshgrid(np.arange(width), np.arange(height))
    lon = -np.pi + 2 * np.pi * (i + 0.5) / width
    lat = 0.5 * np.pi - np.pi * (j + 0.5) / height
    return i, j, lon, lat


def latlon_grid(width=1024, height=512, step=15.0):
    """Bright graticule lines every ``step`` degrees on a dark background."""
    _, _, lon, lat = _geo(width, height)
    lon, lat = np.degrees(lon), np.degrees(lat)
    d = min(360.0 / width, 180.0 / height)
    on_lon = np.abs((lon + 180) % step - step / 2) > step / 2 - d
    on_lat = np.abs((lat + 90) % step - step / 2) > step / 2 - d
    return np.where(on_lon | on_lat, 1.0, 0.2)


def band_noise(width=512, height=256, seed=0, sigma=3.0):
    """Uniform noise low-passed with a wrapping Gaussian, rescaled to [0, 1]."""
    rng = np.random.default_rng(seed)
    n = ndimage.gaussian_filter(rng.random((height, width)), sigma, mode="wrap")
    return (n - n.min()) / (n.max() - n.min())


def room(width=512, height=256):
    """Tiled ceiling, striped walls between +-40 degrees, checkered floor."""
    i, j, _, lat = _geo(width, height)
    img = 0.75 + 0.2 * (((i // 24) + (j // 6)) % 2)
    wall = (lat < np.radians(40)) & (lat > np.radians(-40))
    img = np.where(wall, 0.5 + 0.3 * ((i // 16) % 2), img)
    floor = lat <= np.radians(-40)
    return np.where(floor, 0.2 + 0.6 * (((i // 16) + (j // 8)) % 2), img)


def coordinate_panorama(width=1024, height=512):
    """Three channels: lon/(2 pi) + 1/2, lat/pi + 1/2 and a constant."""
    _, _, lon, lat = _geo(width, height)
    return np.dstack([lon / (2 * np.pi) + 0.5, lat / np.pi + 0.5, np.full(lon.shape, 0.5)])


def smooth_color(width=512, height=256):
    """Low-frequency RGB content, periodic in longitude."""
    _, _, lon, lat = _geo(width, height)
    r = 0.5 + 0.4 * np.cos(lat) * np.cos(2 * lon)
    g = 0.5 + 0.4 * np.sin(lat)
    b = 0.5 + 0.3 * np.cos(lat) * np.sin(3 * lon)
    return np.dstack([r, g, b])
