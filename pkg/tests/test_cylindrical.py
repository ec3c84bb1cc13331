import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

import panoramas
from revolvable import cylindrical as cyl
from revolvable.exceptions import ConfigError, DomainError

betas = st.floats(min_value=1e-6, max_value=1.0)
lats = st.floats(min_value=-0.5 * np.pi, max_value=0.5 * np.pi)


def test_reference_value():
    # frozen from a 50-digit mpmath evaluation of the closed form
    assert cyl.blended_cyl_fwd(0.5 * np.pi, 0.5) == pytest.approx(1.5374160396, rel=1e-10)


def test_closed_form_against_mpmath():
    mpmath = pytest.importorskip("mpmath")
    mpmath.mp.dps = 40
    for beta in (1e-4, 0.1, 0.5, 0.9):
        for phi in (0.01, 0.3, 1.0, 1.5):
            b = mpmath.mpf(beta)
            s = mpmath.sin(mpmath.mpf(phi))
            q = (1 - b + s) / (1 - (1 - b) * s)
            ref = (1 + b) / (2 * b) * (q**b - (1 - b) ** b)
            assert float(cyl.blended_cyl_fwd(phi, beta)) == pytest.approx(float(ref), rel=1e-12)


@given(beta=betas, phi=lats)
def test_odd(beta, phi):
    assert cyl.blended_cyl_fwd(-phi, beta) == pytest.approx(-cyl.blended_cyl_fwd(phi, beta), abs=1e-12)


@given(beta=betas)
def test_equator_and_finite_poles(beta):
    assert cyl.blended_cyl_fwd(0.0, beta) == 0.0
    assert np.isfinite(cyl.blended_cyl_ymax(beta))


@given(beta=betas)
def test_monotone(beta):
    y = cyl.blended_cyl_fwd(np.linspace(-0.5 * np.pi, 0.5 * np.pi, 501), beta)
    assert np.all(np.diff(y) > 0)


def test_mercator_limit_tightens():
    phi = np.radians(np.linspace(-89, 89, 1001))
    gaps = [np.max(np.abs(cyl.blended_cyl_fwd(phi, b) - cyl.mercator_fwd(phi))) for b in (1e-3, 1e-4, 1e-5)]
    assert gaps[0] > gaps[1] > gaps[2]


def test_mercator_pieces():
    assert cyl.mercator_fwd(0.5 * np.pi) == np.inf and cyl.mercator_fwd(-0.5 * np.pi) == -np.inf
    phi = np.linspace(-1.5, 1.5, 31)
    assert np.allclose(cyl.mercator_inv(cyl.mercator_fwd(phi)), phi, atol=1e-13)
    assert np.allclose(cyl.mercator_fwd(phi), np.log(np.tan(np.pi / 4 + phi / 2)), atol=1e-12)


@given(beta=betas, phi=lats)
def test_inverse(beta, phi):
    assert cyl.blended_cyl_inv(cyl.blended_cyl_fwd(phi, beta), beta) == pytest.approx(phi, abs=1e-9)


@pytest.mark.parametrize("phi0", [0.0, cyl.BEHRMANN, cyl.GALL_PETERS, cyl.TOBLER_SQUARE])
def test_generalized_equal_area(phi0):
    # area element dx dy = cos(lat) dlon dlat for every standard latitude
    lon, lat = 0.4, np.linspace(-1.4, 1.4, 15)
    h = 1e-6
    x, _ = cyl.generalized_cea_fwd(lon + h, lat, phi0)
    x0, _ = cyl.generalized_cea_fwd(lon - h, lat, phi0)
    _, y = cyl.generalized_cea_fwd(lon, lat + h, phi0)
    _, y0 = cyl.generalized_cea_fwd(lon, lat - h, phi0)
    jac = (x - x0) / (2 * h) * (y - y0) / (2 * h)
    assert np.allclose(jac, np.cos(lat), rtol=1e-8)
    back = cyl.generalized_cea_inv(*cyl.generalized_cea_fwd(lon, lat, phi0), phi0)
    assert np.allclose(back[1], lat) and np.allclose(back[0], lon)


def test_blended_generalized_end():
    lat = np.linspace(-1.5, 1.5, 11)
    x1, y1 = cyl.blended_generalized_fwd(1.0, lat, 1.0, cyl.GALL_PETERS)
    x2, y2 = cyl.generalized_cea_fwd(1.0, lat, cyl.GALL_PETERS)
    assert np.allclose(x1, x2) and np.allclose(y1, y2, atol=1e-12)


def test_validation():
    for bad in (0.0, -1.0, 1.5):
        with pytest.raises(DomainError):
            cyl.blended_cyl_fwd(0.1, bad)
    with pytest.raises(DomainError):
        cyl.check_std_lat(0.5 * np.pi)
    with pytest.raises(DomainError):
        cyl.blended_cyl_inv(10.0, 0.5)
    with pytest.raises(DomainError):
        cyl.lambert_cyl_inv(1.5)


def test_extent():
    assert cyl.cylindrical_extent(1.0) == pytest.approx((np.pi, 1.0))
    xm, ym = cyl.cylindrical_extent(None)
    assert xm == np.pi and ym == pytest.approx(np.arctanh(np.sin(np.radians(85))))


def test_project_lambert_rows_equal_area():
    pano = panoramas.coordinate_panorama(256, 128)
    out = cyl.project_cylindrical(pano, 1.0, interpolation="nearest", out_width=256, out_height=128)
    lat = (out[..., 1] - 0.5) * np.pi
    # rows equally spaced in sin(lat)
    centre_y = 1 - 2 * (np.arange(128) + 0.5) / 128
    assert np.max(np.abs(np.sin(lat[:, 0]) - centre_y)) < 0.03
    assert (out[..., 3] == 1).all()


def test_project_shapes_and_errors():
    img = panoramas.smooth_color(64, 32)
    assert cyl.project_cylindrical(img).shape == (32, 64, 4)
    assert cyl.project_cylindrical(img, 0.5, cyl.BEHRMANN, 40, 20).shape == (20, 40, 4)
    with pytest.raises(ConfigError):
        cyl.project_cylindrical(img, 0.0)
    with pytest.raises(ConfigError):
        cyl.project_cylindrical(img, 0.5, 2.0)
