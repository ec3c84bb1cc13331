import mpmath
import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from revolvable import rectifiers as rc
from revolvable.exceptions import DomainError
from revolvable.rectifiers import RectifierKind

KINDS = [RectifierKind.SQUIRCLE, RectifierKind.ISOSQUARE,
         RectifierKind.BLENDED_ISOSQUARE, RectifierKind.EQUIAREAL_SQUIRCLE]
coord = st.floats(min_value=-1.0, max_value=1.0)

SYMMETRIES = [
    lambda x, y: (x, y), lambda x, y: (-y, x), lambda x, y: (-x, -y), lambda x, y: (y, -x),
    lambda x, y: (-x, y), lambda x, y: (x, -y), lambda x, y: (y, x), lambda x, y: (-y, -x),
]


def test_reference_values():
    assert float(rc.squircle_radius(0.5, 0.5)) == pytest.approx(np.sqrt(0.4375), rel=1e-15)
    u, v = rc.squircle_to_disc(0.5, 0.5)
    assert float(u) == pytest.approx(0.46770717334674267, rel=1e-14) and float(u) == float(v)
    u, v = rc.isosquare_to_disc(0.5, 0.25)
    assert (float(u), float(v)) == pytest.approx((0.4472135954999579, 0.22360679774997896), rel=1e-14)


@pytest.mark.parametrize("phi,k", [(0.3, 0.5), (1.0, 0.9), (np.arcsin(0.5), 2.0), (0.5 * np.pi, 1.0),
                                   (np.arcsin(0.9), 1 / 0.9), (1.2, 0.0)])
def test_elliptic_e_matches_mpmath(phi, k):
    ref = mpmath.ellipe(phi, k * k)
    ref = float(mpmath.re(ref))
    assert float(rc.incomplete_elliptic_e(phi, k)) == pytest.approx(ref, rel=1e-12, abs=1e-15)


def test_elliptic_e_rejects_imaginary_integrand():
    with pytest.raises(DomainError):
        rc.incomplete_elliptic_e(1.2, 1.5)


@given(s=st.floats(min_value=1e-6, max_value=1.0))
def test_equiareal_radius_matches_mpmath(s):
    ref = mpmath.sqrt(s * mpmath.re(mpmath.ellipe(mpmath.asin(s), 1 / mpmath.mpf(s) ** 2)))
    assert float(rc.equiareal_radius(s)) == pytest.approx(float(ref), rel=1e-11)


def test_equiareal_radius_endpoints():
    assert float(rc.equiareal_radius(0.0)) == 0.0
    assert float(rc.equiareal_radius(1.0)) == 1.0
    assert float(rc.equiareal_radius(1 - 1e-15)) == pytest.approx(1.0, abs=1e-12)
    # slope at the center is sqrt(pi) / 2
    assert float(rc.equiareal_radius(1e-140)) / 1e-140 == pytest.approx(0.5 * np.sqrt(np.pi), rel=1e-14)


def test_equiareal_radius_matches_legendre_form():
    s = np.linspace(0.05, 0.99, 40)
    legendre = np.sqrt(s * rc.incomplete_elliptic_e(np.arcsin(s), 1 / s))
    assert np.max(np.abs(rc.equiareal_radius(s) - legendre)) < 1e-13


@pytest.mark.parametrize("kind", KINDS)
@given(x=coord, y=coord)
def test_radial_constraint(kind, x, y):
    if np.hypot(x, y) < 1e-9:
        return
    u, v = rc.rectify(x, y, kind)
    assert abs(np.angle(np.exp(1j * (np.arctan2(u, v) - np.arctan2(x, y))))) < 1e-12


@pytest.mark.parametrize("kind", KINDS)
@given(x=coord, y=coord)
def test_dihedral_equivariance(kind, x, y):
    u, v = rc.rectify(x, y, kind)
    for g in SYMMETRIES:
        gu, gv = rc.rectify(*g(x, y), kind)
        eu, ev = g(u, v)
        assert abs(gu - eu) < 1e-12 and abs(gv - ev) < 1e-12


@pytest.mark.parametrize("kind", KINDS)
def test_rim_to_rim(kind):
    t = np.linspace(-1, 1, 401)
    one = np.ones_like(t)
    for x, y in [(one, t), (-one, t), (t, one), (t, -one)]:
        u, v = rc.rectify(x, y, kind)
        assert np.max(np.abs(np.hypot(u, v) - 1)) < 1e-9


@pytest.mark.parametrize("kind", KINDS)
def test_continuous_across_diagonal(kind):
    d = np.linspace(0.01, 1, 200)
    eps = 1e-9
    above = np.hypot(*rc.rectify(np.minimum(d, 1), np.minimum(d + eps, 1), kind))
    below = np.hypot(*rc.rectify(np.minimum(d + eps, 1), np.minimum(d, 1), kind))
    assert np.max(np.abs(above - below)) < 1e-7


@pytest.mark.parametrize("kind", KINDS)
def test_origin_fixed(kind):
    u, v = rc.rectify(0.0, 0.0, kind)
    assert float(u) == 0.0 and float(v) == 0.0


@pytest.mark.parametrize("kind", KINDS)
def test_numeric_inverse(kind, rng):
    x, y = rng.uniform(-1, 1, (2, 5000))
    x2, y2 = rc.disc_to_square_numeric(*rc.rectify(x, y, kind), kind)
    assert np.max(np.hypot(x2 - x, y2 - y)) < 1e-9


def test_blended_rho_extremes():
    x, y = 0.3, -0.6
    # rho -> infinity: tau -> 0 inside the disc, so the map is the identity
    u, v = rc.blended_isosquare_to_disc(x, y, rho=200.0)
    assert (float(u), float(v)) == pytest.approx((x, y), abs=1e-12)
    # rho = 0: tau = 1, plain isosquare
    assert np.allclose(rc.blended_isosquare_to_disc(x, y, 0.0), rc.isosquare_to_disc(x, y), atol=1e-15)


def test_blended_output_stays_in_disc(rng):
    x, y = rng.uniform(-1, 1, (2, 10000))
    u, v = rc.blended_isosquare_to_disc(x, y, rho=3.0)
    assert np.max(np.hypot(u, v)) <= 1 + 1e-12


def test_blended_inverse_refuses_non_monotone_rho():
    with pytest.raises(DomainError):
        rc.disc_to_square_numeric(0.1, 0.2, RectifierKind.BLENDED_ISOSQUARE, rho=2.0)


def test_outside_square_rejected():
    with pytest.raises(DomainError):
        rc.squircle_to_disc(1.1, 0.0)
    with pytest.raises(DomainError):
        rc.rectify(np.nan, 0.0)
    with pytest.raises(ValueError):
        rc.rectify(0.1, 0.1, "triangle")


def test_rect_to_ellipse_lands_on_ellipse():
    a = 2.0
    t = np.linspace(-a, a, 101)
    u, v = rc.rect_to_ellipse(t, np.ones_like(t), a, 1.0)
    assert np.max(np.abs((u / a) ** 2 + v**2 - 1)) < 1e-9
