import numpy as np
import pytest
from sklearn.base import clone
from sklearn.exceptions import NotFittedError

import panoramas
from revolvable import CylindricalProjector, RevolvableProjector
from revolvable.exceptions import ConfigError


def test_params_round_trip():
    est = RevolvableProjector(beta=0.3, rectifier="isosquare", size=(32, 32))
    params = est.get_params()
    assert params["beta"] == 0.3 and params["rectifier"] == "isosquare"
    twin = clone(est).set_params(beta=0.7)
    assert twin.beta == 0.7 and est.beta == 0.3


def test_fixed_beta_fit_transform():
    img = panoramas.smooth_color(64, 32)
    est = RevolvableProjector(beta=0.4, size=(32, 32), resolution=16)
    out = est.fit_transform(img)
    assert out.shape == (32, 32, 4)
    assert est.beta_ == 0.4 and est.e_total_ >= 0
    assert est.score(img) == pytest.approx(-est.e_total_)


def test_auto_beta_matches_function():
    from revolvable.distortion import OptimizerConfig, optimize_beta
    from revolvable.render import ProjectionConfig

    img = panoramas.band_noise(128, 64)
    est = RevolvableProjector(beta="auto", size=(32, 32), resolution=24).fit(img)
    beta, err = optimize_beta(img, OptimizerConfig(resolution=24), ProjectionConfig(beta=1.0, out_width=32, out_height=32))
    assert est.beta_ == beta and est.e_total_ == err


def test_not_fitted():
    with pytest.raises(NotFittedError):
        RevolvableProjector().transform(np.zeros((8, 16)))
    with pytest.raises(NotFittedError):
        CylindricalProjector().transform(np.zeros((8, 16)))


@pytest.mark.parametrize("kwargs", [dict(beta="best"), dict(beta=0.0), dict(center_lat=np.nan),
                                    dict(size=(10, 20)), dict(n_threads=0)])
def test_bad_params(kwargs):
    with pytest.raises(ConfigError):
        RevolvableProjector(**kwargs).fit(np.zeros((8, 16)))


def test_cylindrical_estimator():
    img = panoramas.smooth_color(64, 32)
    out = CylindricalProjector(beta=None, size=(48, 48)).fit_transform(img)
    assert out.shape == (48, 48, 4)
    est = CylindricalProjector(beta=0.5, phi0=0.3).fit(img)
    assert est.beta_ == 0.5 and est.phi0_ == 0.3
    with pytest.raises(ConfigError):
        CylindricalProjector(beta=0.0).fit(img)
