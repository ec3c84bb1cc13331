import numpy as np
import pytest

import panoramas

_ACCEPTANCE = []


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def small_pano():
    return panoramas.smooth_color(128, 64)


@pytest.fixture(scope="session")
def pano_png(tmp_path_factory, small_pano):
    from revolvable.render import write_image

    path = tmp_path_factory.mktemp("img") / "pano.png"
    write_image(path, small_pano)
    return path


def pytest_runtest_logreport(report):
    if report.when == "call" and "acceptance" in report.keywords:
        _ACCEPTANCE.append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for name, outcome in _ACCEPTANCE:
        terminalreporter.write_line(f"{'PASS' if outcome == 'passed' else 'FAIL'}  {name}")
