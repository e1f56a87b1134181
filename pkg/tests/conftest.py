import numpy as np
import pytest

from chessboard_bisect.measures import WeightedCloud, smoothed_uniform_cloud


def gaussian_clouds(rng, count, dim, points=20, bandwidth=0.3):
    """Independent Gaussian clouds with random centres and unit weights."""
    out = []
    for _ in range(count):
        centre = rng.normal(size=dim)
        pts = centre + rng.normal(size=(points, dim))
        out.append(WeightedCloud(pts, np.ones(points), bandwidth))
    return out


def necklace_measures(bandwidth=0.01):
    return [smoothed_uniform_cloud([(0.0, 4.0)], bandwidth),
            smoothed_uniform_cloud([(0.0, 1.0), (2.0, 3.0)], bandwidth)]


def random_unit(rng, dim):
    x = rng.normal(size=dim)
    return x / np.linalg.norm(x)


@pytest.fixture
def necklace():
    return necklace_measures()


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


ACCEPTANCE_LINES: list[str] = []


def record(criterion: str, passed: bool, detail: str):
    line = f"{'PASS' if passed else 'FAIL'}  {criterion}: {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
