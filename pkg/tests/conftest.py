import numpy as np
import pytest

from lorentz_polar import boost_matrix, rotation_embedding

ACCEPTANCE_LINES = []

RZ90 = np.array([[0.0, -1.0, 0.0], [1.0, 0.0, 0.0], [0.0, 0.0, 1.0]])
# rotation_embedding(RZ90) @ boost_matrix((0.6, 0, 0)), multiplied out by hand
L_RZ90_BOOST = np.array([
    [1.25, -0.75, 0.0, 0.0],
    [0.0, 0.0, -1.0, 0.0],
    [-0.75, 1.25, 0.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
])
BOOST_06 = np.array([
    [1.25, -0.75, 0.0, 0.0],
    [-0.75, 1.25, 0.0, 0.0],
    [0.0, 0.0, 1.0, 0.0],
    [0.0, 0.0, 0.0, 1.0],
])


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


@pytest.fixture
def composite():
    return rotation_embedding(RZ90) @ boost_matrix([0.6, 0.0, 0.0])


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
