from pathlib import Path

import pytest

import clhs

DATA = Path(clhs.__file__).parent / "data"

# n = 6 worked example: X1 > X2 on [20, 30] x [16, 26]
X1_EXAMPLE = (23.98, 26.91, 26.52, 21.99, 29.23, 21.10)
X2_EXAMPLE = (22.18, 20.45, 23.77, 18.31, 16.45, 25.49)
C_EXAMPLE = (
    (1, 1, 1, 0, 1, 0),
    (1, 1, 1, 1, 1, 1),
    (1, 1, 1, 0, 1, 0),
    (1, 1, 1, 1, 1, 1),
    (1, 1, 1, 1, 1, 1),
    (0, 1, 1, 0, 1, 0),
)
X2_PRIME_EXAMPLE = (20.45, 25.49, 22.18, 18.31, 23.77, 16.45)


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def fig3a():
    return clhs.DesignSpec.chain([clhs.uniform(0, 1, "x1"), clhs.uniform(0, 2, "x2")])


ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
