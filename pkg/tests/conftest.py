import pytest

from kcomplete.matrix_model import MatrixSpec

Z = "zero"

ACCEPTANCE_LINES: list[str] = []


def unit_2x2() -> MatrixSpec:
    return MatrixSpec.from_grid([[Z, 1], [1, 1]], 2)


def generic_2x2() -> MatrixSpec:
    return MatrixSpec.from_grid([[Z, 1], [2, 3]], 2)


def diamond_3x3() -> MatrixSpec:
    return MatrixSpec.from_grid([[Z, 1, 1], [1, Z, 1], [1, 1, 1]], 3)


def single_zero_2x3() -> MatrixSpec:
    return MatrixSpec.from_grid([[1, Z, 1], [1, 1, 1]], 2)


@pytest.fixture
def unit():
    return unit_2x2()


@pytest.fixture
def generic():
    return generic_2x2()


@pytest.fixture
def diamond():
    return diamond_3x3()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
