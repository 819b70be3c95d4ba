from fractions import Fraction

import pytest

from brickforge.coxeter import preset

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def A2():
    return preset("A2")


@pytest.fixture(scope="session")
def B2():
    return preset("B2")


@pytest.fixture(scope="session")
def A3():
    return preset("A3")


@pytest.fixture(scope="session")
def B3():
    return preset("B3")


def frac(*xs):
    return tuple(Fraction(x) for x in xs)
