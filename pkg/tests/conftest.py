import os

import pytest

from semidirect import catalog
from semidirect.expansion import expand_S

FIXTURES = os.path.join(os.path.dirname(__file__), "fixtures")


def fixture_path(name):
    return os.path.join(FIXTURES, name)


@pytest.fixture(scope="session")
def u2():
    return catalog.make_u2()


@pytest.fixture(scope="session")
def z2():
    return catalog.make_cyclic_group(2)


@pytest.fixture(scope="session")
def d5():
    return catalog.make_diamond()


@pytest.fixture(scope="session")
def su2(u2):
    return expand_S(u2)


@pytest.fixture(scope="session")
def s_z2(z2):
    return expand_S(z2)


def pytest_terminal_summary(terminalreporter):
    try:
        from test_acceptance import ACCEPTANCE_LINES
    except ImportError:
        return
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
