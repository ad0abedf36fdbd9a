import numpy as np
import pytest

from gvckit import fixtures
from gvckit.synthetic import random_table

from _acceptance_log import LINES as ACCEPTANCE_LINES

@pytest.fixture
def e2():
    return fixtures.e2()

@pytest.fixture
def noint():
    return fixtures.noint()

@pytest.fixture
def aut():
    return fixtures.aut()

@pytest.fixture
def rng():
    return np.random.default_rng(20240611)

@pytest.fixture
def small_random(rng):
    return random_table(rng, 3, 2)

def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
