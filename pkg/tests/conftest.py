import math

import pytest
from hypothesis import settings

from warpspec import closedform as cf
from warpspec import geometry as geo

settings.register_profile("default", deadline=None, max_examples=40, derandomize=True)
settings.load_profile("default")

# filled by test_acceptance, echoed at the end of the run
ACCEPTANCE_LINES = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture(scope="session")
def params61():
    return cf.SpectralParams(1.0, 6.0)


@pytest.fixture(scope="session")
def consts61(params61):
    return cf.constants_nd(3, params61)


@pytest.fixture(scope="session")
def model61(consts61):
    return geo.make_model_metric(3, consts61)


# exact values for n = 3, kappa = 1, Lambda = 6
A61 = math.sqrt(5 / 6)
B61 = 3 * math.sqrt(6) / math.sqrt(70)
A1_61 = math.sqrt(15 / 7)
