import json
from pathlib import Path

import numpy as np
import pytest
from hypothesis import settings

from convpow import fixtures
from convpow.spectrum import analyze

settings.register_profile("default", deadline=None, max_examples=40)
settings.load_profile("default")

FIXTURE_DIR = Path(__file__).resolve().parents[1] / "fixtures"


@pytest.fixture(scope="session")
def derived():
    return json.loads((FIXTURE_DIR / "derived_values.json").read_text())


@pytest.fixture(scope="session")
def quartic_1d():
    return fixtures.quartic_1d()


@pytest.fixture(scope="session")
def complex_heat_1d():
    return fixtures.complex_heat_1d()


@pytest.fixture(scope="session")
def anisotropic_2d():
    return fixtures.anisotropic_2d()


@pytest.fixture(scope="session")
def two_point_2d():
    return fixtures.two_point_2d()


@pytest.fixture(scope="session")
def mixed_sum_2d():
    return fixtures.mixed_sum_2d()


@pytest.fixture(scope="session")
def analyses():
    cache = {}

    def get(name):
        if name not in cache:
            cache[name] = analyze(fixtures.FIXTURES[name]())
        return cache[name]

    return get


@pytest.fixture
def rng():
    return np.random.default_rng(42)


# one line per acceptance criterion, printed after the run
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
