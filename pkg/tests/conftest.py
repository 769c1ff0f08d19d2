from pathlib import Path

import pytest

from pesect.census import run_census
from pesect.sigma_io import load_sigma

SIGMAS = Path(__file__).resolve().parent.parent / "sigmas"

# (criterion, description, passed) collected by test_acceptance.py
ACCEPTANCE_RESULTS = []


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run slow enumeration tests")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for crit, desc, ok in ACCEPTANCE_RESULTS:
        terminalreporter.write_line(f"[{'PASS' if ok else 'FAIL'}] {crit}: {desc}")


@pytest.fixture(scope="session")
def sigmas_dir():
    return SIGMAS


@pytest.fixture(scope="session")
def rho1():
    return load_sigma(SIGMAS / "rho1.sigma")


@pytest.fixture(scope="session")
def rho2():
    return load_sigma(SIGMAS / "rho2.sigma")


@pytest.fixture(scope="session")
def census22():
    return run_census(2, 2)


@pytest.fixture(scope="session")
def census23():
    return run_census(2, 3)


@pytest.fixture(scope="session")
def census32():
    return run_census(3, 2)
