"""Shared fixtures plus the acceptance-criteria summary banner."""

import pathlib

import pytest

from impactgame import cli, equilibrium

SCENARIOS = pathlib.Path(__file__).resolve().parents[1] / "scenarios"


@pytest.fixture(scope="session")
def two_type():
    return cli.load_scenario(SCENARIOS / "two_type.json")


@pytest.fixture(scope="session")
def three_type():
    return cli.load_scenario(SCENARIOS / "three_type.json")


@pytest.fixture(scope="session")
def goliath():
    return cli.load_scenario(SCENARIOS / "goliath.json")


@pytest.fixture(scope="session")
def two_type_solution(two_type):
    return equilibrium.solve(two_type)


# --- acceptance reporting ----------------------------------------------------
# Each acceptance test registers its criterion number, a title, and the list
# of tolerance violations it found (empty = PASS) before asserting, so the
# terminal summary always carries one line per criterion even for tests that
# are expected to fail.

ACCEPTANCE_RESULTS = {}


def record_criterion(number, title, failures):
    ACCEPTANCE_RESULTS[number] = (title, list(failures))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE_RESULTS):
        title, failures = ACCEPTANCE_RESULTS[number]
        status = "PASS" if not failures else "FAIL"
        terminalreporter.write_line(f"criterion {number}: {status} - {title}")
        for item in failures:
            terminalreporter.write_line(f"    {item}")
