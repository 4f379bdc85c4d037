import pytest

from cyclolie import catalog
from cyclolie.checks import DEFAULT_SEED, run

# filled by test_acceptance, printed after the run
ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def reproduce_results():
    return list(run(seed=DEFAULT_SEED))


@pytest.fixture(scope="session")
def sl2():
    return catalog.load("sl2C")


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
