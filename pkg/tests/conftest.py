import pytest

from heapmods.fixtures import load_fixtures

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture(scope="session")
def sf():
    return load_fixtures()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
