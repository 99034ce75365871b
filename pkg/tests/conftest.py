import pytest

from gradedtor.verify import Y_TEXT
from gradedtor.polyring import parse_poly


@pytest.fixture(scope="session")
def y():
    return parse_poly(Y_TEXT)


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
