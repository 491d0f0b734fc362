import pytest

from qdilog.quadrature import QuadratureConfig

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def cfg():
    return QuadratureConfig()


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
