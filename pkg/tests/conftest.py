import mpmath
import pytest


@pytest.fixture
def mp50():
    """mpmath at 50 decimal digits, restored afterwards."""
    with mpmath.workdps(50):
        yield mpmath.mp


_CRITERIA = []


def pytest_runtest_logreport(report):
    if report.when == "call":
        for key, line in report.user_properties:
            if key == "criterion":
                _CRITERIA.append(line)


def pytest_terminal_summary(terminalreporter):
    if _CRITERIA:
        terminalreporter.section("acceptance criteria")
        for line in sorted(_CRITERIA):
            terminalreporter.write_line(line)
