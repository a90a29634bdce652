import pytest

import magnetite.ambient as ambient

from helpers import ACCEPTANCE_LINES


@pytest.fixture(autouse=True)
def _verify_snf():
    ambient.VERIFY_SNF = True
    yield
    ambient.VERIFY_SNF = False


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
