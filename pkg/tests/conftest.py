import sys

import pytest

import gamebank


@pytest.fixture
def quad_game():
    return gamebank.QUAD_2X2X2


@pytest.fixture
def golden_game():
    return gamebank.GOLDEN_3X2X2


@pytest.fixture
def case5_game():
    return gamebank.CASE5


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in sorted(mod.RESULTS, key=lambda s: int(s.split()[2].rstrip(":"))):
        terminalreporter.write_line(line)
