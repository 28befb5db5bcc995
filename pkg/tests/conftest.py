import random

import pytest


@pytest.fixture
def rng():
    return random.Random(20261017)


def pytest_terminal_summary(terminalreporter):
    from test_acceptance import LINES
    if LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(LINES):
            terminalreporter.write_line(LINES[n])
