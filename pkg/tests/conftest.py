import random

import pytest

from matchedkit.knots import Crossing, KnotDiagram

ACCEPTANCE_LINES: list[str] = []


def record(line: str) -> None:
    """Keep an acceptance verdict for the end-of-run summary."""
    print(line)
    ACCEPTANCE_LINES.append(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)


@pytest.fixture
def rng():
    return random.Random(20240611)


@pytest.fixture
def trefoil():
    return KnotDiagram([Crossing(i, 1, (i + 2) % 3, i, (i + 1) % 3) for i in range(3)])
