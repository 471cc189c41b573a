import numpy as np
import pytest

from qdist.rand import random_density


@pytest.fixture
def rng():
    return np.random.default_rng(20261014)


def random_pair(dim, rng, rank=None):
    return random_density(dim, rng, rank), random_density(dim, rng, rank)


ACCEPTANCE_LINES: list[str] = []


def record(number, ok, detail):
    line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split(":")[0].split()[1])):
            terminalreporter.write_line(line)
