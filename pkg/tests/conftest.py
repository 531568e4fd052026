from pathlib import Path

import pytest

from snpcheck.dsl import load_system
from snpcheck.system import SNPSystem, forgetting_rule, spiking_rule

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"

EXAMPLE1_VERTICES = {(2, 1, 1), (2, 1, 2), (1, 1, 2), (2, 0, 1),
                     (0, 1, 1), (1, 1, 1), (1, 0, 1), (1, 0, 0)}
EXAMPLE1_MATRIX = ((-1, 1, 1), (-2, 1, 1), (1, -1, 1), (0, 0, -1), (0, 0, -2))


def example1_system() -> SNPSystem:
    rules = [
        spiking_rule(1, 1, 1, "a^2"),
        spiking_rule(1, 2, 1),
        spiking_rule(2, 1, 1),
        spiking_rule(3, 1, 1),
        forgetting_rule(3, 2),
    ]
    return SNPSystem.create([2, 1, 1], rules, [(1, 2), (1, 3), (2, 1), (2, 3)], out=3)


@pytest.fixture
def example1():
    return example1_system()


@pytest.fixture
def ring():
    return load_system(FIXTURES / "ring.snp")


@pytest.fixture
def growth():
    return load_system(FIXTURES / "growth.snp")


@pytest.fixture
def ring_forget():
    return load_system(FIXTURES / "ring_forget.snp")


@pytest.fixture
def fixtures_dir():
    return FIXTURES


# one line per acceptance criterion, filled by test_acceptance and printed
# at the end of the run so it shows up without -s
ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
