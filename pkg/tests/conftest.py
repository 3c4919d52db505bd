from __future__ import annotations

import os
from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from hypersing.fixtures import load_corpus
from hypersing.poly import Ring, WeightSystem, parse_poly

settings.register_profile("default", deadline=None, suppress_health_check=[HealthCheck.too_slow])
settings.register_profile("ci", deadline=None, max_examples=200, suppress_health_check=[HealthCheck.too_slow])
settings.load_profile(os.environ.get("HYPOTHESIS_PROFILE", "default"))


@pytest.fixture(scope="session")
def corpus():
    return load_corpus()


@pytest.fixture
def xy():
    return Ring("x,y")


@pytest.fixture
def semi_qh():
    ring = Ring("x,y")
    return parse_poly("x^6+y^5+x^3*y^3", ring), WeightSystem((Fraction(1, 6), Fraction(1, 5)))


def quadric(n: int):
    ring = Ring(["x", "y", "z"] if n == 3 else [f"y{i}" for i in range(1, n + 1)])
    f = ring.zero()
    for g in ring.gens():
        f = f + g * g
    return f, WeightSystem((Fraction(1, 2),) * n)


ACCEPTANCE_LINES: list = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split("criterion")[1].split(":")[0])):
            terminalreporter.write_line(line)
