import itertools

import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from logenc.model import WeightedGraph

settings.register_profile(
    "default", max_examples=60, deadline=None, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("default")

ACCEPTANCE_LINES: list[str] = []


@pytest.fixture
def report():
    """Collects one PASS/FAIL line per acceptance criterion for the terminal summary."""
    return ACCEPTANCE_LINES.append


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


def random_graph(rng: np.random.Generator, n: int, p: float = 0.5, weighted: bool = True) -> WeightedGraph:
    edges = []
    for u, v in itertools.combinations(range(n), 2):
        if rng.random() < p:
            w = float(rng.integers(1, 10)) if weighted else 1.0
            edges.append((u, v, w))
    return WeightedGraph(n, tuple(edges))


def all_spins(n: int):
    for bits in itertools.product((1, -1), repeat=n):
        yield np.array(bits)


def all_bits(n: int):
    for bits in itertools.product((0, 1), repeat=n):
        yield np.array(bits)
