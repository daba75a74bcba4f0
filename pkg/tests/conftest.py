"""Shared fixtures: named graphs, the random regular-graph corpus, and
closed-form oracles used by several test modules."""

from __future__ import annotations

import math

import pytest

from nbspectra.multigraph import (MultiGraph, complete_graph, cycle_graph,
                                  petersen_graph)
from nbspectra.random_models import RngStream, sample_regular_graph


def cycle_idf_closed_form(m: int, p: float) -> float:
    """Step-function IDF of the m-cycle spectral measure, closed form.

    Derived from the sorted eigenvalue multiset {2 cos(2 pi k / m)}; stated for
    points away from the breakpoints.
    """
    if p > (m - 1) / m:
        return 2.0
    if m % 2 == 0:
        if p < 1.0 / m:
            return -2.0
        k = int(math.floor((p * m + 1.0) / 2.0))
        return -2.0 * math.cos(2.0 * k * math.pi / m)
    k = math.ceil(p * m / 2.0)
    return -2.0 * math.cos((2.0 * k - 1.0) * math.pi / m)


@pytest.fixture(scope="session")
def k4() -> MultiGraph:
    return complete_graph(4)


@pytest.fixture(scope="session")
def c4() -> MultiGraph:
    return cycle_graph(4)


@pytest.fixture(scope="session")
def c6() -> MultiGraph:
    return cycle_graph(6)


@pytest.fixture(scope="session")
def petersen() -> MultiGraph:
    return petersen_graph()


@pytest.fixture(scope="session")
def named_graphs(k4, c4, c6, petersen):
    return [("K4", k4), ("C4", c4), ("C6", c6), ("Petersen", petersen)]


def make_regular_corpus(count: int = 200) -> list[tuple[str, MultiGraph]]:
    """Uniform simple regular graphs with n <= 40 and d in {3, 4}."""
    corpus = []
    sizes = list(range(6, 41, 2))
    for i in range(count):
        degree = 3 if i % 2 == 0 else 4
        n = sizes[i % len(sizes)]
        g = sample_regular_graph(n, degree, RngStream(seed=1000 + i))
        corpus.append((f"rand{i}_n{n}_d{degree}", g))
    return corpus


@pytest.fixture(scope="session")
def regular_corpus():
    return make_regular_corpus()
