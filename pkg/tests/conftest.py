from __future__ import annotations

from collections.abc import Callable

import numpy as np
import pytest

from scala.graph import planted_graph
from scala.models import AttributedGraph

# 10 nodes, connected, with one pendant (9) and a triangle (0, 1, 2)
TOY_EDGES = [(0, 1), (0, 2), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6), (6, 7), (7, 3), (7, 8), (8, 9), (1, 5)]


def random_graph(rng: np.random.Generator, n: int, f: int, p: float) -> AttributedGraph:
    upper = np.triu(rng.random((n, n)) < p, k=1)
    src, dst = np.nonzero(upper)
    return AttributedGraph.from_edges(src, dst, rng.normal(size=(n, f)))


@pytest.fixture
def toy_graph() -> AttributedGraph:
    rng = np.random.default_rng(7)
    src, dst = zip(*TOY_EDGES, strict=True)
    return AttributedGraph.from_edges(np.array(src), np.array(dst), rng.normal(size=(10, 5)))


@pytest.fixture
def make_random_graph() -> Callable[[np.random.Generator, int, int, float], AttributedGraph]:
    return random_graph


@pytest.fixture
def small_planted() -> tuple[AttributedGraph, np.ndarray]:
    return planted_graph(40, 2, 8, 5.0, 0.3, seed=3)


@pytest.fixture
def planted() -> tuple[AttributedGraph, np.ndarray]:
    return planted_graph(200, 4, 16, 8.0, 0.5, seed=0)
