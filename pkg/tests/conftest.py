import os

import pytest

from spectral_factors.graphs import Graph, enumerate_connected

RUN_LARGE = os.environ.get("SPECTRAL_FACTORS_LARGE") == "1"

skip_large = pytest.mark.skipif(
    not RUN_LARGE, reason="order-8 sweep is minutes-scale; set SPECTRAL_FACTORS_LARGE=1")

_cache: dict[int, list[Graph]] = {}


def connected_graphs(order: int) -> list[Graph]:
    """All connected labeled graphs of the order, lexicographic, cached."""
    if order not in _cache:
        acc: list[Graph] = []
        enumerate_connected(order, acc.append)
        _cache[order] = acc
    return _cache[order]


@pytest.fixture(scope="session")
def small_connected():
    """Orders 2..5 pooled: enough variety for cheap exhaustive checks."""
    return [g for n in (2, 3, 4, 5) for g in connected_graphs(n)]
