"""Small reproducible graph corpus for property tests and experiment scripts."""

from __future__ import annotations

import random
from typing import Iterator

from .graph import Graph, complete, cycle, is_connected, path, wheel


def family_graphs(max_order: int = 10) -> Iterator[Graph]:
    """Every complete, path, cycle and wheel graph with at most ``max_order`` vertices."""
    for n in range(1, max_order + 1):
        yield complete(n)
        yield path(n)
        if n >= 3:
            yield cycle(n)
        if n >= 4:
            yield wheel(n - 1)


def random_connected(order: int, p: float, rng: random.Random) -> Graph:
    """G(n, p) conditioned on connectivity by rejection, labels v1..vn."""
    labels = [f"v{i}" for i in range(1, order + 1)]
    while True:
        edges = [(a, b) for a in range(order) for b in range(a + 1, order)
                 if rng.random() < p]
        g = Graph.from_edges(labels, edges)
        if is_connected(g):
            return g


def random_graphs(count: int, max_order: int = 10, seed: int = 0, min_order: int = 2):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(min_order, max_order)
        out.append(random_connected(n, rng.uniform(0.2, 0.7), rng))
    return out
