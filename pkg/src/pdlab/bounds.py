"""Cheap lower and upper bounds on the partition dimension."""

from __future__ import annotations

from .errors import GraphError
from .graph import DistanceMatrix, Graph, all_pairs_distances, diameter
from .structure import twin_clique_size


def chartrand_bounds(g: Graph, dist: DistanceMatrix = None):
    """``(lower, upper)`` with lower the least k such that (d+1)**k >= n and
    upper n - d + 1, for a connected graph of order n >= 3 and diameter d.
    Smaller graphs get the trivial sandwich ``(1, n)``."""
    dist = dist or all_pairs_distances(g)
    if not dist.connected:
        raise GraphError("bounds are only defined for connected graphs")
    n = g.order
    if n < 3:
        return 1, n
    d = diameter(g, dist)
    k = 1
    while (d + 1) ** k < n:
        k += 1
    return k, n - d + 1


def lower_bounds(g: Graph, dist: DistanceMatrix = None):
    """Named lower bounds: chartrand, twin_clique and trivial."""
    dist = dist or all_pairs_distances(g)
    lower, _ = chartrand_bounds(g, dist)
    return {
        "chartrand": lower,
        "twin_clique": twin_clique_size(dist),
        "trivial": 2 if g.order >= 2 else 1,
    }


def combined_lower_bound(g: Graph, dist: DistanceMatrix = None) -> int:
    return max(lower_bounds(g, dist).values())
