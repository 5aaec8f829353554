"""Brute-force partition dimension: every restricted growth string, no pruning.

Used as ground truth for the pruned solver.  Partitions are generated in
lexicographic order as numpy blocks (a Python-level prefix times a cached table
of suffixes).  Class distances of the suffix part are precomputed per table, so
each block costs one elementwise minimum, an encode and a row sort.  The first
resolving partition found is the lexicographically least one.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

import numpy as np

from .errors import PdlabError
from .graph import Graph, GraphError, all_pairs_distances
from .partition import Partition

DEFAULT_CAP = 12
_SUFFIX_ROWS = 1 << 20


def _rgs_prefixes(length, k):
    """Restricted growth prefixes (first entry 0) with labels < k, lex order."""
    if length == 0:
        yield ()
        return
    a = [0] * length

    def rec(i, mx):
        if i == length:
            yield tuple(a)
            return
        for c in range(min(mx + 2, k)):
            a[i] = c
            yield from rec(i + 1, max(mx, c))

    yield from rec(1, 0)


@lru_cache(maxsize=64)
def _suffix_table(length, k, top):
    """All continuations of a prefix whose largest label is ``top`` such that the
    whole string is restricted growth and uses exactly labels 0..k-1.
    Rows in lexicographic order."""
    rows = np.zeros((1, 0), dtype=np.int8)
    mx = np.array([top], dtype=np.int8)
    for _ in range(length):
        parts, maxes = [], []
        for c in range(k):
            keep = c <= mx + 1
            if not keep.any():
                continue
            sub = rows[keep]
            parts.append(np.hstack([sub, np.full((len(sub), 1), c, dtype=np.int8)]))
            maxes.append(np.maximum(mx[keep], c))
        rows = np.vstack(parts)
        mx = np.concatenate(maxes)
    rows = rows[mx == k - 1]
    if rows.shape[1]:
        order = np.lexsort(rows.T[::-1])
        rows = rows[order]
    return rows


def _suffix_distances(table, D, first, k, far):
    """sd[t, v, c] = distance from v to the suffix vertices that row t puts in
    class c (``far`` when there are none)."""
    T, length = table.shape
    n = len(D)
    sd = np.full((T, n, k), far, dtype=np.int8)
    for j in range(length):
        col = D[:, first + j]
        for c in range(k):
            rows = table[:, j] == c
            sd[rows, :, c] = np.minimum(sd[rows, :, c], col)
    return sd


def _first_resolving(dist_to_class, weights):
    """Index of the first row whose vertex representations are all distinct, or -1."""
    codes = dist_to_class.astype(np.int32) @ weights  # (T, n)
    codes.sort(axis=1)
    clash = (codes[:, 1:] == codes[:, :-1]).any(axis=1)
    hits = np.flatnonzero(~clash)
    return int(hits[0]) if hits.size else -1


def naive_resolving_partition(g: Graph, k: int) -> Optional[Partition]:
    """Lexicographically least resolving partition with exactly k classes."""
    dist = all_pairs_distances(g)
    if not dist.connected:
        raise GraphError("brute-force search needs a connected graph")
    n = g.order
    if not 1 <= k <= n:
        raise PdlabError(f"k={k} is out of range 1..{n}")
    if n > 62:
        raise PdlabError("brute-force search supports at most 62 vertices")
    if n == 1:
        return Partition((0,))
    D = np.array(dist.as_lists(), dtype=np.int8)
    far = int(D.max()) + 1
    weights = (far + 1) ** np.arange(k - 1, -1, -1, dtype=np.int64)
    if int(weights[0]) * (far + 1) >= 2 ** 31:
        raise PdlabError("class count too large for the brute-force encoding")
    weights = weights.astype(np.int32)
    suffix_len = 0
    while suffix_len < n - 1 and k ** (suffix_len + 1) <= _SUFFIX_ROWS:
        suffix_len += 1
    prefix_len = n - suffix_len
    cache = {}
    for prefix in _rgs_prefixes(prefix_len, k):
        top = max(prefix)
        if top + 1 + suffix_len < k:
            continue
        if top not in cache:
            table = _suffix_table(suffix_len, k, top)
            cache[top] = (table, _suffix_distances(table, D, prefix_len, k, far))
        table, sd = cache[top]
        if len(table) == 0:
            continue
        pre = np.full((n, k), far, dtype=np.int8)
        for u, c in enumerate(prefix):
            np.minimum(pre[:, c], D[:, u], out=pre[:, c])
        i = _first_resolving(np.minimum(sd, pre), weights)
        if i >= 0:
            return Partition(prefix + tuple(int(x) for x in table[i]))
    return None


def naive_partition_dimension(g: Graph, cap: int = DEFAULT_CAP) -> int:
    if g.order > cap:
        raise PdlabError(f"graph has {g.order} vertices; brute force is capped at {cap}")
    for k in range(1, g.order + 1):
        if naive_resolving_partition(g, k) is not None:
            return k
    raise AssertionError("the discrete partition is always resolving")
