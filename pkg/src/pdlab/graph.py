"""Graph families, corona products, BFS distances and edge-list / DOT I/O.

Vertices are dense indices ``0..order-1``; every vertex also carries a unique
text label.  Corona products label centers ``u<i>`` and copy vertices
``v<i>.<j>`` (``i`` 1-based, ``j`` the local index in the copied graph, so a
wheel copy has hub ``v<i>.0`` and rim ``v<i>.1 .. v<i>.m``).
"""

from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Optional, Sequence

from .errors import GraphError, ParseError

# Distinct from every integer so arithmetic on a missing distance fails loudly.
UNREACHABLE = None

_NUM_RE = re.compile(r"(\d+)")


def label_key(label: str):
    """Natural sort key: ``v1.2 < v1.10 < v2.0``."""
    return tuple(int(tok) if tok.isdigit() else tok for tok in _NUM_RE.split(label) if tok != "")


# ---------------------------------------------------------------------------
# Family specs
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class FamilySpec:
    kind: str
    n: Optional[int] = None
    inner: Optional["FamilySpec"] = None
    outer: Optional["FamilySpec"] = None
    path: Optional[str] = None

    def __post_init__(self):
        if self.kind in ("complete", "path"):
            if self.n is None or self.n < 1:
                raise GraphError(f"{self.kind}(n) requires n >= 1, got {self.n}")
        elif self.kind == "cycle":
            if self.n is None or self.n < 3:
                raise GraphError(f"cycle(n) requires n >= 3, got {self.n}")
        elif self.kind == "wheel":
            if self.n is None or self.n < 3:
                raise GraphError(f"wheel(m) requires m >= 3, got {self.n}")
        elif self.kind == "corona":
            if self.inner is None or self.outer is None:
                raise GraphError("corona requires an inner and an outer family")
        elif self.kind == "edge-list":
            if not self.path:
                raise GraphError("edge-list family requires a file path")
        else:
            raise GraphError(f"unknown family kind {self.kind!r}")

    @classmethod
    def complete(cls, n):
        return cls("complete", n)

    @classmethod
    def path_graph(cls, n):
        return cls("path", n)

    @classmethod
    def cycle(cls, n):
        return cls("cycle", n)

    @classmethod
    def wheel(cls, m):
        return cls("wheel", m)

    @classmethod
    def corona(cls, inner, outer):
        return cls("corona", inner=inner, outer=outer)

    @classmethod
    def parse(cls, text: str) -> "FamilySpec":
        """Parse the CLI mini-language: ``complete:3``, ``wheel:4``,
        ``corona:complete:3,wheel:4``, ``file:graph.txt``."""
        text = text.strip()
        kind, sep, rest = text.partition(":")
        if not sep:
            raise ParseError(f"family spec {text!r} is not of the form kind:args")
        if kind == "corona":
            parts = rest.split(",")
            if len(parts) != 2:
                raise ParseError(f"corona spec {text!r} needs exactly two comma-separated families")
            return cls.corona(cls.parse(parts[0]), cls.parse(parts[1]))
        if kind in ("file", "edges", "edge-list"):
            return cls("edge-list", path=rest)
        if kind not in ("complete", "path", "cycle", "wheel"):
            raise ParseError(f"unknown family kind {kind!r} in {text!r}")
        try:
            n = int(rest)
        except ValueError:
            raise ParseError(f"family parameter {rest!r} in {text!r} is not an integer") from None
        return cls(kind, n)

    def __str__(self):
        if self.kind == "corona":
            return f"corona:{self.inner},{self.outer}"
        if self.kind == "edge-list":
            return f"file:{self.path}"
        return f"{self.kind}:{self.n}"


# ---------------------------------------------------------------------------
# Graph
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class Graph:
    labels: tuple
    adjacency: tuple
    family: Optional[FamilySpec] = field(default=None, compare=False)

    def __post_init__(self):
        labels = tuple(self.labels)
        adjacency = tuple(frozenset(nb) for nb in self.adjacency)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "adjacency", adjacency)
        if len(labels) < 1:
            raise GraphError("a graph needs at least one vertex")
        if len(adjacency) != len(labels):
            raise GraphError("adjacency and labels differ in length")
        if len(set(labels)) != len(labels):
            dup = sorted({x for x in labels if labels.count(x) > 1})
            raise GraphError(f"duplicate vertex labels: {dup}")
        n = len(labels)
        for u, nb in enumerate(adjacency):
            for v in nb:
                if not 0 <= v < n:
                    raise GraphError(f"vertex {labels[u]} has out-of-range neighbor {v}")
                if v == u:
                    raise GraphError(f"self-loop at {labels[u]}")
                if u not in adjacency[v]:
                    raise GraphError(f"asymmetric adjacency between {labels[u]} and {labels[v]}")

    @property
    def order(self) -> int:
        return len(self.labels)

    @property
    def size(self) -> int:
        return sum(len(nb) for nb in self.adjacency) // 2

    def edges(self):
        return [(u, v) for u in range(self.order) for v in sorted(self.adjacency[u]) if u < v]

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise GraphError(f"no vertex labeled {label!r}") from None

    @property
    def _index(self):
        cache = self.__dict__.get("_index_cache")
        if cache is None:
            cache = {lab: i for i, lab in enumerate(self.labels)}
            object.__setattr__(self, "_index_cache", cache)
        return cache

    def neighbors(self, v: int) -> frozenset:
        return self.adjacency[v]

    def degree(self, v: int) -> int:
        return len(self.adjacency[v])

    def with_family(self, family):
        return Graph(self.labels, self.adjacency, family)

    @classmethod
    def from_edges(cls, labels: Sequence[str], edges: Iterable, family=None) -> "Graph":
        adj = [set() for _ in labels]
        for u, v in edges:
            adj[u].add(v)
            adj[v].add(u)
        return cls(tuple(labels), tuple(frozenset(s) for s in adj), family)


# ---------------------------------------------------------------------------
# Builders
# ---------------------------------------------------------------------------

def complete(n: int) -> Graph:
    spec = FamilySpec.complete(n)
    return Graph.from_edges([f"v{i}" for i in range(1, n + 1)],
                            [(u, v) for u in range(n) for v in range(u + 1, n)], spec)


def path(n: int) -> Graph:
    spec = FamilySpec.path_graph(n)
    return Graph.from_edges([f"v{i}" for i in range(1, n + 1)],
                            [(i, i + 1) for i in range(n - 1)], spec)


def cycle(n: int) -> Graph:
    spec = FamilySpec.cycle(n)
    return Graph.from_edges([f"v{i}" for i in range(1, n + 1)],
                            [(i, (i + 1) % n) for i in range(n)], spec)


def wheel(m: int) -> Graph:
    """Hub ``v0`` joined to every vertex of the rim cycle ``v1..vm``."""
    spec = FamilySpec.wheel(m)
    edges = [(0, j) for j in range(1, m + 1)]
    edges += [(j, j % m + 1) for j in range(1, m + 1)]
    return Graph.from_edges([f"v{j}" for j in range(m + 1)], edges, spec)


def corona(g: Graph, h: Graph) -> Graph:
    """One copy of ``h`` per vertex of ``g``, each copy fully joined to its center.

    Vertices are laid out block by block: ``u1, v1.0, ..., v1.<|h|-1>, u2, ...``.
    """
    hn = h.order
    block = hn + 1
    labels = []
    for i in range(1, g.order + 1):
        labels.append(f"u{i}")
        labels.extend(f"v{i}.{j}" for j in range(hn))
    edges = [(u * block, v * block) for u, v in g.edges()]
    h_edges = h.edges()
    for i in range(g.order):
        base = i * block
        edges.extend((base, base + 1 + j) for j in range(hn))
        edges.extend((base + 1 + a, base + 1 + b) for a, b in h_edges)
    family = None
    if g.family is not None and h.family is not None:
        family = FamilySpec.corona(g.family, h.family)
    return Graph.from_edges(labels, edges, family)


def build(spec: FamilySpec) -> Graph:
    if spec.kind == "complete":
        return complete(spec.n)
    if spec.kind == "path":
        return path(spec.n)
    if spec.kind == "cycle":
        return cycle(spec.n)
    if spec.kind == "wheel":
        return wheel(spec.n)
    if spec.kind == "corona":
        return corona(build(spec.inner), build(spec.outer))
    if spec.kind == "edge-list":
        return read_edge_list(spec.path)
    raise GraphError(f"unknown family kind {spec.kind!r}")


def corona_kw(n: int, m: int) -> Graph:
    """Shorthand for corona(complete(n), wheel(m))."""
    return corona(complete(n), wheel(m))


# ---------------------------------------------------------------------------
# Distances
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class DistanceMatrix:
    labels: tuple
    rows: tuple

    @property
    def order(self) -> int:
        return len(self.rows)

    def __call__(self, u: int, v: int):
        return self.rows[u][v]

    @property
    def connected(self) -> bool:
        return all(x is not UNREACHABLE for row in self.rows for x in row)

    def as_lists(self):
        """Plain integer rows; only defined on connected graphs."""
        if not self.connected:
            raise GraphError("distance matrix has unreachable pairs; graph is disconnected")
        return [list(r) for r in self.rows]

    def as_array(self):
        import numpy as np

        return np.array(self.as_lists(), dtype=np.int64)


def all_pairs_distances(g: Graph) -> DistanceMatrix:
    n = g.order
    rows = []
    for s in range(n):
        dist = [UNREACHABLE] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            x = queue.popleft()
            for y in g.adjacency[x]:
                if dist[y] is UNREACHABLE:
                    dist[y] = dist[x] + 1
                    queue.append(y)
        rows.append(tuple(dist))
    return DistanceMatrix(g.labels, tuple(rows))


def diameter(g: Graph, dist: Optional[DistanceMatrix] = None) -> int:
    dist = dist or all_pairs_distances(g)
    if not dist.connected:
        raise GraphError("diameter is undefined on a disconnected graph")
    return max(max(row) for row in dist.rows)


def is_connected(g: Graph) -> bool:
    return all_pairs_distances(g).connected


# ---------------------------------------------------------------------------
# Edge-list and DOT
# ---------------------------------------------------------------------------

def parse_edge_list(text: str, source: Optional[str] = None) -> Graph:
    """Whitespace-separated label pairs, one per line; ``#`` starts a comment.

    A line with a single label declares an (isolated) vertex.
    """
    labels = []
    index = {}
    edges = set()

    def vertex(lab):
        if lab not in index:
            index[lab] = len(labels)
            labels.append(lab)
        return index[lab]

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        toks = line.split()
        if len(toks) == 1:
            vertex(toks[0])
            continue
        if len(toks) != 2:
            raise ParseError(f"expected 1 or 2 labels, found {len(toks)}", lineno, source)
        a, b = toks
        if a == b:
            raise ParseError(f"self-loop on {a!r}", lineno, source)
        u, v = vertex(a), vertex(b)
        key = (min(u, v), max(u, v))
        if key in edges:
            raise ParseError(f"parallel edge {a} {b}", lineno, source)
        edges.add(key)
    if not labels:
        raise ParseError("edge list declares no vertices", None, source)
    return Graph.from_edges(labels, sorted(edges))


def read_edge_list(p) -> Graph:
    p = Path(p)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"cannot read edge list: {exc.strerror}", None, str(p)) from None
    return parse_edge_list(text, source=str(p))


def serialize(g: Graph) -> str:
    """Canonical edge list: sorted label pairs, then isolated vertices."""
    pairs = []
    for u, v in g.edges():
        a, b = sorted((g.labels[u], g.labels[v]), key=label_key)
        pairs.append((a, b))
    pairs.sort(key=lambda ab: (label_key(ab[0]), label_key(ab[1])))
    lines = [f"{a} {b}" for a, b in pairs]
    isolated = sorted((g.labels[v] for v in range(g.order) if not g.adjacency[v]), key=label_key)
    lines.extend(isolated)
    return "\n".join(lines) + "\n"


def _dot_id(label: str) -> str:
    return '"' + label.replace("\\", "\\\\").replace('"', '\\"') + '"'


def to_dot(g: Graph, name: str = "G") -> str:
    out = [f"graph {name} {{"]
    for v in range(g.order):
        out.append(f"  {_dot_id(g.labels[v])};")
    for u, v in g.edges():
        out.append(f"  {_dot_id(g.labels[u])} -- {_dot_id(g.labels[v])};")
    out.append("}")
    return "\n".join(out) + "\n"


def dump_distances(g: Graph, dist: DistanceMatrix) -> str:
    """Tab-separated matrix with a header row; ``-`` marks unreachable pairs."""
    head = "\t".join([""] + list(g.labels))
    lines = [head]
    for u in range(g.order):
        cells = ["-" if x is UNREACHABLE else str(x) for x in dist.rows[u]]
        lines.append("\t".join([g.labels[u]] + cells))
    return "\n".join(lines) + "\n"


def corona_blocks(g: Graph):
    """Blocks ``[u_i, v_i.0, ...]`` of a corona(complete(n), H) graph, else None.

    Only graphs tagged with their family qualify; the block permutation is an
    automorphism because the center graph is complete.
    """
    fam = g.family
    if fam is None or fam.kind != "corona" or fam.inner.kind != "complete":
        return None
    n = fam.inner.n
    block = g.order // n
    return [list(range(i * block, (i + 1) * block)) for i in range(n)]


def family_flags(spec: Optional[FamilySpec]):
    """Notes about degenerate family members that reports should carry."""
    if spec is None:
        return []
    flags = []
    if spec.kind == "wheel" and spec.n == 3:
        flags.append("wheel:3 is isomorphic to complete:4 (hub and rim vertices are all pairwise twins)")
    if spec.kind == "corona":
        flags.extend(family_flags(spec.inner))
        flags.extend(family_flags(spec.outer))
    return flags
