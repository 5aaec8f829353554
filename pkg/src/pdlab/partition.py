"""Partitions of a vertex set, distance representations and the resolving check."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

from .errors import PartitionError
from .graph import UNREACHABLE, DistanceMatrix, Graph, GraphError, label_key


def canonical_rgs(assign: Sequence[int]) -> tuple:
    """Relabel classes by order of first occurrence (restricted growth string)."""
    relabel = {}
    out = []
    for c in assign:
        if c not in relabel:
            relabel[c] = len(relabel)
        out.append(relabel[c])
    return tuple(out)


@dataclass(frozen=True)
class Partition:
    """Every vertex mapped to one of ``k`` nonempty classes ``0..k-1``."""

    assign: tuple

    def __post_init__(self):
        assign = tuple(int(c) for c in self.assign)
        object.__setattr__(self, "assign", assign)
        if not assign:
            raise PartitionError("empty partition")
        if min(assign) < 0:
            raise PartitionError("negative class index")
        used = set(assign)
        k = max(assign) + 1
        if len(used) != k:
            missing = sorted(set(range(k)) - used)
            raise PartitionError(f"classes {missing} are empty; class indices must cover 0..{k - 1}")

    @property
    def k(self) -> int:
        return max(self.assign) + 1

    @property
    def order(self) -> int:
        return len(self.assign)

    def canonical(self) -> "Partition":
        return Partition(canonical_rgs(self.assign))

    def is_canonical(self) -> bool:
        return canonical_rgs(self.assign) == self.assign

    def classes(self):
        out = [[] for _ in range(self.k)]
        for v, c in enumerate(self.assign):
            out[c].append(v)
        return out

    def label_classes(self, g: Graph):
        return [[g.labels[v] for v in cls] for cls in self.classes()]

    def refine(self) -> Optional["Partition"]:
        """Split the last vertex of the first class of size >= 2 into a new class."""
        for cls in self.classes():
            if len(cls) >= 2:
                assign = list(self.assign)
                assign[cls[-1]] = self.k
                return Partition(assign)
        return None

    @classmethod
    def from_classes(cls, g: Graph, classes: Sequence[Sequence[str]]) -> "Partition":
        assign = [None] * g.order
        for c, members in enumerate(classes):
            if not members:
                raise PartitionError(f"class {c + 1} is empty")
            for lab in members:
                try:
                    v = g.index(lab)
                except GraphError:
                    raise PartitionError(f"class {c + 1} names unknown vertex {lab!r}") from None
                if assign[v] is not None:
                    raise PartitionError(
                        f"vertex {lab} appears in class {assign[v] + 1} and class {c + 1}")
                assign[v] = c
        missing = [g.labels[v] for v in range(g.order) if assign[v] is None]
        if missing:
            raise PartitionError(f"vertex {missing[0]} is not covered by any class")
        return cls(tuple(assign))

    def to_json(self, g: Graph) -> str:
        return json.dumps({"classes": self.label_classes(g)})

    @classmethod
    def from_json(cls, g: Graph, text: str, source: Optional[str] = None) -> "Partition":
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            where = f"{source}:" if source else ""
            raise PartitionError(f"{where}{exc.lineno}: malformed partition JSON ({exc.msg})") from None
        if not isinstance(data, dict) or not isinstance(data.get("classes"), list):
            raise PartitionError('partition file must be an object with a "classes" list')
        return cls.from_classes(g, data["classes"])


def _check_cover(dist: DistanceMatrix, p: Partition):
    if p.order != dist.order:
        raise PartitionError(
            f"partition covers {p.order} vertices but the graph has {dist.order}")


def representation(dist: DistanceMatrix, p: Partition, v: int) -> tuple:
    """Distances from ``v`` to each class, in class order."""
    _check_cover(dist, p)
    row = dist.rows[v]
    best = [UNREACHABLE] * p.k
    for u, c in enumerate(p.assign):
        d = row[u]
        if d is UNREACHABLE:
            continue
        if best[c] is UNREACHABLE or d < best[c]:
            best[c] = d
    return tuple(best)


def representation_table(dist: DistanceMatrix, p: Partition):
    return [representation(dist, p, v) for v in range(dist.order)]


@dataclass(frozen=True)
class ResolvingVerdict:
    resolving: bool
    violation: Optional[tuple] = None  # (u, v) vertex indices, label-ordered
    representation: Optional[tuple] = None

    def __bool__(self):
        return self.resolving


def is_resolving(dist: DistanceMatrix, p: Partition) -> ResolvingVerdict:
    """Resolving iff all representations differ; otherwise report the
    label-least pair of vertices that share a representation."""
    table = representation_table(dist, p)
    seen = {}
    best = None
    for v in sorted(range(dist.order), key=lambda x: label_key(dist.labels[x])):
        r = table[v]
        if r in seen:
            pair = (seen[r], v)
            key = (label_key(dist.labels[pair[0]]), label_key(dist.labels[pair[1]]))
            if best is None or key < best[0]:
                best = (key, pair, r)
        else:
            seen[r] = v
    if best is None:
        return ResolvingVerdict(True)
    return ResolvingVerdict(False, best[1], best[2])


def _fmt(x):
    return "-" if x is UNREACHABLE else str(x)


def dump_representations(g: Graph, dist: DistanceMatrix, p: Partition) -> str:
    """One line per vertex, ``label: (a,b,c)``."""
    lines = []
    for v, r in enumerate(representation_table(dist, p)):
        lines.append(f"{g.labels[v]}: ({','.join(_fmt(x) for x in r)})")
    return "\n".join(lines) + "\n"
