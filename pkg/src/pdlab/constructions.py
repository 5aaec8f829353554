"""Explicit n-class partitions of K_n ⊙ W_m for m in {n, n+1, n+2}.

Each family has one or more *interpretations*: an ordered list of rules mapping
vertices to classes.  Rules are data, carry an id and a formula-style text, and
are marked ``printed`` (taken as written) or ``repair`` (our fix for an index
range that does not partition the vertex set as written).  Rules within one
interpretation must be disjoint; a vertex claimed by two rules with different
classes, or by none, is a construction failure, never resolved silently.

Vertex coordinates are ``(i, j)`` with ``i`` the 1-based block and ``j`` the
local wheel index; the center ``u_i`` has ``j = U``.  Classes are 1-based here
and become 0-based partition indices on output.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional

from .errors import ConstructionError
from .graph import DistanceMatrix, Graph, all_pairs_distances, corona_kw
from .partition import Partition, ResolvingVerdict, is_resolving

U = -1  # local index used for the center vertex u_i

PRINTED = "printed"
REPAIR = "repair"


@dataclass(frozen=True)
class Rule:
    id: str
    text: str
    kind: str
    target: Callable  # (n, m, i, j) -> 1-based class or None when not applicable


@dataclass(frozen=True)
class Interpretation:
    id: str
    rules: tuple
    note: str = ""


def _base(i):
    return 2 if i == 1 else 1


# -- rules shared by the three general families ("staircase" reading) --------

_BASE_1 = Rule("base-block-1", "u_1, v_1.0, v_1.1, v_1.2 -> S2", PRINTED,
               lambda n, m, i, j: 2 if i == 1 and j in (U, 0, 1, 2) else None)
_BASE_I = Rule("base-block-i", "u_i, v_i.0, v_i.1, v_i.2 -> S1  (2 <= i <= n)", PRINTED,
               lambda n, m, i, j: 1 if i >= 2 and j in (U, 0, 1, 2) else None)
_STAIR_LOW = Rule("stair-low", "v_i.x -> S_x  (3 <= x <= n, i < x)", REPAIR,
                  lambda n, m, i, j: j if 3 <= j <= n and i < j else None)
_STAIR_HIGH = Rule("stair-high", "v_i.x -> S_(x-1)  (3 <= x <= n, i >= x)", REPAIR,
                   lambda n, m, i, j: j - 1 if 3 <= j <= n and i >= j else None)
_TAIL = Rule("tail-follows-n", "v_i.(n+1) -> class of v_i.n", PRINTED,
             lambda n, m, i, j: (n if i < n else n - 1) if j == n + 1 else None)
_EXTRA = Rule("extra-to-base", "v_i.(n+2) -> class of u_i", PRINTED,
              lambda n, m, i, j: _base(i) if j == n + 2 else None)

_STAIRCASE_NOTE = ("index ranges of the middle classes read as a staircase: block i "
                   "avoids class i for i >= 2, the last two classes absorb rim "
                   "positions n and n+1")

# -- the m = n classes taken literally, kept to show they do not partition ----

_LITERAL_MN = (
    _BASE_I,
    Rule("literal-s2", "u_1, v_1.0, v_1.1, v_1.2, v_1.3 -> S2", PRINTED,
         lambda n, m, i, j: 2 if i == 1 and j in (U, 0, 1, 2, 3) else None),
    Rule("literal-sx", "v_i.x, v_i.(x+1) -> S_x  (3 <= x <= n-1, 1 <= i <= x-1)", PRINTED,
         lambda n, m, i, j: _literal_sx(n, i, j)),
    Rule("literal-s(n-1)", "v_i.(n-2) (1 <= i <= n-2), v_n.n -> S_(n-1)", PRINTED,
         lambda n, m, i, j: n - 1 if (j == n - 2 and i <= n - 2) or (i == n and j == n) else None),
    Rule("literal-sn", "v_i.n (1 <= i <= n-1) -> S_n", PRINTED,
         lambda n, m, i, j: n if j == n and i <= n - 1 else None),
)


def _literal_sx(n, i, j):
    hits = {x for x in range(3, n) if i <= x - 1 and j in (x, x + 1)}
    if len(hits) == 1:
        return hits.pop()
    if hits:
        return tuple(sorted(hits))  # one rule, several classes: reported as a clash
    return None


# -- the two fixed n = 3 partitions ------------------------------------------

def _listed(classes):
    """Rule target from explicit class lists of (i, j) coordinates."""
    table = {}
    for c, members in enumerate(classes, start=1):
        for v in members:
            table.setdefault(v, set()).add(c)

    def target(n, m, i, j):
        hit = table.get((i, j))
        if not hit:
            return None
        return next(iter(hit)) if len(hit) == 1 else tuple(sorted(hit))

    return target


_K3W4_CLASSES = (
    [(2, U), (3, U), (2, 0), (3, 0), (2, 1), (2, 2), (3, 1), (3, 2)],
    [(1, U), (1, 0), (1, 1), (1, 2), (3, 3)],
    [(1, 3), (2, 3)],
    [(1, 4), (2, 4), (3, 4)],
)

# Printed K3 ⊙ W5 classes minus the two contested vertices v1.3 and v1.5.
_K3W5_CORE = (
    [(1, 0), (1, 1), (1, 2), (2, 0), (2, 1), (2, 2), (2, 5), (1, U), (2, U)],
    [(1, 4), (2, 4), (3, 4)],
    [(3, 0), (3, 1), (3, 2), (3, 5), (3, U)],
    [(3, 3), (2, 3)],
)


_K3W4_RULES = (
    Rule("k3w4-classes",
         "four listed classes; the first item of S3 (printed with a comma for the dot) read as v_1.3",
         PRINTED, _listed(_K3W4_CLASSES)),
)

_K3W5_CORE_RULE = Rule(
    "k3w5-listed", "four listed classes; the fourth (printed with a repeated name S_2) taken as S4",
    PRINTED, _listed(_K3W5_CORE))

INTERPRETATIONS = {
    "m=n": (
        Interpretation("staircase-v1", (_BASE_1, _BASE_I, _STAIR_LOW, _STAIR_HIGH), _STAIRCASE_NOTE),
        Interpretation("literal-v1", _LITERAL_MN, "classes exactly as listed; overlapping ranges"),
    ),
    "m=n+1": (
        Interpretation("staircase-v1", (_BASE_1, _BASE_I, _STAIR_LOW, _STAIR_HIGH, _TAIL), _STAIRCASE_NOTE),
    ),
    "m=n+2": (
        Interpretation("staircase-v1", (_BASE_1, _BASE_I, _STAIR_LOW, _STAIR_HIGH, _TAIL, _EXTRA),
                       _STAIRCASE_NOTE),
    ),
    "special-K3W4": (
        Interpretation("as-printed-v1", _K3W4_RULES),
    ),
    "special-K3W5": (
        Interpretation("repair-resolving-v1", (
            _K3W5_CORE_RULE,
            Rule("k3w5-v1.3", "v_1.3 (missing from every class) -> S3", REPAIR,
                 lambda n, m, i, j: 3 if (i, j) == (1, 3) else None),
            Rule("k3w5-v1.5", "v_1.5 (listed in S1 and S2) kept in S1", REPAIR,
                 lambda n, m, i, j: 1 if (i, j) == (1, 5) else None),
        ), "smallest change that yields a resolving partition"),
        Interpretation("repair-minimal-v1", (
            _K3W5_CORE_RULE,
            Rule("k3w5-v1.3-s2", "v_1.3 (missing from every class) -> S2", REPAIR,
                 lambda n, m, i, j: 2 if (i, j) == (1, 3) else None),
            Rule("k3w5-v1.5", "v_1.5 (listed in S1 and S2) kept in S1", REPAIR,
                 lambda n, m, i, j: 1 if (i, j) == (1, 5) else None),
        ), "v_1.3 into the class its rim neighbour v_1.4 occupies; not resolving"),
    ),
}

FAMILIES = tuple(INTERPRETATIONS)
_OFFSET = {"m=n": 0, "m=n+1": 1, "m=n+2": 2}
_MIN_N = {"m=n": 3, "m=n+1": 4, "m=n+2": 4}
_SPECIAL_M = {"special-K3W4": 4, "special-K3W5": 5}


@dataclass(frozen=True)
class ConstructionSpec:
    family: str
    n: int = 3
    interpretation: Optional[str] = None

    def __post_init__(self):
        if self.family not in INTERPRETATIONS:
            raise ConstructionError(f"unknown family {self.family!r}; expected one of {', '.join(FAMILIES)}")
        if self.family in _SPECIAL_M:
            if self.n != 3:
                raise ConstructionError(f"{self.family} is defined only for n = 3")
        elif self.n < 3:
            raise ConstructionError(f"family {self.family} needs n >= 3, got n={self.n}")
        ids = [it.id for it in INTERPRETATIONS[self.family]]
        if self.interpretation is None:
            object.__setattr__(self, "interpretation", ids[0])
        elif self.interpretation not in ids:
            raise ConstructionError(
                f"family {self.family} has no interpretation {self.interpretation!r}; known: {', '.join(ids)}")

    @property
    def m(self) -> int:
        if self.family in _SPECIAL_M:
            return _SPECIAL_M[self.family]
        return self.n + _OFFSET[self.family]

    @property
    def classes(self) -> int:
        return 4 if self.family in _SPECIAL_M else self.n

    @property
    def below_stated_range(self) -> bool:
        """True when n is smaller than the family's construction is stated for."""
        return self.family in _MIN_N and self.n < _MIN_N[self.family]

    def rules(self) -> Interpretation:
        return next(it for it in INTERPRETATIONS[self.family] if it.id == self.interpretation)


@dataclass
class Construction:
    spec: ConstructionSpec
    graph: Graph
    partition: Partition
    verdict: ResolvingVerdict
    rules_applied: list
    notes: list = field(default_factory=list)

    @property
    def resolving(self) -> bool:
        return self.verdict.resolving

    def to_dict(self):
        g = self.graph
        interp = self.spec.rules()
        v = self.verdict
        return {
            "family": self.spec.family,
            "n": self.spec.n,
            "m": self.spec.m,
            "graph": str(g.family),
            "interpretation": interp.id,
            "rules": [{"id": r.id, "kind": r.kind, "text": r.text} for r in interp.rules
                      if r.id in self.rules_applied],
            "classes": self.partition.label_classes(g),
            "k": self.partition.k,
            "resolving": v.resolving,
            "violation": None if v.violation is None else {
                "u": g.labels[v.violation[0]], "v": g.labels[v.violation[1]],
                "representation": list(v.representation)},
            "notes": list(self.notes),
        }


def _coords(g: Graph):
    out = []
    for lab in g.labels:
        if lab.startswith("u"):
            out.append((int(lab[1:]), U))
        else:
            i, j = lab[1:].split(".")
            out.append((int(i), int(j)))
    return out


def build_construction(spec: ConstructionSpec, dist: Optional[DistanceMatrix] = None) -> Construction:
    """Materialize the partition, then attach the checker's verdict."""
    n = 3 if spec.family in _SPECIAL_M else spec.n
    m = spec.m
    g = corona_kw(n, m)
    interp = spec.rules()
    assign = []
    applied = []
    for lab, (i, j) in zip(g.labels, _coords(g)):
        hits = []
        for rule in interp.rules:
            c = rule.target(n, m, i, j)
            if c is None:
                continue
            for cc in (c if isinstance(c, tuple) else (c,)):
                hits.append((rule.id, cc))
        classes = {c for _, c in hits}
        if not hits:
            raise ConstructionError(
                f"{spec.family} n={spec.n} [{interp.id}]: vertex {lab} is not placed by any rule")
        if len(classes) > 1:
            desc = ", ".join(f"{rid} -> S{c}" for rid, c in hits)
            raise ConstructionError(
                f"{spec.family} n={spec.n} [{interp.id}]: vertex {lab} is placed in two classes ({desc})")
        assign.append(classes.pop() - 1)
        for rid, _ in hits:
            if rid not in applied:
                applied.append(rid)
    used = set(assign)
    if used != set(range(spec.classes)):
        empty = sorted(set(range(1, spec.classes + 1)) - {c + 1 for c in used})
        raise ConstructionError(
            f"{spec.family} n={spec.n} [{interp.id}]: expected {spec.classes} nonempty classes, "
            f"classes {empty} are empty")
    p = Partition(tuple(assign))
    if dist is None:
        dist = all_pairs_distances(g)
    notes = [interp.note] if interp.note else []
    if spec.below_stated_range:
        notes.append(f"n={spec.n} is below the range the construction is stated for")
    # applied rules listed in interpretation order
    order = [r.id for r in interp.rules]
    applied.sort(key=order.index)
    return Construction(spec, g, p, is_resolving(dist, p), applied, notes)
