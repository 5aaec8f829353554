"""Vertex-equivalence structure: strong (twin) pairs, weak pairs, level profiles.

Strong equivalence of ``u`` and ``v`` means equal distances to every third
vertex.  Two weak-equivalence readings are offered:

* ``literal``: some ``c`` with ``d(u, c) == d(v, c)`` (the defining equation
  with the common ``d(c, s)`` term cancelled);
* ``geodesic``: some ``c`` with ``d(u, c) == d(v, c)`` that lies on a shortest
  path from ``u`` and from ``v`` to every other vertex ``s``.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from itertools import combinations
from typing import Optional

from .graph import DistanceMatrix, Graph, label_key
from .partition import Partition, representation_table

LITERAL = "literal"
GEODESIC = "geodesic"


@dataclass(frozen=True)
class EquivalencePair:
    u: int
    v: int
    kind: str  # "strong", "weak-literal" or "weak-geodesic"
    witness: Optional[int] = None


@dataclass(frozen=True)
class LevelProfile:
    vertex: int
    histogram: tuple  # sorted (distance, count) pairs, distance >= 1

    def as_dict(self):
        return dict(self.histogram)


def are_strong_equivalent(dist: DistanceMatrix, u: int, v: int) -> bool:
    if u == v:
        raise ValueError("strong equivalence is defined for distinct vertices")
    ru, rv = dist.rows[u], dist.rows[v]
    return all(ru[w] == rv[w] for w in range(dist.order) if w != u and w != v)


def _label_order(dist):
    return sorted(range(dist.order), key=lambda x: label_key(dist.labels[x]))


def are_weak_equivalent(dist: DistanceMatrix, u: int, v: int, mode: str = GEODESIC):
    """Least-labeled witness ``c`` for weak equivalence of ``u`` and ``v``, or None."""
    if u == v:
        raise ValueError("weak equivalence is defined for distinct vertices")
    if mode not in (LITERAL, GEODESIC):
        raise ValueError(f"unknown weak-equivalence mode {mode!r}")
    rows = dist.rows
    ru, rv = rows[u], rows[v]
    others = [s for s in range(dist.order) if s != u and s != v]
    for c in _label_order(dist):
        if ru[c] != rv[c]:
            continue
        if mode == LITERAL:
            return c
        rc = rows[c]
        if all(ru[s] == ru[c] + rc[s] and rv[s] == rv[c] + rc[s] for s in others):
            return c
    return None


def level_profile(dist: DistanceMatrix, u: int) -> LevelProfile:
    counts = Counter(d for w, d in enumerate(dist.rows[u]) if w != u)
    return LevelProfile(u, tuple(sorted(counts.items())))


def are_same_level(dist: DistanceMatrix, u: int, v: int) -> bool:
    return level_profile(dist, u).histogram == level_profile(dist, v).histogram


def same_level_classes(dist: DistanceMatrix):
    """Vertices grouped by identical level histogram, groups in label order."""
    groups = {}
    for v in _label_order(dist):
        groups.setdefault(level_profile(dist, v).histogram, []).append(v)
    return list(groups.values())


@dataclass
class TwinGroups:
    groups: list
    pairs: list
    nontransitive: Optional[tuple] = None

    @property
    def max_size(self) -> int:
        if self.nontransitive is not None:
            # Only pairs are trustworthy; a pair still forces two classes.
            return 2 if self.pairs else 1
        return max((len(g) for g in self.groups), default=1)


def strong_pairs(dist: DistanceMatrix):
    return [(u, v) for u, v in combinations(range(dist.order), 2) if are_strong_equivalent(dist, u, v)]


def strong_equivalence_groups(dist: DistanceMatrix) -> TwinGroups:
    """Maximal groups (size >= 2) of pairwise strong-equivalent vertices.

    Transitivity is re-checked on every group rather than assumed.
    """
    pairs = strong_pairs(dist)
    partner = {}
    for u, v in pairs:
        partner.setdefault(u, set()).add(v)
        partner.setdefault(v, set()).add(u)
    seen = set()
    groups = []
    for v in range(dist.order):
        if v in seen or v not in partner:
            continue
        group = sorted({v} | partner[v])
        for a, b, c in combinations(group, 3):
            ok = (b in partner.get(a, ()), c in partner.get(a, ()), c in partner.get(b, ()))
            if not all(ok):
                return TwinGroups([], pairs, (a, b, c))
        seen.update(group)
        groups.append(group)
    return TwinGroups(groups, pairs)


def separation_constraints(dist: DistanceMatrix):
    """Pairs that no resolving partition may place in one class."""
    return set(strong_pairs(dist))


def twin_clique_size(dist: DistanceMatrix) -> int:
    return strong_equivalence_groups(dist).max_size


def neighborhood_check(g: Graph, u: int, v: int) -> bool:
    """``N(u) - {u, v} == N(v) - {u, v}``."""
    drop = {u, v}
    return (g.adjacency[u] - drop) == (g.adjacency[v] - drop)


@dataclass(frozen=True)
class LevelWarning:
    u: int
    v: int
    cls: int
    coinciding: tuple  # classes with equal distance from u and from v
    full_collision: bool


def same_level_diagnostic(dist: DistanceMatrix, p: Partition):
    """Flag same-level pairs sharing a class, listing the classes that fail to
    separate them.  Heuristic only: warnings do not prove a collision and their
    absence does not prove the partition resolving."""
    table = representation_table(dist, p)
    profiles = [level_profile(dist, v).histogram for v in range(dist.order)]
    warnings = []
    for members in p.classes():
        for a, b in combinations(sorted(members, key=lambda x: label_key(dist.labels[x])), 2):
            if profiles[a] != profiles[b]:
                continue
            coinciding = tuple(c for c in range(p.k) if table[a][c] == table[b][c])
            warnings.append(LevelWarning(a, b, p.assign[a], coinciding, len(coinciding) == p.k))
    return warnings


@dataclass(frozen=True)
class HistogramFormula:
    role: str  # "center", "hub" or "rim"
    derived: dict
    printed: Optional[dict] = None  # only where a printed count differs from the derived one
    note: str = ""


def corona_histogram_formulas(n: int, m: int):
    """Level histograms of K_n ⊙ W_m (n >= 2, m >= 4) by vertex role.

    For m = n+1 two printed counts disagree with the derived ones (center
    distance-1 printed as 2n, hub distance-3 printed as (n-1)(n-2)); both
    printed values make the counts sum to something other than order - 1.
    """
    if n < 2 or m < 4:
        raise ValueError("histogram formulas need n >= 2 and m >= 4")
    far = (n - 1) * (m + 1)
    center = {1: n + m, 2: far}
    hub = {1: m + 1, 2: n - 1, 3: far}
    rim = {1: 4, 2: m + n - 4, 3: far}
    out = {"center": HistogramFormula("center", center),
           "hub": HistogramFormula("hub", hub),
           "rim": HistogramFormula("rim", rim)}
    if m == n + 1:
        total = n * (m + 2) - 1
        pc = {**center, 1: 2 * n}
        ph = {**hub, 3: (n - 1) * (n - 2)}
        out["center"] = HistogramFormula("center", center, pc,
                                         f"printed distance-1 count 2n sums to {sum(pc.values())}, "
                                         f"order - 1 = {total}")
        out["hub"] = HistogramFormula("hub", hub, ph,
                                      f"printed distance-3 count (n-1)(n-2) sums to {sum(ph.values())}, "
                                      f"order - 1 = {total}")
    return out


def _corona_kw_params(g: Graph):
    fam = g.family
    if (fam is None or fam.kind != "corona" or fam.inner.kind != "complete"
            or fam.outer.kind != "wheel"):
        return None
    return fam.inner.n, fam.outer.n


@dataclass
class AnalysisReport:
    strong: list
    weak: list
    weak_mode: str
    same_level: list
    profiles: list
    nontransitive: Optional[tuple] = None
    flags: list = field(default_factory=list)
    formulas: Optional[dict] = None

    def to_dict(self, g: Graph):
        lab = g.labels
        return {
            "strong_pairs": [sorted((lab[u], lab[v]), key=label_key) for u, v in self.strong],
            "nontransitive_triple": None if self.nontransitive is None else [lab[x] for x in self.nontransitive],
            "weak_mode": self.weak_mode,
            "weak_pairs": [{"u": lab[p.u], "v": lab[p.v], "witness": lab[p.witness]} for p in self.weak],
            "same_level_classes": [[lab[v] for v in grp] for grp in self.same_level],
            "level_profiles": {lab[p.vertex]: {str(d): c for d, c in p.histogram} for p in self.profiles},
            "flags": list(self.flags),
            "histogram_formulas": None if self.formulas is None else {
                role: {"derived": {str(d): c for d, c in f.derived.items()},
                       "printed": None if f.printed is None else {str(d): c for d, c in f.printed.items()},
                       "note": f.note}
                for role, f in self.formulas.items()},
        }


def analyze(g: Graph, dist: DistanceMatrix, weak_mode: str = GEODESIC) -> AnalysisReport:
    from .graph import family_flags

    twins = strong_equivalence_groups(dist)
    order = _label_order(dist)
    strong = sorted(twins.pairs, key=lambda uv: (label_key(g.labels[uv[0]]), label_key(g.labels[uv[1]])))
    weak = []
    for i, u in enumerate(order):
        for v in order[i + 1:]:
            c = are_weak_equivalent(dist, u, v, weak_mode)
            if c is not None:
                weak.append(EquivalencePair(u, v, f"weak-{weak_mode}", c))
    profiles = [level_profile(dist, v) for v in order]
    formulas = None
    params = _corona_kw_params(g)
    if params is not None and params[0] >= 2 and params[1] >= 4:
        formulas = corona_histogram_formulas(*params)
    return AnalysisReport(strong, weak, weak_mode, same_level_classes(dist), profiles,
                          twins.nontransitive, family_flags(g.family), formulas)
