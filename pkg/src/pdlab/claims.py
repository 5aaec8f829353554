"""Claim registry and verification of each claim against computed ground truth.

For every corona instance K_n ⊙ W_m a claim touches, evidence is gathered once:

* static bounds (Chartrand pair, twin clique);
* every applicable explicit construction, checked by ``is_resolving``;
* a top-down solver pass: with a resolving partition of size ``hi`` in hand,
  decide ``hi - 1``.  A witness lowers ``hi``; an exclusion proves ``pd = hi``
  (a resolving k-partition with k < order always refines to k + 1 classes, so
  no smaller k needs checking).

Verdicts are then read off the proven interval ``[lo, hi]``.  Budget exhaustion
leaves the interval open and the verdict ``undecided``; a zero budget gathers no
evidence at all.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from importlib import resources
from typing import Optional

from .bounds import chartrand_bounds, lower_bounds
from .constructions import ConstructionSpec, build_construction
from .errors import ConstructionError, PdlabError
from .graph import all_pairs_distances, corona_kw
from .partition import is_resolving
from .search import SearchStats, SolverOptions, decide

CONFIRMED = "confirmed"
REFUTED = "refuted"
UNDECIDED = "undecided"

_OFFSET = {"m=n": 0, "m=n+1": 1, "m=n+2": 2}


@dataclass(frozen=True)
class Claim:
    id: str
    statement: str
    source: str
    kind: str  # "exact", "upper" or "lower"
    family: str
    n_min: int
    n_max: Optional[int]
    expected: object  # an int, or "n"
    alternates: tuple = ()
    construction: Optional[str] = None

    def applies(self, n):
        return n >= self.n_min and (self.n_max is None or n <= self.n_max)

    def value(self, n, expected=None):
        e = self.expected if expected is None else expected
        return n if e == "n" else int(e)


def load_claims(text: Optional[str] = None):
    if text is None:
        text = resources.files("pdlab").joinpath("data/claims.json").read_text(encoding="utf-8")
    data = json.loads(text)
    out = []
    for c in data["claims"]:
        if c["kind"] not in ("exact", "upper", "lower"):
            raise PdlabError(f"claim {c['id']}: unknown kind {c['kind']!r}")
        out.append(Claim(c["id"], c["statement"], c["source"], c["kind"], c["family"],
                         c["n_min"], c.get("n_max"), c["expected"],
                         tuple((a["expected"], a["source"]) for a in c.get("alternates", ())),
                         c.get("construction")))
    ids = [c.id for c in out]
    if len(set(ids)) != len(ids):
        raise PdlabError("duplicate claim ids in registry")
    return out


def judge(kind, expected, lo, hi):
    """Verdict of ``pd = / <= / >= expected`` given ``lo <= pd <= hi``."""
    if lo is None or hi is None:
        return UNDECIDED
    if kind == "exact":
        if lo == hi == expected:
            return CONFIRMED
        return REFUTED if expected < lo or expected > hi else UNDECIDED
    if kind == "upper":
        return CONFIRMED if hi <= expected else REFUTED if lo > expected else UNDECIDED
    return CONFIRMED if lo >= expected else REFUTED if hi < expected else UNDECIDED


@dataclass
class InstanceFacts:
    n: int
    m: int
    lo: Optional[int] = None
    hi: Optional[int] = None
    lo_source: str = ""
    hi_source: str = ""
    witness: Optional[list] = None  # label classes proving hi
    exclusion: Optional[dict] = None  # search parameters proving lo
    constructions: list = field(default_factory=list)
    undecided: Optional[str] = None
    static: dict = field(default_factory=dict)

    @property
    def pd(self):
        return self.lo if self.lo is not None and self.lo == self.hi else None

    def evidence(self):
        return {
            "lower": {"value": self.lo, "source": self.lo_source, "exclusion": self.exclusion},
            "upper": {"value": self.hi, "source": self.hi_source, "witness": self.witness},
            "static_bounds": dict(self.static),
            "constructions": list(self.constructions),
            "undecided": self.undecided,
        }


def _constructions_for(n, m):
    out = []
    fam = {0: "m=n", 1: "m=n+1", 2: "m=n+2"}.get(m - n)
    if fam is not None and n >= 3:
        out.append(ConstructionSpec(fam, n))
    if n == 3 and m == 4:
        out.append(ConstructionSpec("special-K3W4"))
    if n == 3 and m == 5:
        out.append(ConstructionSpec("special-K3W5"))
    return out


def gather(n: int, m: int, opts: SolverOptions) -> InstanceFacts:
    facts = InstanceFacts(n, m)
    g = corona_kw(n, m)
    dist = all_pairs_distances(g)
    named = lower_bounds(g, dist)
    _, chartrand_hi = chartrand_bounds(g, dist)
    facts.static = {**named, "chartrand_upper": chartrand_hi}
    if opts.budget_nodes == 0 or opts.budget_seconds == 0:
        facts.undecided = "budget is zero; no evidence gathered"
        return facts
    lo_name = max(sorted(named), key=lambda k: named[k])
    facts.lo, facts.lo_source = named[lo_name], f"static:{lo_name}"
    facts.hi, facts.hi_source = chartrand_hi, "static:chartrand_upper"
    for spec in _constructions_for(n, m):
        try:
            c = build_construction(spec, dist)
        except ConstructionError as exc:
            facts.constructions.append({"family": spec.family, "interpretation": spec.interpretation,
                                        "error": str(exc)})
            continue
        facts.constructions.append({"family": spec.family, "interpretation": spec.interpretation,
                                    "k": c.partition.k, "resolving": c.resolving})
        if c.resolving and c.partition.k < facts.hi:
            facts.hi = c.partition.k
            facts.hi_source = f"construction:{spec.family}:{spec.interpretation}"
            facts.witness = c.partition.label_classes(g)
    while facts.lo < facts.hi:
        k = facts.hi - 1
        res = decide(g, k, opts, dist)
        if res.undecided:
            facts.undecided = f"k={k}: {res.undecided}"
            break
        if res.witness is not None:
            if not is_resolving(dist, res.witness) or res.witness.k != k:
                raise RuntimeError(f"solver returned an invalid witness for {g.family} at k={k}")
            facts.hi, facts.hi_source = k, "solver:witness"
            facts.witness = res.witness.label_classes(g)
        else:
            facts.lo, facts.lo_source = facts.hi, "solver:exclusion"
            facts.exclusion = {"k": k, "search": res.stats.to_dict()}
    return facts


@dataclass
class ClaimReport:
    claim_id: str
    statement: str
    source: str
    kind: str
    n: int
    m: int
    expected: int
    computed: Optional[int]
    lower: Optional[int]
    upper: Optional[int]
    verdict: str
    evidence: dict
    alternates: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def instance(self):
        return f"K_{self.n} ⊙ W_{self.m}"

    def to_dict(self):
        return {
            "claim": self.claim_id,
            "instance": self.instance,
            "n": self.n,
            "m": self.m,
            "statement": self.statement,
            "source": self.source,
            "kind": self.kind,
            "expected": self.expected,
            "computed": self.computed,
            "bounds": [self.lower, self.upper],
            "verdict": self.verdict,
            "alternates": list(self.alternates),
            "evidence": self.evidence,
            "notes": list(self.notes),
        }


def _report(claim: Claim, facts: InstanceFacts) -> ClaimReport:
    n, m = facts.n, facts.m
    expected = claim.value(n)
    verdict = judge(claim.kind, expected, facts.lo, facts.hi)
    notes = []
    if claim.construction is not None:
        c = next((c for c in facts.constructions if c["family"] == claim.construction), None)
        if c is None or not c.get("resolving"):
            notes.append(f"construction {claim.construction} is not a resolving partition")
    if facts.undecided:
        notes.append(f"search stopped: {facts.undecided}")
    alternates = []
    for alt, src in claim.alternates:
        value = claim.value(n, alt)
        alternates.append({"expected": value, "source": src,
                           "verdict": judge(claim.kind, value, facts.lo, facts.hi)})
    return ClaimReport(claim.id, claim.statement, claim.source, claim.kind, n, m, expected,
                       facts.pd, facts.lo, facts.hi, verdict, facts.evidence(), alternates, notes)


def verify_claims(n_range=range(2, 7), opts: Optional[SolverOptions] = None, claims=None):
    """ClaimReports for every registry claim and every applicable n, ordered by
    claim id then n.  Claims outside ``n_range`` are skipped, never omitted
    silently inside it."""
    opts = opts or SolverOptions(symmetry="family")
    claims = load_claims() if claims is None else claims
    cache = {}
    reports = []
    for claim in sorted(claims, key=lambda c: c.id):
        for n in n_range:
            if not claim.applies(n):
                continue
            m = n + _OFFSET[claim.family]
            if (n, m) not in cache:
                cache[(n, m)] = gather(n, m, opts)
            reports.append(_report(claim, cache[(n, m)]))
    return reports


def summary(reports):
    counts = {CONFIRMED: 0, REFUTED: 0, UNDECIDED: 0}
    for r in reports:
        counts[r.verdict] += 1
    return counts


def exit_status(reports) -> int:
    verdicts = {r.verdict for r in reports}
    if REFUTED in verdicts:
        return 1
    if UNDECIDED in verdicts:
        return 3
    return 0


def _fmt_bounds(r):
    if r.lower is None:
        return "-"
    return str(r.lower) if r.lower == r.upper else f"[{r.lower}, {r.upper}]"


def to_markdown(reports, header=None) -> str:
    lines = []
    if header:
        lines += [header, ""]
    lines.append("| claim | instance | statement | expected | computed | bounds | verdict | alternates |")
    lines.append("|---|---|---|---|---|---|---|---|")
    for r in reports:
        alts = "; ".join(f"{a['expected']} ({a['source']}): {a['verdict']}" for a in r.alternates) or "-"
        computed = "-" if r.computed is None else str(r.computed)
        lines.append(f"| {r.claim_id} | {r.instance} | {r.statement} | {r.expected} | {computed} "
                     f"| {_fmt_bounds(r)} | {r.verdict} | {alts} |")
    counts = summary(reports)
    lines += ["", f"confirmed: {counts[CONFIRMED]}, refuted: {counts[REFUTED]}, undecided: {counts[UNDECIDED]}"]
    return "\n".join(lines) + "\n"
