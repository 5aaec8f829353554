"""Exact partition dimension by pruned enumeration of restricted growth strings.

Vertices are assigned in index order; class labels follow restricted growth so
each unordered partition is met once, and witnesses come out lexicographically
first.  All prunes are sound:

* twins: a vertex never joins the class of an earlier strong-equivalent vertex;
* settled pairs: two assigned vertices with equal partial representations are
  abandoned once no unassigned vertex can still separate them (every remaining
  vertex that sees them at different distances is no closer to either of them
  than the classes they already reach);
* family symmetry (corona of a complete graph only): the local pattern of each
  block must be the least under rim rotations/reflections, and block patterns
  must be non-decreasing.

Work is split into the subtrees below a fixed-depth set of prefixes.  The depth
depends only on the instance, and subtree results are merged in prefix order,
so witnesses, node counts and verdicts do not depend on the worker count.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

from .bounds import chartrand_bounds, lower_bounds
from .errors import GraphError, PdlabError
from .graph import DistanceMatrix, Graph, all_pairs_distances, corona_blocks
from .partition import Partition, canonical_rgs, is_resolving
from .structure import separation_constraints

_INF = 1 << 30
_SPLIT_TARGET = 64


@dataclass(frozen=True)
class SolverOptions:
    prune_twins: bool = True
    prune_settled: bool = True
    symmetry: str = "off"  # "family" or "off"
    threads: int = 1
    budget_nodes: Optional[int] = None
    budget_seconds: Optional[float] = None

    def __post_init__(self):
        if self.symmetry not in ("family", "off"):
            raise ValueError(f"symmetry must be 'family' or 'off', not {self.symmetry!r}")
        if self.threads < 1:
            raise ValueError("threads must be >= 1")
        if self.budget_nodes is not None and self.budget_nodes < 0:
            raise ValueError("budget_nodes must be >= 0")
        if self.budget_seconds is not None and self.budget_seconds < 0:
            raise ValueError("budget_seconds must be >= 0")

    @classmethod
    def from_env(cls, **kw):
        """Options with ``threads`` defaulting to ``$PDLAB_THREADS``."""
        if "threads" not in kw or kw["threads"] is None:
            kw["threads"] = int(os.environ.get("PDLAB_THREADS", "1") or 1)
        return cls(**kw)


@dataclass
class SearchStats:
    nodes: int = 0
    twin_prunes: int = 0
    settled_prunes: int = 0
    symmetry_prunes: int = 0
    prefixes: int = 0
    seconds: float = 0.0

    def add(self, other: "SearchStats"):
        self.nodes += other.nodes
        self.twin_prunes += other.twin_prunes
        self.settled_prunes += other.settled_prunes
        self.symmetry_prunes += other.symmetry_prunes
        self.prefixes += other.prefixes

    def to_dict(self, timing=False):
        d = {
            "nodes": self.nodes,
            "prunes": {
                "twin": self.twin_prunes,
                "settled": self.settled_prunes,
                "symmetry": self.symmetry_prunes,
            },
            "prefixes": self.prefixes,
        }
        if timing:
            d["seconds"] = round(self.seconds, 3)
        return d


class SearchUndecided(PdlabError):
    """The node or time budget ran out before the question was settled."""

    def __init__(self, k, stats, reason):
        super().__init__(f"undecided at k={k}: {reason}")
        self.k = k
        self.stats = stats
        self.reason = reason


class _OutOfBudget(Exception):
    def __init__(self, reason):
        self.reason = reason


def _rim_permutations(g: Graph):
    """Local-position permutations of one block induced by rim rotations and
    reflections of a wheel copy (positions: 0 center, 1 hub, 2.. rim)."""
    fam = g.family
    if fam.outer.kind != "wheel":
        return []
    m = fam.outer.n
    perms = []
    for s in range(m):
        for flip in (False, True):
            if s == 0 and not flip:
                continue
            perm = [0, 1]
            for r in range(m):
                src = (-r + s) % m if flip else (r + s) % m
                perm.append(2 + src)
            perms.append(tuple(perm))
    return perms


class _Search:
    def __init__(self, D, k, twin_pairs, blocks, rim_perms, prune_twins, prune_settled):
        self.D = D
        self.n = n = len(D)
        self.k = k
        self.prune_settled = prune_settled
        self.twins_before = [[] for _ in range(n)]
        if prune_twins:
            for u, v in twin_pairs:
                a, b = min(u, v), max(u, v)
                self.twins_before[b].append(a)

        # sep[d][u][w]: least min(d(u,x), d(w,x)) over unassigned x (index >= d)
        # with d(u,x) != d(w,x); _INF when no such x is left.
        sep = [None] * (n + 1)
        sep[n] = [[_INF] * n for _ in range(n)]
        for d in range(n - 1, -1, -1):
            nxt = sep[d + 1]
            col = [D[u][d] for u in range(n)]
            cur = []
            for u in range(n):
                a = col[u]
                row = list(nxt[u])
                for w in range(n):
                    b = col[w]
                    if a != b:
                        t = a if a < b else b
                        if t < row[w]:
                            row[w] = t
                cur.append(row)
            sep[d] = cur
        self.sep = sep

        self.blocks = blocks
        self.rim_perms = rim_perms
        self.block_of = [None] * n
        self.pos_of = [None] * n
        if blocks:
            for b, members in enumerate(blocks):
                for p, v in enumerate(members):
                    self.block_of[v] = b
                    self.pos_of[v] = p
        self.reset()

    def reset(self):
        n, k = self.n, self.k
        self.assign = [-1] * n
        self.R = [[_INF] * k for _ in range(n)]
        self.members = [[] for _ in range(k)]
        self.stats = SearchStats()
        self.cap = None
        self.deadline = None

    # -- state updates -------------------------------------------------------

    def _apply(self, v, c):
        D, R = self.D, self.R
        Dv = D[v]
        old = [R[u][c] for u in range(v)]
        for u in range(v):
            if Dv[u] < R[u][c]:
                R[u][c] = Dv[u]
        self.assign[v] = c
        self.members[c].append(v)
        rv = R[v]
        for cc in range(self.k):
            best = _INF
            for x in self.members[cc]:
                if Dv[x] < best:
                    best = Dv[x]
            rv[cc] = best
        return old

    def _undo(self, v, c, old):
        R = self.R
        for u in range(v):
            R[u][c] = old[u]
        self.members[c].pop()
        self.assign[v] = -1

    def _settled_collision(self, d):
        """True if two of the first ``d`` vertices can never be separated."""
        R = self.R
        sep = self.sep[d]
        seen = {}
        for u in range(d):
            r = tuple(R[u])
            earlier = seen.get(r)
            if earlier is None:
                seen[r] = [u]
                continue
            top = max(r)
            for w in earlier:
                if top <= sep[w][u]:
                    return True
            earlier.append(u)
        return False

    def _symmetry_violation(self, v):
        b = self.block_of[v]
        if b is None:
            return False
        p = self.pos_of[v]
        blk = self.blocks[b]
        start = blk[0]
        local = self.assign[start:v + 1]
        cur = canonical_rgs(local)
        if b > 0:
            pstart = self.blocks[b - 1][0]
            prev = canonical_rgs(self.assign[pstart:pstart + p + 1])
            if cur < prev:
                return True
        if p == len(blk) - 1 and self.rim_perms:
            for perm in self.rim_perms:
                if canonical_rgs([local[q] for q in perm]) < cur:
                    return True
        return False

    # -- search --------------------------------------------------------------

    def _tick(self):
        st = self.stats
        st.nodes += 1
        if self.cap is not None and st.nodes > self.cap:
            raise _OutOfBudget("node budget exhausted")
        if self.deadline is not None and (st.nodes & 1023) == 0 and time.time() > self.deadline:
            raise _OutOfBudget("time budget exhausted")

    def _dfs(self, d, used, stop, out):
        n, k = self.n, self.k
        if d == stop:
            if stop == n:
                return True
            out.append(tuple(self.assign[:d]))
            return False
        twins = self.twins_before[d]
        assign = self.assign
        top = used + 1 if used < k else k
        for c in range(top):
            nu = used + 1 if c == used else used
            if n - d - 1 < k - nu:
                continue
            if twins and any(assign[t] == c for t in twins):
                self.stats.twin_prunes += 1
                continue
            self._tick()
            old = self._apply(d, c)
            dead = False
            if self.blocks is not None and self._symmetry_violation(d):
                self.stats.symmetry_prunes += 1
                dead = True
            elif (self.prune_settled or d == n - 1) and self._settled_collision(d + 1):
                if d < n - 1:
                    self.stats.settled_prunes += 1
                dead = True
            if not dead and self._dfs(d + 1, nu, stop, out):
                return True
            self._undo(d, c, old)
        return False

    def collect_prefixes(self, depth, cap=None, deadline=None):
        self.reset()
        self.cap = cap
        self.deadline = deadline
        out = []
        if self.n == 0:
            return out
        found = self._dfs(0, 0, depth, out)
        if found:
            out = [tuple(self.assign)]
        return out

    def search_from(self, prefix, cap=None, deadline=None):
        """Lexicographically first completion of ``prefix``, or None."""
        self.reset()
        self.cap = cap
        self.deadline = deadline
        for v, c in enumerate(prefix):
            self._apply(v, c)
        used = max(prefix) + 1 if prefix else 0
        if len(prefix) == self.n:
            ok = not self._settled_collision(self.n)
            return (tuple(self.assign) if ok else None), self.stats
        try:
            if self._dfs(len(prefix), used, self.n, None):
                return tuple(self.assign), self.stats
        except _OutOfBudget as exc:
            return exc.reason, self.stats
        return None, self.stats


# -- worker plumbing ---------------------------------------------------------

_WORKER: Optional[_Search] = None


def _init_worker(payload):
    global _WORKER
    _WORKER = _Search(**payload)


def _run_prefix(args):
    prefix, cap, deadline = args
    return _WORKER.search_from(prefix, cap, deadline)


@dataclass
class Decision:
    k: int
    witness: Optional[Partition]
    undecided: Optional[str]
    stats: SearchStats = field(default_factory=SearchStats)


def _payload(g: Graph, dist: DistanceMatrix, k: int, opts: SolverOptions):
    blocks = None
    rim_perms = []
    if opts.symmetry == "family":
        blocks = corona_blocks(g)
        if blocks is not None:
            rim_perms = _rim_permutations(g)
    twins = separation_constraints(dist) if opts.prune_twins else set()
    return dict(D=dist.as_lists(), k=k, twin_pairs=sorted(twins), blocks=blocks,
                rim_perms=rim_perms, prune_twins=opts.prune_twins,
                prune_settled=opts.prune_settled)


def decide(g: Graph, k: int, opts: SolverOptions = None, dist: DistanceMatrix = None,
           budget_nodes: Optional[int] = None) -> Decision:
    """Three-valued answer to "does a resolving k-partition exist?"."""
    opts = opts or SolverOptions()
    dist = dist or all_pairs_distances(g)
    if not dist.connected:
        raise GraphError("partition dimension search needs a connected graph")
    n = g.order
    if not 1 <= k <= n:
        raise PdlabError(f"k={k} is out of range 1..{n}")
    if budget_nodes is None:
        budget_nodes = opts.budget_nodes
    t0 = time.time()
    deadline = None if opts.budget_seconds is None else t0 + opts.budget_seconds
    stats = SearchStats()
    if budget_nodes == 0 or (opts.budget_seconds == 0):
        return Decision(k, None, "budget is zero", stats)

    payload = _payload(g, dist, k, opts)
    search = _Search(**payload)
    prefixes = []
    try:
        for depth in range(1, n + 1):
            prefixes = search.collect_prefixes(depth, budget_nodes, deadline)
            if not prefixes or len(prefixes) >= _SPLIT_TARGET or depth == n:
                break
    except _OutOfBudget as exc:
        stats.add(search.stats)
        stats.seconds = time.time() - t0
        return Decision(k, None, exc.reason, stats)
    stats.add(search.stats)
    stats.prefixes = len(prefixes)
    remaining = None if budget_nodes is None else budget_nodes - stats.nodes

    def finish(witness, undecided):
        stats.seconds = time.time() - t0
        return Decision(k, Partition(witness) if witness is not None else None, undecided, stats)

    tasks = [(p, remaining, deadline) for p in prefixes]
    if opts.threads == 1 or len(tasks) <= 1:
        results = (search.search_from(*t) for t in tasks)
        return _merge(results, stats, budget_nodes, finish)
    with ProcessPoolExecutor(max_workers=opts.threads, initializer=_init_worker,
                             initargs=(payload,)) as pool:
        results = pool.map(_run_prefix, tasks)
        try:
            return _merge(results, stats, budget_nodes, finish)
        finally:
            pool.shutdown(wait=True, cancel_futures=True)


def _merge(results, stats, budget_nodes, finish):
    for outcome, sub in results:
        stats.add(sub)
        if isinstance(outcome, str):
            return finish(None, outcome)
        if outcome is not None:
            return finish(outcome, None)
        if budget_nodes is not None and stats.nodes > budget_nodes:
            return finish(None, "node budget exhausted")
    return finish(None, None)


def exists_resolving_partition(g: Graph, k: int, opts: SolverOptions = None,
                               dist: DistanceMatrix = None) -> Optional[Partition]:
    """Canonical resolving k-partition, or None; raises SearchUndecided when the
    budget runs out first."""
    res = decide(g, k, opts, dist)
    if res.undecided:
        raise SearchUndecided(k, res.stats, res.undecided)
    return res.witness


@dataclass
class PdResult:
    status: str  # "solved" or "undecided"
    pd: Optional[int]
    witness: Optional[Partition]
    lower_bounds: dict
    upper_bound: int
    best_lower: int
    excluded: list
    undecided_at: Optional[int]
    stats: SearchStats

    @property
    def solved(self):
        return self.status == "solved"

    def to_dict(self, g: Graph, timing=False):
        return {
            "status": self.status,
            "pd": self.pd,
            "witness": None if self.witness is None else {"classes": self.witness.label_classes(g)},
            "lower_bounds": dict(self.lower_bounds),
            "best_lower_bound": self.best_lower,
            "upper_bound": self.upper_bound,
            "excluded_k": list(self.excluded),
            "undecided_at": self.undecided_at,
            "stats": self.stats.to_dict(timing),
        }


def partition_dimension(g: Graph, opts: SolverOptions = None, dist: DistanceMatrix = None) -> PdResult:
    """Try k upward from the combined lower bound; the first feasible k is pd.

    Budgets apply to the whole run.  Running out yields status "undecided"
    with the best proven lower bound, never a guessed value.
    """
    opts = opts or SolverOptions()
    dist = dist or all_pairs_distances(g)
    if not dist.connected:
        raise GraphError("partition dimension is only defined for connected graphs")
    t0 = time.time()
    named = lower_bounds(g, dist)
    lb = max(named.values())
    _, ub = chartrand_bounds(g, dist)
    stats = SearchStats()
    excluded = []
    deadline = None if opts.budget_seconds is None else t0 + opts.budget_seconds
    for k in range(lb, ub + 1):
        remaining = None if opts.budget_nodes is None else opts.budget_nodes - stats.nodes
        sub_opts = opts
        if deadline is not None:
            from dataclasses import replace
            sub_opts = replace(opts, budget_seconds=max(0.0, deadline - time.time()))
        res = decide(g, k, sub_opts, dist, budget_nodes=remaining)
        stats.add(res.stats)
        if res.undecided:
            stats.seconds = time.time() - t0
            return PdResult("undecided", None, None, named, ub, k, excluded, k, stats)
        if res.witness is not None:
            verdict = is_resolving(dist, res.witness)
            if not verdict.resolving or res.witness.k != k:
                raise RuntimeError(f"solver produced an invalid witness at k={k}")
            stats.seconds = time.time() - t0
            return PdResult("solved", k, res.witness, named, ub, k, excluded, None, stats)
        excluded.append(k)
    raise RuntimeError(f"no resolving partition found up to the upper bound {ub}")
