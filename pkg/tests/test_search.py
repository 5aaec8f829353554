import pytest
from hypothesis import given, settings, strategies as st

from pdlab.bounds import chartrand_bounds
from pdlab.corpus import random_graphs
from pdlab.errors import GraphError, PdlabError
from pdlab.graph import all_pairs_distances, complete, corona_kw, parse_edge_list, path
from pdlab.naive import naive_partition_dimension, naive_resolving_partition
from pdlab.partition import is_resolving
from pdlab.search import (SearchUndecided, SolverOptions, decide, exists_resolving_partition,
                          partition_dimension)
from pdlab.structure import separation_constraints

from conftest import graphs

ALL_PRUNES = [dict(prune_twins=t, prune_settled=s) for t in (True, False) for s in (True, False)]


def test_examples(k3w4):
    assert exists_resolving_partition(complete(3), 2) is None
    w = exists_resolving_partition(path(3), 2)
    assert w is not None and w.k == 2 and w.is_canonical()
    assert exists_resolving_partition(k3w4, 4) is not None
    assert exists_resolving_partition(k3w4, 3) is None
    assert partition_dimension(k3w4).pd == 4


def test_range_and_connectivity():
    with pytest.raises(PdlabError):
        decide(path(3), 4)
    with pytest.raises(PdlabError):
        decide(path(3), 0)
    with pytest.raises(GraphError):
        partition_dimension(parse_edge_list("a b\nc d\n"))


@settings(max_examples=40)
@given(graphs(min_order=1, max_order=7, connected=True), st.sampled_from(ALL_PRUNES))
def test_prunes_keep_lex_first_witness(g, prunes):
    # prunes only cut branches with no resolving completion, so the lexicographically
    # first witness is unchanged
    opts = SolverOptions(**prunes)
    for k in range(1, g.order + 1):
        got = decide(g, k, opts).witness
        assert got == naive_resolving_partition(g, k)


@pytest.mark.parametrize("threads", [2, 3])
def test_thread_count_does_not_change_results(threads):
    for g, k in [(corona_kw(3, 4), 3), (corona_kw(3, 4), 4), (corona_kw(2, 5), 4)]:
        for symmetry in ("off", "family"):
            a = decide(g, k, SolverOptions(symmetry=symmetry))
            b = decide(g, k, SolverOptions(symmetry=symmetry, threads=threads))
            assert a.witness == b.witness
            assert a.stats.to_dict() == b.stats.to_dict()


def test_symmetry_agrees_with_plain_search():
    for n, m in [(2, 4), (3, 4), (2, 5), (3, 3)]:
        g = corona_kw(n, m)
        assert (partition_dimension(g, SolverOptions(symmetry="family")).pd
                == partition_dimension(g).pd)


def test_budget_zero_is_undecided():
    res = decide(corona_kw(3, 4), 3, SolverOptions(budget_nodes=0))
    assert res.undecided and res.witness is None
    res = partition_dimension(corona_kw(3, 4), SolverOptions(budget_nodes=0))
    assert res.status == "undecided" and res.pd is None


def test_small_budget_never_guesses():
    g = corona_kw(3, 4)
    with pytest.raises(SearchUndecided) as exc:
        exists_resolving_partition(g, 3, SolverOptions(budget_nodes=20, symmetry="off"))
    assert exc.value.k == 3
    res = partition_dimension(g, SolverOptions(budget_nodes=20))
    assert res.status == "undecided"
    assert res.best_lower <= 4


def test_budget_reached_in_parallel_matches_serial():
    g = corona_kw(3, 4)
    a = decide(g, 3, SolverOptions(budget_nodes=150))
    b = decide(g, 3, SolverOptions(budget_nodes=150, threads=3))
    assert (a.undecided, a.witness, a.stats.to_dict()) == (b.undecided, b.witness, b.stats.to_dict())


def test_result_invariants():
    for g in random_graphs(30, 9, seed=5) + [corona_kw(3, 4), corona_kw(2, 4)]:
        d = all_pairs_distances(g)
        res = partition_dimension(g, dist=d)
        assert res.solved
        assert max(res.lower_bounds.values()) <= res.pd <= res.upper_bound
        assert res.upper_bound == chartrand_bounds(g, d)[1]
        w = res.witness
        assert w.k == res.pd and is_resolving(d, w)
        for u, v in separation_constraints(d):
            assert w.assign[u] != w.assign[v]
        if res.pd < g.order:
            finer = w.refine()
            assert is_resolving(d, finer) and finer.k == res.pd + 1


def test_matches_naive_on_corpus():
    for g in random_graphs(40, 9, seed=9):
        assert partition_dimension(g).pd == naive_partition_dimension(g)


def test_options(monkeypatch):
    monkeypatch.setenv("PDLAB_THREADS", "4")
    assert SolverOptions.from_env().threads == 4
    assert SolverOptions.from_env(threads=2).threads == 2
    with pytest.raises(ValueError):
        SolverOptions(symmetry="auto")
    with pytest.raises(ValueError):
        SolverOptions(threads=0)
    with pytest.raises(ValueError):
        SolverOptions(budget_nodes=-1)


def test_stats_exclude_time_by_default():
    res = partition_dimension(path(5))
    assert "seconds" not in res.stats.to_dict()
    assert "seconds" in res.stats.to_dict(timing=True)
    assert res.to_dict(path(5))["pd"] == 2
