import pytest

from pdlab.errors import GraphError
from pdlab.graph import complete, corona_kw, parse_edge_list, path
from pdlab.bounds import chartrand_bounds, combined_lower_bound, lower_bounds


def test_chartrand_examples(k3w4):
    assert chartrand_bounds(k3w4) == (3, 16)
    assert chartrand_bounds(path(10)) == (1, 2)
    assert chartrand_bounds(complete(4)) == (2, 4)
    assert chartrand_bounds(complete(2)) == (1, 2)
    assert chartrand_bounds(complete(1)) == (1, 1)


def test_chartrand_lower_is_least():
    for g in [k for k in (corona_kw(3, 4), corona_kw(4, 6), path(7), complete(9))]:
        from pdlab.graph import diameter
        lo, _ = chartrand_bounds(g)
        d = diameter(g)
        assert (d + 1) ** lo >= g.order
        assert lo == 1 or (d + 1) ** (lo - 1) < g.order


def test_combined():
    for n in range(2, 7):
        assert combined_lower_bound(complete(n)) == n
    assert combined_lower_bound(corona_kw(3, 3)) == 4
    assert combined_lower_bound(path(5)) == 2
    assert set(lower_bounds(path(5))) == {"chartrand", "twin_clique", "trivial"}


def test_disconnected_rejected():
    with pytest.raises(GraphError):
        chartrand_bounds(parse_edge_list("a b\nc d\n"))
