import json

import pytest
from hypothesis import given, strategies as st

from pdlab.errors import PartitionError
from pdlab.graph import all_pairs_distances, complete, corona_kw, path, wheel
from pdlab.partition import (Partition, canonical_rgs, dump_representations, is_resolving,
                             representation, representation_table)

from conftest import brute_resolving, graphs

K3W4_PI = [
    ["u2", "u3", "v2.0", "v3.0", "v2.1", "v2.2", "v3.1", "v3.2"],
    ["u1", "v1.0", "v1.1", "v1.2", "v3.3"],
    ["v1.3", "v2.3"],
    ["v1.4", "v2.4", "v3.4"],
]


def test_partition_validation():
    assert Partition((0, 1, 1)).k == 2
    with pytest.raises(PartitionError):
        Partition((0, 2))
    with pytest.raises(PartitionError):
        Partition(())
    with pytest.raises(PartitionError):
        Partition((-1, 0))


def test_canonical():
    assert canonical_rgs((2, 2, 0, 1, 0)) == (0, 0, 1, 2, 1)
    p = Partition((1, 0, 1))
    assert not p.is_canonical()
    assert p.canonical() == Partition((0, 1, 0))


def test_refine():
    assert Partition((0, 0, 1)).refine() == Partition((0, 2, 1))
    assert Partition((0, 1, 2)).refine() is None


def test_listed_partition_k3w4(k3w4):
    d = all_pairs_distances(k3w4)
    p = Partition.from_classes(k3w4, K3W4_PI)
    assert representation(d, p, k3w4.index("u1")) == (1, 0, 1, 1)
    assert representation(d, p, k3w4.index("v3.3")) == (1, 0, 3, 1)
    assert is_resolving(d, p)
    assert brute_resolving(k3w4, K3W4_PI)


def test_trivial_verdicts():
    g = path(4)
    d = all_pairs_distances(g)
    assert is_resolving(d, Partition(tuple(range(4))))
    v = is_resolving(d, Partition((0, 0, 0, 0)))
    assert not v
    assert v.violation == (0, 1)
    assert v.representation == (0,)


def test_violation_is_label_least():
    g = complete(4)
    d = all_pairs_distances(g)
    v = is_resolving(d, Partition((0, 1, 1, 1)))
    assert [g.labels[x] for x in v.violation] == ["v2", "v3"]


def test_label_order_is_natural():
    g = corona_kw(3, 12)  # labels v1.2 and v1.10 both exist
    d = all_pairs_distances(g)
    v = is_resolving(d, Partition((0,) * g.order))
    assert [g.labels[x] for x in v.violation] == ["u1", "u2"]


def test_from_classes_errors(k3w4):
    with pytest.raises(PartitionError, match="unknown vertex"):
        Partition.from_classes(k3w4, [["zz"]])
    with pytest.raises(PartitionError, match="appears in class 1 and class 2"):
        Partition.from_classes(k3w4, [["u1"], ["u1"]])
    with pytest.raises(PartitionError, match="not covered"):
        Partition.from_classes(k3w4, [["u1"]])
    with pytest.raises(PartitionError, match="empty"):
        Partition.from_classes(k3w4, [[]])


def test_json_roundtrip(k3w4):
    p = Partition.from_classes(k3w4, K3W4_PI)
    text = p.to_json(k3w4)
    # classes keep their order, members come out in vertex order
    got = json.loads(text)["classes"]
    assert [sorted(c) for c in got] == [sorted(c) for c in K3W4_PI]
    assert Partition.from_json(k3w4, text) == p


def test_json_errors(k3w4):
    with pytest.raises(PartitionError, match="part.json:1"):
        Partition.from_json(k3w4, "{", source="part.json")
    with pytest.raises(PartitionError):
        Partition.from_json(k3w4, '{"cls": []}')


def test_cover_mismatch():
    d = all_pairs_distances(path(3))
    with pytest.raises(PartitionError):
        representation(d, Partition((0, 1)), 0)


def test_dump():
    g = path(3)
    text = dump_representations(g, all_pairs_distances(g), Partition((0, 1, 1)))
    assert text.splitlines() == ["v1: (0,1)", "v2: (1,0)", "v3: (2,0)"]


@st.composite
def graph_and_partition(draw):
    g = draw(graphs(min_order=2, max_order=8, connected=True))
    k = draw(st.integers(1, g.order))
    assign = draw(st.lists(st.integers(0, k - 1), min_size=g.order, max_size=g.order))
    return g, Partition(canonical_rgs(assign))


@given(graph_and_partition())
def test_checker_matches_brute(gp):
    g, p = gp
    d = all_pairs_distances(g)
    table = representation_table(d, p)
    for v in range(g.order):
        assert table[v][p.assign[v]] == 0
    assert bool(is_resolving(d, p)) == brute_resolving(g, p.label_classes(g))


@given(graph_and_partition())
def test_refinement_keeps_resolving(gp):
    g, p = gp
    d = all_pairs_distances(g)
    finer = p.refine()
    if is_resolving(d, p) and finer is not None:
        assert is_resolving(d, finer)
        assert finer.k == p.k + 1
