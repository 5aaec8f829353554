import pytest

from pdlab.constructions import (FAMILIES, INTERPRETATIONS, PRINTED, REPAIR, ConstructionSpec,
                                 build_construction)
from pdlab.errors import ConstructionError
from pdlab.graph import all_pairs_distances

from conftest import brute_resolving

GENERAL = ("m=n", "m=n+1", "m=n+2")


def _check_partition(c):
    g = c.graph
    assert len(c.partition.assign) == g.order
    assert c.partition.k == c.spec.classes
    members = sorted(v for cls in c.partition.label_classes(g) for v in cls)
    assert members == sorted(g.labels)


@pytest.mark.parametrize("family", GENERAL)
@pytest.mark.parametrize("n", range(4, 9))
def test_general_families_resolve(family, n):
    c = build_construction(ConstructionSpec(family, n))
    _check_partition(c)
    assert c.resolving
    assert c.spec.m == n + GENERAL.index(family)
    # independent route: networkx distances, dictionary representations
    assert brute_resolving(c.graph, c.partition.label_classes(c.graph))


@pytest.mark.parametrize("family", GENERAL)
def test_n3_general_families_do_not_resolve(family):
    c = build_construction(ConstructionSpec(family, 3))
    _check_partition(c)
    assert not c.resolving
    assert not brute_resolving(c.graph, c.partition.label_classes(c.graph))
    u, v = c.verdict.violation
    assert c.verdict.representation is not None
    assert c.graph.labels[u] != c.graph.labels[v]


def test_below_stated_range_note():
    assert ConstructionSpec("m=n+1", 3).below_stated_range
    assert not ConstructionSpec("m=n", 3).below_stated_range
    c = build_construction(ConstructionSpec("m=n+2", 3))
    assert any("below the range" in note for note in c.notes)


def test_specials():
    c4 = build_construction(ConstructionSpec("special-K3W4"))
    assert c4.resolving and c4.partition.k == 4 and c4.spec.m == 4
    assert brute_resolving(c4.graph, c4.partition.label_classes(c4.graph))
    c5 = build_construction(ConstructionSpec("special-K3W5"))
    assert c5.spec.interpretation == "repair-resolving-v1"
    assert c5.resolving and c5.partition.k == 4
    assert brute_resolving(c5.graph, c5.partition.label_classes(c5.graph))


def test_k3w5_minimal_repair_fails_at_the_known_pair():
    c = build_construction(ConstructionSpec("special-K3W5", interpretation="repair-minimal-v1"))
    assert not c.resolving
    u, v = c.verdict.violation
    assert {c.graph.labels[u], c.graph.labels[v]} == {"v1.0", "v1.2"}
    assert not brute_resolving(c.graph, c.partition.label_classes(c.graph))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_literal_m_eq_n_overlaps(n):
    with pytest.raises(ConstructionError, match="two classes"):
        build_construction(ConstructionSpec("m=n", n, "literal-v1"))


def test_spec_validation():
    with pytest.raises(ConstructionError):
        ConstructionSpec("m=n+3", 4)
    with pytest.raises(ConstructionError):
        ConstructionSpec("m=n", 2)
    with pytest.raises(ConstructionError):
        ConstructionSpec("special-K3W4", 4)
    with pytest.raises(ConstructionError, match="no interpretation"):
        ConstructionSpec("m=n", 4, "nope")


def test_rule_bookkeeping():
    for fam in FAMILIES:
        for interp in INTERPRETATIONS[fam]:
            assert interp.rules
            assert {r.kind for r in interp.rules} <= {PRINTED, REPAIR}
    c = build_construction(ConstructionSpec("m=n", 5))
    ids = [r["id"] for r in c.to_dict()["rules"]]
    assert "stair-low" in ids and "stair-high" in ids
    d = build_construction(ConstructionSpec("m=n+2", 5)).to_dict()
    assert {r["id"] for r in d["rules"]} >= {"tail-follows-n", "extra-to-base"}
    assert d["resolving"] and d["violation"] is None and d["k"] == 5


def test_shared_distance_matrix():
    spec = ConstructionSpec("m=n+1", 5)
    a = build_construction(spec)
    b = build_construction(spec, all_pairs_distances(a.graph))
    assert a.partition == b.partition and a.resolving == b.resolving
