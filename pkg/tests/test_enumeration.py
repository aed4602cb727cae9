import csv
import random

import networkx as nx
import pytest
from hypothesis import given

from hyperspec.enumeration import (
    EDGE_CAP, canonical_form, census_rows, enumerate_connected, from_canonical, verify_theorem, write_census,
)
from hyperspec.hypergraph import HypergraphError, is_connected, is_simple, relabel, validate

from conftest import connected


def incidence_graph(h):
    g = nx.Graph()
    g.add_nodes_from((("v", v) for v in range(h.n)), kind="v")
    g.add_nodes_from((("e", i) for i in range(h.m)), kind="e")
    g.add_edges_from((("v", v), ("e", i)) for i, e in enumerate(h.edges) for v in e)
    return g


def isomorphism_classes(hs):
    reps = []
    match = nx.algorithms.isomorphism.categorical_node_match("kind", None)
    for h in hs:
        g = incidence_graph(h)
        if not any(nx.is_isomorphic(g, x, node_match=match) for x in reps):
            reps.append(g)
    return len(reps)


def test_graph_counts_match_atlas():
    # connected graphs without isolated vertices, by edge count
    atlas = [g for g in nx.graph_atlas_g()[1:] if nx.is_connected(g) and g.number_of_edges() >= 1]
    expected = {m: sum(1 for g in atlas if g.number_of_edges() == m) for m in range(1, 7)}
    got = {m: 0 for m in range(1, 7)}
    for h in enumerate_connected(2, 6):
        got[h.m] += 1
    assert got == expected == {1: 1, 2: 1, 3: 3, 4: 5, 5: 12, 6: 30}


@pytest.mark.parametrize("r, m", [(3, 3), (3, 4), (4, 3)])
def test_no_duplicates_and_nothing_missing(r, m):
    hs = list(enumerate_connected(r, m))
    assert all(is_connected(h) for h in hs)
    assert isomorphism_classes(hs) == len(hs)
    # random connected samples all land on an enumerated form
    forms = {canonical_form(h) for h in hs}
    rng = random.Random(r * 10 + m)
    from hyperspec.acceptance import random_connected
    for _ in range(200):
        assert canonical_form(random_connected(r, rng.randint(1, m), rng)) in forms


def test_small_simple_counts():
    assert sum(1 for _ in enumerate_connected(3, 2, simple_only=True)) == 2
    assert sum(1 for _ in enumerate_connected(3, 3, simple_only=True)) == 5
    assert all(is_simple(h) for h in enumerate_connected(4, 3, simple_only=True))
    assert sum(1 for _ in enumerate_connected(3, 2)) == 3


def test_output_is_sorted_by_edges():
    ms = [h.m for h in enumerate_connected(3, 4)]
    assert ms == sorted(ms)


def test_limits():
    with pytest.raises(ValueError):
        list(enumerate_connected(3, 7))
    with pytest.raises(ValueError):
        list(enumerate_connected(9, 2))
    h = validate([[i, i + 1] for i in range(EDGE_CAP + 1)], 2)
    with pytest.raises(HypergraphError):
        canonical_form(h)


@given(connected())
def test_canonical_form_is_invariant(h):
    perm = list(range(h.n))
    random.Random(h.n).shuffle(perm)
    g = relabel(h, perm)
    assert canonical_form(g) == canonical_form(h)
    assert canonical_form(from_canonical(canonical_form(h))) == canonical_form(h)


@pytest.mark.parametrize("r, m", [(3, 4), (4, 4), (5, 3), (6, 3)])
def test_theorem_holds_on_small_instances(r, m):
    rep = verify_theorem(r, m)
    assert rep.violations == [] and rep.inconclusive == []
    assert rep.checked == sum(1 for _ in enumerate_connected(r, m))


def test_five_edge_census_exposes_adjacency_clause():
    rep = verify_theorem(3, 5)
    assert rep.checked == 424
    assert len(rep.violations) == 1
    assert rep.violations[0]["reason"].endswith("edge adjacent to 4 > 3 edges")


def test_census_csv(tmp_path):
    rows = census_rows(3, 3)
    out = tmp_path / "census.csv"
    write_census(out, rows)
    with open(out) as fh:
        table = list(csv.DictReader(fh))
    assert len(table) == 12
    assert set(table[0]) == {"canonical_form", "n", "edges", "rho", "verdict", "category"}
    assert {row["verdict"] for row in table} <= {"admissible", "inadmissible", "boundary"}
