import json

import pytest
from hypothesis import given

from hyperspec.enumeration import canonical_form
from hyperspec.families import build
from hyperspec.hypergraph import (
    Hypergraph, HypergraphError, IrreducibleError, PartialHypergraph, branching_edges, branching_vertices,
    cyclomatic_number, degrees, extend, identify_vertices, is_connected, is_hypertree, is_irreducible,
    is_simple, reduce, reduction_chain, relabel, validate,
)

from conftest import connected, hypertrees


def test_validate_compacts_and_sorts():
    h = validate([[10, 4, 7], [7, 20, 30]], 3)
    assert h.n == 5
    assert h.edges == ((0, 1, 2), (1, 3, 4))


@pytest.mark.parametrize("edges, r", [
    ([], 3),
    ([[0, 1]], 3),
    ([[0, 0, 1]], 3),
    ([[0, 1, 2], [2, 1, 0]], 3),
])
def test_validate_rejects(edges, r):
    with pytest.raises(HypergraphError):
        validate(edges, r)


def test_isolated_vertex_rejected():
    with pytest.raises(HypergraphError, match="isolated"):
        Hypergraph(3, 4, ((0, 1, 2),))


def test_json_round_trip_and_mismatch():
    h = build("C2", 3)
    assert Hypergraph.from_json(json.loads(h.dumps())) == h
    with pytest.raises(HypergraphError):
        Hypergraph.from_json({"r": 3, "n": 7, "edges": [[0, 1, 2]]})
    with pytest.raises(HypergraphError):
        Hypergraph.from_json({"edges": [[0, 1, 2]]})


def test_partial_needs_one_or_two_designated():
    h = build("Path", 3, 2)
    PartialHypergraph(h, (0,))
    with pytest.raises(HypergraphError):
        PartialHypergraph(h, ())
    with pytest.raises(HypergraphError):
        PartialHypergraph(h, (0, 0))


def test_basic_predicates():
    c2 = build("C2", 3)
    assert not is_simple(c2) and cyclomatic_number(c2) == 1
    cyc = build("Cycle", 3, 5)
    assert is_simple(cyc) and not is_hypertree(cyc) and cyclomatic_number(cyc) == 1
    star = build("Star", 3, 4)
    assert is_hypertree(star) and branching_vertices(star, 4) == {0}
    assert not is_connected(validate([[0, 1, 2], [3, 4, 5]], 3))


def test_irreducibility():
    assert not is_irreducible(Hypergraph(3, 3, ((0, 1, 2),)))
    es = build("EdgeStar", 4)
    assert is_irreducible(es)
    assert not is_irreducible(build("Path", 3, 4))


def test_extend_and_reduce():
    h = build("Cycle", 2, 5)
    e = extend(h)
    assert (e.r, e.n, e.m) == (3, 10, 5)
    assert reduce(e) == h
    with pytest.raises(IrreducibleError):
        reduce(build("EdgeStar", 3))
    with pytest.raises(HypergraphError):
        reduce(h)


def test_reduction_chain_stops_before_merging_edges():
    chain = reduction_chain(extend(build("C2", 3)))
    assert [g.r for g in chain] == [4, 3]


def test_identify_vertices():
    h = validate([[0, 1, 2], [3, 4, 5]], 3)
    g = identify_vertices(h, 2, 3)
    assert g.n == 5 and is_connected(g)
    with pytest.raises(HypergraphError):
        identify_vertices(h, 0, 1)


def test_branching_edges_skip_edges_with_degree_three_vertex():
    es = build("EdgeStar", 3)
    assert branching_edges(es, 3) == {0}
    assert branching_edges(build("Star", 3, 3), 2) == set()


@given(connected())
def test_extend_then_reduce_is_identity_up_to_isomorphism(h):
    assert canonical_form(reduce(extend(h))) == canonical_form(h)


@given(connected())
def test_extend_preserves_structure_counts(h):
    e = extend(h)
    assert e.m == h.m and cyclomatic_number(e) == cyclomatic_number(h) and is_simple(e) == is_simple(h)


@given(hypertrees())
def test_hypertree_edge_count(h):
    assert h.n == 1 + h.m * (h.r - 1)
    assert sum(degrees(h)) == h.m * h.r


@given(connected())
def test_relabel_is_isomorphism(h):
    perm = list(reversed(range(h.n)))
    assert canonical_form(relabel(h, perm)) == canonical_form(h)
