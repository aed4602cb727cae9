import math

import pytest
from hypothesis import given, settings

from hyperspec.beta import BETA
from hyperspec.classify import (
    ADMISSIBLE_DAGGERS, admissibility, dagger_listed, dagger_table, graph_type, structure_report,
)
from hyperspec.families import build
from hyperspec.hypergraph import HypergraphError, extend, relabel, validate
from hyperspec.spectral import rho_hypertree, rho_power, thresholds

from conftest import connected, hypertrees


@pytest.mark.parametrize("name, params, gtype", [
    ("Path", (2, 4), "A_5"), ("Cycle", (2, 6), "~A_5"), ("Smith", ("D", 6), "D_6"), ("Smith", ("E7",), "E_7"),
    ("SmithTilde", ("E6",), "~E_6"), ("SmithTilde", ("D", 5), "~D_5"), ("GraphE22c", (4,), "E(2,2,4)"),
    ("Spider", (3, 3, 3), "spider(3,3,3)"),
])
def test_graph_types(name, params, gtype):
    assert graph_type(build(name, *params)) == gtype


@pytest.mark.parametrize("name, params, category", [
    ("F3", (2, 3, 4), "open-3-quipu"),
    ("OpenQuipu3", ([1, 2], [3]), "open-3-quipu"),
    ("ClosedQuipu3", (5, [(0, 2), (2, 1)]), "closed-3-quipu"),
    ("Dagger4", (1, 2, 2, 3), "dagger"),
    ("OpenQuipu4", ([1, 1], [2], None, ("edge", 1, 1, 3)), "open-4-quipu"),
    ("EdgeStar", (5,), "edge-star"),
    ("Theta", (2, 3, 4), "violation"),
    ("EdgeStar", (6,), "violation"),
    ("Star", (3, 4), "reducible"),
    ("C2", (4,), "reducible"),
])
def test_categories(name, params, category):
    assert structure_report(build(name, *params)).category == category


def test_reducible_report_carries_core_and_notes():
    rep = structure_report(build("S5_3"))
    assert rep.category == "reducible"
    assert any("degree 5" in n for n in rep.notes)
    assert rep.core.category == "graph"
    rep = structure_report(extend(build("F3", 1, 2, 3)))
    assert rep.witness["chain_length"] == 1 and rep.core.category == "open-3-quipu"


def test_dagger_witness_and_unlisted_dagger():
    h = build("Dagger4", 1, 2, 2, 3)
    rep = structure_report(relabel(h, list(reversed(range(h.n)))))
    assert sorted(rep.witness["dagger"]) == [1, 2, 2, 3]
    bad = structure_report(build("Dagger4", 1, 1, 4, 6))
    assert bad.category == "violation"


def test_disconnected_rejected():
    with pytest.raises(HypergraphError):
        structure_report(validate([[0, 1, 2], [3, 4, 5]], 3))


def test_dagger_listing():
    assert all(dagger_listed(t) for t in ADMISSIBLE_DAGGERS)
    assert dagger_listed((3, 1, 1, 7)) and not dagger_listed((1, 1, 4, 6))


def test_dagger_table_matches_list_and_spectrum():
    upper = thresholds(4)[1]
    rows = dagger_table(6)
    assert len(rows) == math.comb(9, 4) + 3
    for row in rows:
        assert (row.verdict == "admissible") == row.listed
        if not math.isinf(row.lengths[-1]):
            rho = rho_hypertree(build("Dagger4", *row.lengths)).rho
            assert (rho <= upper) == (row.g >= BETA)


@pytest.mark.parametrize("name, params, verdict", [
    ("C2", (3,), "admissible"), ("EdgeStar", (5,), "admissible"), ("Dagger4", (1, 1, 4, 6), "inadmissible"),
    ("Theta", (1, 1, 1), "inadmissible"), ("Path", (3, 5), "admissible"),
])
def test_admissibility(name, params, verdict):
    a = admissibility(build(name, *params))
    assert a.verdict == verdict and not a.theorem_violation


# central 3-edge through a degree-3 vertex, with one pendant edge on each of its other two vertices
ADJACENCY_COUNTEREXAMPLE = [[0, 1, 2], [0, 3, 4], [0, 5, 6], [4, 7, 8], [3, 9, 10]]


def test_edge_adjacency_clause_fails_on_five_edge_hypertree():
    h = validate(ADJACENCY_COUNTEREXAMPLE, 3)
    # normal labeling: pendant corners 1, central corners 1 - a, 1 - a and a/(1-a)^2, so 2a + a/(1-a)^2 = 1
    lo, hi = 0.2, 0.3
    for _ in range(100):
        mid = (lo + hi) / 2
        lo, hi = (mid, hi) if 2 * mid + mid / (1 - mid) ** 2 < 1 else (lo, mid)
    rho = 2 * lo ** (-1 / 3)
    assert rho_hypertree(h).rho == pytest.approx(rho, abs=1e-9)
    assert rho_power(h, tol=1e-11).rho == pytest.approx(rho, abs=1e-9)
    assert rho < thresholds(3)[0] < thresholds(3)[1]
    a = admissibility(h)
    assert a.verdict == "admissible" and a.theorem_violation
    assert a.report.violations == ["edge adjacent to 4 > 3 edges"]
    assert a.report.witness["quipu_shape"] == "open-3-quipu"
    # its extension carries the same defect through the reduction
    b = admissibility(extend(h))
    assert b.theorem_violation and b.report.core.witness["quipu_shape"] == "open-3-quipu"


def _only_adjacency_clause_fails(report):
    while report.category == "reducible" and report.core is not None:
        report = report.core
    return (all(v.startswith("edge adjacent to") for v in report.violations)
            and report.witness.get("quipu_shape") in ("open-3-quipu", "closed-3-quipu", "open-4-quipu", "dagger"))


@settings(max_examples=60, deadline=None)
@given(connected(uniformities=(3, 4, 5), max_edges=9))
def test_admissible_hypergraphs_fail_at_most_the_adjacency_clause(h):
    a = admissibility(h)
    assert not a.theorem_violation or _only_adjacency_clause_fails(a.report)


@settings(max_examples=60, deadline=None)
@given(hypertrees(uniformities=(3, 4), max_edges=14))
def test_admissible_hypertrees_fail_at_most_the_adjacency_clause(h):
    a = admissibility(h)
    assert not a.theorem_violation or _only_adjacency_clause_fails(a.report)


@given(connected(uniformities=(3, 4), max_edges=6))
def test_report_is_invariant_under_extension(h):
    a, b = structure_report(h), structure_report(extend(h))
    assert b.category == "reducible"
    if a.category != "reducible":
        assert b.core is None or b.core.category == a.category
