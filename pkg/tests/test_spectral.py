import math

import numpy as np
import pytest
from hypothesis import given, settings

from hyperspec.families import build
from hyperspec.hypergraph import HypergraphError, extend, validate
from hyperspec.spectral import (
    alpha_of_rho, compare_to_thresholds, rho_hypertree, rho_of_alpha, rho_power, spectral_radius, sweep, thresholds,
)

from conftest import connected, hypertrees

RHO3 = 2 * 4 ** (1 / 3)


def adjacency_radius(h):
    a = np.zeros((h.n, h.n))
    for u, v in h.edges:
        a[u, v] = a[v, u] = 1
    return float(np.linalg.eigvalsh(a)[-1])


def test_thresholds():
    low, high = thresholds(2)
    assert low == pytest.approx(2) and high == pytest.approx(math.sqrt(2 + math.sqrt(5)))
    low, high = thresholds(4)
    assert high == pytest.approx(6 * (2 + math.sqrt(5)) ** 0.25)
    assert rho_of_alpha(3, alpha_of_rho(3, 3.3)) == pytest.approx(3.3)


@pytest.mark.parametrize("name, params", [("C2", (3,)), ("Star", (3, 4))] + [("Cycle", (3, n)) for n in range(3, 9)])
def test_known_exact_radius(name, params):
    res = rho_power(build(name, *params), tol=1e-11)
    assert res.converged and res.lower <= RHO3 + 1e-12 and res.upper >= RHO3 - 1e-12
    assert res.rho == pytest.approx(RHO3, abs=1e-9)


def test_c2_radius_in_general_uniformity():
    for r in (3, 4, 5):
        assert rho_power(build("C2", r), tol=1e-11).rho == pytest.approx(thresholds(r)[0], abs=1e-8)


def test_single_edge():
    assert rho_hypertree(validate([[0, 1, 2, 3]], 4)).rho == pytest.approx(6.0, abs=1e-9)


@pytest.mark.parametrize("h", [build("Smith", "E8"), build("Spider", 1, 2, 3), build("Cycle", 2, 7),
                               build("GraphE22c", 5), build("Cnplus", 2, 4)])
def test_graphs_match_dense_eigensolver(h):
    assert spectral_radius(h, tol=1e-12).rho == pytest.approx(adjacency_radius(h), abs=1e-9)


def test_disconnected_and_cyclic_errors():
    with pytest.raises(HypergraphError):
        rho_power(validate([[0, 1, 2], [3, 4, 5]], 3))
    with pytest.raises(HypergraphError):
        rho_hypertree(build("Cycle", 3, 4))
    with pytest.raises(ValueError):
        spectral_radius(build("C2", 3), method="guess")


def test_non_convergence_is_reported():
    res = rho_power(build("Path", 3, 30), tol=1e-15, max_iter=5)
    assert not res.converged and res.lower < res.upper


def test_sweep_signals_infeasible_alpha():
    assert sweep(build("Path", 3, 4), 0.9)[0] == math.inf
    assert sweep(build("Star", 3, 4), 0.3)[0] == pytest.approx(1.2)


@pytest.mark.parametrize("name, params, place", [
    ("C2", (3,), "at_rho_r"),
    ("Path", (3, 3), "below_rho_r"),
    ("EdgeStar", (5,), "strictly_between"),
    ("Dagger4", (1, 1, 4, 6), "above_rho_prime_r"),
    ("Dagger4", (1, 2, 2, 3), "strictly_between"),
])
def test_threshold_placement(name, params, place):
    assert compare_to_thresholds(build(name, *params)) == place


@given(hypertrees())
def test_tree_and_power_agree(h):
    assert rho_power(h, tol=1e-11).rho == pytest.approx(rho_hypertree(h).rho, abs=1e-8)


@given(connected())
def test_power_iteration_brackets(h):
    res = rho_power(h, tol=1e-10)
    assert res.lower <= res.rho <= res.upper and res.upper - res.lower <= 1e-10
    vec = res.vector
    assert np.all(vec > 0) and vec.max() == pytest.approx(1.0)


@given(connected())
def test_start_vector_does_not_matter(h):
    rng = np.random.default_rng(h.n)
    a = rho_power(h, tol=1e-11).rho
    b = rho_power(h, tol=1e-11, start=rng.uniform(0.1, 1, h.n)).rho
    assert a == pytest.approx(b, abs=1e-9)


@settings(max_examples=40)
@given(connected(max_edges=6))
def test_extension_law(h):
    alpha = alpha_of_rho(h.r, rho_power(h, tol=1e-11).rho)
    predicted = math.factorial(h.r) * alpha ** (-1 / (h.r + 1))
    assert spectral_radius(extend(h), tol=1e-11).rho == pytest.approx(predicted, abs=1e-7)


@given(connected(max_edges=6))
def test_single_edge_is_the_minimum(h):
    if h.m >= 2:
        assert rho_power(h, tol=1e-10).lower > math.factorial(h.r - 1)
