"""Spectral radius of uniform hypergraphs by two independent routes.

``rho_power`` runs a tensor power iteration with Collatz-Wielandt brackets and
works for any connected hypergraph. ``rho_hypertree`` bisects on alpha with a
leaves-to-root labeling sweep and only handles hypertrees.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .hypergraph import Hypergraph, HypergraphError, is_connected, is_hypertree

POWER = "power-iteration"
TREE = "hypertree-bisection"


@dataclass
class SpectralResult:
    rho: float
    lower: float
    upper: float
    iterations: int
    method: str
    converged: bool = True
    vector: np.ndarray | None = field(default=None, repr=False, compare=False)

    def to_json(self) -> dict:
        return {
            "rho": self.rho,
            "lower": self.lower,
            "upper": self.upper,
            "iterations": self.iterations,
            "method": self.method,
            "converged": self.converged,
        }


def thresholds(r: int) -> tuple[float, float]:
    """The two reference radii ``(r-1)! 4^(1/r)`` and ``(r-1)! (2+sqrt5)^(1/r)``."""
    if r < 2:
        raise ValueError("r must be >= 2")
    c = math.factorial(r - 1)
    return c * 4 ** (1 / r), c * (2 + math.sqrt(5)) ** (1 / r)


def alpha_of_rho(r: int, rho: float) -> float:
    return (math.factorial(r - 1) / rho) ** r


def rho_of_alpha(r: int, alpha: float) -> float:
    return math.factorial(r - 1) * alpha ** (-1 / r)


def _tensor_apply(edges: np.ndarray, x: np.ndarray, scale: float) -> np.ndarray:
    # y_i = scale * sum over edges e containing i of the product of x over e minus i
    vals = x[edges]
    full = vals.prod(axis=1, keepdims=True)
    y = np.zeros_like(x)
    np.add.at(y, edges, full / vals)
    return scale * y


def rho_power(h: Hypergraph, tol: float = 1e-10, max_iter: int = 100_000, start: np.ndarray | None = None) -> SpectralResult:
    """Power iteration for the Perron pair of the adjacency tensor.

    The update is shifted by ``(r-1)!`` times the identity so bipartite
    structures (even cycles, hypertrees) cannot oscillate; the shift leaves the
    eigenvector unchanged. Brackets use the unshifted ratios and are always valid
    bounds on the spectral radius.
    """
    if not is_connected(h):
        raise HypergraphError("spectral radius needs a connected hypergraph")
    r = h.r
    scale = math.factorial(r - 1)
    edges = np.asarray(h.edges, dtype=np.int64)
    x = np.ones(h.n) if start is None else np.asarray(start, dtype=float).copy()
    if np.any(x <= 0):
        raise ValueError("start vector must be positive")
    x /= x.max()
    lower, upper = 0.0, math.inf
    for it in range(1, max_iter + 1):
        y = _tensor_apply(edges, x, scale)
        xr = x ** (r - 1)
        ratio = y / xr
        lower = max(lower, float(ratio.min()))
        upper = min(upper, float(ratio.max()))
        if upper - lower <= tol:
            return SpectralResult((lower + upper) / 2, lower, upper, it, POWER, True, x)
        x = (y + scale * xr) ** (1 / (r - 1))
        x /= x.max()
    return SpectralResult((lower + upper) / 2, lower, upper, max_iter, POWER, False, x)


@dataclass
class _Rooted:
    order: list  # ("v", id) / ("e", id) in BFS order from the root vertex
    parent_vertex: list[int]  # per edge
    child_edges: list[list[int]]  # per vertex


def _root(h: Hypergraph, root: int = 0) -> _Rooted:
    inc = h.incidence()
    parent_vertex = [-1] * h.m
    child_edges: list[list[int]] = [[] for _ in range(h.n)]
    seen_v = [False] * h.n
    order = []
    seen_v[root] = True
    queue = deque([root])
    while queue:
        v = queue.popleft()
        order.append(("v", v))
        for ei in inc[v]:
            if parent_vertex[ei] == -1:
                parent_vertex[ei] = v
                child_edges[v].append(ei)
                order.append(("e", ei))
                for w in h.edges[ei]:
                    if w != v and not seen_v[w]:
                        seen_v[w] = True
                        queue.append(w)
    return _Rooted(order, parent_vertex, child_edges)


def sweep(h: Hypergraph, alpha: float, rooted: _Rooted | None = None):
    """Leaves-to-root labeling at ``alpha``.

    Returns ``(root_sum, weights)``; ``root_sum`` is ``inf`` when some corner
    would be non-positive (alpha too large).
    """
    rooted = rooted or _root(h)
    weights: dict[tuple[int, int], float] = {}
    sums = [0.0] * h.n
    for kind, x in reversed(rooted.order):
        if kind == "v":
            continue
        p = rooted.parent_vertex[x]
        prod = 1.0
        for v in h.edges[x]:
            if v == p:
                continue
            c = 1.0 - sums[v]
            if c <= 0:
                return math.inf, None
            weights[(v, x)] = c
            prod *= c
        w = alpha / prod
        weights[(p, x)] = w
        sums[p] += w
    root = rooted.order[0][1]
    return sums[root], weights


def rho_hypertree(h: Hypergraph, tol: float = 1e-13) -> SpectralResult:
    """Spectral radius of a hypertree by bisection on alpha (tolerance on alpha)."""
    if not is_hypertree(h):
        raise HypergraphError("rho_hypertree needs a hypertree")
    rooted = _root(h)
    lo, hi = 1e-9, 1.0
    it = 0
    if sweep(h, hi, rooted)[0] <= 1.0:
        lo = hi
    while hi - lo > tol:
        it += 1
        mid = (lo + hi) / 2
        if sweep(h, mid, rooted)[0] < 1.0:
            lo = mid
        else:
            hi = mid
    alpha = (lo + hi) / 2
    r = h.r
    return SpectralResult(rho_of_alpha(r, alpha), rho_of_alpha(r, hi), rho_of_alpha(r, lo), it, TREE, True)


def hypertree_alpha(h: Hypergraph, tol: float = 1e-13) -> float:
    return alpha_of_rho(h.r, rho_hypertree(h, tol).rho)


def spectral_radius(h: Hypergraph, method: str = "auto", tol: float = 1e-10) -> SpectralResult:
    if method == "auto":
        method = "tree" if is_hypertree(h) else "power"
    if method == "tree":
        return rho_hypertree(h, min(tol, 1e-13))
    if method == "power":
        return rho_power(h, tol)
    raise ValueError(f"unknown method {method!r}")


def eigenvector_to_labeling(h: Hypergraph, x, rho: float) -> dict[tuple[int, int], float]:
    """Corner labels ``(r-1)! prod(x_e) / (rho x_v^r)`` from a positive eigenvector."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise ValueError("eigenvector must be strictly positive")
    c = math.factorial(h.r - 1) / rho
    out = {}
    for i, e in enumerate(h.edges):
        p = math.prod(x[v] for v in e)
        for v in e:
            out[(v, i)] = c * p / x[v] ** h.r
    return out


def compare_to_thresholds(h: Hypergraph, tol: float = 1e-8, result: SpectralResult | None = None) -> str:
    """Place the spectral radius relative to the two reference radii.

    An "at" verdict needs a bracket of width at most ``tol`` lying within ``tol``
    of the threshold; a wide bracket straddling a threshold is inconclusive.
    """
    res = result or spectral_radius(h, tol=min(tol, 1e-10) / 10)
    low, high = thresholds(h.r)
    width = res.upper - res.lower

    def place(t: float) -> str:
        if width <= tol and max(res.lower - t, t - res.upper, 0.0) <= tol:
            return "at"
        if res.upper < t:
            return "below"
        if res.lower > t:
            return "above"
        return "inconclusive"

    a = place(low)
    if a == "below":
        return "below_rho_r"
    if a == "at":
        return "at_rho_r"
    if a == "inconclusive":
        return "inconclusive"
    b = place(high)
    return {"below": "strictly_between", "at": "at_rho_prime_r", "above": "above_rho_prime_r"}.get(b, "inconclusive")
