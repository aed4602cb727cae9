"""Structural recognition of the quipu, dagger and edge-star shapes, and admissibility verdicts."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field

from .beta import BETA, dagger_g
from .hypergraph import (
    Hypergraph,
    HypergraphError,
    branching_edges,
    branching_vertices,
    cyclomatic_number,
    degrees,
    edge_neighbours,
    is_connected,
    is_hypertree,
    is_irreducible,
    is_simple,
    reduction_chain,
)
from .spectral import SpectralResult, spectral_radius, thresholds

ADMISSIBLE_DAGGERS = {(1, 2, 2, 2), (1, 2, 2, 3), (1, 1, 4, 4), (1, 1, 4, 5)}


def dagger_listed(t) -> bool:
    """Membership in the admissible 4-dagger list (lengths sorted ascending)."""
    i, j, k, l = sorted(t)
    return tuple((i, j, k, l)) in ADMISSIBLE_DAGGERS or (i == j == 1 and k <= 3)


@dataclass
class StructureReport:
    category: str
    witness: dict = field(default_factory=dict)
    violations: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)
    core: "StructureReport | None" = None

    def to_json(self) -> dict:
        d = {"category": self.category, "witness": self.witness, "violations": self.violations}
        if self.notes:
            d["notes"] = self.notes
        if self.core is not None:
            d["core"] = self.core.to_json()
        return d


def _violation(witness: dict, *msgs: str) -> StructureReport:
    return StructureReport("violation", witness, list(msgs))


class _Incidence:
    """Bipartite vertex/edge incidence graph; vertex v is node v, edge i is node n + i."""

    def __init__(self, h: Hypergraph):
        self.h = h
        inc = h.incidence()
        self.adj = [list(h.n + i for i in inc[v]) for v in range(h.n)] + [list(e) for e in h.edges]

    def bfs(self, src: int):
        dist = [-1] * len(self.adj)
        parent = [-1] * len(self.adj)
        dist[src] = 0
        q = deque([src])
        while q:
            x = q.popleft()
            for y in self.adj[x]:
                if dist[y] < 0:
                    dist[y] = dist[x] + 1
                    parent[y] = x
                    q.append(y)
        return dist, parent


def _spine(h: Hypergraph, items: list[int]):
    """Path in the incidence tree through all item nodes, or None.

    Uses the farthest-item trick: in a tree, all items lie on one path iff they
    lie on the path between two mutually farthest items.
    """
    g = _Incidence(h)
    dist, _ = g.bfs(items[0])
    a = max(items, key=lambda x: dist[x])
    dist, parent = g.bfs(a)
    b = max(items, key=lambda x: dist[x])
    nodes = [b]
    while nodes[-1] != a:
        nodes.append(parent[nodes[-1]])
    nodes.reverse()
    pos = {x: i for i, x in enumerate(nodes)}
    if any(x not in pos for x in items):
        return None
    return nodes, pos


def _node_label(h: Hypergraph, x: int):
    return ("v", x) if x < h.n else ("e", x - h.n)


def _branch_path_length(h: Hypergraph, e: int, v: int, deg, nbrs) -> int | None:
    """Length of the branch leaving edge ``e`` through vertex ``v`` if it is a path, else None."""
    inc = h.incidence()
    length, prev_edge, cur = 0, e, v
    while True:
        nxt = [f for f in inc[cur] if f != prev_edge]
        if not nxt:
            return length
        if len(nxt) > 1:
            return None
        f = nxt[0]
        length += 1
        if len(nbrs[f]) > 2:
            return None
        onward = [w for w in h.edges[f] if w != cur and deg[w] >= 2]
        if not onward:
            return length
        if len(onward) > 1:
            return None
        prev_edge, cur = f, onward[0]


def _with_adjacency_cap(h: Hypergraph, cap: int, witness: dict, shape) -> StructureReport:
    """Apply the edge-adjacency cap, but still record which shape the rest of the tests give.

    The cap can fail on its own (an edge through a branching vertex that also
    carries two side branches); ``quipu_shape`` then shows the verdict of the
    remaining conditions.
    """
    worst = max(len(s) for s in edge_neighbours(h))
    rep = shape(h, witness)
    if worst <= cap:
        return rep
    out = _violation(dict(rep.witness), f"edge adjacent to {worst} > {cap} edges", *rep.violations)
    out.witness["quipu_shape"] = rep.category
    return out


def _report_r3(h: Hypergraph) -> StructureReport:
    deg = degrees(h)
    bv = sorted(branching_vertices(h, 3))
    be = sorted(branching_edges(h, 3))
    witness = {"branching_vertices": bv, "branching_edges": be}
    if not is_simple(h):
        return _violation(witness, "not simple")
    if max(deg) > 3:
        return _violation(witness, f"vertex of degree {max(deg)} > 3")
    return _with_adjacency_cap(h, 3, witness, _shape_r3)


def _shape_r3(h: Hypergraph, witness: dict) -> StructureReport:
    bv, be = witness["branching_vertices"], witness["branching_edges"]
    if is_hypertree(h):
        if len(bv) > 2:
            return _violation(witness, f"{len(bv)} branching vertices > 2")
        items = bv + [h.n + i for i in be]
        sp = _spine(h, items)
        if sp is None:
            return _violation(witness, "branching vertices/edges not on one path")
        nodes, pos = sp
        order = sorted(items, key=pos.get)
        for idx, x in enumerate(order):
            if x < h.n and 0 < idx < len(order) - 1:
                return _violation(witness, f"branching vertex {x} lies between other branching items")
        witness["spine"] = [_node_label(h, x) for x in nodes]
        witness["spine_edges"] = [x - h.n for x in nodes if x >= h.n]
        return StructureReport("open-3-quipu", witness)
    if cyclomatic_number(h) != 1:
        return _violation(witness, "more than one cycle")
    if bv:
        return _violation(witness, "branching vertex in a cyclic hypergraph")
    cyc = _cycle_edges(h)
    off = [e for e in be if e not in cyc]
    if off:
        return _violation(witness, f"branching edge {off[0]} not on the cycle")
    witness["cycle"] = cyc
    return StructureReport("closed-3-quipu", witness)


def _cycle_edges(h: Hypergraph) -> list[int]:
    """Edges of the unique cycle of a unicyclic hypergraph, in cyclic order."""
    g = _Incidence(h)
    degree = [len(a) for a in g.adj]
    alive = [True] * len(g.adj)
    q = deque(x for x in range(len(g.adj)) if degree[x] <= 1)
    while q:
        x = q.popleft()
        if not alive[x]:
            continue
        alive[x] = False
        for y in g.adj[x]:
            if alive[y]:
                degree[y] -= 1
                if degree[y] == 1:
                    q.append(y)
    start = next(x for x in range(h.n, len(g.adj)) if alive[x])
    order, prev, cur = [], -1, start
    while True:
        if cur >= h.n:
            order.append(cur - h.n)
        nxt = [y for y in g.adj[cur] if alive[y] and y != prev]
        prev, cur = cur, nxt[0]
        if cur == start:
            return order


def _report_r4(h: Hypergraph) -> StructureReport:
    deg = degrees(h)
    bv = sorted(branching_vertices(h, 3))
    be3 = sorted(branching_edges(h, 3))
    be4 = sorted(branching_edges(h, 4))
    witness = {"branching_vertices": bv, "branching_edges_3": be3, "branching_edges_4": be4}
    if not is_simple(h):
        return _violation(witness, "not simple")
    if not is_hypertree(h):
        return _violation(witness, "contains a cycle")
    if max(deg) > 3:
        return _violation(witness, f"vertex of degree {max(deg)} > 3")
    return _with_adjacency_cap(h, 4, witness, _shape_r4)


def _shape_r4(h: Hypergraph, witness: dict) -> StructureReport:
    deg = degrees(h)
    nbrs = edge_neighbours(h)
    bv, be3, be4 = witness["branching_vertices"], witness["branching_edges_3"], witness["branching_edges_4"]
    if len(be4) == 1 and not bv and not be3:
        e = be4[0]
        lengths = [_branch_path_length(h, e, v, deg, nbrs) for v in h.edges[e]]
        if all(x is not None for x in lengths):
            t = tuple(sorted(lengths))
            witness["dagger"] = list(t)
            if not dagger_listed(t):
                return _violation(witness, f"dagger {t} not in the admissible list")
            return StructureReport("dagger", witness)
    ends = bv + [h.n + i for i in be4]
    if len(ends) > 2:
        return _violation(witness, "more than two branching vertices / 4-branching edges")
    items = ends + [h.n + i for i in be3]
    sp = _spine(h, items)
    if sp is None:
        return _violation(witness, "branching vertices/edges not on one path")
    nodes, pos = sp
    order = sorted(items, key=pos.get)
    for idx, x in enumerate(order):
        if x in ends and 0 < idx < len(order) - 1:
            return _violation(witness, f"{_node_label(h, x)} lies between other branching items")
    for e in be4:
        # an end item has one spine neighbour; its other three branches must be short paths
        i = pos[h.n + e]
        toward = {nodes[j] for j in (i - 1, i + 1) if 0 <= j < len(nodes)}
        lengths = [_branch_path_length(h, e, v, deg, nbrs) for v in h.edges[e] if v not in toward]
        ok = len(lengths) == 3 and None not in lengths
        if not ok or sorted(lengths)[:2] != [1, 1] or max(lengths) > 3:
            return _violation(witness, f"4-branching edge {e} violates the 1, 1, k<=3 pendant rule")
    witness["spine"] = [_node_label(h, x) for x in nodes]
    witness["spine_edges"] = [x - h.n for x in nodes if x >= h.n]
    return StructureReport("open-4-quipu", witness)


def _is_edge_star(h: Hypergraph) -> bool:
    r = h.r
    if h.m != r + 1 or h.n != r * r:
        return False
    deg = degrees(h)
    centers = [i for i, e in enumerate(h.edges) if all(deg[v] == 2 for v in e)]
    if len(centers) != 1:
        return False
    c = set(h.edges[centers[0]])
    return all(
        len(c & set(e)) == 1 and all(deg[v] == 1 for v in e if v not in c)
        for i, e in enumerate(h.edges) if i != centers[0]
    )


def graph_type(h: Hypergraph) -> str:
    """Name of a connected graph among the Smith / Brouwer-Neumaier shapes, or a generic tag."""
    from .families import brouwer_neumaier_member

    deg = degrees(h)
    if not is_hypertree(h):
        if cyclomatic_number(h) == 1 and max(deg) == 2:
            return f"~A_{h.n - 1}"
        return "cyclic"
    if max(deg) <= 2:
        return f"A_{h.n}"
    branch = [v for v in range(h.n) if deg[v] >= 3]
    arms = _graph_arms(h)
    if len(branch) == 1 and deg[branch[0]] == 4 and sorted(arms[branch[0]]) == [1, 1, 1, 1]:
        return "~D_4"
    if len(branch) == 1 and deg[branch[0]] == 3:
        a, b, c = sorted(arms[branch[0]])
        if a == 1 and b == 1:
            return f"D_{h.n}"
        if (a, b) == (1, 2) and c <= 4:
            return f"E_{h.n}"
        if (a, b, c) in ((2, 2, 2), (1, 3, 3), (1, 2, 5)):
            return f"~E_{h.n - 1}"
        if brouwer_neumaier_member(h):
            return f"E({a},{b},{c})"
        return f"spider({a},{b},{c})"
    if len(branch) == 2 and all(deg[v] == 3 for v in branch):
        if all(sorted(arms[v])[:2] == [1, 1] for v in branch):
            return f"~D_{h.n - 1}"
        if brouwer_neumaier_member(h):
            return "G(1,a:b:1,c)"
    return "tree"


def _graph_arms(h: Hypergraph) -> dict[int, list[int]]:
    deg = degrees(h)
    adj = [[] for _ in range(h.n)]
    for x, y in h.edges:
        adj[x].append(y)
        adj[y].append(x)
    out = {}
    for c in range(h.n):
        if deg[c] < 3:
            continue
        lens = []
        for u in adj[c]:
            prev, cur, length = c, u, 1
            while deg[cur] == 2:
                prev, cur = cur, (adj[cur][0] if adj[cur][0] != prev else adj[cur][1])
                length += 1
            lens.append(length)
        out[c] = lens
    return out


def structure_report(h: Hypergraph) -> StructureReport:
    """Classify a connected hypergraph against the structural shapes for small spectral radius."""
    if not is_connected(h):
        raise HypergraphError("structure_report needs a connected hypergraph")
    if h.r == 2:
        return StructureReport("graph", {"type": graph_type(h)})
    if not is_irreducible(h):
        chain = reduction_chain(h)
        notes = []
        deg = degrees(h)
        if h.r == 3 and max(deg) > 3:
            notes.append(f"vertex of degree {max(deg)} > 3")
        core = chain[-1]
        core_report = None
        if core is not h and (core.r == 2 or is_irreducible(core)):
            core_report = structure_report(core)
        else:
            notes.append("reduction stops at a non-simple hypergraph")
        return StructureReport("reducible", {"chain_length": len(chain) - 1, "core_r": core.r}, [], notes, core_report)
    if h.r == 3:
        return _report_r3(h)
    if h.r == 4:
        return _report_r4(h)
    if h.r == 5:
        if _is_edge_star(h):
            return StructureReport("edge-star", {"center_edge": next(
                i for i, e in enumerate(h.edges) if all(degrees(h)[v] == 2 for v in e))})
        return _violation({}, "irreducible 5-uniform hypergraph other than the edge-star")
    return _violation({}, f"irreducible {h.r}-uniform hypergraph")


@dataclass
class Admissibility:
    verdict: str
    report: StructureReport
    spectral: SpectralResult
    theorem_violation: bool = False

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict,
            "theorem_violation": self.theorem_violation,
            "report": self.report.to_json(),
            "spectral": self.spectral.to_json(),
        }


def _place(res: SpectralResult, t: float, tol: float) -> str:
    width = res.upper - res.lower
    if width <= tol and max(res.lower - t, t - res.upper, 0.0) <= tol:
        return "boundary"
    if res.upper < t:
        return "admissible"
    if res.lower > t:
        return "inadmissible"
    return "inconclusive"


def _structure_ok(report: StructureReport) -> bool:
    if report.category == "violation":
        return False
    if report.category == "reducible" and report.core is not None and report.core.category != "graph":
        return _structure_ok(report.core)
    return True


def admissibility(h: Hypergraph, tol: float = 1e-8) -> Admissibility:
    """Spectral verdict against the upper threshold, combined with the structure report.

    ``theorem_violation`` is set when the spectral radius is at most the upper
    threshold while the structure (or the irreducible core it reduces to) is
    reported as a violation; that would contradict the classification.
    """
    res = spectral_radius(h, tol=min(tol, 1e-10) / 10)
    _, upper = thresholds(h.r)
    verdict = _place(res, upper, tol)
    report = structure_report(h)
    bad = verdict in ("admissible", "boundary") and not _structure_ok(report)
    return Admissibility(verdict, report, res, bad)


@dataclass(frozen=True)
class DaggerRow:
    lengths: tuple
    g: float
    verdict: str
    listed: bool


def dagger_table(max_l: int = 8, beta: float = BETA) -> list[DaggerRow]:
    """Branching-edge products for all daggers with longest path at most ``max_l``.

    The unbounded families (1, 1, k, l) with k <= 3 are appended with l = inf,
    using the limiting corner; their products decrease in l toward that limit.
    """
    rows = []
    for i in range(1, max_l + 1):
        for j in range(i, max_l + 1):
            for k in range(j, max_l + 1):
                for l in range(k, max_l + 1):
                    g = dagger_g(i, j, k, l, beta)
                    rows.append(DaggerRow((i, j, k, l), g, "admissible" if g >= beta else "inadmissible",
                                          dagger_listed((i, j, k, l))))
    for k in (1, 2, 3):
        g = dagger_g(1, 1, k, math.inf, beta)
        rows.append(DaggerRow((1, 1, k, math.inf), g, "admissible" if g >= beta else "inadmissible", True))
    return rows
