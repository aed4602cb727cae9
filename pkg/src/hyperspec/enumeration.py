"""Exhaustive generation of small connected uniform hypergraphs up to isomorphism."""

from __future__ import annotations

import csv
import itertools
from dataclasses import dataclass, field
from typing import Iterator

from .hypergraph import Hypergraph, HypergraphError, degrees, edge_neighbours, is_irreducible, is_simple, validate

EDGE_CAP = 9
LIMITS = {2: 6, 3: 6, 4: 5, 5: 5, 6: 3, 7: 3}


def _edge_invariants(h: Hypergraph) -> list[tuple]:
    deg = degrees(h)
    nbrs = edge_neighbours(h)
    return [(tuple(sorted(deg[v] for v in e)), len(nbrs[i])) for i, e in enumerate(h.edges)]


def canonical_form(h: Hypergraph, cap: int = EDGE_CAP) -> bytes:
    """Isomorphism-invariant byte string.

    A hypergraph without isolated vertices is the multiset of its vertex
    incidence masks once the edges are ordered, so the form minimizes the sorted
    mask tuple over edge orders. Edges are first grouped by an invariant and only
    permuted inside groups.
    """
    if h.m > cap:
        raise HypergraphError(f"{h.m} edges exceeds the canonical-form cap of {cap}")
    inv = _edge_invariants(h)
    groups: dict[tuple, list[int]] = {}
    for i, key in enumerate(inv):
        groups.setdefault(key, []).append(i)
    keys = sorted(groups)
    inc = h.incidence()
    best = None
    for perms in itertools.product(*(itertools.permutations(groups[k]) for k in keys)):
        order = [i for p in perms for i in p]
        rank = {e: j for j, e in enumerate(order)}
        masks = tuple(sorted(sum(1 << rank[e] for e in inc[v]) for v in range(h.n)))
        if best is None or masks < best:
            best = masks
    head = ";".join(f"{','.join(map(str, d))}/{k}" for d, k in (key for key in keys for _ in groups[key]))
    return f"{h.r}|{h.m}|{head}|{','.join(map(str, best))}".encode()


def from_canonical(form: bytes) -> Hypergraph:
    """The representative hypergraph encoded by a canonical form."""
    r, m, _, masks = form.decode().split("|")
    masks = [int(x) for x in masks.split(",")]
    edges = [[v for v, mask in enumerate(masks) if mask >> j & 1] for j in range(int(m))]
    return validate(edges, int(r))


def _augment(h: Hypergraph, simple_only: bool) -> Iterator[Hypergraph]:
    existing = set(h.edges)
    for s in range(1, h.r + 1):
        for shared in itertools.combinations(range(h.n), s):
            new = tuple(shared) + tuple(range(h.n, h.n + h.r - s))
            if new in existing:
                continue
            if simple_only and any(len(set(new) & set(e)) > 1 for e in h.edges):
                continue
            yield Hypergraph(h.r, h.n + h.r - s, h.edges + (new,))


def _check_limits(r: int, max_edges: int) -> None:
    if r not in LIMITS or max_edges < 1 or max_edges > LIMITS[r]:
        raise ValueError(f"enumeration limited to r in {sorted(LIMITS)} with 1 <= max_edges <= LIMITS[r]; got r={r}, max_edges={max_edges}")


def enumerate_connected(r: int, max_edges: int, simple_only: bool = False) -> Iterator[Hypergraph]:
    """Every connected r-uniform hypergraph with at most ``max_edges`` edges, once each.

    Generated by adding one edge at a time and deduplicating by canonical form.
    This is complete: every connected hypergraph has an edge whose removal keeps
    the rest connected (a leaf of a spanning tree of its line graph). Output is
    sorted by edge count, then canonical form.
    """
    _check_limits(r, max_edges)
    level = {canonical_form(validate([range(r)], r)): None}
    for m in range(1, max_edges + 1):
        for form in sorted(level):
            yield from_canonical(form)
        if m == max_edges:
            break
        nxt: dict[bytes, None] = {}
        for form in level:
            for g in _augment(from_canonical(form), simple_only):
                nxt.setdefault(canonical_form(g), None)
        level = nxt


@dataclass
class TheoremReport:
    r: int
    max_edges: int
    checked: int = 0
    admissible: int = 0
    irreducible_admissible: dict = field(default_factory=dict)
    violations: list = field(default_factory=list)
    inconclusive: list = field(default_factory=list)

    def to_json(self) -> dict:
        return {
            "r": self.r,
            "max_edges": self.max_edges,
            "checked": self.checked,
            "admissible": self.admissible,
            "irreducible_admissible": self.irreducible_admissible,
            "violations": self.violations,
            "inconclusive": self.inconclusive,
        }


def _judge(h: Hypergraph, tol: float, c2_form: bytes | None):
    from .classify import admissibility

    a = admissibility(h, tol)
    problems = []
    ok = a.verdict in ("admissible", "boundary")
    if ok and not is_simple(h) and h.r >= 3 and canonical_form(h) != c2_form:
        problems.append("non-simple admissible hypergraph other than C2")
    if a.theorem_violation:
        problems.append("admissible but structure report is a violation: " + "; ".join(a.report.violations))
    return a, problems


def census_rows(r: int, max_edges: int, tol: float = 1e-8, simple_only: bool = False, jobs: int = 1):
    """(hypergraph, admissibility, problems) for every enumerated hypergraph."""
    from .families import c2

    c2_form = canonical_form(c2(r).hypergraph) if r >= 3 else None
    hs = list(enumerate_connected(r, max_edges, simple_only))
    if jobs > 1:
        from concurrent.futures import ProcessPoolExecutor

        with ProcessPoolExecutor(jobs) as pool:
            results = list(pool.map(_judge, hs, itertools.repeat(tol), itertools.repeat(c2_form), chunksize=16))
    else:
        results = [_judge(h, tol, c2_form) for h in hs]
    return [(h, a, p) for h, (a, p) in zip(hs, results)]


def verify_theorem(r: int, max_edges: int, tol: float = 1e-8, jobs: int = 1) -> TheoremReport:
    """Check the classification on every small hypergraph; violations must stay empty."""
    rep = TheoremReport(r, max_edges)
    for h, a, problems in census_rows(r, max_edges, tol, jobs=jobs):
        rep.checked += 1
        if a.verdict == "inconclusive":
            rep.inconclusive.append(canonical_form(h).decode())
        if a.verdict in ("admissible", "boundary"):
            rep.admissible += 1
            if is_irreducible(h):
                cat = a.report.category
                rep.irreducible_admissible[cat] = rep.irreducible_admissible.get(cat, 0) + 1
        for p in problems:
            rep.violations.append({"hypergraph": h.to_json(), "reason": p})
    return rep


def write_census(path, rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["canonical_form", "n", "edges", "rho", "verdict", "category"])
        for h, a, _ in rows:
            w.writerow([canonical_form(h).decode(), h.n, [list(e) for e in h.edges], repr(a.spectral.rho),
                        a.verdict, a.report.category])
