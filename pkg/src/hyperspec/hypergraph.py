"""Immutable r-uniform hypergraphs and the structural predicates used by the classifiers."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence


class HypergraphError(ValueError):
    """Raised for malformed hypergraph input or an invalid structural operation."""


class IrreducibleError(HypergraphError):
    """Raised when reducing a hypergraph that has an edge with no leaf vertex."""


@dataclass(frozen=True)
class Hypergraph:
    r: int
    n: int
    edges: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.r < 2:
            raise HypergraphError(f"uniformity must be >= 2, got {self.r}")
        if not self.edges:
            raise HypergraphError("empty edge list")
        seen = set()
        covered = set()
        for e in self.edges:
            if len(e) != self.r or len(set(e)) != self.r:
                raise HypergraphError(f"edge {list(e)} does not have {self.r} distinct vertices")
            if any(v < 0 or v >= self.n for v in e):
                raise HypergraphError(f"edge {list(e)} has a vertex outside [0, {self.n})")
            if list(e) != sorted(e):
                raise HypergraphError(f"edge {list(e)} is not stored sorted")
            if e in seen:
                raise HypergraphError(f"duplicate edge {list(e)}")
            seen.add(e)
            covered.update(e)
        if len(covered) != self.n:
            raise HypergraphError("isolated vertices are not allowed")

    @property
    def m(self) -> int:
        return len(self.edges)

    def incidence(self) -> list[list[int]]:
        """Edge ids incident to each vertex, in edge order."""
        inc: list[list[int]] = [[] for _ in range(self.n)]
        for i, e in enumerate(self.edges):
            for v in e:
                inc[v].append(i)
        return inc

    def to_json(self) -> dict:
        return {"r": self.r, "n": self.n, "edges": [list(e) for e in self.edges]}

    @classmethod
    def from_json(cls, data: dict) -> "Hypergraph":
        try:
            edges = data["edges"]
            r = data["r"]
        except (KeyError, TypeError) as exc:
            raise HypergraphError(f"hypergraph JSON needs 'r' and 'edges': {exc}") from None
        h = validate(edges, r)
        if "n" in data and data["n"] != h.n:
            raise HypergraphError(f"declared n={data['n']} but edges cover {h.n} vertices")
        return h

    def dumps(self) -> str:
        return json.dumps(self.to_json())


@dataclass(frozen=True)
class PartialHypergraph:
    """A hypergraph with one or two designated vertices used as glue points."""

    base: Hypergraph
    designated: tuple[int, ...]

    def __post_init__(self):
        if len(self.designated) not in (1, 2) or len(set(self.designated)) != len(self.designated):
            raise HypergraphError("a partial hypergraph needs 1 or 2 distinct designated vertices")
        if any(v < 0 or v >= self.base.n for v in self.designated):
            raise HypergraphError("designated vertex out of range")

    def to_json(self) -> dict:
        d = self.base.to_json()
        d["designated"] = list(self.designated)
        return d


def validate(edges: Iterable[Iterable[int]], r: int) -> Hypergraph:
    """Build a Hypergraph from raw edge lists, compacting vertex ids to ``[0, n)``.

    Edge order is preserved, so edge ids in the result match positions in ``edges``.
    Vertex ids keep their relative order.
    """
    raw = [list(e) for e in edges]
    if not raw:
        raise HypergraphError("empty edge list")
    for e in raw:
        if len(e) != r:
            raise HypergraphError(f"edge {e} has cardinality {len(e)}, expected {r}")
        if len(set(e)) != r:
            raise HypergraphError(f"edge {e} repeats a vertex")
    ids = sorted({v for e in raw for v in e})
    relabel = {v: i for i, v in enumerate(ids)}
    canon = [tuple(sorted(relabel[v] for v in e)) for e in raw]
    if len(set(canon)) != len(canon):
        raise HypergraphError("duplicate edge")
    return Hypergraph(r=r, n=len(ids), edges=tuple(canon))


def degrees(h: Hypergraph) -> list[int]:
    deg = [0] * h.n
    for e in h.edges:
        for v in e:
            deg[v] += 1
    return deg


def _components(h: Hypergraph) -> int:
    inc = h.incidence()
    seen = [False] * h.n
    count = 0
    for s in range(h.n):
        if seen[s]:
            continue
        count += 1
        seen[s] = True
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for ei in inc[v]:
                for w in h.edges[ei]:
                    if not seen[w]:
                        seen[w] = True
                        queue.append(w)
    return count


def is_connected(h: Hypergraph) -> bool:
    return _components(h) == 1


def is_simple(h: Hypergraph) -> bool:
    """True iff every pair of edges meets in at most one vertex."""
    pairs = set()
    for e in h.edges:
        for i in range(len(e)):
            for j in range(i + 1, len(e)):
                p = (e[i], e[j])
                if p in pairs:
                    return False
                pairs.add(p)
    return True


def cyclomatic_number(h: Hypergraph) -> int:
    """Independent cycles of the vertex-edge incidence graph."""
    return h.m * h.r - h.n - h.m + _components(h)


def is_hypertree(h: Hypergraph) -> bool:
    return is_connected(h) and cyclomatic_number(h) == 0


def is_irreducible(h: Hypergraph) -> bool:
    """True iff some edge has every vertex of degree at least 2."""
    deg = degrees(h)
    return any(all(deg[v] >= 2 for v in e) for e in h.edges)


def extend(h: Hypergraph) -> Hypergraph:
    """Add one fresh vertex to every edge; fresh ids follow the old ones in edge order."""
    edges = [tuple(e) + (h.n + i,) for i, e in enumerate(h.edges)]
    return Hypergraph(r=h.r + 1, n=h.n + h.m, edges=tuple(edges))


def reduce(h: Hypergraph) -> Hypergraph:
    """Remove the lowest-id degree-1 vertex from each edge."""
    if h.r <= 2:
        raise HypergraphError("cannot reduce a 2-uniform hypergraph")
    deg = degrees(h)
    out = []
    for e in h.edges:
        leaves = [v for v in e if deg[v] == 1]
        if not leaves:
            raise IrreducibleError(f"edge {list(e)} has no degree-1 vertex")
        drop = min(leaves)
        out.append([v for v in e if v != drop])
    return validate(out, h.r - 1)


def reduction_chain(h: Hypergraph) -> list[Hypergraph]:
    """Successive reductions of ``h`` until an irreducible (or unreducible) hypergraph.

    The chain stops early when a reduction would merge two edges (e.g. ``C_2``),
    which has no simple-hypergraph preimage.
    """
    chain = [h]
    while chain[-1].r > 2 and not is_irreducible(chain[-1]):
        try:
            chain.append(reduce(chain[-1]))
        except HypergraphError:
            break
    return chain


def identify_vertices(h: Hypergraph, u: int, v: int) -> Hypergraph:
    """Merge ``v`` into ``u``. The edge map must stay injective."""
    if u == v:
        raise HypergraphError("cannot identify a vertex with itself")
    if not (0 <= u < h.n and 0 <= v < h.n):
        raise HypergraphError("vertex out of range")
    for e in h.edges:
        if u in e and v in e:
            raise HypergraphError(f"invalid identification: {u} and {v} share edge {list(e)}")
    edges = [[u if w == v else w for w in e] for e in h.edges]
    try:
        return validate(edges, h.r)
    except HypergraphError as exc:
        raise HypergraphError(f"invalid identification: {exc}") from None


def branching_vertices(h: Hypergraph, k: int) -> set[int]:
    deg = degrees(h)
    return {v for v in range(h.n) if deg[v] == k}


def edge_neighbours(h: Hypergraph) -> list[set[int]]:
    inc = h.incidence()
    nbrs: list[set[int]] = [set() for _ in range(h.m)]
    for i, e in enumerate(h.edges):
        for v in e:
            nbrs[i].update(inc[v])
        nbrs[i].discard(i)
    return nbrs


def branching_edges(h: Hypergraph, k: int) -> set[int]:
    """Edges with no vertex of degree >= 3 that meet exactly ``k`` other edges."""
    deg = degrees(h)
    nbrs = edge_neighbours(h)
    return {
        i for i, e in enumerate(h.edges)
        if all(deg[v] < 3 for v in e) and len(nbrs[i]) == k
    }


def relabel(h: Hypergraph, perm: Sequence[int]) -> Hypergraph:
    """Apply the vertex permutation ``v -> perm[v]``."""
    return validate([[perm[v] for v in e] for e in h.edges], h.r)
