"""Weighted incidence matrices and alpha-(sub/super)normal verdicts.

A weighted incidence matrix assigns a positive label ``B[v, e]`` to every corner
``v in e``. Labels are stored as a plain dict keyed by ``(vertex, edge_id)``.
"""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass, field
from typing import Mapping, Sequence, Union

from .hypergraph import Hypergraph, HypergraphError, PartialHypergraph, validate

DEFAULT_TOL = 1e-9
MODES = ("normal", "subnormal", "supernormal")

Weights = Mapping[tuple[int, int], float]


class MalformedMatrixError(ValueError):
    pass


@dataclass(frozen=True)
class Verdict:
    holds: bool
    strict: bool
    worst_vertex_slack: float
    worst_edge_slack: float

    def to_json(self) -> dict:
        return {
            "holds": self.holds,
            "strict": self.strict,
            "worst_vertex_slack": self.worst_vertex_slack,
            "worst_edge_slack": self.worst_edge_slack,
        }


def _check_shape(h: Hypergraph, weights: Weights) -> None:
    expected = {(v, i) for i, e in enumerate(h.edges) for v in e}
    missing = expected - weights.keys()
    if missing:
        v, e = min(missing)
        raise MalformedMatrixError(f"missing label for corner (vertex {v}, edge {e})")
    extra = weights.keys() - expected
    if extra:
        v, e = min(extra)
        raise MalformedMatrixError(f"label given for non-incident pair (vertex {v}, edge {e})")
    for key in expected:
        if not weights[key] > 0:
            raise MalformedMatrixError(f"label at {key} is not positive: {weights[key]}")


def vertex_sums(h: Hypergraph, weights: Weights) -> list[float]:
    sums = [0.0] * h.n
    for i, e in enumerate(h.edges):
        for v in e:
            sums[v] += weights[(v, i)]
    return sums


def edge_products(h: Hypergraph, weights: Weights) -> list[float]:
    if h.r >= 8:
        # log space: products of many small corners underflow gracefully
        return [math.exp(math.fsum(math.log(weights[(v, i)]) for v in e)) for i, e in enumerate(h.edges)]
    return [math.prod(weights[(v, i)] for v in e) for i, e in enumerate(h.edges)]


def _verdict(mode: str, vertex_slacks: Sequence[float], edge_slacks: Sequence[float], tol: float) -> Verdict:
    wv, we = min(vertex_slacks), min(edge_slacks)
    holds = wv >= -tol and we >= -tol
    strict = False
    if holds and mode != "normal":
        strict = max(vertex_slacks) > 10 * tol or max(edge_slacks) > 10 * tol
    return Verdict(holds, strict, wv, we)


def check(h: Hypergraph, weights: Weights, alpha: float, mode: str = "normal", tol: float = DEFAULT_TOL) -> Verdict:
    """Check a labeling against the alpha-normal, -subnormal or -supernormal conditions.

    Slacks are signed so that a negative value is a violation. Vertex sums are
    compared absolutely against 1; edge products relatively against ``alpha``.
    A verdict is strict when it holds and some constraint has slack above ``10*tol``.
    """
    if mode not in MODES:
        raise ValueError(f"mode must be one of {MODES}")
    if not 0 < alpha <= 1:
        raise ValueError(f"alpha must lie in (0, 1], got {alpha}")
    _check_shape(h, weights)
    sums = vertex_sums(h, weights)
    ratios = [p / alpha for p in edge_products(h, weights)]
    if mode == "normal":
        vs = [-abs(s - 1) for s in sums]
        es = [-abs(q - 1) for q in ratios]
    elif mode == "subnormal":
        vs = [1 - s for s in sums]
        es = [q - 1 for q in ratios]
    else:
        vs = [s - 1 for s in sums]
        es = [1 - q for q in ratios]
    return _verdict(mode, vs, es, tol)


def check_partial_subnormal(p: PartialHypergraph, weights: Weights, alpha: float, tol: float = DEFAULT_TOL) -> Verdict:
    """Subnormal check where designated vertices must have label sum at most 1/2."""
    h = p.base
    _check_shape(h, weights)
    sums = vertex_sums(h, weights)
    caps = [0.5 if v in p.designated else 1.0 for v in range(h.n)]
    vs = [c - s for c, s in zip(caps, sums)]
    es = [q / alpha - 1 for q in edge_products(h, weights)]
    return _verdict("subnormal", vs, es, tol)


def check_consistent(h: Hypergraph, weights: Weights, tol: float = DEFAULT_TOL) -> bool:
    """True iff every cycle's alternating corner-ratio product is 1 (within ``tol`` in log scale).

    Potentials are propagated over a BFS spanning tree of the vertex-edge
    incidence graph; each non-tree incidence closes one fundamental cycle.
    """
    _check_shape(h, weights)
    inc = h.incidence()
    # potential(edge) = potential(vertex) - log B(vertex, edge) on every incidence
    pv: list[float | None] = [None] * h.n
    pe: list[float | None] = [None] * h.m
    for root in range(h.n):
        if pv[root] is not None:
            continue
        pv[root] = 0.0
        queue = deque([("v", root)])
        while queue:
            kind, x = queue.popleft()
            if kind == "v":
                for ei in inc[x]:
                    if pe[ei] is None:
                        pe[ei] = pv[x] - math.log(weights[(x, ei)])
                        queue.append(("e", ei))
            else:
                for v in h.edges[x]:
                    if pv[v] is None:
                        pv[v] = pe[x] + math.log(weights[(v, x)])
                        queue.append(("v", v))
    for i, e in enumerate(h.edges):
        for v in e:
            if abs(pv[v] - math.log(weights[(v, i)]) - pe[i]) > tol:
                return False
    return True


@dataclass
class Certificate:
    """A labeling together with the claim it is meant to witness."""

    hypergraph: Union[Hypergraph, PartialHypergraph]
    alpha: float
    weights: dict[tuple[int, int], float]
    kind: str
    strict: bool
    consistent: bool | None = None
    extras: dict = field(default_factory=dict)

    @property
    def base(self) -> Hypergraph:
        h = self.hypergraph
        return h.base if isinstance(h, PartialHypergraph) else h

    def verdict(self, tol: float = DEFAULT_TOL) -> Verdict:
        if self.kind == "partial-subnormal":
            return check_partial_subnormal(self.hypergraph, self.weights, self.alpha, tol)
        return check(self.base, self.weights, self.alpha, self.kind, tol)

    def verify(self, tol: float = DEFAULT_TOL) -> bool:
        """Re-derive kind, strictness and (for cyclic hypergraphs) consistency."""
        v = self.verdict(tol)
        if not v.holds or v.strict != self.strict:
            return False
        if self.consistent is not None and check_consistent(self.base, self.weights, tol) != self.consistent:
            return False
        return True

    def to_json(self) -> dict:
        d = {
            "alpha": self.alpha,
            "kind": self.kind,
            "strict": self.strict,
            "consistent": self.consistent,
            "weights": [[v, e, w] for (v, e), w in sorted(self.weights.items())],
        }
        if isinstance(self.hypergraph, PartialHypergraph):
            d["designated"] = list(self.hypergraph.designated)
        if self.extras:
            d["extras"] = self.extras
        return d

    @classmethod
    def from_json(cls, h: Hypergraph, data: dict) -> "Certificate":
        weights = {(int(v), int(e)): float(w) for v, e, w in data["weights"]}
        hyper: Union[Hypergraph, PartialHypergraph] = h
        if "designated" in data:
            hyper = PartialHypergraph(h, tuple(data["designated"]))
        return cls(hyper, float(data["alpha"]), weights, data["kind"], bool(data.get("strict", False)),
                   data.get("consistent"), data.get("extras", {}))


def _glue(parts: Sequence[PartialHypergraph], pairing: Sequence[tuple[tuple[int, int], tuple[int, int]]]):
    offsets, total = [], 0
    for p in parts:
        offsets.append(total)
        total += p.base.n
    parent = list(range(total))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    designated = {(i, v) for i, p in enumerate(parts) for v in p.designated}
    used = set()
    for a, b in pairing:
        for side in (a, b):
            if tuple(side) not in designated:
                raise HypergraphError(f"pairing endpoint {tuple(side)} is not a designated vertex")
            if tuple(side) in used:
                raise HypergraphError(f"designated vertex {tuple(side)} paired twice")
            used.add(tuple(side))
        x, y = find(offsets[a[0]] + a[1]), find(offsets[b[0]] + b[1])
        parent[max(x, y)] = min(x, y)
    unpaired = designated - used
    if unpaired:
        raise HypergraphError(f"unpaired designated vertex {min(unpaired)}")

    edges = []
    for i, p in enumerate(parts):
        for e in p.base.edges:
            edges.append([find(offsets[i] + v) for v in e])
    try:
        h = validate(edges, parts[0].base.r)
    except HypergraphError as exc:
        raise HypergraphError(f"glue failed: {exc}") from None
    reps = sorted({find(x) for x in range(total)})
    compact = {x: k for k, x in enumerate(reps)}
    vmaps = [[compact[find(offsets[i] + v)] for v in range(p.base.n)] for i, p in enumerate(parts)]
    eoffsets, acc = [], 0
    for p in parts:
        eoffsets.append(acc)
        acc += p.base.m
    return h, vmaps, eoffsets


def glue(parts: Sequence[PartialHypergraph], pairing) -> Hypergraph:
    """Union of ``parts`` with designated vertices identified two at a time.

    ``pairing`` is a list of ``((part, vertex), (part, vertex))``; every designated
    vertex must appear exactly once.
    """
    if len({p.base.r for p in parts}) != 1:
        raise HypergraphError("parts have different uniformity")
    return _glue(parts, pairing)[0]


def glue_certificates(certs: Sequence[Certificate], pairing, tol: float = DEFAULT_TOL) -> Certificate:
    """Glue partial-subnormal certificates; the result is subnormal on the glued hypergraph."""
    parts = [c.hypergraph for c in certs]
    if not all(isinstance(p, PartialHypergraph) for p in parts):
        raise HypergraphError("glue needs partial hypergraphs")
    alpha = min(c.alpha for c in certs)
    h, vmaps, eoffsets = _glue(parts, pairing)
    weights = {}
    for c, vmap, off in zip(certs, vmaps, eoffsets):
        for (v, e), w in c.weights.items():
            weights[(vmap[v], off + e)] = w
    v = check(h, weights, alpha, "subnormal", tol)
    return Certificate(h, alpha, weights, "subnormal", v.strict, None)


def extend_partial(p: PartialHypergraph) -> PartialHypergraph:
    from .hypergraph import extend

    return PartialHypergraph(extend(p.base), p.designated)


def extend_certificate(c: Certificate) -> Certificate:
    """Lift a certificate to the extension: every fresh vertex gets label 1."""
    from .hypergraph import extend

    h = c.base
    ext = extend(h)
    weights = dict(c.weights)
    for i in range(h.m):
        weights[(h.n + i, i)] = 1.0
    hyper = PartialHypergraph(ext, c.hypergraph.designated) if isinstance(c.hypergraph, PartialHypergraph) else ext
    return Certificate(hyper, c.alpha, weights, c.kind, c.strict, c.consistent, dict(c.extras))
