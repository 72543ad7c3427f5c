"""Algebraic extremal constructions over finite fields.

The norm graph on F_{q^(s-1)} x F_q^* joins (X, x) and (Y, y) when
N(X + Y) = x * y, with N the norm into F_q.  Vertices are numbered
idx(X) * (q - 1) + idx(x) - 1, so the layout is reproducible across runs.
Adjacency is enumerated through the unique-partner rule: fixing (X, x) and
Y != -X forces y = N(X + Y) / x, so each vertex is examined against only
q^(s-1) - 1 candidates instead of all vertex pairs.

The bipartite variant keeps two disjoint copies of the vertex set and joins
left (X, x) to right (Y, y) under the same equation for (X, x) != (Y, y);
the diagonal N(2X) = x^2 cases stay non-edges just as loops do, so its edge
count is exactly twice the plain graph's.

The composed 3-graph overlays two layers on a common index set of size
n = max(q^s1 - q^(s1-1), qt^s2 - qt^(s2-1)) where q = p^s2 and qt = p^s1:
a norm graph on (qt, s2) inside the left part and a bipartite norm graph on
(q, s1) across the parts.  Its triples are the cross-layer triangles: one
layer edge {u, v} plus a common cross-neighbor w.  Whichever layer is
smaller is padded with isolated vertices.

Hard caps: p^k <= 2^20 per field (enforced by turanlab.ff) and q^s <= 2^22
per construction; beyond them CapExceededError is raised.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from functools import lru_cache

from .errors import CapExceededError, InvariantViolationError
from .ff import is_prime, make_field, norm, prime_power_decompose
from .hypergraph import BipartiteGraph, Graph, SemibipartiteThreeGraph, iter_bits
from .patterns import PatternSpec, iter_graph_embeddings

MAX_CONSTRUCTION_ORDER = 1 << 22
MAX_DELETION_VERTICES = 1 << 10


def _validate_construction(q: int, s: int) -> tuple[int, int]:
    p, k = prime_power_decompose(q)
    if s < 2:
        raise ValueError("need s >= 2")
    if q**s > MAX_CONSTRUCTION_ORDER:
        raise CapExceededError(f"q^s = {q**s} exceeds {MAX_CONSTRUCTION_ORDER}")
    return p, k


@lru_cache(maxsize=64)
def _norm_indices(q: int, s: int) -> tuple[int, ...]:
    """idx of N(z) in F_q for every z in F_{q^(s-1)}, by idx of z."""
    p, k = prime_power_decompose(q)
    big = make_field(p, k * (s - 1))
    return tuple(norm(big.from_index(i), q, s).idx for i in range(big.order))


def vertex_id(q: int, big_idx: int, small_idx: int) -> int:
    """Vertex number of (X, x) with X given by big-field idx, x by F_q idx >= 1."""
    if small_idx < 1:
        raise ValueError("second coordinate must be a nonzero field element")
    return big_idx * (q - 1) + small_idx - 1


def vertex_coords(q: int, v: int) -> tuple[int, int]:
    """Inverse of vertex_id."""
    return v // (q - 1), v % (q - 1) + 1


def _norm_partners(q: int, s: int):
    """Yield (u, v) over all vertices u and their unique partner per Y."""
    p, k = prime_power_decompose(q)
    big = make_field(p, k * (s - 1))
    sub = make_field(p, k)
    norms = _norm_indices(q, s)
    sub_els = list(sub.elements())
    inv_idx = [0] * q
    for i in range(1, q):
        inv_idx[i] = sub_els[i].inverse().idx
    big_els = list(big.elements())
    for xi in range(big.order):
        x_el = big_els[xi]
        neg_xi = (-x_el).idx
        for a in range(1, q):
            u = vertex_id(q, xi, a)
            inv_a = sub_els[inv_idx[a]]
            for yi in range(big.order):
                if yi == neg_xi:
                    continue
                nrm = norms[(x_el + big_els[yi]).idx]
                b = (sub_els[nrm] * inv_a).idx
                yield u, vertex_id(q, yi, b)


def norm_graph(q: int, s: int) -> Graph:
    """The norm graph on q^(s-1) * (q-1) vertices (loops dropped)."""
    _validate_construction(q, s)
    n = q ** (s - 1) * (q - 1)
    edges = [(u, v) for u, v in _norm_partners(q, s) if u < v]
    return Graph(n, edges)


def bipartite_norm_graph(q: int, s: int) -> BipartiteGraph:
    """Two copies of the norm-graph vertex set joined by the same equation,
    restricted to distinct labels (the diagonal is never an edge)."""
    _validate_construction(q, s)
    n = q ** (s - 1) * (q - 1)
    return BipartiteGraph(n, n, [(u, v) for u, v in _norm_partners(q, s) if u != v])


def norm_ratio_count(q: int, s: int, x_idx: int, y_idx: int, lam_idx: int) -> int:
    """Number of Z with N(X + Z) = lam * N(Y + Z), for X != Y, lam != 0.

    The two excluded points Z = -X and Z = -Y never satisfy the equation
    (one side vanishes, the other does not), so plain enumeration suffices.
    The count is checked against the q^(s-2) floor before returning.
    """
    p, k = _validate_construction(q, s)
    if s < 3:
        raise ValueError("ratio counts need s >= 3")
    big = make_field(p, k * (s - 1))
    sub = make_field(p, k)
    if x_idx == y_idx:
        raise ValueError("need two distinct first coordinates")
    if not 1 <= lam_idx < q:
        raise ValueError("ratio must be a nonzero element of the small field")
    x_el = big.from_index(x_idx)
    y_el = big.from_index(y_idx)
    lam = sub.from_index(lam_idx)
    norms = _norm_indices(q, s)
    sub_els = list(sub.elements())
    count = 0
    for z_el in big.elements():
        lhs = norms[(x_el + z_el).idx]
        rhs = (lam * sub_els[norms[(y_el + z_el).idx]]).idx
        if lhs == rhs:
            count += 1
    if count < q ** (s - 2):
        raise InvariantViolationError(
            f"ratio count {count} below floor {q ** (s - 2)} at ({q},{s},{x_idx},{y_idx},{lam_idx})"
        )
    return count


@dataclass(frozen=True)
class ComposedConstruction:
    """Two norm-graph layers on one index set plus their triangle 3-graph."""

    p: int
    s1: int
    s2: int
    n: int
    q: int
    q_tilde: int
    v1_layer: Graph
    cross_layer: BipartiteGraph
    hypergraph: SemibipartiteThreeGraph


def composed_sizes(p: int, s1: int, s2: int) -> tuple[int, int, int, int, int]:
    """(q, q_tilde, n, cross order, layer order) for the composed parameters."""
    if s1 < 3 or s2 < 3:
        raise ValueError("need s1, s2 >= 3")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    q = p**s2
    qt = p**s1
    n_cross = q**s1 - q ** (s1 - 1)
    n_layer = qt**s2 - qt ** (s2 - 1)
    return q, qt, max(n_cross, n_layer), n_cross, n_layer


def composed_construction(p: int, s1: int, s2: int) -> ComposedConstruction:
    """Overlay norm layers for parameters (p, s1, s2) and collect triangles.

    Every triple is a layer edge {u, v} in the left part together with a
    right vertex w adjacent to both u and v in the cross layer.
    """
    q, qt, n, n_cross, n_layer = composed_sizes(p, s1, s2)
    if p ** (s1 * s2) > MAX_CONSTRUCTION_ORDER:
        raise CapExceededError(
            f"p^(s1*s2) = {p ** (s1 * s2)} exceeds {MAX_CONSTRUCTION_ORDER}"
        )

    layer_small = norm_graph(qt, s2)
    layer = Graph(n, list(layer_small.edges))
    cross_small = bipartite_norm_graph(q, s1)
    cross = BipartiteGraph(n, n, list(cross_small.edges))

    triples = []
    for u, v in layer.edges:
        for w in iter_bits(cross.left_adj[u] & cross.left_adj[v]):
            triples.append((u, v, w))
    hg = SemibipartiteThreeGraph(n, n, triples)
    return ComposedConstruction(p, s1, s2, n, q, qt, layer, cross, hg)


@dataclass(frozen=True)
class DeletionResult:
    """Outcome of the probabilistic construct-then-repair lower bound."""

    graph: Graph
    n: int
    probability: float
    initial_edges: int
    copies_found: int
    edges_deleted: int
    seed: int


def _is_forest(core: BipartiteGraph) -> bool:
    nv = core.m + core.n
    parent = list(range(nv))

    def find(a):
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for u, w in core.edges:
        a, b = find(u), find(core.m + w)
        if a == b:
            return False
        parent[a] = b
    return True


def random_deletion_lower_bound(n: int, spec: PatternSpec, seed: int = 0) -> DeletionResult:
    """Sample G(n, p*) and delete one edge from each surviving pattern copy.

    p* = n^(-(v-2)/(e-1)) / 2 with v, e the pattern's vertex and edge counts.
    Copies are collected as deduplicated edge sets in lexicographic order;
    each still-intact copy loses its smallest edge, so at most one edge is
    spent per copy and the result is pattern-free.
    """
    if spec.expansion or spec.placement != "unordered":
        raise ValueError("deletion bound works on plain graph patterns")
    if n > MAX_DELETION_VERTICES:
        raise CapExceededError(f"n = {n} exceeds {MAX_DELETION_VERTICES}")
    core = spec.core
    v = core.m + core.n
    e = core.edge_count
    if n < v:
        raise ValueError(f"need n >= {v} host vertices")
    if e < 2 or _is_forest(core):
        raise ValueError("pattern must contain a cycle")
    prob = 0.5 * n ** (-(v - 2) / (e - 1))
    rng = random.Random(seed)
    edges = [
        (u, w) for u in range(n) for w in range(u + 1, n) if rng.random() < prob
    ]
    g = Graph(n, edges)

    copies = set()
    for emb in iter_graph_embeddings(g, spec):
        copy = tuple(
            sorted(tuple(sorted((emb[a], emb[core.m + b]))) for a, b in core.edges)
        )
        copies.add(copy)

    alive = set(g.edges)
    deleted = 0
    for copy in sorted(copies):
        if all(pair in alive for pair in copy):
            alive.discard(copy[0])
            deleted += 1
    return DeletionResult(
        graph=Graph(n, sorted(alive)),
        n=n,
        probability=prob,
        initial_edges=g.edge_count,
        copies_found=len(copies),
        edges_deleted=deleted,
        seed=seed,
    )
