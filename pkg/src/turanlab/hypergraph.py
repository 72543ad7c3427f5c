"""Graph, bipartite graph and 3-graph containers with dense integer labels.

All edge sets use set semantics: duplicate edges in the input are an error,
never silently deduplicated.  Every constructor asserts the degree handshake
(sum of degrees = r * |edges| for r-uniform structures).  Adjacency is kept
as int bitmasks.  Objects are immutable once built.

JSON schema (one object per file, edges sorted ascending):

    {"kind": "graph",          "n": int,           "edges": [[u, v], ...]}
    {"kind": "bipartite",      "m": int, "n": int, "edges": [[u, w], ...]}
    {"kind": "3graph",         "n": int,           "edges": [[a, b, c], ...]}
    {"kind": "semibipartite3", "m": int, "n": int, "edges": [[u, v, w], ...]}

Bipartite edges pair a left index u < m with a right index w < n.
Semibipartite triples have two left indices u < v < m and one right w < n.
"""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator

from .errors import InvariantViolationError


def iter_bits(mask: int) -> Iterator[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def mask_of(vertices: Iterable[int]) -> int:
    m = 0
    for v in vertices:
        m |= 1 << v
    return m


@dataclass(frozen=True)
class DegreeStats:
    maximum: int
    minimum: int
    average: Fraction
    degrees: tuple[int, ...]


def _check_handshake(degrees: Iterable[int], rank: int, edge_count: int) -> None:
    if sum(degrees) != rank * edge_count:
        raise InvariantViolationError("degree handshake failed")


class Graph:
    """Simple undirected graph on vertices 0..n-1."""

    __slots__ = ("n", "edges", "adj")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]]):
        if n < 0:
            raise ValueError("n must be >= 0")
        norm_edges = []
        for e in edges:
            u, v = e
            if u == v:
                raise ValueError(f"loop at {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge {e} out of range for n={n}")
            norm_edges.append((u, v) if u < v else (v, u))
        if len(set(norm_edges)) != len(norm_edges):
            raise ValueError("duplicate edges in input")
        self.n = n
        self.edges = tuple(sorted(norm_edges))
        adj = [0] * n
        for u, v in self.edges:
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        self.adj = tuple(adj)
        _check_handshake((a.bit_count() for a in adj), 2, len(self.edges))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def induced(self, vertices: Iterable[int]) -> tuple["Graph", tuple[int, ...]]:
        """Induced subgraph with dense relabeling; returns (graph, old labels)."""
        labels = tuple(sorted(set(vertices)))
        pos = {v: i for i, v in enumerate(labels)}
        sub = [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos]
        return Graph(len(labels), sub), labels

    def induced_bipartite(
        self, left: Iterable[int], right: Iterable[int]
    ) -> tuple["BipartiteGraph", tuple[int, ...], tuple[int, ...]]:
        """Edges of this graph crossing two disjoint vertex sets, relabeled densely."""
        lt = tuple(sorted(set(left)))
        rt = tuple(sorted(set(right)))
        if set(lt) & set(rt):
            raise ValueError("parts must be disjoint")
        lp = {v: i for i, v in enumerate(lt)}
        rp = {v: i for i, v in enumerate(rt)}
        sub = []
        for u, v in self.edges:
            if u in lp and v in rp:
                sub.append((lp[u], rp[v]))
            elif v in lp and u in rp:
                sub.append((lp[v], rp[u]))
        return BipartiteGraph(len(lt), len(rt), sub), lt, rt

    def to_json_dict(self) -> dict:
        return {"kind": "graph", "n": self.n, "edges": [list(e) for e in self.edges]}

    def __eq__(self, other) -> bool:
        return isinstance(other, Graph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash(("graph", self.n, self.edges))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={len(self.edges)})"


class BipartiteGraph:
    """Bipartite graph with ordered parts of sizes m (left) and n (right)."""

    __slots__ = ("m", "n", "edges", "left_adj", "right_adj")

    def __init__(self, m: int, n: int, edges: Iterable[tuple[int, int]]):
        if m < 0 or n < 0:
            raise ValueError("part sizes must be >= 0")
        norm_edges = []
        for e in edges:
            u, w = e
            if not (0 <= u < m and 0 <= w < n):
                raise ValueError(f"edge {e} out of range for parts ({m},{n})")
            norm_edges.append((u, w))
        if len(set(norm_edges)) != len(norm_edges):
            raise ValueError("duplicate edges in input")
        self.m = m
        self.n = n
        self.edges = tuple(sorted(norm_edges))
        la = [0] * m
        ra = [0] * n
        for u, w in self.edges:
            la[u] |= 1 << w
            ra[w] |= 1 << u
        self.left_adj = tuple(la)
        self.right_adj = tuple(ra)
        _check_handshake(
            [a.bit_count() for a in la] + [a.bit_count() for a in ra], 2, len(self.edges)
        )

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, w: int) -> bool:
        return bool(self.left_adj[u] >> w & 1)

    def to_json_dict(self) -> dict:
        return {
            "kind": "bipartite",
            "m": self.m,
            "n": self.n,
            "edges": [list(e) for e in self.edges],
        }

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, BipartiteGraph)
            and (self.m, self.n) == (other.m, other.n)
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash(("bipartite", self.m, self.n, self.edges))

    def __repr__(self) -> str:
        return f"BipartiteGraph(m={self.m}, n={self.n}, edges={len(self.edges)})"


class ThreeGraph:
    """3-uniform hypergraph on vertices 0..n-1."""

    __slots__ = ("n", "edges")

    def __init__(self, n: int, edges: Iterable[tuple[int, int, int]]):
        if n < 0:
            raise ValueError("n must be >= 0")
        norm_edges = []
        for e in edges:
            t = tuple(sorted(e))
            if len(t) != 3 or len(set(t)) != 3:
                raise ValueError(f"not a 3-set: {e}")
            if not all(0 <= v < n for v in t):
                raise ValueError(f"edge {e} out of range for n={n}")
            norm_edges.append(t)
        if len(set(norm_edges)) != len(norm_edges):
            raise ValueError("duplicate edges in input")
        self.n = n
        self.edges = tuple(sorted(norm_edges))
        _check_handshake(self.degree_sequence(), 3, len(self.edges))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree_sequence(self) -> list[int]:
        deg = [0] * self.n
        for e in self.edges:
            for v in e:
                deg[v] += 1
        return deg

    def induced(self, vertices: Iterable[int]) -> tuple["ThreeGraph", tuple[int, ...]]:
        labels = tuple(sorted(set(vertices)))
        pos = {v: i for i, v in enumerate(labels)}
        sub = [
            (pos[a], pos[b], pos[c])
            for a, b, c in self.edges
            if a in pos and b in pos and c in pos
        ]
        return ThreeGraph(len(labels), sub), labels

    def induced_semibipartite(
        self, left: Iterable[int], right: Iterable[int]
    ) -> tuple["SemibipartiteThreeGraph", tuple[int, ...], tuple[int, ...]]:
        """Edges with exactly two vertices in `left` and one in `right`, relabeled."""
        lt = tuple(sorted(set(left)))
        rt = tuple(sorted(set(right)))
        if set(lt) & set(rt):
            raise ValueError("parts must be disjoint")
        lp = {v: i for i, v in enumerate(lt)}
        rp = {v: i for i, v in enumerate(rt)}
        sub = []
        for e in self.edges:
            inl = [v for v in e if v in lp]
            inr = [v for v in e if v in rp]
            if len(inl) == 2 and len(inr) == 1:
                u, v = sorted(lp[x] for x in inl)
                sub.append((u, v, rp[inr[0]]))
        return SemibipartiteThreeGraph(len(lt), len(rt), sub), lt, rt

    def to_json_dict(self) -> dict:
        return {"kind": "3graph", "n": self.n, "edges": [list(e) for e in self.edges]}

    def __eq__(self, other) -> bool:
        return isinstance(other, ThreeGraph) and self.n == other.n and self.edges == other.edges

    def __hash__(self) -> int:
        return hash(("3graph", self.n, self.edges))

    def __repr__(self) -> str:
        return f"ThreeGraph(n={self.n}, edges={len(self.edges)})"


class SemibipartiteThreeGraph:
    """3-graph whose every edge has exactly two vertices in the left part.

    Edges are stored as (u, v, w) with left indices u < v < m and right index
    w < n.  Left and right indices are separate dense ranges.
    """

    __slots__ = ("m", "n", "edges")

    def __init__(self, m: int, n: int, edges: Iterable[tuple[int, int, int]]):
        if m < 0 or n < 0:
            raise ValueError("part sizes must be >= 0")
        norm_edges = []
        for e in edges:
            u, v, w = e
            if u == v:
                raise ValueError(f"repeated left vertex in {e}")
            if u > v:
                u, v = v, u
            if not (0 <= u < m and 0 <= v < m and 0 <= w < n):
                raise ValueError(f"edge {e} out of range for parts ({m},{n})")
            norm_edges.append((u, v, w))
        if len(set(norm_edges)) != len(norm_edges):
            raise ValueError("duplicate edges in input")
        self.m = m
        self.n = n
        self.edges = tuple(sorted(norm_edges))
        _check_handshake(self.degree_sequence(), 3, len(self.edges))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def degree_sequence(self) -> list[int]:
        """Degrees of left vertices 0..m-1 followed by right vertices 0..n-1."""
        deg = [0] * (self.m + self.n)
        for u, v, w in self.edges:
            deg[u] += 1
            deg[v] += 1
            deg[self.m + w] += 1
        return deg

    def to_three_graph(self) -> ThreeGraph:
        """Plain 3-graph on m+n vertices; right part shifted by m."""
        return ThreeGraph(
            self.m + self.n, [(u, v, self.m + w) for u, v, w in self.edges]
        )

    def to_json_dict(self) -> dict:
        return {
            "kind": "semibipartite3",
            "m": self.m,
            "n": self.n,
            "edges": [list(e) for e in self.edges],
        }

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, SemibipartiteThreeGraph)
            and (self.m, self.n) == (other.m, other.n)
            and self.edges == other.edges
        )

    def __hash__(self) -> int:
        return hash(("semibipartite3", self.m, self.n, self.edges))

    def __repr__(self) -> str:
        return f"SemibipartiteThreeGraph(m={self.m}, n={self.n}, edges={len(self.edges)})"


# -- shadows, links, degree statistics --


def shadow(h: ThreeGraph | SemibipartiteThreeGraph, i: int):
    """i=1: set of pairs covered by some edge.  i=2: set of covered vertices.

    Semibipartite input is viewed as its plain 3-graph (right part shifted).
    """
    if isinstance(h, SemibipartiteThreeGraph):
        h = h.to_three_graph()
    if i == 1:
        out: set = set()
        for a, b, c in h.edges:
            out.add((a, b))
            out.add((a, c))
            out.add((b, c))
        return out
    if i == 2:
        verts: set = set()
        for e in h.edges:
            verts.update(e)
        return verts
    raise ValueError(f"shadow order must be 1 or 2, got {i}")


def link_degree(h: ThreeGraph | SemibipartiteThreeGraph, t: Iterable[int]):
    """Link of a 1- or 2-subset and its degree.

    |T| = 1: the link is the set of pairs completing T to an edge (a graph on
    the remaining vertices).  |T| = 2: the set of completing vertices.
    Returns (link, degree) with degree = len(link).
    """
    if isinstance(h, SemibipartiteThreeGraph):
        h = h.to_three_graph()
    tset = frozenset(t)
    if len(tset) == 1:
        (v,) = tset
        link = {tuple(sorted(set(e) - tset)) for e in h.edges if v in e}
        return link, len(link)
    if len(tset) == 2:
        link = {next(iter(set(e) - tset)) for e in h.edges if tset <= set(e)}
        return link, len(link)
    raise ValueError("T must have one or two vertices")


def degree_stats(g: Graph | BipartiteGraph | ThreeGraph | SemibipartiteThreeGraph) -> DegreeStats:
    if isinstance(g, Graph):
        degs = [g.degree(v) for v in range(g.n)]
    elif isinstance(g, BipartiteGraph):
        degs = [a.bit_count() for a in g.left_adj] + [a.bit_count() for a in g.right_adj]
    else:
        degs = g.degree_sequence()
    if not degs:
        return DegreeStats(0, 0, Fraction(0), ())
    return DegreeStats(max(degs), min(degs), Fraction(sum(degs), len(degs)), tuple(degs))


# -- serialization --

_KINDS = {"graph", "bipartite", "3graph", "semibipartite3"}


def from_json_dict(d: dict):
    kind = d.get("kind")
    if kind not in _KINDS:
        raise ValueError(f"unknown kind: {kind!r}")
    edges = [tuple(e) for e in d["edges"]]
    if kind == "graph":
        return Graph(d["n"], edges)
    if kind == "bipartite":
        return BipartiteGraph(d["m"], d["n"], edges)
    if kind == "3graph":
        return ThreeGraph(d["n"], edges)
    return SemibipartiteThreeGraph(d["m"], d["n"], edges)


def dumps_canonical(obj) -> str:
    """Canonical single-line JSON used for files and content hashing."""
    d = obj.to_json_dict() if hasattr(obj, "to_json_dict") else obj
    return json.dumps(d, sort_keys=True, separators=(",", ":"))


def content_hash(obj) -> str:
    """Git-style blob hash (sha1 over 'blob <len>\\0<bytes>') of canonical JSON."""
    payload = dumps_canonical(obj).encode()
    return hashlib.sha1(b"blob %d\0%s" % (len(payload), payload)).hexdigest()


def loads(text: str):
    return from_json_dict(json.loads(text))


# -- graph6 (plain graphs only) --


def _g6_encode_n(n: int) -> bytes:
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return bytes([126, (n >> 12) + 63, ((n >> 6) & 63) + 63, (n & 63) + 63])
    raise ValueError("graph6 export supports n <= 258047")


def to_graph6(g: Graph) -> str:
    bits = []
    for v in range(1, g.n):
        for u in range(v):
            bits.append(1 if g.has_edge(u, v) else 0)
    while len(bits) % 6:
        bits.append(0)
    body = bytearray()
    for i in range(0, len(bits), 6):
        val = 0
        for b in bits[i : i + 6]:
            val = val << 1 | b
        body.append(val + 63)
    return (_g6_encode_n(g.n) + bytes(body)).decode("ascii")


def from_graph6(text: str) -> Graph:
    data = [c - 63 for c in text.strip().encode("ascii")]
    if any(not 0 <= d <= 63 for d in data):
        raise ValueError("invalid graph6 byte")
    if data[0] == 63:  # 126 - 63: long form
        n = data[1] << 12 | data[2] << 6 | data[3]
        data = data[4:]
    else:
        n = data[0]
        data = data[1:]
    need = n * (n - 1) // 2
    bits = []
    for d in data:
        for shift in range(5, -1, -1):
            bits.append(d >> shift & 1)
    if len(bits) < need or any(bits[need:]):
        raise ValueError("graph6 payload length mismatch")
    edges = []
    i = 0
    for v in range(1, n):
        for u in range(v):
            if bits[i]:
                edges.append((u, v))
            i += 1
    return Graph(n, edges)
