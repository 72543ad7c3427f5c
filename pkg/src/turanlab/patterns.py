"""Forbidden-pattern specifications and exact containment searches.

A pattern is a bipartite core with ordered parts, optionally expanded: the
expansion of a graph F is the 3-graph F+ obtained by adding one new apex
vertex per edge of F, so v(F+) = v(F) + |F| and the apexes are pairwise
distinct.  Placement controls where a copy may land in a host with parts:

    unordered    anywhere (the only choice for plain graph / 3-graph hosts)
    ordered      first core part into the left host part, second into the right
    core-in-V1   both core parts inside the left host part (expansions only)

Apexes of an expansion copy are unconstrained by placement; they sit wherever
the host's edges put them.

Vertex labels in witnesses are combined host labels: for bipartite and
semibipartite hosts the right part is shifted by the left part size.

Search strategy: complete bipartite cores K_{s,t} go through an ascending
s-subset enumeration with running common-neighborhood intersection; all other
cores go through a most-constrained-first backtracking embedder.  Expansion
copies are decided per core embedding by maximum bipartite matching between
core edges and eligible apexes.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from itertools import combinations
from typing import Iterator

from .errors import InvariantViolationError
from .hypergraph import (
    BipartiteGraph,
    Graph,
    SemibipartiteThreeGraph,
    ThreeGraph,
    iter_bits,
)

PLACEMENTS = ("unordered", "ordered", "core-in-V1")


@dataclass(frozen=True)
class PatternSpec:
    """A forbidden pattern: bipartite core, optional expansion, placement."""

    core: BipartiteGraph
    expansion: bool = False
    placement: str = "unordered"
    name: str = ""

    def __post_init__(self):
        if self.placement not in PLACEMENTS:
            raise ValueError(f"unknown placement: {self.placement!r}")
        if self.placement == "core-in-V1" and not self.expansion:
            raise ValueError("core-in-V1 placement applies to expansions only")

    @property
    def is_complete(self) -> bool:
        return self.core.edge_count == self.core.m * self.core.n

    @property
    def vertex_count(self) -> int:
        return self.core.m + self.core.n

    def with_placement(self, placement: str) -> "PatternSpec":
        return PatternSpec(self.core, self.expansion, placement, self.name)

    def display_name(self) -> str:
        base = self.name or f"bipartite({self.core.m},{self.core.n})"
        if self.expansion and not base.endswith("+"):
            base += "+"
        if self.placement != "unordered":
            base += f" {self.placement}"
        return base


@dataclass(frozen=True)
class EmbeddingWitness:
    """Injective image of the core's vertices, in pattern vertex order."""

    core_map: tuple[int, ...]


@dataclass(frozen=True)
class ExpansionWitness:
    """Core embedding plus one distinct apex per core edge."""

    core_map: tuple[int, ...]
    core_edges: tuple[tuple[int, int], ...]
    apexes: tuple[int, ...]


@dataclass(frozen=True)
class ExpandedGraph:
    """Expansion of a graph: original vertices 0..core_n-1, one apex per edge."""

    hypergraph: ThreeGraph
    core_n: int
    core_edges: tuple[tuple[int, int], ...]
    apexes: tuple[int, ...]


# -- pattern library --


def complete_bipartite(s: int, t: int, expansion: bool = False, placement: str = "unordered") -> PatternSpec:
    if s < 1 or t < 1:
        raise ValueError("part sizes must be >= 1")
    core = BipartiteGraph(s, t, [(i, j) for i in range(s) for j in range(t)])
    return PatternSpec(core, expansion, placement, f"K{{{s},{t}}}")


def even_cycle(length: int, expansion: bool = False, placement: str = "unordered") -> PatternSpec:
    if length < 4 or length % 2:
        raise ValueError("cycle length must be even and >= 4")
    k = length // 2
    edges = [(i, i) for i in range(k)] + [((i + 1) % k, i) for i in range(k)]
    return PatternSpec(BipartiteGraph(k, k, sorted(set(edges))), expansion, placement, f"C{length}")


def _bipartite_from_graph(g: Graph, name: str) -> BipartiteGraph:
    color = [-1] * g.n
    for start in range(g.n):
        if color[start] >= 0:
            continue
        color[start] = 0
        queue = [start]
        while queue:
            v = queue.pop()
            for u in iter_bits(g.adj[v]):
                if color[u] < 0:
                    color[u] = 1 - color[v]
                    queue.append(u)
                elif color[u] == color[v]:
                    raise ValueError(f"{name} is not bipartite")
    left = [v for v in range(g.n) if color[v] == 0]
    right = [v for v in range(g.n) if color[v] == 1]
    lp = {v: i for i, v in enumerate(left)}
    rp = {v: i for i, v in enumerate(right)}
    edges = []
    for u, v in g.edges:
        if color[u] == 0:
            edges.append((lp[u], rp[v]))
        else:
            edges.append((lp[v], rp[u]))
    return BipartiteGraph(len(left), len(right), edges)


def theta(a: int, b: int, c: int, expansion: bool = False, placement: str = "unordered") -> PatternSpec:
    """Two hub vertices joined by three internally disjoint paths of a, b, c edges."""
    lens = (a, b, c)
    if min(lens) < 1:
        raise ValueError("path lengths must be >= 1")
    if len({x % 2 for x in lens}) != 1:
        raise ValueError("path lengths must share parity (bipartite pattern)")
    if sorted(lens)[1] == 1:
        raise ValueError("at most one path may be a single edge")
    edges = []
    nxt = 2  # 0 and 1 are the hubs
    for plen in lens:
        prev = 0
        for step in range(plen - 1):
            edges.append(tuple(sorted((prev, nxt))))
            prev = nxt
            nxt += 1
        edges.append(tuple(sorted((prev, 1))))
    g = Graph(nxt, edges)
    return PatternSpec(_bipartite_from_graph(g, "theta"), expansion, placement, f"theta{{{a},{b},{c}}}")


def grid_2x2(expansion: bool = False, placement: str = "unordered") -> PatternSpec:
    """The 3x3 lattice of vertices (a 2x2 grid of cells), 12 edges."""
    edges = []
    for r in range(3):
        for col in range(3):
            v = 3 * r + col
            if col < 2:
                edges.append((v, v + 1))
            if r < 2:
                edges.append((v, v + 3))
    g = Graph(9, edges)
    return PatternSpec(_bipartite_from_graph(g, "grid2x2"), expansion, placement, "grid2x2")


_KST_RE = re.compile(r"^K\{(\d+),(\d+)\}$")
_CYC_RE = re.compile(r"^C(\d+)$")
_THETA_RE = re.compile(r"^theta\{(\d+),(\d+),(\d+)\}$")


def parse_pattern(text: str) -> PatternSpec:
    """Parse the compact pattern syntax (grammar documented in turanlab.cli)."""
    tokens = text.strip().split()
    if not tokens or len(tokens) > 2:
        raise ValueError(f"cannot parse pattern: {text!r}")
    base = tokens[0]
    placement = "unordered"
    if len(tokens) == 2:
        if tokens[1] not in ("ordered", "core-in-V1"):
            raise ValueError(f"unknown placement token: {tokens[1]!r}")
        placement = tokens[1]
    expansion = base.endswith("+")
    if expansion:
        base = base[:-1]
    if m := _KST_RE.match(base):
        return complete_bipartite(int(m.group(1)), int(m.group(2)), expansion, placement)
    if m := _CYC_RE.match(base):
        return even_cycle(int(m.group(1)), expansion, placement)
    if m := _THETA_RE.match(base):
        return theta(int(m.group(1)), int(m.group(2)), int(m.group(3)), expansion, placement)
    if base == "grid2x2":
        return grid_2x2(expansion, placement)
    if base.startswith("@"):
        with open(base[1:], encoding="utf-8") as fh:
            d = json.load(fh)
        if d.get("kind") != "bipartite":
            raise ValueError("pattern files must contain a bipartite graph")
        core = BipartiteGraph(d["m"], d["n"], [tuple(e) for e in d["edges"]])
        return PatternSpec(core, expansion, placement, base)
    raise ValueError(f"cannot parse pattern: {text!r}")


def remove_vertex(spec: PatternSpec, v: int) -> PatternSpec:
    """Pattern minus one core vertex (combined label), part order preserved."""
    core = spec.core
    if not 0 <= v < core.m + core.n:
        raise ValueError(f"vertex {v} not in pattern")
    if v < core.m:
        keep = [u for u in range(core.m) if u != v]
        remap = {u: i for i, u in enumerate(keep)}
        edges = [(remap[u], w) for u, w in core.edges if u != v]
        new_core = BipartiteGraph(core.m - 1, core.n, edges)
    else:
        w0 = v - core.m
        keep = [w for w in range(core.n) if w != w0]
        remap = {w: i for i, w in enumerate(keep)}
        edges = [(u, remap[w]) for u, w in core.edges if w != w0]
        new_core = BipartiteGraph(core.m, core.n - 1, edges)
    return PatternSpec(new_core, spec.expansion, spec.placement, f"{spec.name or 'pattern'}-v{v}")


# -- expansion of a concrete graph --


def expand(f: Graph | BipartiteGraph) -> ExpandedGraph:
    """The 3-graph F+ with one fresh apex per edge of F."""
    if isinstance(f, BipartiteGraph):
        core_n = f.m + f.n
        core_edges = tuple(sorted((u, f.m + w) for u, w in f.edges))
    else:
        core_n = f.n
        core_edges = f.edges
    apexes = tuple(core_n + i for i in range(len(core_edges)))
    triples = [(u, v, apexes[i]) for i, (u, v) in enumerate(core_edges)]
    return ExpandedGraph(
        ThreeGraph(core_n + len(core_edges), triples), core_n, core_edges, apexes
    )


# -- low-level search engines --


def _iter_kst(adj, s: int, t: int, left_mask: int, right_mask: int) -> Iterator[tuple[tuple, tuple]]:
    """Ascending s-subsets of left_mask whose common neighborhood inside
    right_mask has size >= t, paired with every t-subset of that neighborhood.

    Common neighborhoods never meet the chosen s-set (no self-adjacency), so
    disjointness is automatic.
    """
    left = [v for v in iter_bits(left_mask) if adj[v].bit_count() >= t]

    def rec(start: int, chosen: tuple, inter: int):
        if len(chosen) == s:
            members = list(iter_bits(inter))
            for b in combinations(members, t):
                yield chosen, b
            return
        for pos in range(start, len(left)):
            v = left[pos]
            ninter = inter & adj[v]
            if ninter.bit_count() >= t:
                yield from rec(pos + 1, chosen + (v,), ninter)

    yield from rec(0, (), right_mask)


def _iter_core_embeddings(
    core_n: int,
    core_edges,
    allowed: list[int],
    adj,
    pre: dict[int, int] | None = None,
) -> Iterator[tuple[int, ...]]:
    """All injective maps of an arbitrary core into a host adjacency.

    allowed[i] masks the host vertices permitted for core vertex i; pre fixes
    anchored core vertices.  Core vertices are placed most-constrained-first;
    the first free vertex's candidates are tried in ascending host degree.
    """
    core_adj = [[] for _ in range(core_n)]
    for a, b in core_edges:
        core_adj[a].append(b)
        core_adj[b].append(a)
    host_deg = {v: adj[v].bit_count() for v in range(len(adj))}

    order: list[int] = []
    placed = set(pre or {})
    order.extend(sorted(placed))
    while len(order) < core_n:
        best, best_key = -1, (-1, 0)
        for cv in range(core_n):
            if cv in placed:
                continue
            back = sum(1 for u in core_adj[cv] if u in placed)
            key = (back, len(core_adj[cv]))
            if key > best_key:
                best, best_key = cv, key
        order.append(best)
        placed.add(best)

    core_deg = [len(core_adj[v]) for v in range(core_n)]
    mapping = [-1] * core_n
    used = 0
    if pre:
        for cv, hv in pre.items():
            if not allowed[cv] >> hv & 1 or used >> hv & 1:
                return
            for u in core_adj[cv]:
                hu = pre.get(u)
                if hu is not None and not adj[hv] >> hu & 1:
                    return
            mapping[cv] = hv
            used |= 1 << hv

    first_free = len(pre or {})

    def rec(depth: int) -> Iterator[tuple[int, ...]]:
        nonlocal used
        if depth == core_n:
            yield tuple(mapping)
            return
        cv = order[depth]
        cand = allowed[cv] & ~used
        for u in core_adj[cv]:
            if mapping[u] >= 0:
                cand &= adj[mapping[u]]
        cand_list = [v for v in iter_bits(cand) if host_deg[v] >= core_deg[cv]]
        if depth == first_free:
            cand_list.sort(key=lambda v: (host_deg[v], v))
        for hv in cand_list:
            mapping[cv] = hv
            used |= 1 << hv
            yield from rec(depth + 1)
            used &= ~(1 << hv)
            mapping[cv] = -1

    yield from rec(len(pre or {}))


def _match_distinct(masks: list[int]) -> list[int] | None:
    """Assign one distinct vertex per mask (maximum bipartite matching)."""
    owner: dict[int, int] = {}

    def augment(i: int, seen: set[int]) -> bool:
        m = masks[i]
        while m:
            low = m & -m
            w = low.bit_length() - 1
            m ^= low
            if w in seen:
                continue
            seen.add(w)
            if w not in owner or augment(owner[w], seen):
                owner[w] = i
                return True
        return False

    for i in range(len(masks)):
        if not augment(i, set()):
            return None
    out = [-1] * len(masks)
    for w, i in owner.items():
        out[i] = w
    return out


def _combined_graph_view(g: Graph | BipartiteGraph) -> tuple[int, list[int], int, int]:
    """(vertex count, adjacency, left mask, right mask) with right shifted."""
    if isinstance(g, Graph):
        full = (1 << g.n) - 1
        return g.n, list(g.adj), full, full
    nv = g.m + g.n
    adj = [0] * nv
    for u, w in g.edges:
        adj[u] |= 1 << (g.m + w)
        adj[g.m + w] |= 1 << u
    return nv, adj, (1 << g.m) - 1, ((1 << g.n) - 1) << g.m


def _core_allowed_masks(spec: PatternSpec, left_mask: int, right_mask: int, flip: bool) -> list[int]:
    core = spec.core
    first, second = (right_mask, left_mask) if flip else (left_mask, right_mask)
    return [first] * core.m + [second] * core.n


def _iter_pattern_embeddings(
    spec: PatternSpec,
    adj,
    left_mask: int,
    right_mask: int,
    orientations: tuple[bool, ...] = (False,),
) -> Iterator[tuple[int, ...]]:
    core = spec.core
    combined_edges = [(u, core.m + w) for u, w in core.edges]
    for flip in orientations:
        if spec.is_complete:
            lm, rm = (right_mask, left_mask) if flip else (left_mask, right_mask)
            for a, b in _iter_kst(adj, core.m, core.n, lm, rm):
                yield a + b
        else:
            allowed = _core_allowed_masks(spec, left_mask, right_mask, flip)
            yield from _iter_core_embeddings(core.m + core.n, combined_edges, allowed, adj)


def _orientations_for(spec: PatternSpec, left_mask: int, right_mask: int) -> tuple[bool, ...]:
    """Orientation flips to try: both for unordered placement with distinct
    part masks (unless the pattern is part-symmetric), one otherwise."""
    if spec.placement != "unordered" or left_mask == right_mask:
        return (False,)
    core = spec.core
    if spec.is_complete and core.m == core.n:
        return (False,)
    return (False, True)


# -- public searches --


def find_in_graph(g: Graph, spec: PatternSpec) -> EmbeddingWitness | None:
    """First copy of a graph pattern in a plain graph host, or None."""
    if spec.expansion:
        raise ValueError("expansion pattern against a graph host")
    if spec.placement != "unordered":
        raise ValueError("placement constraints need a host with parts")
    nv, adj, full, _ = _combined_graph_view(g)
    for emb in _iter_pattern_embeddings(spec, adj, full, full):
        return EmbeddingWitness(emb)
    return None


def find_ordered_bipartite(g: BipartiteGraph, spec: PatternSpec) -> EmbeddingWitness | None:
    """First copy of a graph pattern in a bipartite host, or None.

    placement=ordered keeps the core's first part on the host's left side;
    unordered tries both orientations.  Witness labels are combined (right
    part shifted by g.m).
    """
    if spec.expansion:
        raise ValueError("expansion pattern against a bipartite graph host")
    if spec.placement == "core-in-V1":
        raise ValueError("core-in-V1 placement applies to semibipartite hosts")
    nv, adj, left_mask, right_mask = _combined_graph_view(g)
    orients = _orientations_for(spec, left_mask, right_mask)
    for emb in _iter_pattern_embeddings(spec, adj, left_mask, right_mask, orients):
        return EmbeddingWitness(emb)
    return None


def _three_graph_state(h: ThreeGraph | SemibipartiteThreeGraph):
    """(nv, pair_link, left_mask, right_mask) with combined labels."""
    if isinstance(h, SemibipartiteThreeGraph):
        nv = h.m + h.n
        left_mask = (1 << h.m) - 1
        right_mask = ((1 << h.n) - 1) << h.m
        triples = [(u, v, h.m + w) for u, v, w in h.edges]
    else:
        nv = h.n
        left_mask = right_mask = (1 << nv) - 1
        triples = list(h.edges)
    pair_link: dict[tuple[int, int], int] = {}
    for a, b, c in triples:
        pair_link.setdefault((a, b), 0)
        pair_link.setdefault((a, c), 0)
        pair_link.setdefault((b, c), 0)
        pair_link[(a, b)] |= 1 << c
        pair_link[(a, c)] |= 1 << b
        pair_link[(b, c)] |= 1 << a
    return nv, pair_link, left_mask, right_mask


def _shadow_adj(nv: int, pair_link) -> list[int]:
    adj = [0] * nv
    for (a, b), link in pair_link.items():
        if link:
            adj[a] |= 1 << b
            adj[b] |= 1 << a
    return adj


def _expansion_placement_masks(
    spec: PatternSpec, host_has_parts: bool, left_mask: int, right_mask: int
) -> tuple[int, int]:
    if spec.placement == "unordered":
        full = left_mask | right_mask
        return full, full
    if not host_has_parts:
        raise ValueError(f"placement {spec.placement!r} needs a semibipartite host")
    if spec.placement == "ordered":
        return left_mask, right_mask
    return left_mask, left_mask  # core-in-V1


def _try_apex_match(
    core_map: tuple[int, ...],
    combined_edges,
    pair_link,
    forced: tuple[int, int] | None = None,
) -> ExpansionWitness | None:
    """Match distinct apexes to all core edges; forced = (edge index, apex)."""
    core_mask = 0
    for v in core_map:
        core_mask |= 1 << v
    masks = []
    for a, b in combined_edges:
        ha, hb = core_map[a], core_map[b]
        key = (ha, hb) if ha < hb else (hb, ha)
        masks.append(pair_link.get(key, 0) & ~core_mask)
    if forced is not None:
        idx, apex = forced
        if not masks[idx] >> apex & 1:
            return None
        rest = [m & ~(1 << apex) for i, m in enumerate(masks) if i != idx]
        matched = _match_distinct(rest)
        if matched is None:
            return None
        matched.insert(idx, apex)
    else:
        matched = _match_distinct(masks)
        if matched is None:
            return None
    return ExpansionWitness(core_map, tuple(combined_edges), tuple(matched))


def find_expansion(
    h: ThreeGraph | SemibipartiteThreeGraph, spec: PatternSpec
) -> ExpansionWitness | None:
    """First expansion copy in a 3-graph host, or None.

    Core embeddings are enumerated in the shadow; each is completed by a
    maximum matching between core edges and distinct eligible apexes, so a
    core whose edges would have to share an apex is (correctly) rejected.
    """
    if not spec.expansion:
        raise ValueError("graph pattern against a 3-graph host")
    has_parts = isinstance(h, SemibipartiteThreeGraph)
    nv, pair_link, host_left, host_right = _three_graph_state(h)
    adj = _shadow_adj(nv, pair_link)
    lm, rm = _expansion_placement_masks(spec, has_parts, host_left, host_right)
    core = spec.core
    combined_edges = [(u, core.m + w) for u, w in core.edges]
    orients = _orientations_for(spec, lm, rm)
    for emb in _iter_pattern_embeddings(spec, adj, lm, rm, orients):
        witness = _try_apex_match(emb, combined_edges, pair_link)
        if witness is not None:
            return witness
    return None


def iter_graph_embeddings(g: Graph, spec: PatternSpec) -> Iterator[tuple[int, ...]]:
    """Every injective embedding of the core into a plain graph host."""
    if spec.expansion:
        raise ValueError("expansion pattern against a graph host")
    core = spec.core
    combined_edges = [(u, core.m + w) for u, w in core.edges]
    full = (1 << g.n) - 1
    allowed = [full] * (core.m + core.n)
    yield from _iter_core_embeddings(core.m + core.n, combined_edges, allowed, list(g.adj))


# -- solver-facing incremental checks (host state as bitmask adjacency) --


def pattern_through_edge(
    adj: list[int],
    spec: PatternSpec,
    u: int,
    v: int,
    left_mask: int,
    right_mask: int,
) -> bool:
    """Does some copy of the pattern use host edge (u, v)?  adj includes it."""
    core = spec.core
    combined_edges = [(a, core.m + b) for a, b in core.edges]
    anchor_edges = [combined_edges[0]] if spec.is_complete else combined_edges
    for flip in _orientations_for(spec, left_mask, right_mask):
        allowed = _core_allowed_masks(spec, left_mask, right_mask, flip)
        for a, b in anchor_edges:
            for ha, hb in ((u, v), (v, u)):
                if not (allowed[a] >> ha & 1 and allowed[b] >> hb & 1):
                    continue
                for _ in _iter_core_embeddings(
                    core.m + core.n, combined_edges, allowed, adj, pre={a: ha, b: hb}
                ):
                    return True
    return False


def expansion_through_triple(
    nv: int,
    pair_link: dict[tuple[int, int], int],
    spec: PatternSpec,
    triple: tuple[int, int, int],
    left_mask: int,
    right_mask: int,
    host_has_parts: bool,
) -> bool:
    """Does some expansion copy use the given host triple?  pair_link includes it.

    Any new copy must realize one core edge as (pair of the triple, apex =
    its third vertex), so the search anchors each decomposition in turn.
    """
    if not spec.expansion:
        raise ValueError("graph pattern against a 3-graph host")
    lm, rm = _expansion_placement_masks(spec, host_has_parts, left_mask, right_mask)
    adj = _shadow_adj(nv, pair_link)
    core = spec.core
    combined_edges = [(a, core.m + b) for a, b in core.edges]
    anchor_idx = [0] if spec.is_complete else list(range(len(combined_edges)))
    a_, b_, c_ = triple
    decomps = [((a_, b_), c_), ((a_, c_), b_), ((b_, c_), a_)]
    for flip in _orientations_for(spec, lm, rm):
        allowed = _core_allowed_masks(spec, lm, rm, flip)
        for (pu, pv), apex in decomps:
            for ei in anchor_idx:
                ca, cb = combined_edges[ei]
                for ha, hb in ((pu, pv), (pv, pu)):
                    if not (allowed[ca] >> ha & 1 and allowed[cb] >> hb & 1):
                        continue
                    for emb in _iter_core_embeddings(
                        core.m + core.n, combined_edges, allowed, adj, pre={ca: ha, cb: hb}
                    ):
                        if apex in emb:
                            continue
                        if _try_apex_match(emb, combined_edges, pair_link, forced=(ei, apex)):
                            return True
    return False


# -- greedy expansion extension --


def heavy_shadow_graph(h: ThreeGraph, threshold: int) -> Graph:
    """Graph of shadow pairs whose pair degree in h is >= threshold."""
    _, pair_link, _, _ = _three_graph_state(h)
    edges = [pair for pair, link in pair_link.items() if link.bit_count() >= threshold]
    return Graph(h.n, edges)


def greedy_extend(h: ThreeGraph, s_side: tuple[int, ...], t_side: tuple[int, ...]) -> ExpansionWitness:
    """Extend a complete bipartite core in the shadow to an expansion copy.

    Requires every core pair e to satisfy d_h(e) >= s*t + s + t; with that
    floor a fresh apex always exists (at most s + t + s*t - 1 vertices are
    ever excluded).  Apexes are chosen smallest-first in core edge order.
    """
    s, t = len(s_side), len(t_side)
    if s < 1 or t < 1:
        raise ValueError("core sides must be nonempty")
    if len(set(s_side) | set(t_side)) != s + t:
        raise ValueError("core vertices must be distinct")
    _, pair_link, _, _ = _three_graph_state(h)
    need = s * t + s + t
    core_pairs = []
    for a in s_side:
        for b in t_side:
            key = (a, b) if a < b else (b, a)
            deg = pair_link.get(key, 0).bit_count()
            if deg < need:
                raise ValueError(
                    f"pair {key} has degree {deg} < {need}; extension not guaranteed"
                )
            core_pairs.append(key)
    core_mask = 0
    for v in (*s_side, *t_side):
        core_mask |= 1 << v
    used = 0
    apexes = []
    for key in core_pairs:
        avail = pair_link[key] & ~core_mask & ~used
        if not avail:
            raise InvariantViolationError("no apex available despite degree floor")
        w = (avail & -avail).bit_length() - 1
        apexes.append(w)
        used |= 1 << w
    core_map = tuple(s_side) + tuple(t_side)
    combined_edges = tuple((i, s + j) for i in range(s) for j in range(t))
    return ExpansionWitness(core_map, combined_edges, tuple(apexes))


# -- witness verification (direct definition checks, used by tests and harness) --


def verify_graph_witness(g: Graph, spec: PatternSpec, w: EmbeddingWitness) -> bool:
    core = spec.core
    m = w.core_map
    if len(set(m)) != len(m) or any(not 0 <= v < g.n for v in m):
        return False
    return all(g.has_edge(m[a], m[core.m + b]) for a, b in core.edges)


def verify_bipartite_witness(g: BipartiteGraph, spec: PatternSpec, w: EmbeddingWitness) -> bool:
    core = spec.core
    m = w.core_map
    if len(set(m)) != len(m):
        return False
    left = set(range(g.m))
    right = set(range(g.m, g.m + g.n))
    if spec.placement == "ordered":
        if not all(m[i] in left for i in range(core.m)):
            return False
        if not all(m[core.m + j] in right for j in range(core.n)):
            return False
    for a, b in core.edges:
        ha, hb = m[a], m[core.m + b]
        if ha in right:
            ha, hb = hb, ha
        if not (ha in left and hb in right and g.has_edge(ha, hb - g.m)):
            return False
    return True


def verify_expansion_witness(
    h: ThreeGraph | SemibipartiteThreeGraph, spec: PatternSpec, w: ExpansionWitness
) -> bool:
    if isinstance(h, SemibipartiteThreeGraph):
        host = h.to_three_graph()
        left = set(range(h.m))
        right = set(range(h.m, h.m + h.n))
    else:
        host = h
        left = right = set(range(h.n))
    core = spec.core
    m = w.core_map
    if len(set(m)) != len(m) or len(set(w.apexes)) != len(w.apexes):
        return False
    if set(w.apexes) & set(m):
        return False
    if spec.placement == "ordered":
        if not all(m[i] in left for i in range(core.m)):
            return False
        if not all(m[core.m + j] in right for j in range(core.n)):
            return False
    elif spec.placement == "core-in-V1":
        if not all(v in left for v in m):
            return False
    edge_set = set(host.edges)
    for (a, b), apex in zip(w.core_edges, w.apexes):
        tri = tuple(sorted((m[a], m[b], apex)))
        if tri not in edge_set:
            return False
    return len(w.core_edges) == len(core.edges)
