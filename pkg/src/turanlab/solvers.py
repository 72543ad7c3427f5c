"""Exact extremal solvers and closed-form bound certificates.

Three branch-and-bound solvers compute exact extremal edge counts on hosts
small enough for exhaustive reasoning:

* ``ex_exact``: pattern-free graphs or 3-graphs on ``n`` vertices, with an
  optional maximum-degree floor (only hosts whose largest degree reaches
  the floor count as feasible).
* ``z_exact``: bipartite hosts with parts ``(m, n)`` avoiding every given
  pattern, respecting each pattern's placement.
* ``z_expansion_exact``: semibipartite 3-graph hosts avoiding one ordered
  expansion pattern and one core-in-V1 expansion pattern simultaneously.

All three walk the lexicographic edge universe depth first, trying
inclusion before exclusion, and prune a branch when (i) the new edge
completes a forbidden pattern, (ii) the incumbent cannot be beaten even if
every remaining edge were added, or (iii) degree-ordered symmetry breaking
rules the branch out.  Because inclusion is tried first and the incumbent
is replaced only on strict improvement, the reported witness is the
lexicographically smallest optimal edge set among the hosts the
symmetry-reduced search visits.  Every witness is re-verified against the
full pattern finders before being returned.

``eval_bound`` evaluates the closed-form upper bounds that accompany the
solvers with high-precision arithmetic (mpmath) and records which formula
branch applied.  Comparisons against exact integers should use the
high-precision value, never a rounded float.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

import mpmath

from .errors import CapExceededError, InvariantViolationError
from .hypergraph import BipartiteGraph, Graph, SemibipartiteThreeGraph, ThreeGraph
from .patterns import (
    PatternSpec,
    expansion_through_triple,
    find_expansion,
    find_in_graph,
    find_ordered_bipartite,
    pattern_through_edge,
)

MAX_EX_GRAPH_VERTICES = 10
MAX_EX_THREE_VERTICES = 8
MAX_Z_CELLS = 30
MAX_Z_EXPANSION_SIDE = 4

BOUND_IDS = ("kst_ex", "kst_z", "nv_cycle", "z_exp_i", "z_exp_ii")

_BOUND_DPS = 40


@dataclass(frozen=True)
class SolveResult:
    """Outcome of an exact solve: extremal value, one witness, search size.

    ``witness`` is None only when a degree floor makes every pattern-free
    host infeasible; the value is then 0 by convention.  ``nodes_explored``
    counts decision-tree nodes entered, including pruned ones.
    """

    value: int
    witness: Graph | BipartiteGraph | ThreeGraph | SemibipartiteThreeGraph | None
    nodes_explored: int

    def to_json_dict(self) -> dict:
        return {
            "value": self.value,
            "witness": None if self.witness is None else self.witness.to_json_dict(),
            "nodes_explored": self.nodes_explored,
        }


def _normalize_specs(patterns) -> tuple[PatternSpec, ...]:
    if isinstance(patterns, PatternSpec):
        specs: tuple[PatternSpec, ...] = (patterns,)
    else:
        specs = tuple(patterns)
    if not specs:
        raise ValueError("need at least one pattern")
    for spec in specs:
        if not isinstance(spec, PatternSpec):
            raise ValueError(f"not a pattern spec: {spec!r}")
        if spec.core.edge_count == 0:
            raise ValueError("pattern needs at least one core edge")
    return specs


def _sym_boundaries(finalize_at: dict[int, int], limit: int) -> dict[int, tuple[int, ...]]:
    """Group vertices by the universe index where their degree is final."""
    acc: dict[int, list[int]] = {}
    for u, fi in finalize_at.items():
        acc.setdefault(min(fi, limit), []).append(u)
    return {i: tuple(sorted(us)) for i, us in acc.items()}


def _link_add(pair_link: dict, t: tuple[int, int, int]) -> None:
    a, b, c = t
    for x, y, w in ((a, b, c), (a, c, b), (b, c, a)):
        pair_link[(x, y)] = pair_link.get((x, y), 0) | (1 << w)


def _link_remove(pair_link: dict, t: tuple[int, int, int]) -> None:
    a, b, c = t
    for x, y, w in ((a, b, c), (a, c, b), (b, c, a)):
        left = pair_link[(x, y)] & ~(1 << w)
        if left:
            pair_link[(x, y)] = left
        else:
            del pair_link[(x, y)]


def ex_exact(
    n: int,
    patterns: PatternSpec | Sequence[PatternSpec],
    host_kind: str = "graph",
    degree_floor: int | None = None,
    symmetry: bool = True,
) -> SolveResult:
    """Exact maximum edge count of a pattern-free host on n vertices.

    ``patterns`` is a single spec or a sequence; every listed pattern is
    forbidden.  ``host_kind`` selects plain graphs or 3-uniform hosts; the
    latter take expansion patterns.  With ``degree_floor`` set, only hosts
    whose maximum degree is at least the floor are feasible.  A floor no
    host on n vertices can meet raises ValueError; a floor that merely
    conflicts with the patterns yields value 0 and witness None.
    """
    specs = _normalize_specs(patterns)
    if n < 0:
        raise ValueError("n must be >= 0")
    if host_kind == "graph":
        if n > MAX_EX_GRAPH_VERTICES:
            raise CapExceededError(f"graph solver capped at n <= {MAX_EX_GRAPH_VERTICES}")
        for spec in specs:
            if spec.expansion:
                raise ValueError("expansion pattern against a graph host")
            if spec.placement != "unordered":
                raise ValueError("graph hosts have no parts; use unordered placement")
        universe = list(combinations(range(n), 2))
        max_degree = max(n - 1, 0)
        rank = 2
    elif host_kind == "3graph":
        if n > MAX_EX_THREE_VERTICES:
            raise CapExceededError(f"3-graph solver capped at n <= {MAX_EX_THREE_VERTICES}")
        for spec in specs:
            if not spec.expansion:
                raise ValueError("graph pattern against a 3-graph host")
            if spec.placement != "unordered":
                raise ValueError("3-graph hosts have no parts; use unordered placement")
        universe = list(combinations(range(n), 3))
        max_degree = (n - 1) * (n - 2) // 2 if n >= 2 else 0
        rank = 3
    else:
        raise ValueError(f"unknown host kind {host_kind!r}")

    floor = None
    if degree_floor is not None:
        floor = int(degree_floor)
        if floor < 0:
            raise ValueError("degree floor must be >= 0")
        if floor > max_degree:
            raise ValueError(
                f"degree floor {floor} exceeds the largest possible degree {max_degree}"
            )
        if floor == 0:
            floor = None

    L = len(universe)
    suffix_inc: list[list[int]] | None = None
    if floor is not None:
        suffix_inc = [[0] * n for _ in range(L + 1)]
        for i in range(L - 1, -1, -1):
            row = list(suffix_inc[i + 1])
            for x in universe[i]:
                row[x] += 1
            suffix_inc[i] = row

    sym_checks: dict[int, tuple[int, ...]] = {}
    if symmetry and n >= 2 and L:
        block_start: dict[int, int] = {}
        for i, e in enumerate(universe):
            block_start.setdefault(e[0], i)
        sym_checks = _sym_boundaries(
            {u: block_start.get(u + 1, L) for u in range(1, n)}, L
        )

    full = (1 << n) - 1
    adj = [0] * n
    pair_link: dict[tuple[int, int], int] = {}
    deg = [0] * n
    chosen: list[tuple] = []
    best = -1
    best_edges: tuple = ()
    found = False
    nodes = 0

    def rec(i: int, count: int) -> None:
        nonlocal best, best_edges, found, nodes
        nodes += 1
        us = sym_checks.get(i)
        if us:
            for u in us:
                if deg[u] > deg[u - 1]:
                    return
            u = us[-1]
            # degrees of vertices >= u are capped by deg[u-1] on any
            # surviving leaf, bounding the total edge count
            cap = sum(deg[v] for v in range(u)) + (n - u) * deg[u - 1]
            if cap // rank <= best:
                return
        if suffix_inc is not None:
            row = suffix_inc[i]
            if all(deg[v] + row[v] < floor for v in range(n)):
                return
        if count + (L - i) <= best:
            return
        if i == L:
            best = count
            best_edges = tuple(chosen)
            found = True
            return
        e = universe[i]
        if rank == 2:
            u, v = e
            adj[u] |= 1 << v
            adj[v] |= 1 << u
            hit = any(pattern_through_edge(adj, s, u, v, full, full) for s in specs)
            if not hit:
                deg[u] += 1
                deg[v] += 1
                chosen.append(e)
                rec(i + 1, count + 1)
                chosen.pop()
                deg[u] -= 1
                deg[v] -= 1
            adj[u] &= ~(1 << v)
            adj[v] &= ~(1 << u)
        else:
            _link_add(pair_link, e)
            hit = any(
                expansion_through_triple(n, pair_link, s, e, full, full, False)
                for s in specs
            )
            if not hit:
                for x in e:
                    deg[x] += 1
                chosen.append(e)
                rec(i + 1, count + 1)
                chosen.pop()
                for x in e:
                    deg[x] -= 1
            _link_remove(pair_link, e)
        rec(i + 1, count)

    rec(0, 0)

    if not found:
        return SolveResult(0, None, nodes)
    if host_kind == "graph":
        witness: Graph | ThreeGraph = Graph(n, best_edges)
        misses = [find_in_graph(witness, s) is None for s in specs]
    else:
        witness = ThreeGraph(n, best_edges)
        misses = [find_expansion(witness, s) is None for s in specs]
    if not all(misses) or witness.edge_count != best:
        raise InvariantViolationError("witness failed the independent freeness re-check")
    return SolveResult(best, witness, nodes)


def z_exact(
    m: int,
    n: int,
    patterns: PatternSpec | Sequence[PatternSpec],
    symmetry: bool = True,
) -> SolveResult:
    """Exact maximum edges of a pattern-free bipartite host with parts (m, n).

    Patterns must be plain graph patterns.  Ordered placement pins a
    pattern's left part to the host's left part; unordered forbids both
    orientations.
    """
    specs = _normalize_specs(patterns)
    if m < 0 or n < 0:
        raise ValueError("part sizes must be >= 0")
    if m * n > MAX_Z_CELLS:
        raise CapExceededError(f"bipartite solver capped at m*n <= {MAX_Z_CELLS}")
    for spec in specs:
        if spec.expansion:
            raise ValueError("expansion pattern against a bipartite host")

    universe = [(u, w) for u in range(m) for w in range(n)]
    L = len(universe)
    left_mask = (1 << m) - 1
    right_mask = ((1 << n) - 1) << m

    sym_checks: dict[int, tuple[int, ...]] = {}
    if symmetry and m >= 2 and L:
        sym_checks = _sym_boundaries({u: (u + 1) * n for u in range(1, m)}, L)

    adj = [0] * (m + n)
    deg = [0] * m
    chosen: list[tuple[int, int]] = []
    best = -1
    best_edges: tuple = ()
    nodes = 0

    def rec(i: int, count: int) -> None:
        nonlocal best, best_edges, nodes
        nodes += 1
        us = sym_checks.get(i)
        if us:
            for u in us:
                if deg[u] > deg[u - 1]:
                    return
            u = us[-1]
            # every edge has one left endpoint, so left degrees sum to |E|
            cap = sum(deg[v] for v in range(u)) + (m - u) * deg[u - 1]
            if cap <= best:
                return
        if count + (L - i) <= best:
            return
        if i == L:
            best = count
            best_edges = tuple(chosen)
            return
        u, w = universe[i]
        hw = m + w
        adj[u] |= 1 << hw
        adj[hw] |= 1 << u
        hit = any(
            pattern_through_edge(adj, s, u, hw, left_mask, right_mask) for s in specs
        )
        if not hit:
            deg[u] += 1
            chosen.append((u, w))
            rec(i + 1, count + 1)
            chosen.pop()
            deg[u] -= 1
        adj[u] &= ~(1 << hw)
        adj[hw] &= ~(1 << u)
        rec(i + 1, count)

    rec(0, 0)

    witness = BipartiteGraph(m, n, best_edges)
    if any(find_ordered_bipartite(witness, s) is not None for s in specs):
        raise InvariantViolationError("witness failed the independent freeness re-check")
    if witness.edge_count != best:
        raise InvariantViolationError("witness edge count disagrees with the solve value")
    return SolveResult(best, witness, nodes)


def z_expansion_exact(
    m: int,
    n: int,
    ordered_pattern: PatternSpec,
    core_in_v1_pattern: PatternSpec,
    symmetry: bool = True,
) -> SolveResult:
    """Exact maximum edges of a semibipartite 3-graph avoiding both patterns.

    The host has m left (V1) and n right (V2) vertices and every edge takes
    two left vertices and one right.  ``ordered_pattern`` must be an
    expansion with ordered placement, ``core_in_v1_pattern`` an expansion
    with core-in-V1 placement.
    """
    for spec, want in ((ordered_pattern, "ordered"), (core_in_v1_pattern, "core-in-V1")):
        if not isinstance(spec, PatternSpec) or not spec.expansion or spec.placement != want:
            raise ValueError(f"need an expansion pattern with {want} placement")
    if m < 0 or n < 0:
        raise ValueError("part sizes must be >= 0")
    if m > MAX_Z_EXPANSION_SIDE or n > MAX_Z_EXPANSION_SIDE:
        raise CapExceededError(
            f"semibipartite solver capped at parts <= {MAX_Z_EXPANSION_SIDE}"
        )
    specs = (ordered_pattern, core_in_v1_pattern)

    pairs = list(combinations(range(m), 2))
    universe = [(u, v, w) for (u, v) in pairs for w in range(n)]
    L = len(universe)
    nv = m + n
    left_mask = (1 << m) - 1
    right_mask = ((1 << n) - 1) << m

    sym_checks: dict[int, tuple[int, ...]] = {}
    if symmetry and m >= 2 and L:
        pairs_upto = {}
        cnt = 0
        for u in range(m):
            cnt += m - 1 - u
            pairs_upto[u] = cnt
        sym_checks = _sym_boundaries(
            {u: pairs_upto[u] * n for u in range(1, m)}, L
        )

    pair_link: dict[tuple[int, int], int] = {}
    deg = [0] * m
    chosen: list[tuple[int, int, int]] = []
    best = -1
    best_edges: tuple = ()
    nodes = 0

    def rec(i: int, count: int) -> None:
        nonlocal best, best_edges, nodes
        nodes += 1
        us = sym_checks.get(i)
        if us:
            for u in us:
                if deg[u] > deg[u - 1]:
                    return
            u = us[-1]
            # every edge has two left endpoints, so left degrees sum to 2|E|
            cap = sum(deg[v] for v in range(u)) + (m - u) * deg[u - 1]
            if cap // 2 <= best:
                return
        if count + (L - i) <= best:
            return
        if i == L:
            best = count
            best_edges = tuple(chosen)
            return
        u, v, w = universe[i]
        t = (u, v, m + w)
        _link_add(pair_link, t)
        hit = any(
            expansion_through_triple(nv, pair_link, s, t, left_mask, right_mask, True)
            for s in specs
        )
        if not hit:
            deg[u] += 1
            deg[v] += 1
            chosen.append((u, v, w))
            rec(i + 1, count + 1)
            chosen.pop()
            deg[u] -= 1
            deg[v] -= 1
        _link_remove(pair_link, t)
        rec(i + 1, count)

    rec(0, 0)

    witness = SemibipartiteThreeGraph(m, n, best_edges)
    if any(find_expansion(witness, s) is not None for s in specs):
        raise InvariantViolationError("witness failed the independent freeness re-check")
    if witness.edge_count != best:
        raise InvariantViolationError("witness edge count disagrees with the solve value")
    return SolveResult(best, witness, nodes)


# -- closed-form bound evaluation --


@dataclass(frozen=True, eq=True)
class BoundCertificate:
    """An evaluated closed-form bound.

    ``value`` is an mpmath high-precision real; ``branch`` records which
    case of the formula applied; ``components`` carries the named auxiliary
    quantities for the expansion bounds (f, g, h, r) when they exist.
    """

    bound_id: str
    params: dict
    value: mpmath.mpf
    branch: str
    components: dict | None = None

    def to_json_dict(self) -> dict:
        out = {
            "bound_id": self.bound_id,
            "params": dict(self.params),
            "value": float(self.value),
            "value_str": mpmath.nstr(self.value, 24),
            "branch": self.branch,
        }
        if self.components is not None:
            out["components"] = {k: float(v) for k, v in self.components.items()}
        return out


_BOUND_PARAMS = {
    "kst_ex": ("n", "s", "t"),
    "kst_z": ("m", "n", "s", "t"),
    "nv_cycle": ("m", "n", "k"),
    "z_exp_i": ("m", "n", "s1", "t1", "s2", "t2"),
    "z_exp_ii": ("m", "n", "s1", "t1", "s2", "t2"),
}


def _check_bound_params(bound_id: str, params: dict) -> dict[str, int]:
    keys = _BOUND_PARAMS[bound_id]
    if set(params) != set(keys):
        raise ValueError(
            f"{bound_id} takes parameters {{{', '.join(keys)}}}, got {sorted(params)}"
        )
    vals = {}
    for k in keys:
        v = params[k]
        if v != int(v):
            raise ValueError(f"parameter {k} must be an integer, got {v!r}")
        v = int(v)
        if v < 1:
            raise ValueError(f"parameter {k} must be >= 1, got {v}")
        vals[k] = v
    if bound_id == "nv_cycle" and any(vals[k] < 2 for k in ("m", "n", "k")):
        raise ValueError("cycle bound needs m, n, k >= 2")
    if bound_id in ("z_exp_i", "z_exp_ii"):
        if not (vals["t1"] >= vals["s1"] >= 2 and vals["t2"] >= vals["s2"] >= 2):
            raise ValueError("expansion bounds need t1 >= s1 >= 2 and t2 >= s2 >= 2")
    return vals


def z_expansion_components(
    variant: str, m: int, n: int, s1: int, t1: int, s2: int, t2: int
) -> dict:
    """Auxiliary quantities f, g, h, r behind the expansion bounds.

    Variant "i" treats the host as dominated by right-side growth, variant
    "ii" by left-side growth; both share r and h.  Values are mpmath reals.
    """
    if variant not in ("i", "ii"):
        raise ValueError("variant must be 'i' or 'ii'")
    with mpmath.workdps(_BOUND_DPS):
        mm = mpmath.mpf(m)
        nn = mpmath.mpf(n)
        one = mpmath.mpf(1)
        r = mpmath.mpf((s1 + 1) * (t1 + 1) * m * n + (s2 + 1) * (t2 + 1) * m * m)
        h = (s2 + t2) * mm ** (2 - one / s2) / 2
        if variant == "i":
            f = (
                (s1 + t1) ** 2 * (s2 + t2) * mm ** (2 - one / s2) * nn ** (1 - 2 * one / s1)
                + 2 * t1 * mm * nn
                + 2 * s1 * nn ** (1 + one / s1)
            )
            g = t1 * mm * nn ** (1 - one / s1) + s1 * nn
        else:
            f = (
                2
                * (s1 + t1)
                * (s2 + t2)
                * (
                    t1 * mm ** (2 - one / s1 - 2 * one / s2 + one / (s1 * s2)) * nn
                    + s1 * mm ** (2 + one / s1 - one / s2)
                )
            )
            g = t1 * nn * mm ** (1 - one / s1) + s1 * mm
        return {"f": f, "g": g, "h": h, "r": r}


def eval_bound(bound_id: str, params: dict) -> BoundCertificate:
    """Evaluate one of the closed-form bounds at integer parameters.

    Known ids: kst_ex and kst_z (complete-bipartite-free edge bounds),
    nv_cycle (even-cycle-free bipartite bound, parity branch recorded),
    z_exp_i and z_exp_ii (semibipartite expansion bounds, value 2f + r).
    """
    if bound_id not in _BOUND_PARAMS:
        raise ValueError(f"unknown bound id {bound_id!r}; known: {', '.join(BOUND_IDS)}")
    vals = _check_bound_params(bound_id, params)
    components = None
    branch = "direct"
    with mpmath.workdps(_BOUND_DPS):
        one = mpmath.mpf(1)
        if bound_id == "kst_ex":
            n, s, t = vals["n"], vals["s"], vals["t"]
            nn = mpmath.mpf(n)
            value = mpmath.root(t - 1, s) / 2 * nn ** (2 - one / s) + mpmath.mpf(s - 1) / 2 * nn
        elif bound_id == "kst_z":
            m, n, s, t = vals["m"], vals["n"], vals["s"], vals["t"]
            mm, nn = mpmath.mpf(m), mpmath.mpf(n)
            value = mpmath.root(t - 1, s) * mm * nn ** (1 - one / s) + (s - 1) * nn
        elif bound_id == "nv_cycle":
            m, n, k = vals["m"], vals["n"], vals["k"]
            mm, nn = mpmath.mpf(m), mpmath.mpf(n)
            if k % 2:
                branch = "odd-k"
                e = one / 2 + one / (2 * k)
                value = (2 * k - 3) * (mm**e * nn**e + mm + nn)
            else:
                branch = "even-k"
                value = (2 * k - 3) * (mm ** (one / 2 + one / k) * nn ** (one / 2) + mm + nn)
        else:
            variant = "i" if bound_id == "z_exp_i" else "ii"
            branch = f"variant-{variant}"
            components = z_expansion_components(
                variant, vals["m"], vals["n"], vals["s1"], vals["t1"], vals["s2"], vals["t2"]
            )
            value = 2 * components["f"] + components["r"]
    return BoundCertificate(bound_id, vals, value, branch, components)
