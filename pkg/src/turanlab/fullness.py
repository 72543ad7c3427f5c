"""Degree-floor cleanup for 3-graphs.

A fullness spec lists disjoint groups of vertex subsets (all singletons or
all pairs) with a floor per group.  A 3-graph is full when every listed
subset has degree zero or at least its group's floor.  extract_full removes
offenders: scan groups in order and each group's subsets in lexicographic
order; on finding a subset whose degree lies strictly between zero and the
floor, delete every edge containing it and restart the scan.  A subset's
degree never rises, so each is deleted at most once and at most floor - 1
edges are spent on it, which gives the retained-size guarantee

    |result| >= |input| - sum_j (floor_j - 1) * |group_j|.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import InvariantViolationError
from .hypergraph import ThreeGraph


@dataclass(frozen=True)
class FullnessGroup:
    elements: tuple[tuple[int, ...], ...]
    floor: int


@dataclass(frozen=True)
class FullnessSpec:
    groups: tuple[FullnessGroup, ...]
    subset_size: int

    def __post_init__(self):
        if self.subset_size not in (1, 2):
            raise ValueError("subset size must be 1 or 2 for 3-graphs")
        seen = set()
        for g in self.groups:
            if g.floor < 1:
                raise ValueError("floors must be >= 1")
            for e in g.elements:
                if len(e) != self.subset_size:
                    raise ValueError(f"subset {e} has the wrong size")
                if tuple(sorted(e)) != e or len(set(e)) != len(e):
                    raise ValueError(f"subset {e} must be sorted and distinct")
                if e in seen:
                    raise ValueError(f"subset {e} appears in two groups")
                seen.add(e)

    def deletion_budget(self) -> int:
        return sum((g.floor - 1) * len(g.elements) for g in self.groups)


def vertex_spec(n: int, floor: int) -> FullnessSpec:
    """One group holding every vertex."""
    return FullnessSpec((FullnessGroup(tuple((v,) for v in range(n)), floor),), 1)


def pair_spec(n: int, floor: int) -> FullnessSpec:
    """One group holding every vertex pair."""
    elements = tuple((u, v) for u in range(n) for v in range(u + 1, n))
    return FullnessSpec((FullnessGroup(elements, floor),), 2)


@dataclass(frozen=True)
class FullnessResult:
    hypergraph: ThreeGraph
    deleted_elements: tuple[tuple[int, tuple[int, ...]], ...]
    deleted_edges: int
    lower_bound: int


def _contains(edge: tuple[int, int, int], subset: tuple[int, ...]) -> bool:
    if len(subset) == 1:
        return subset[0] in edge
    return subset[0] in edge and subset[1] in edge


def is_full(h: ThreeGraph, spec: FullnessSpec) -> bool:
    for g in spec.groups:
        for e in g.elements:
            d = sum(1 for t in h.edges if _contains(t, e))
            if 0 < d < g.floor:
                return False
    return True


def extract_full(h: ThreeGraph, spec: FullnessSpec) -> FullnessResult:
    """Run the scan-and-restart deletion until the spec is satisfied."""
    for g in spec.groups:
        for e in g.elements:
            if e and e[-1] >= h.n:
                raise ValueError(f"subset {e} outside the vertex range")
    alive = set(h.edges)
    deg: dict[tuple[int, ...], int] = {}
    for g in spec.groups:
        for e in g.elements:
            deg[e] = sum(1 for t in alive if _contains(t, e))

    deleted_elements = []
    deleted_edges = 0
    changed = True
    while changed:
        changed = False
        for gi, g in enumerate(spec.groups):
            for e in g.elements:
                if 0 < deg[e] < g.floor:
                    doomed = [t for t in alive if _contains(t, e)]
                    for t in doomed:
                        alive.remove(t)
                        for e2 in deg:
                            if _contains(t, e2):
                                deg[e2] -= 1
                    deleted_elements.append((gi, e))
                    deleted_edges += len(doomed)
                    changed = True
                    break
            if changed:
                break

    result = ThreeGraph(h.n, sorted(alive))
    if not is_full(result, spec):
        raise InvariantViolationError("extraction left an unfull subset")
    lower = len(h.edges) - spec.deletion_budget()
    if len(result.edges) < lower:
        raise InvariantViolationError("retained-size guarantee violated")
    return FullnessResult(result, tuple(deleted_elements), deleted_edges, lower)
