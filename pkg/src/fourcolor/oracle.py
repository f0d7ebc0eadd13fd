"""Exact k-coloring by backtracking.

Independent ground truth for small graphs: it ignores the rotation system and
shares no code with the Kempe machinery.
"""

from __future__ import annotations

import sys
from dataclasses import dataclass
from typing import Iterable, Mapping, Union

from .graph import Coloring, EmbeddedGraph

DEFAULT_NODE_BUDGET = 10**7

GraphLike = Union[EmbeddedGraph, Mapping[int, Iterable[int]]]


@dataclass(frozen=True)
class OracleResult:
    coloring: Coloring | None
    nodes_explored: int
    exhausted: bool = False  # node budget ran out before the search finished

    @property
    def found(self) -> bool:
        return self.coloring is not None


def _adjacency(g: GraphLike) -> dict[int, set[int]]:
    if isinstance(g, EmbeddedGraph):
        return {v: set(g.neighbors_cyclic(v)) for v in g}
    adj: dict[int, set[int]] = {v: set() for v in g}
    for v, nbrs in g.items():
        for u in nbrs:
            if u == v:
                continue
            adj[v].add(u)
            adj.setdefault(u, set()).add(v)
    return adj


def exact_k_coloring(g: GraphLike, k: int, node_budget: int | None = None) -> OracleResult:
    """Proper coloring with colors 1..k if one exists.

    Vertices are assigned in descending-degree order (ties by id), colors in
    ascending order, with forward checking. A vertex may open at most one new
    color beyond those already in use, which fixes the first vertex to color 1
    and removes color-permutation symmetry.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    adj = _adjacency(g)
    order = sorted(adj, key=lambda v: (-len(adj[v]), v))
    if not order:
        return OracleResult({}, 0)
    # blocked[v][c] = number of colored neighbors of v that use color c
    blocked = {v: [0] * (k + 1) for v in order}
    col: Coloring = {}
    nodes = 0
    budget = node_budget if node_budget is not None else -1

    def free(v: int) -> int:
        b = blocked[v]
        return sum(1 for c in range(1, k + 1) if b[c] == 0)

    def assign(v: int, c: int) -> bool:
        col[v] = c
        ok = True
        for u in adj[v]:
            blocked[u][c] += 1
            if ok and u not in col and blocked[u][c] == 1 and free(u) == 0:
                ok = False
        return ok

    def unassign(v: int) -> None:
        c = col.pop(v)
        for u in adj[v]:
            blocked[u][c] -= 1

    exhausted = False

    def search(idx: int, used: int) -> bool:
        nonlocal nodes, exhausted
        if idx == len(order):
            return True
        v = order[idx]
        for c in range(1, min(used + 1, k) + 1):
            if blocked[v][c]:
                continue
            if budget >= 0 and nodes >= budget:
                exhausted = True
                return False
            nodes += 1
            if assign(v, c) and search(idx + 1, max(used, c)):
                return True
            unassign(v)
            if exhausted:
                return False
        return False

    limit = sys.getrecursionlimit()
    if len(order) + 100 > limit:
        sys.setrecursionlimit(len(order) + 100)
    try:
        found = search(0, 0)
    finally:
        sys.setrecursionlimit(limit)
    return OracleResult(dict(col) if found else None, nodes, exhausted)


def chromatic_number_upto(g: GraphLike, kmax: int) -> int | str:
    """Smallest k <= kmax admitting a proper k-coloring, else ``"greater"``."""
    if kmax < 1:
        raise ValueError("kmax must be >= 1")
    for k in range(1, kmax + 1):
        if exact_k_coloring(g, k).found:
            return k
    return "greater"
