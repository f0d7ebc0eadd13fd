"""Two-color subgraphs: Kempe components, Kempe chains and component swaps."""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Mapping, NamedTuple

from .errors import ConsistencyError, DomainError
from .graph import COLORS, Coloring, EmbeddedGraph


class ColorPair(NamedTuple):
    i: int
    j: int

    @classmethod
    def of(cls, a: int, b: int) -> ColorPair:
        if a == b or a not in COLORS or b not in COLORS:
            raise DomainError(f"invalid color pair ({a}, {b})")
        return cls(min(a, b), max(a, b))

    def other(self, c: int) -> int:
        return self.j if c == self.i else self.i

    def __str__(self) -> str:
        return f"({self.i},{self.j})"


@dataclass(frozen=True)
class KempeComponent:
    pair: ColorPair
    members: frozenset[int]
    anchor: int

    def __contains__(self, v: object) -> bool:
        return v in self.members

    def __len__(self) -> int:
        return len(self.members)


@dataclass(frozen=True)
class KempeChain:
    pair: ColorPair
    path: tuple[int, ...]


def _check_anchor(col: Mapping[int, int], pair: ColorPair, v: int) -> None:
    c = col.get(v)
    if c is None:
        raise DomainError(f"vertex {v} is uncolored")
    if c not in pair:
        raise DomainError(f"vertex {v} has color {c}, outside pair {pair}")


def component(g: EmbeddedGraph, col: Mapping[int, int], pair: ColorPair, v: int) -> KempeComponent:
    """Connected component of the pair's two-color subgraph that contains ``v``."""
    pair = ColorPair.of(*pair)
    if v not in g:
        raise DomainError(f"unknown vertex {v!r}")
    _check_anchor(col, pair, v)
    seen = {v}
    queue = deque([v])
    while queue:
        x = queue.popleft()
        for y in g.neighbors_cyclic(x):
            if y not in seen and col.get(y) in pair:
                seen.add(y)
                queue.append(y)
    return KempeComponent(pair, frozenset(seen), v)


def find_chain(
    g: EmbeddedGraph, col: Mapping[int, int], pair: ColorPair, u: int, v: int
) -> KempeChain | None:
    """Shortest ``u``-``v`` path through pair-colored vertices, or None.

    BFS expands neighbors in increasing id order, so the path is unique.
    """
    pair = ColorPair.of(*pair)
    for x in (u, v):
        if x not in g:
            raise DomainError(f"unknown vertex {x!r}")
        _check_anchor(col, pair, x)
    parent = {u: u}
    queue = deque([u])
    while queue:
        x = queue.popleft()
        if x == v:
            break
        for y in sorted(g.neighbors_cyclic(x)):
            if y not in parent and col.get(y) in pair:
                parent[y] = x
                queue.append(y)
    if v not in parent:
        return None
    path = [v]
    while path[-1] != u:
        path.append(parent[path[-1]])
    return KempeChain(pair, tuple(reversed(path)))


def swap_component(col: Mapping[int, int], comp: KempeComponent) -> Coloring:
    """New coloring with ``i`` and ``j`` exchanged on the component's members."""
    pair = comp.pair
    out = dict(col)
    for v in comp.members:
        c = col.get(v)
        if c not in pair:
            raise ConsistencyError(f"stale component: member {v} has color {c}, outside {pair}")
        out[v] = pair.other(c)
    return out
