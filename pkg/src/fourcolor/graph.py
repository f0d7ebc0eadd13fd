"""Embedded graphs: a simple undirected graph plus a rotation system.

Every vertex stores its neighbors in cyclic order. That order is *defined* to be
clockwise; nothing in this package computes embeddings from abstract graphs.
Faces are traced with the usual dart walk: the dart ``u -> v`` is followed by
``v -> w`` where ``w`` is the successor of ``u`` in the rotation at ``v``.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import AsymmetryError, ConsistencyError, DomainError, DuplicateNeighborError, StructureError

Coloring = dict[int, int]
"""Partial map vertex id -> color in {1, 2, 3, 4}."""

COLORS = (1, 2, 3, 4)


@dataclass(frozen=True)
class EliminationStep:
    """Everything needed to put a removed vertex back exactly where it was."""

    vertex: int
    neighbors_cyclic: tuple[int, ...]
    # index at which `vertex` sat in each neighbor's rotation
    rotation_positions: tuple[int, ...]

    def __post_init__(self):
        if len(self.neighbors_cyclic) != len(self.rotation_positions):
            raise ConsistencyError("neighbors_cyclic and rotation_positions differ in length")


@dataclass(frozen=True)
class EmbeddingReport:
    vertices: int
    edges: int
    faces: int
    ok: bool
    # (n(v), n(e), n(f)) per connected component that has at least one edge
    components: tuple[tuple[int, int, int], ...] = ()

    @property
    def euler_characteristic(self) -> int:
        return self.vertices - self.edges + self.faces


class EmbeddedGraph:
    """Simple undirected graph with a cyclic neighbor order at every vertex.

    Vertex ids are non-negative integers. Ids of removed vertices are never
    handed out again by :meth:`add_vertex`, so elimination records stay
    unambiguous; :meth:`restore_vertex` is the only way a retired id comes back.
    """

    def __init__(self, rotations: Mapping[int, Sequence[int]] | None = None, *, check: bool = True):
        self._rot: dict[int, list[int]] = {}
        self._next_id = 0
        if rotations:
            for v in sorted(rotations):
                if not isinstance(v, int) or v < 0:
                    raise DomainError(f"vertex ids must be non-negative integers, got {v!r}")
                self._rot[v] = list(rotations[v])
            self._next_id = max(self._rot) + 1
        if check:
            self.check_structure()

    # ------------------------------------------------------------------ basics

    def __contains__(self, v: object) -> bool:
        return v in self._rot

    def __len__(self) -> int:
        return len(self._rot)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self._rot))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, EmbeddedGraph):
            return NotImplemented
        return self._rot == other._rot

    def __repr__(self) -> str:
        return f"EmbeddedGraph(n={len(self)}, m={self.number_of_edges()})"

    @property
    def vertices(self) -> list[int]:
        return sorted(self._rot)

    @property
    def next_id(self) -> int:
        return self._next_id

    def rotations(self) -> dict[int, list[int]]:
        """Copy of the full rotation system, keyed by vertex id."""
        return {v: list(self._rot[v]) for v in sorted(self._rot)}

    def copy(self) -> EmbeddedGraph:
        g = EmbeddedGraph(check=False)
        g._rot = {v: list(r) for v, r in self._rot.items()}
        g._next_id = self._next_id
        return g

    def subgraph(self, vertices: Iterable[int]) -> EmbeddedGraph:
        """Induced subgraph; rotations are the originals with outside vertices dropped."""
        keep = set(vertices)
        g = EmbeddedGraph(check=False)
        g._rot = {v: [u for u in self._rot[v] if u in keep] for v in sorted(keep)}
        g._next_id = self._next_id
        return g

    def _require(self, v: int) -> list[int]:
        try:
            return self._rot[v]
        except KeyError:
            raise DomainError(f"unknown vertex {v!r}") from None

    def degree(self, v: int) -> int:
        return len(self._require(v))

    def neighbors_cyclic(self, v: int) -> list[int]:
        return list(self._require(v))

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._rot and v in self._rot[u]

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, rot in self._rot.items() for v in rot if u < v)

    def number_of_edges(self) -> int:
        return sum(len(r) for r in self._rot.values()) // 2

    def degree_sequence(self) -> list[int]:
        return [len(self._rot[v]) for v in sorted(self._rot)]

    def check_structure(self) -> None:
        """Raise StructureError unless the rotation system is simple and symmetric."""
        for v, rot in self._rot.items():
            if len(set(rot)) != len(rot):
                raise DuplicateNeighborError(v, next(u for u in rot if rot.count(u) > 1))
            for u in rot:
                if u == v:
                    raise StructureError(f"self-loop at vertex {v}")
                if u not in self._rot:
                    raise StructureError(f"vertex {v} lists unknown neighbor {u}")
                if v not in self._rot[u]:
                    raise AsymmetryError(v, u)

    # -------------------------------------------------------------- mutation

    def add_vertex(self) -> int:
        v = self._next_id
        self._rot[v] = []
        self._next_id += 1
        return v

    def insert_neighbor(self, v: int, u: int, after: int | None = None) -> None:
        """Put ``u`` into the rotation at ``v``, immediately after ``after``.

        Only one half of the edge is touched; callers update both endpoints.
        """
        rot = self._require(v)
        if after is None:
            rot.append(u)
        else:
            rot.insert(rot.index(after) + 1, u)

    def delete_neighbor(self, v: int, u: int) -> None:
        self._require(v).remove(u)

    def remove_vertex(self, v: int) -> EliminationStep:
        """Delete ``v`` and its edges, closing each neighbor's rotation gap."""
        nbrs = self._require(v)
        positions = []
        for u in nbrs:
            rot = self._rot[u]
            i = rot.index(v)
            del rot[i]
            positions.append(i)
        del self._rot[v]
        return EliminationStep(v, tuple(nbrs), tuple(positions))

    def restore_vertex(self, step: EliminationStep) -> None:
        """Exact inverse of :meth:`remove_vertex`."""
        v = step.vertex
        if v in self._rot:
            raise ConsistencyError(f"vertex {v} is already present")
        for u, pos in zip(step.neighbors_cyclic, step.rotation_positions):
            if u not in self._rot:
                raise ConsistencyError(f"cannot restore {v}: neighbor {u} is missing")
            if pos > len(self._rot[u]):
                raise ConsistencyError(f"cannot restore {v}: rotation of {u} is too short for position {pos}")
        for u, pos in zip(step.neighbors_cyclic, step.rotation_positions):
            self._rot[u].insert(pos, v)
        self._rot[v] = list(step.neighbors_cyclic)
        self._next_id = max(self._next_id, v + 1)

    # ---------------------------------------------------------------- faces

    def faces(self) -> list[list[int]]:
        """All faces of the rotation system as vertex cycles (dart-walk order)."""
        succ = {}
        for v, rot in self._rot.items():
            d = len(rot)
            for k, u in enumerate(rot):
                succ[(v, u)] = rot[(k + 1) % d]
        seen: set[tuple[int, int]] = set()
        out = []
        for u in sorted(self._rot):
            for v in self._rot[u]:
                if (u, v) in seen:
                    continue
                face = []
                a, b = u, v
                while (a, b) not in seen:
                    seen.add((a, b))
                    face.append(a)
                    a, b = b, succ[(b, a)]
                out.append(face)
        return out


def connected_components(g: EmbeddedGraph) -> list[set[int]]:
    """Vertex sets of the connected components, ordered by smallest member."""
    rot = g._rot
    seen: set[int] = set()
    comps = []
    for s in sorted(rot):
        if s in seen:
            continue
        comp = {s}
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for u in rot[v]:
                if u not in comp:
                    comp.add(u)
                    queue.append(u)
        seen |= comp
        comps.append(comp)
    return comps


def validate_embedding(g: EmbeddedGraph) -> EmbeddingReport:
    """Trace faces and check n(v) - n(e) + n(f) = 2 on every component with an edge."""
    g.check_structure()
    faces = g.faces()
    owner = {}
    comps = connected_components(g)
    for k, comp in enumerate(comps):
        for v in comp:
            owner[v] = k
    face_count = [0] * len(comps)
    for f in faces:
        face_count[owner[f[0]]] += 1
    per_comp = []
    ok = True
    for k, comp in enumerate(comps):
        m = sum(len(g._rot[v]) for v in comp) // 2
        if m == 0:
            continue
        per_comp.append((len(comp), m, face_count[k]))
        if len(comp) - m + face_count[k] != 2:
            ok = False
    return EmbeddingReport(
        vertices=len(g),
        edges=g.number_of_edges(),
        faces=len(faces),
        ok=ok,
        components=tuple(per_comp),
    )


def from_faces(faces: Iterable[Sequence[int]]) -> EmbeddedGraph:
    """Build a rotation system from consistently oriented face boundaries.

    For a face listed as ``(f0, f1, f2, ...)`` the walk ``f0 -> f1 -> f2`` means
    ``f2`` follows ``f0`` in the rotation at ``f1``. Each rotation is returned
    starting from its smallest neighbor.
    """
    succ: dict[int, dict[int, int]] = {}
    for face in faces:
        k = len(face)
        for j in range(k):
            a, b, c = face[j], face[(j + 1) % k], face[(j + 2) % k]
            if a in succ.setdefault(b, {}):
                raise StructureError(f"dart {a}->{b} appears in two faces; orientation is inconsistent")
            succ[b][a] = c
    rot = {}
    for v, nxt in succ.items():
        start = min(nxt)
        cyc = [start]
        u = nxt[start]
        while u != start:
            if u in cyc or u not in nxt:
                raise StructureError(f"faces around vertex {v} do not close into a single cycle")
            cyc.append(u)
            u = nxt[u]
        if len(cyc) != len(nxt):
            raise StructureError(f"faces around vertex {v} do not close into a single cycle")
        rot[v] = cyc
    return EmbeddedGraph(rot)


def verify_coloring(g: EmbeddedGraph, col: Mapping[int, int]) -> list[tuple[int, int]]:
    """Violations of a total proper coloring.

    Monochromatic edges come back as ``(u, v)`` with ``u < v``. A vertex that is
    uncolored, or colored outside 1..4, is reported as the pair ``(v, v)``.
    The list is empty iff ``col`` is a proper 4-coloring of every vertex.
    """
    bad = [(v, v) for v in g if col.get(v) not in COLORS]
    for u, v in g.edges():
        cu = col.get(u)
        if cu is not None and cu == col.get(v):
            bad.append((u, v))
    return bad
