"""Embedded test graphs: named fixtures and seeded random triangulations.

Randomness comes from :class:`random.Random` (MT19937) seeded with the integer
seed given in the spec string, so a ``GenSpec`` fully determines its graph.
"""

from __future__ import annotations

import random
import re
from dataclasses import dataclass

from .errors import DomainError
from .graph import EmbeddedGraph, from_faces

FLIP_ATTEMPTS = 100  # redraws per requested flip before giving up on it

_ICOSAHEDRON_FACES = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 5), (0, 5, 1),
    (1, 6, 2), (2, 7, 3), (3, 8, 4), (4, 9, 5), (5, 10, 1),
    (6, 7, 2), (7, 8, 3), (8, 9, 4), (9, 10, 5), (10, 6, 1),
    (11, 7, 6), (11, 8, 7), (11, 9, 8), (11, 10, 9), (11, 6, 10),
]  # fmt: skip

_OCTAHEDRON_FACES = [
    (0, 1, 2), (0, 2, 3), (0, 3, 4), (0, 4, 1),
    (5, 2, 1), (5, 3, 2), (5, 4, 3), (5, 1, 4),
]  # fmt: skip

# Errera's 17-vertex maximal planar graph; rotations fixed by hand once and
# checked in the test suite (Euler, 45 edges, degree sequence 5^12 6^5).
_ERRERA_ROTATIONS = {
    0: [1, 14, 16, 7, 15],
    1: [0, 15, 9, 2, 14],
    2: [1, 9, 3, 10, 8, 14],
    3: [2, 9, 11, 4, 10],
    4: [3, 11, 5, 12, 10],
    5: [4, 11, 13, 6, 12],
    6: [5, 13, 7, 16, 8, 12],
    7: [6, 13, 15, 0, 16],
    8: [16, 14, 2, 10, 12, 6],
    9: [13, 11, 3, 2, 1, 15],
    10: [8, 2, 3, 4, 12],
    11: [9, 13, 5, 4, 3],
    12: [10, 4, 5, 6, 8],
    13: [7, 6, 5, 11, 9, 15],
    14: [8, 16, 0, 1, 2],
    15: [9, 1, 0, 7, 13],
    16: [7, 0, 14, 8, 6],
}


def k4() -> EmbeddedGraph:
    return from_faces([(0, 1, 2), (0, 2, 3), (0, 3, 1), (1, 3, 2)])


def k5_minus_edge() -> EmbeddedGraph:
    """Triangular bipyramid: equator 0-1-2, poles 3 and 4, no pole-pole edge."""
    return from_faces([(0, 1, 3), (1, 2, 3), (2, 0, 3), (1, 0, 4), (2, 1, 4), (0, 2, 4)])


def k5(rng: random.Random | None = None) -> EmbeddedGraph:
    """K5 with the natural rotation, or a random one when ``rng`` is given."""
    rot = {v: [u for u in range(5) if u != v] for v in range(5)}
    if rng is not None:
        for r in rot.values():
            rng.shuffle(r)
    return EmbeddedGraph(rot)


def wheel(k: int) -> EmbeddedGraph:
    """Hub 0 joined to the rim cycle 1..k; the hub's rotation is 1, 2, ..., k."""
    if k < 3:
        raise DomainError("wheel needs at least 3 rim vertices")
    rim = list(range(1, k + 1))
    faces = [(0, rim[(t + 1) % k], rim[t]) for t in range(k)]
    faces.append(tuple(rim))
    return from_faces(faces)


def octahedron() -> EmbeddedGraph:
    return from_faces(_OCTAHEDRON_FACES)


def icosahedron() -> EmbeddedGraph:
    return from_faces(_ICOSAHEDRON_FACES)


def errera() -> EmbeddedGraph:
    return EmbeddedGraph(_ERRERA_ROTATIONS)


_NAMED = {
    "k4": k4,
    "k5_minus_edge": k5_minus_edge,
    "octahedron": octahedron,
    "icosahedron": icosahedron,
    "errera": errera,
}

NAMED_FIXTURES = ("k4", "k5_minus_edge", "wheel(k)", "octahedron", "icosahedron", "errera")


def named(name: str) -> EmbeddedGraph:
    m = re.fullmatch(r"wheel\(?(\d+)\)?", name)
    if m:
        return wheel(int(m.group(1)))
    try:
        return _NAMED[name]()
    except KeyError:
        raise DomainError(f"unknown named graph {name!r}; expected one of {', '.join(NAMED_FIXTURES)}") from None


def triangle() -> EmbeddedGraph:
    return EmbeddedGraph({0: [1, 2], 1: [2, 0], 2: [0, 1]})


def _insert_in_face(g: EmbeddedGraph, face: tuple[int, int, int]) -> tuple[int, list[tuple[int, int, int]]]:
    a, b, c = face
    x = g.add_vertex()
    # walk a -> b -> c: x goes right after the walk's predecessor at each corner
    g.insert_neighbor(b, x, after=a)
    g.insert_neighbor(c, x, after=b)
    g.insert_neighbor(a, x, after=c)
    for u in (a, c, b):
        g.insert_neighbor(x, u)
    return x, [(a, b, x), (b, c, x), (c, a, x)]


def apollonian(n: int, seed: int) -> EmbeddedGraph:
    """Stacked triangulation: subdivide a uniformly chosen face until n vertices."""
    return _stacked(n, random.Random(seed))


def _stacked(n: int, rng: random.Random) -> EmbeddedGraph:
    if n < 3:
        raise DomainError("apollonian needs n >= 3")
    g = triangle()
    faces = [(0, 1, 2), (0, 2, 1)]
    while len(g) < n:
        k = rng.randrange(len(faces))
        _, new = _insert_in_face(g, faces[k])
        faces[k : k + 1] = new
    return g


def _successor(g: EmbeddedGraph, at: int, after: int) -> int:
    rot = g.neighbors_cyclic(at)
    return rot[(rot.index(after) + 1) % len(rot)]


def flip_edge(g: EmbeddedGraph, a: int, b: int) -> bool:
    """Replace edge a-b by the opposite diagonal of its two triangles.

    Returns False (and leaves ``g`` alone) when either side is not a triangle
    or when the new diagonal already exists.
    """
    if not g.has_edge(a, b):
        return False
    c = _successor(g, b, a)  # face a -> b -> c
    d = _successor(g, a, b)  # face b -> a -> d
    if c == d or _successor(g, c, b) != a or _successor(g, d, a) != b:
        return False
    if g.has_edge(c, d):
        return False
    g.delete_neighbor(a, b)
    g.delete_neighbor(b, a)
    g.insert_neighbor(c, d, after=b)
    g.insert_neighbor(d, c, after=a)
    return True


def apollonian_flipped(n: int, seed: int, flips: int) -> EmbeddedGraph:
    """Apollonian triangulation followed by ``flips`` random diagonal flips.

    Flips reuse the generator state left behind by :func:`apollonian`; a draw
    whose flip is illegal is redrawn, at most ``FLIP_ATTEMPTS`` times.
    """
    if flips < 0:
        raise DomainError("flips must be >= 0")
    rng = random.Random(seed)
    g = _stacked(n, rng)
    for _ in range(flips):
        edges = g.edges()
        for _ in range(FLIP_ATTEMPTS):
            a, b = edges[rng.randrange(len(edges))]
            if flip_edge(g, a, b):
                break
    return g


@dataclass(frozen=True)
class GenSpec:
    """Parsed generator request.

    Text forms: ``named:<name>`` (or just ``<name>``), ``apollonian:<n>:seed=<s>``
    and ``apollonian_flipped:<n>:seed=<s>:flips=<f>``.
    """

    kind: str
    name: str | None = None
    n: int | None = None
    seed: int = 0
    flips: int = 0

    @classmethod
    def parse(cls, text: str) -> GenSpec:
        parts = text.strip().split(":")
        kind = parts[0]
        if kind in ("apollonian", "apollonian_flipped"):
            if len(parts) < 2:
                raise DomainError(f"{kind} needs a vertex count: {text!r}")
            try:
                n = int(parts[1])
                opts = dict(p.split("=", 1) for p in parts[2:])
                seed = int(opts.pop("seed", 0))
                flips = int(opts.pop("flips", 0))
            except ValueError:
                raise DomainError(f"malformed generator spec {text!r}") from None
            if opts:
                raise DomainError(f"unknown options {sorted(opts)} in {text!r}")
            if kind == "apollonian" and flips:
                raise DomainError("use apollonian_flipped for flips")
            return cls(kind, n=n, seed=seed, flips=flips)
        if kind == "named":
            if len(parts) != 2:
                raise DomainError(f"malformed generator spec {text!r}")
            return cls("named", name=parts[1])
        if len(parts) == 1:
            return cls("named", name=kind)
        raise DomainError(f"malformed generator spec {text!r}")

    def __str__(self) -> str:
        if self.kind == "named":
            return f"named:{self.name}"
        if self.kind == "apollonian":
            return f"apollonian:{self.n}:seed={self.seed}"
        return f"apollonian_flipped:{self.n}:seed={self.seed}:flips={self.flips}"

    def build(self) -> EmbeddedGraph:
        if self.kind == "named":
            return named(self.name)
        if self.kind == "apollonian":
            return apollonian(self.n, self.seed)
        return apollonian_flipped(self.n, self.seed, self.flips)


def generate(spec: str | GenSpec) -> EmbeddedGraph:
    if isinstance(spec, str):
        spec = GenSpec.parse(spec)
    return spec.build()
