"""Degree-<=5 vertex elimination down to a base graph of at most five vertices.

Any planar graph has a vertex of degree at most 5, because
``6 n(v) - 2 n(e) = sum_i (6 - i) n(d_i) >= 12`` and only degrees below 6
contribute positively. Repeatedly deleting such a vertex therefore never gets
stuck on planar input; getting stuck is evidence the input is not planar.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field

from .errors import DomainError, NonPlanarEvidence
from .graph import EliminationStep, EmbeddedGraph

BASE_SIZE = 5
MAX_REDUCIBLE_DEGREE = 5


@dataclass(frozen=True)
class DegreeAudit:
    histogram: dict[int, int]
    max_degree: int
    surplus: int  # sum over degrees i of (6 - i) * n(d_i)

    @property
    def min_degree(self) -> int | None:
        return min(self.histogram) if self.histogram else None


@dataclass
class EliminationSequence:
    steps: list[EliminationStep] = field(default_factory=list)  # first removed first
    base_vertex_count: int = 0

    def __len__(self) -> int:
        return len(self.steps)

    @property
    def order(self) -> list[int]:
        return [s.vertex for s in self.steps]


def degree_audit(g: EmbeddedGraph) -> DegreeAudit:
    hist = Counter(g.degree_sequence())
    surplus = sum((6 - i) * c for i, c in hist.items())
    return DegreeAudit(dict(sorted(hist.items())), max(hist, default=0), surplus)


def find_reducible_vertex(g: EmbeddedGraph, rng: random.Random | None = None) -> int:
    """A vertex of degree <= 5.

    Deterministic mode takes the smallest degree, then the smallest id. With
    ``rng`` the choice is uniform over all vertices of degree <= 5.
    """
    if len(g) == 0:
        raise DomainError("graph is empty")
    if rng is not None:
        pool = [v for v in g if g.degree(v) <= MAX_REDUCIBLE_DEGREE]
        if pool:
            return rng.choice(pool)
    else:
        best = min(g, key=lambda v: (g.degree(v), v))
        if g.degree(best) <= MAX_REDUCIBLE_DEGREE:
            return best
    raise NonPlanarEvidence(f"every vertex has degree >= 6 (n={len(g)}); the graph is not planar")


def elimination_sequence(
    g: EmbeddedGraph, rng: random.Random | None = None
) -> tuple[EliminationSequence, EmbeddedGraph]:
    """Strip reducible vertices until at most five remain.

    ``g`` is left untouched. Returns the removal record and the residual base
    graph; restoring the steps in reverse order onto the base rebuilds ``g``.
    """
    work = g.copy()
    seq = EliminationSequence()
    while len(work) > BASE_SIZE:
        v = find_reducible_vertex(work, rng)
        step = work.remove_vertex(v)
        assert len(step.neighbors_cyclic) <= MAX_REDUCIBLE_DEGREE
        seq.steps.append(step)
    seq.base_vertex_count = len(work)
    return seq, work


def replay(base: EmbeddedGraph, seq: EliminationSequence) -> EmbeddedGraph:
    """Rebuild the original graph from the base and its elimination record."""
    g = base.copy()
    for step in reversed(seq.steps):
        g.restore_vertex(step)
    return g
