"""Four-coloring by elimination and Kempe-chain reinsertion.

Vertices of degree <= 5 are stripped down to a base of at most five vertices,
the base is colored exactly, and the stripped vertices are put back in reverse
order. A reinserted vertex whose neighbors already use all four colors is
handled by one of the Kempe-swap branches below; each branch rests on claims
(a chain exists, two components are disjoint) that are checked at runtime
rather than trusted. A claim that does not hold becomes a
:class:`BranchFailure` carrying a replayable :class:`FailureReport`.

Branch tags::

    C1          base graph with at most 4 vertices
    C2          base graph with 5 vertices
    C3_1        neighbors use at most 3 colors
    C3_2_1      degree 4, v1 outside the (1,3)-component of v3
    C3_2_2      degree 4, (1,3)-chain v1..v3, swap the (2,4)-component of v2
    C3_3_1_1    degree 5, repeated color on adjacent neighbors, swap (1,3) at v3
    C3_3_1_2    as above but v3 is chained to v1 or v5, swap (2,4) at v2
    C3_3_2_1    degree 5, repeated color on non-adjacent neighbors, swap (2,4) at v5
    C3_3_2_2_1  v2 chained to v5 in (2,4) but not to v4 in (2,3), swap (2,3) at v4
    C3_3_2_2_2  both chains present: swap (1,4) at v3, then (1,3) at v1
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from .errors import DomainError, EmbeddingError, FourColorError, NonPlanarEvidence
from .graph import (
    COLORS,
    Coloring,
    EliminationStep,
    EmbeddedGraph,
    connected_components,
    validate_embedding,
    verify_coloring,
)
from .kempe import ColorPair, component, find_chain, swap_component
from .oracle import DEFAULT_NODE_BUDGET, exact_k_coloring
from .reduction import BASE_SIZE, elimination_sequence

__all__ = [
    "BranchFailure",
    "CaseTag",
    "ColorOutcome",
    "FailureReport",
    "RecoveryPolicy",
    "StepRecord",
    "color_base",
    "four_color",
    "neighbor_color_set",
    "reinsert_and_color",
    "verify_coloring",
]


class CaseTag(str, Enum):
    C1 = "C1"
    C2 = "C2"
    C3_1 = "C3_1"
    C3_2_1 = "C3_2_1"
    C3_2_2 = "C3_2_2"
    C3_3_1_1 = "C3_3_1_1"
    C3_3_1_2 = "C3_3_1_2"
    C3_3_2_1 = "C3_3_2_1"
    C3_3_2_2_1 = "C3_3_2_2_1"
    C3_3_2_2_2 = "C3_3_2_2_2"

    def __str__(self) -> str:
        return self.value


@dataclass
class StepRecord:
    """What happened when one vertex was colored."""

    vertex: int | None  # None for the base-graph entry
    tag: CaseTag
    neighbor_colors: tuple[int, ...] = ()  # in rotation order, before renaming
    permutation: tuple[int, ...] | None = None  # permutation[old] = new, index 0 unused
    swaps: list[tuple[ColorPair, int]] = field(default_factory=list)  # (pair, anchor)
    color: int | None = None
    fallback: bool = False


@dataclass
class FailureReport:
    """A branch claim that did not hold, with enough state to replay it.

    ``graph`` is the graph *before* the failing vertex was restored and
    ``coloring`` the proper coloring of it that was being extended.
    """

    graph: EmbeddedGraph
    coloring: Coloring
    step: EliminationStep
    tag: CaseTag
    claim: str
    witness: tuple[int, ...]
    sequence: list[int] = field(default_factory=list)
    injected: frozenset[str] = frozenset()

    @property
    def vertex(self) -> int:
        return self.step.vertex

    def key(self) -> tuple:
        return (self.step.vertex, self.tag, self.claim, self.witness)

    def replay(self) -> FailureReport | None:
        """Rerun the failing reinsertion; the new report, or None if it now succeeds."""
        g = self.graph.copy()
        try:
            reinsert_and_color(g, self.coloring, self.step, inject=self.injected)
        except BranchFailure as exc:
            exc.report.sequence = list(self.sequence)
            return exc.report
        return None


class BranchFailure(FourColorError):
    def __init__(self, report: FailureReport):
        super().__init__(
            f"{report.tag} failed at vertex {report.vertex}: {report.claim} (witness {list(report.witness)})"
        )
        self.report = report


class _ClaimFailed(Exception):
    def __init__(self, tag: CaseTag, claim: str, witness: Iterable[int]):
        self.tag = tag
        self.claim = claim
        self.witness = tuple(witness)


@dataclass(frozen=True)
class RecoveryPolicy:
    """What :func:`four_color` does after a branch failure.

    Up to ``retries`` reruns with seeded random elimination choices, then, if
    ``fallback`` is set and the component is small enough, exact coloring of
    the graph at the failing step before continuing.
    """

    retries: int = 3
    fallback: bool = True
    fallback_max_vertices: int = 200
    node_budget: int = DEFAULT_NODE_BUDGET
    seed: int = 0

    @classmethod
    def fail(cls) -> RecoveryPolicy:
        return cls(retries=0, fallback=False)

    @classmethod
    def retry(cls, k: int) -> RecoveryPolicy:
        return cls(retries=k, fallback=False)

    @classmethod
    def exact_fallback(cls) -> RecoveryPolicy:
        return cls(retries=0, fallback=True)

    @classmethod
    def parse(cls, text: str) -> RecoveryPolicy:
        if text == "fail":
            return cls.fail()
        if text == "fallback":
            return cls.exact_fallback()
        if text == "default":
            return cls()
        if text.startswith("retry="):
            try:
                k = int(text[len("retry=") :])
            except ValueError:
                k = -1
            if k >= 0:
                return cls.retry(k)
        raise ValueError(f"unknown policy {text!r}; expected fail, retry=K, fallback or default")

    def __str__(self) -> str:
        if self.retries == 0 and not self.fallback:
            return "fail"
        if not self.fallback:
            return f"retry={self.retries}"
        if self.retries == 0:
            return "fallback"
        return f"retry={self.retries}+fallback"


@dataclass
class ColorOutcome:
    coloring: Coloring | None = None
    trace: list[StepRecord] = field(default_factory=list)
    failure: FailureReport | None = None
    recovery_used: str = "none"  # none | retry(k) | exact_fallback
    # every branch failure met on the way, including recovered ones
    failures_observed: list[FailureReport] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.coloring is not None

    def histogram(self) -> Counter:
        return Counter(r.tag for r in self.trace if not r.fallback)

    def colors_used(self) -> int:
        return len(set(self.coloring.values())) if self.coloring else 0


# ---------------------------------------------------------------- helpers


def neighbor_color_set(g: EmbeddedGraph, col: Mapping[int, int], v: int) -> set[int]:
    out = set()
    for u in g.neighbors_cyclic(v):
        if u not in col:
            raise DomainError(f"neighbor {u} of {v} is uncolored")
        out.add(col[u])
    return out


def _permute(col: Coloring, perm: tuple[int, ...]) -> Coloring:
    return {v: perm[c] for v, c in col.items()}


def _rename(col: Coloring, wanted: list[tuple[int, int]]) -> tuple[Coloring, tuple[int, ...]]:
    """Permute colors so that each (vertex, color) in ``wanted`` holds."""
    perm = [0] * 5
    for u, c in wanted:
        perm[col[u]] = c
    rest_old = [c for c in COLORS if perm[c] == 0]
    rest_new = [c for c in COLORS if c not in perm]
    for o, n in zip(rest_old, rest_new):
        perm[o] = n
    p = tuple(perm)
    return _permute(col, p), p


def _local_violations(g: EmbeddedGraph, col: Mapping[int, int], vertices: Iterable[int]) -> list[tuple[int, int]]:
    bad = set()
    for v in vertices:
        c = col.get(v)
        if c not in COLORS:
            bad.add((v, v))
            continue
        for u in g.neighbors_cyclic(v):
            if col.get(u) == c:
                bad.add((min(u, v), max(u, v)))
    return sorted(bad)


# ------------------------------------------------------------ base case


def color_base(g: EmbeddedGraph) -> Coloring:
    """Exact 4-coloring of a graph with at most five vertices."""
    if len(g) > BASE_SIZE:
        raise DomainError(f"base graph has {len(g)} vertices; at most {BASE_SIZE} allowed")
    res = exact_k_coloring(g, 4)
    if res.coloring is None:
        raise NonPlanarEvidence(f"base graph on vertices {g.vertices} has no proper 4-coloring (contains K5)")
    return res.coloring


# ----------------------------------------------------------- reinsertion


class _Branch:
    """Working state for one reinsertion: graph, coloring, record, injected faults."""

    def __init__(self, g: EmbeddedGraph, col: Coloring, v: int, inject: frozenset[str]):
        self.g = g
        self.col = col
        self.v = v
        self.inject = inject
        self.tag: CaseTag = CaseTag.C3_1
        self.touched: set[int] = {v}
        nbrs = g.neighbors_cyclic(v)
        self.rec = StepRecord(v, CaseTag.C3_1, tuple(col[u] for u in nbrs))

    def claim(self, ok: bool, name: str, witness: Iterable[int]) -> None:
        if not ok or f"{self.tag}:{name}" in self.inject:
            raise _ClaimFailed(self.tag, name, witness)

    def rename(self, labels: list[int], colors: list[int]) -> None:
        self.col, perm = _rename(self.col, list(zip(labels, colors)))
        self.rec.permutation = perm

    def comp(self, a: int, b: int, anchor: int):
        return component(self.g, self.col, ColorPair.of(a, b), anchor)

    def chain(self, a: int, b: int, u: int, w: int) -> None:
        ch = find_chain(self.g, self.col, ColorPair.of(a, b), u, w)
        self.claim(ch is not None, f"chain({a},{b})", (u, w))

    def separated(self, a: int, b: int, x: int, y: int):
        cx, cy = self.comp(a, b, x), self.comp(a, b, y)
        self.claim(cx.members.isdisjoint(cy.members), f"separation({a},{b})", (x, y))
        return cx

    def swap(self, comp) -> None:
        self.col = swap_component(self.col, comp)
        self.touched |= comp.members
        self.rec.swaps.append((comp.pair, comp.anchor))

    def assign(self, c: int, full: bool = False) -> None:
        self.col[self.v] = c
        self.rec.color = c
        self.rec.tag = self.tag
        if self.tag is CaseTag.C3_1:
            return  # an unused color is proper by construction; nothing to claim
        bad = verify_coloring(self.g, self.col) if full else _local_violations(self.g, self.col, self.touched)
        self.claim(not bad, "proper", [x for e in bad for x in e])


def _degree4(b: _Branch, nbrs: list[int]) -> None:
    v1, v2, v3, v4 = nbrs
    b.rename([v1, v2, v3, v4], [1, 2, 3, 4])
    k13 = b.comp(1, 3, v3)
    if v1 not in k13:
        b.tag = CaseTag.C3_2_1
        b.swap(k13)
        b.assign(3)
        return
    b.tag = CaseTag.C3_2_2
    b.chain(1, 3, v1, v3)
    b.swap(b.separated(2, 4, v2, v4))
    b.assign(2)


def _degree5_adjacent(b: _Branch, nbrs: list[int], start: int) -> None:
    v1, v2, v3, v4, v5 = (nbrs[(start + t) % 5] for t in range(5))
    b.rename([v1, v2, v3, v4], [1, 2, 3, 4])
    assert b.col[v5] == 1
    in1 = v3 in b.comp(1, 3, v1)
    in5 = v3 in b.comp(1, 3, v5)
    if not in1 and not in5:
        b.tag = CaseTag.C3_3_1_1
        b.swap(b.comp(1, 3, v3))
        b.assign(3)
        return
    b.tag = CaseTag.C3_3_1_2
    b.chain(1, 3, v1 if in1 else v5, v3)
    b.swap(b.separated(2, 4, v2, v4))
    b.assign(2)


def _degree5_isolated(b: _Branch, nbrs: list[int], start: int) -> None:
    v1, v2, v3, v4, v5 = (nbrs[(start + t) % 5] for t in range(5))
    b.rename([v1, v2, v4, v5], [1, 2, 3, 4])
    assert b.col[v3] == 1
    k24 = b.comp(2, 4, v5)
    if v2 not in k24:
        b.tag = CaseTag.C3_3_2_1
        b.swap(k24)
        b.assign(4)
        return
    k23 = b.comp(2, 3, v4)
    if v2 not in k23:
        b.tag = CaseTag.C3_3_2_2_1
        b.swap(k23)
        b.assign(3)
        return
    b.tag = CaseTag.C3_3_2_2_2
    b.chain(2, 3, v2, v4)
    b.swap(b.separated(1, 4, v3, v5))
    # second swap works on the coloring left by the first one
    b.chain(2, 4, v2, v5)
    b.swap(b.separated(1, 3, v1, v4))
    b.assign(1, full=True)


def _dispatch(b: _Branch) -> None:
    nbrs = b.g.neighbors_cyclic(b.v)
    colors = [b.col[u] for u in nbrs]
    used = set(colors)
    if len(used) <= 3:
        b.tag = CaseTag.C3_1
        b.assign(min(set(COLORS) - used))
        return
    d = len(nbrs)
    if d == 4:
        _degree4(b, nbrs)
        return
    if d != 5:
        raise DomainError(f"vertex {b.v} has degree {d} with all four colors around it; no branch applies")
    dup = [k for k in range(5) if colors.count(colors[k]) == 2]
    # |C| = 4 with five neighbors: exactly one color appears twice
    assert len(dup) == 2 and all(colors.count(c) <= 2 for c in colors), colors
    lo, hi = dup
    gap = hi - lo
    if gap in (1, 4):
        # duplicated pair becomes (v5, v1)
        _degree5_adjacent(b, nbrs, start=hi if gap == 1 else lo)
    else:
        # duplicated pair becomes (v1, v3)
        _degree5_isolated(b, nbrs, start=lo if gap == 2 else hi)


def reinsert_and_color(
    g: EmbeddedGraph,
    col: Mapping[int, int],
    step: EliminationStep,
    *,
    inject: Iterable[str] = (),
) -> tuple[Coloring, StepRecord]:
    """Restore ``step`` into ``g`` and extend ``col`` to the restored vertex.

    Returns the new coloring (colors may be renamed and Kempe-swapped) and the
    step record. On a failed claim ``g`` is put back as it was and
    :class:`BranchFailure` is raised. ``inject`` names claims to force false,
    as ``"<tag>:<claim>"`` (e.g. ``"C3_2_2:separation(2,4)"``); used to test the
    failure path.
    """
    inject = frozenset(inject)
    for u in step.neighbors_cyclic:
        if u not in col:
            raise DomainError(f"neighbor {u} of {step.vertex} is uncolored")
    g.restore_vertex(step)
    b = _Branch(g, dict(col), step.vertex, inject)
    try:
        _dispatch(b)
    except _ClaimFailed as exc:
        g.remove_vertex(step.vertex)
        report = FailureReport(
            graph=g.copy(),
            coloring=dict(col),
            step=step,
            tag=exc.tag,
            claim=exc.claim,
            witness=exc.witness,
            injected=inject,
        )
        raise BranchFailure(report) from None
    except BaseException:
        g.remove_vertex(step.vertex)
        raise
    return b.col, b.rec


# ------------------------------------------------------------ driver


def _color_sequence(seq, base, inject, check_induction, fallback_budget=None):
    """Run one reinsertion pass; with ``fallback_budget`` recover failed steps exactly."""
    g = base.copy()
    col = color_base(g)
    trace = [StepRecord(None, CaseTag.C1 if len(g) <= 4 else CaseTag.C2)]
    absorbed = []
    for step in reversed(seq.steps):
        if check_induction:
            assert not verify_coloring(g, col), "coloring of G_{i-1} is not proper"
        try:
            col, rec = reinsert_and_color(g, col, step, inject=inject)
        except BranchFailure as exc:
            exc.report.sequence = seq.order
            if fallback_budget is None:
                raise
            g.restore_vertex(step)
            res = exact_k_coloring(g, 4, node_budget=fallback_budget)
            if res.coloring is None:
                g.remove_vertex(step.vertex)
                raise
            col = res.coloring
            rec = StepRecord(step.vertex, exc.report.tag, color=col[step.vertex], fallback=True)
            absorbed.append(exc.report)
        trace.append(rec)
    return col, trace, absorbed


def _first_rng(elimination_seed: int | None) -> random.Random | None:
    return None if elimination_seed is None else random.Random(f"elimination:{elimination_seed}")


def _color_component(sub: EmbeddedGraph, policy: RecoveryPolicy, inject, check_induction, elimination_seed) -> ColorOutcome:
    observed: list[FailureReport] = []
    for attempt in range(policy.retries + 1):
        rng = _first_rng(elimination_seed) if attempt == 0 else random.Random(f"{policy.seed}:{attempt}")
        seq, base = elimination_sequence(sub, rng)
        try:
            col, trace, _ = _color_sequence(seq, base, inject, check_induction)
        except BranchFailure as exc:
            observed.append(exc.report)
            continue
        used = "none" if attempt == 0 else f"retry({attempt})"
        return ColorOutcome(col, trace, recovery_used=used, failures_observed=observed)
    if policy.fallback and len(sub) <= policy.fallback_max_vertices:
        seq, base = elimination_sequence(sub, _first_rng(elimination_seed))
        try:
            col, trace, absorbed = _color_sequence(seq, base, inject, check_induction, policy.node_budget)
        except BranchFailure as exc:
            observed.append(exc.report)
        else:
            observed += absorbed
            return ColorOutcome(col, trace, recovery_used="exact_fallback", failures_observed=observed)
    return ColorOutcome(failure=observed[0], recovery_used=_used(policy), failures_observed=observed)


def _used(policy: RecoveryPolicy) -> str:
    if policy.fallback:
        return "exact_fallback"
    return f"retry({policy.retries})" if policy.retries else "none"


_RECOVERY_RANK = {"none": 0, "retry": 1, "exact_fallback": 2}


def _worse(a: str, b: str) -> str:
    ka, kb = _RECOVERY_RANK[a.split("(")[0]], _RECOVERY_RANK[b.split("(")[0]]
    if ka != kb:
        return a if ka > kb else b
    if ka == 1:
        return max(a, b, key=lambda s: int(s[6:-1]))
    return a


def four_color(
    g: EmbeddedGraph,
    policy: RecoveryPolicy | None = None,
    *,
    inject: Iterable[str] = (),
    check_induction: bool = False,
    elimination_seed: int | None = None,
) -> ColorOutcome:
    """Four-color an embedded planar graph, one connected component at a time.

    ``g`` is not modified. A successful outcome always carries a coloring that
    passes :func:`verify_coloring`. ``check_induction`` re-verifies the
    partial coloring before every reinsertion. By default vertices are
    eliminated smallest degree first; ``elimination_seed`` switches the first
    attempt to a seeded random choice among all vertices of degree <= 5.
    """
    policy = policy or RecoveryPolicy()
    inject = frozenset(inject)
    if not validate_embedding(g).ok:
        raise EmbeddingError("rotation system fails Euler's formula; not a plane embedding")
    total = ColorOutcome(coloring={})
    for comp in connected_components(g):
        sub = g.subgraph(comp)
        out = _color_component(sub, policy, inject, check_induction, elimination_seed)
        total.failures_observed += out.failures_observed
        total.recovery_used = _worse(total.recovery_used, out.recovery_used)
        if not out.ok:
            total.coloring = None
            total.trace = []
            total.failure = out.failure
            return total
        total.coloring.update(out.coloring)
        total.trace += out.trace
    if verify_coloring(g, total.coloring):
        raise AssertionError("internal error: produced coloring is not proper")
    return total
