"""Text formats: embedded graphs, coloring outcomes and DOT export.

Graph file (``.eg``)::

    embedded-graph v1
    <vertex count>
    <id>: <neighbor ids in rotation order, space separated>
    ...

Outcome file: a first line ``fourcolor-outcome v1`` followed by ``key: value``
lines. Keys:

    status            success | failure
    recovery_used     none | retry(K) | exact_fallback
    vertices          number of colored vertices
    colors_used       distinct colors (success only)
    case <TAG>        reinsertion count per branch tag (success only)
    color <v>         color of vertex v; on failure, the snapshot coloring
    failure.tag       branch being executed when a claim failed
    failure.claim     the failed claim, e.g. separation(1,3), chain(2,4), proper
    failure.witness   witness vertices
    failure.vertex    vertex being reinserted
    failure.neighbors its rotation, space separated
    failure.positions its index in each neighbor's rotation before removal
    failure.sequence  elimination order of the failing run
    failure.injected  forced-false claims (fault injection), space separated

A failure outcome ends with a line ``graph:`` followed by the graph snapshot in
graph-file format; that snapshot, the coloring and the step replay the failure.
Blank lines and lines starting with ``#`` are ignored in both formats.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

from .colorer import CaseTag, ColorOutcome, FailureReport
from .errors import AsymmetryError, DuplicateNeighborError, GraphSyntaxError, StructureError
from .graph import Coloring, EliminationStep, EmbeddedGraph

GRAPH_HEADER = "embedded-graph v1"
OUTCOME_HEADER = "fourcolor-outcome v1"

DOT_COLORS = {1: "tomato", 2: "palegreen", 3: "lightskyblue", 4: "gold"}


def _content_lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield no, raw, line


def _int(tok: str, no: int, col: int) -> int:
    try:
        val = int(tok)
    except ValueError:
        raise GraphSyntaxError(f"expected a non-negative integer, got {tok!r}", no, col) from None
    if val < 0:
        raise GraphSyntaxError(f"expected a non-negative integer, got {tok!r}", no, col)
    return val


def parse_graph(text: str) -> EmbeddedGraph:
    lines = list(_content_lines(text))
    if not lines or lines[0][2] != GRAPH_HEADER:
        no = lines[0][0] if lines else 1
        raise GraphSyntaxError(f"expected header {GRAPH_HEADER!r}", no)
    if len(lines) < 2:
        raise GraphSyntaxError("missing vertex count", lines[0][0] + 1)
    no, raw, line = lines[1]
    n = _int(line, no, raw.index(line[0]) + 1)
    rot: dict[int, list[int]] = {}
    where: dict[int, int] = {}
    for no, raw, line in lines[2:]:
        head, sep, tail = line.partition(":")
        if not sep:
            raise GraphSyntaxError("expected '<id>: <neighbors>'", no, len(raw.rstrip()) + 1)
        v = _int(head.strip(), no, raw.index(head.strip()[:1] or ":") + 1)
        if v in rot:
            raise GraphSyntaxError(f"vertex {v} listed twice (first on line {where[v]})", no)
        offset = raw.index(":") + 1
        nbrs = []
        pos = offset
        for tok in tail.split():
            pos = raw.index(tok, pos)
            u = _int(tok, no, pos + 1)
            pos += len(tok)
            if u in nbrs:
                raise DuplicateNeighborError(v, u, no)
            if u == v:
                raise GraphSyntaxError(f"self-loop at vertex {v}", no, pos - len(tok) + 1)
            nbrs.append(u)
        rot[v] = nbrs
        where[v] = no
    if len(rot) != n:
        raise GraphSyntaxError(f"header announces {n} vertices but {len(rot)} are listed", lines[1][0])
    for v, nbrs in rot.items():
        for u in nbrs:
            if u not in rot:
                raise StructureError(f"line {where[v]}: vertex {v} lists undeclared vertex {u}")
            if v not in rot[u]:
                raise AsymmetryError(v, u, where[v])
    return EmbeddedGraph(rot)


def serialize_graph(g: EmbeddedGraph) -> str:
    out = [GRAPH_HEADER, str(len(g))]
    for v in g:
        nbrs = " ".join(map(str, g.neighbors_cyclic(v)))
        out.append(f"{v}: {nbrs}".rstrip())
    return "\n".join(out) + "\n"


def to_dot(g: EmbeddedGraph, col: Coloring | None = None, name: str = "G") -> str:
    out = [f"graph {name} {{", "  node [style=filled, fillcolor=white];"]
    for v in g:
        if col and v in col:
            out.append(f'  {v} [color="{DOT_COLORS.get(col[v], "gray")}", fillcolor="{DOT_COLORS.get(col[v], "gray")}", label="{v}/{col[v]}"];')
        else:
            out.append(f"  {v};")
    for u, v in g.edges():
        out.append(f"  {u} -- {v};")
    out.append("}")
    return "\n".join(out) + "\n"


# ------------------------------------------------------------------ outcomes


@dataclass
class OutcomeDoc:
    """Parsed outcome file."""

    status: str
    recovery_used: str = "none"
    coloring: Coloring = field(default_factory=dict)
    cases: Counter = field(default_factory=Counter)
    colors_used: int | None = None
    failure: FailureReport | None = None


def _ints(xs) -> str:
    return " ".join(map(str, xs))


def serialize_outcome(outcome: ColorOutcome) -> str:
    out = [OUTCOME_HEADER]
    if outcome.ok:
        col = outcome.coloring
        out += [
            "status: success",
            f"recovery_used: {outcome.recovery_used}",
            f"vertices: {len(col)}",
            f"colors_used: {outcome.colors_used()}",
        ]
        hist = outcome.histogram()
        for tag in CaseTag:
            if hist.get(tag):
                out.append(f"case {tag}: {hist[tag]}")
        fallback = sum(1 for r in outcome.trace if r.fallback)
        if fallback:
            out.append(f"case fallback: {fallback}")
        out += [f"color {v}: {col[v]}" for v in sorted(col)]
        return "\n".join(out) + "\n"
    out += ["status: failure", f"recovery_used: {outcome.recovery_used}"]
    out.append(serialize_failure(outcome.failure, header=False).rstrip("\n"))
    return "\n".join(out) + "\n"


def serialize_failure(rep: FailureReport, header: bool = True) -> str:
    out = [OUTCOME_HEADER, "status: failure"] if header else []
    out += [
        f"vertices: {len(rep.coloring)}",
        f"failure.tag: {rep.tag}",
        f"failure.claim: {rep.claim}",
        f"failure.witness: {_ints(rep.witness)}",
        f"failure.vertex: {rep.step.vertex}",
        f"failure.neighbors: {_ints(rep.step.neighbors_cyclic)}",
        f"failure.positions: {_ints(rep.step.rotation_positions)}",
        f"failure.sequence: {_ints(rep.sequence)}",
        f"failure.injected: {' '.join(sorted(rep.injected))}",
    ]
    out += [f"color {v}: {rep.coloring[v]}" for v in sorted(rep.coloring)]
    out.append("graph:")
    out.append(serialize_graph(rep.graph).rstrip("\n"))
    return "\n".join(out) + "\n"


def parse_outcome(text: str) -> OutcomeDoc:
    raw_lines = text.splitlines()
    lines = list(_content_lines(text))
    if not lines or lines[0][2] != OUTCOME_HEADER:
        raise GraphSyntaxError(f"expected header {OUTCOME_HEADER!r}", lines[0][0] if lines else 1)
    kv: dict[str, str] = {}
    col: Coloring = {}
    cases: Counter = Counter()
    graph_text = None
    for no, raw, line in lines[1:]:
        if line == "graph:":
            graph_text = "\n".join(raw_lines[no:])
            break
        key, sep, val = line.partition(":")
        if not sep:
            raise GraphSyntaxError("expected 'key: value'", no, len(raw.rstrip()) + 1)
        key, val = key.strip(), val.strip()
        if key.startswith("color "):
            col[_int(key[6:].strip(), no, 7)] = _int(val, no, raw.index(":") + 2)
        elif key.startswith("case "):
            cases[key[5:].strip()] = _int(val, no, raw.index(":") + 2)
        else:
            kv[key] = val
    status = kv.get("status")
    if status not in ("success", "failure"):
        raise GraphSyntaxError(f"status must be success or failure, got {status!r}", lines[0][0])
    doc = OutcomeDoc(status=status, recovery_used=kv.get("recovery_used", "none"), coloring=col, cases=cases)
    if "colors_used" in kv:
        doc.colors_used = int(kv["colors_used"])
    if status == "failure":
        if graph_text is None:
            raise GraphSyntaxError("failure outcome lacks a 'graph:' section", lines[-1][0])

        def ints(key: str) -> tuple[int, ...]:
            return tuple(int(x) for x in kv.get(key, "").split())

        try:
            step = EliminationStep(
                int(kv["failure.vertex"]), ints("failure.neighbors"), ints("failure.positions")
            )
            tag = CaseTag(kv["failure.tag"])
            claim = kv["failure.claim"]
            witness, sequence = ints("failure.witness"), list(ints("failure.sequence"))
        except KeyError as exc:
            raise GraphSyntaxError(f"failure outcome lacks key {exc.args[0]}", lines[0][0]) from None
        except ValueError as exc:
            raise GraphSyntaxError(f"malformed failure section: {exc}", lines[0][0]) from None
        doc.failure = FailureReport(
            graph=parse_graph(graph_text),
            coloring=dict(col),
            step=step,
            tag=tag,
            claim=claim,
            witness=witness,
            sequence=sequence,
            injected=frozenset(kv.get("failure.injected", "").split()),
        )
    return doc
