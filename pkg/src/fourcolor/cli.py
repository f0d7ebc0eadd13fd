"""Command-line interface.

Exit codes: 0 success, 1 input error, 2 branch failure, 3 verification failure.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .colorer import RecoveryPolicy, four_color
from .errors import FourColorError
from .formats import parse_graph, parse_outcome, serialize_failure, serialize_graph, serialize_outcome, to_dot
from .generators import generate
from .graph import verify_coloring
from .oracle import exact_k_coloring

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_BRANCH_FAILURE = 2
EXIT_VERIFY = 3


class InputError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text)
    else:
        sys.stdout.write(text)


def _policy(text: str) -> RecoveryPolicy:
    try:
        return RecoveryPolicy.parse(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _flips(text: str) -> tuple[int, ...]:
    try:
        vals = tuple(int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"flips must be comma-separated integers, got {text!r}") from None
    if not vals or min(vals) < 0:
        raise argparse.ArgumentTypeError("flips must be non-negative")
    return vals


def _positive(text: str) -> int:
    val = int(text)
    if val < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return val


def cmd_color(args) -> int:
    g = parse_graph(_read(args.file))
    out = four_color(g, args.policy, inject=args.inject or (), elimination_seed=args.elimination_seed)
    _emit(serialize_outcome(out), args.out)
    if args.dot:
        Path(args.dot).write_text(to_dot(g, out.coloring if out.ok else out.failure.coloring))
    if not out.ok:
        f = out.failure
        print(f"branch failure: {f.tag} at vertex {f.vertex}: {f.claim} witness {list(f.witness)}", file=sys.stderr)
        return EXIT_BRANCH_FAILURE
    return EXIT_OK


def cmd_oracle(args) -> int:
    g = parse_graph(_read(args.file))
    res = exact_k_coloring(g, args.k, node_budget=args.budget)
    if res.exhausted:
        print(f"unknown (node budget exhausted after {res.nodes_explored} nodes)")
    elif res.coloring is None:
        print("none")
    else:
        print(f"found k={args.k} nodes={res.nodes_explored}")
        for v in sorted(res.coloring):
            print(f"color {v}: {res.coloring[v]}")
    return EXIT_OK


def cmd_generate(args) -> int:
    g = generate(args.genspec)
    _emit(serialize_graph(g), args.out)
    return EXIT_OK


def cmd_verify(args) -> int:
    g = parse_graph(_read(args.graph))
    doc = parse_outcome(_read(args.outcome))
    bad = verify_coloring(g, doc.coloring)
    if not bad:
        print(f"ok: proper 4-coloring of {len(g)} vertices")
        return EXIT_OK
    for u, v in bad:
        if u == v:
            print(f"vertex {u}: missing or invalid color")
        else:
            print(f"edge {u}-{v}: both colored {doc.coloring[u]}")
    return EXIT_VERIFY


def cmd_replay(args) -> int:
    doc = parse_outcome(_read(args.outcome))
    if doc.failure is None:
        raise InputError("outcome file holds no failure report")
    again = doc.failure.replay()
    if again is None:
        print("replay: reinsertion now succeeds")
        return EXIT_OK
    same = again.key() == doc.failure.key()
    print(f"replay: {again.tag} {again.claim} witness {list(again.witness)} ({'identical' if same else 'DIFFERENT'})")
    if args.out:
        Path(args.out).write_text(serialize_failure(again))
    return EXIT_BRANCH_FAILURE if same else EXIT_VERIFY


def cmd_stress(args) -> int:
    from .stress import StressConfig, run_stress, write_report

    cfg = StressConfig(
        n_max=args.n,
        runs=args.runs,
        seed=args.seed,
        flips=args.flips,
        n_min=min(args.min_n, args.n),
        elimination=args.elimination,
        policy=args.policy,
    )
    result = run_stress(cfg, jobs=args.jobs)
    for key, val in result.summary():
        print(f"{key}\t{val}")
    if args.report:
        paths = write_report(result, args.report, figures=not args.no_figures)
        print(f"report\t{paths['manifest'].parent}")
    return EXIT_OK if result.improper_count == 0 else EXIT_VERIFY


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="fourcolor", description="Four-color embedded planar graphs with Kempe chains.")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("color", help="four-color a graph file")
    c.add_argument("file")
    c.add_argument("--policy", type=_policy, default=RecoveryPolicy(), help="fail | retry=K | fallback (default: retry=3 then fallback)")
    c.add_argument("--out", help="write the outcome file here instead of stdout")
    c.add_argument("--dot", help="also write a DOT rendering with vertex colors")
    c.add_argument("--elimination-seed", type=int, default=None, help="seeded random elimination order")
    c.add_argument("--inject", action="append", metavar="TAG:CLAIM", help="force a branch claim to fail (testing)")
    c.set_defaults(func=cmd_color)

    s = sub.add_parser("stress", help="color many random triangulations and tally branches")
    s.add_argument("--n", type=_positive, default=64, help="largest vertex count")
    s.add_argument("--min-n", type=_positive, default=4, help="smallest vertex count")
    s.add_argument("--runs", type=int, default=100)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--flips", type=_flips, default=(0, 200), help="comma-separated; run i uses flips[i %% len]")
    s.add_argument("--elimination", choices=("random", "min-degree"), default="random")
    s.add_argument("--policy", type=_policy, default=RecoveryPolicy())
    s.add_argument("--jobs", type=_positive, default=1)
    s.add_argument("--report", help="directory for manifest, tables, figures and failure archives")
    s.add_argument("--no-figures", action="store_true")
    s.set_defaults(func=cmd_stress)

    o = sub.add_parser("oracle", help="exact k-coloring by backtracking")
    o.add_argument("file")
    o.add_argument("--k", type=_positive, required=True)
    o.add_argument("--budget", type=int, default=None, help="node budget")
    o.set_defaults(func=cmd_oracle)

    gen = sub.add_parser("generate", help="write a generated graph file")
    gen.add_argument("genspec", help="e.g. icosahedron, apollonian:12:seed=5, apollonian_flipped:64:seed=1:flips=200")
    gen.add_argument("--out")
    gen.set_defaults(func=cmd_generate)

    v = sub.add_parser("verify", help="check that an outcome's coloring is proper and total")
    v.add_argument("graph")
    v.add_argument("outcome")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("replay", help="re-run the reinsertion recorded in a failure report")
    r.add_argument("outcome")
    r.add_argument("--out")
    r.set_defaults(func=cmd_replay)
    return p


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return args.func(args)
    except (InputError, FourColorError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
