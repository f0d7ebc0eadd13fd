"""Seeded stress runs over random flipped Apollonian triangulations."""

from __future__ import annotations

import csv
import random
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from .colorer import CaseTag, FailureReport, RecoveryPolicy, four_color
from .formats import serialize_failure
from .generators import GenSpec
from .graph import verify_coloring

ELIMINATION_MODES = ("random", "min-degree")


@dataclass(frozen=True)
class StressConfig:
    n_max: int = 64
    runs: int = 100
    seed: int = 0
    flips: tuple[int, ...] = (0, 200)
    n_min: int = 4
    # "random": seeded random choice among degree <= 5 vertices; "min-degree": deterministic
    elimination: str = "random"
    policy: RecoveryPolicy = field(default_factory=RecoveryPolicy)

    def __post_init__(self):
        if not 3 <= self.n_min <= self.n_max:
            raise ValueError("need 3 <= n_min <= n_max")
        if self.runs < 0 or not self.flips or min(self.flips) < 0:
            raise ValueError("runs and flips must be non-negative, flips non-empty")
        if self.elimination not in ELIMINATION_MODES:
            raise ValueError(f"elimination must be one of {ELIMINATION_MODES}")

    def plan(self) -> list[tuple[int, GenSpec]]:
        rng = random.Random(self.seed)
        out = []
        for i in range(self.runs):
            n = rng.randint(self.n_min, self.n_max)
            gseed = rng.randrange(2**31)
            spec = GenSpec("apollonian_flipped", n=n, seed=gseed, flips=self.flips[i % len(self.flips)])
            out.append((i, spec))
        return out


@dataclass
class RunResult:
    index: int
    spec: GenSpec
    ok: bool
    improper: bool
    recovery_used: str
    cases: Counter
    reinsertions: int
    fallback_steps: int
    observed: list[tuple[str, str]]  # (tag, claim) of every branch failure met
    failure: FailureReport | None = None


def run_one(cfg: StressConfig, index: int, spec: GenSpec) -> RunResult:
    g = spec.build()
    elim = spec.seed if cfg.elimination == "random" else None
    out = four_color(g, cfg.policy, elimination_seed=elim)
    improper = out.ok and bool(verify_coloring(g, out.coloring))
    return RunResult(
        index=index,
        spec=spec,
        ok=out.ok,
        improper=improper,
        recovery_used=out.recovery_used,
        cases=Counter({t.value: c for t, c in out.histogram().items()}),
        reinsertions=sum(1 for r in out.trace if r.vertex is not None),
        fallback_steps=sum(1 for r in out.trace if r.fallback),
        observed=[(f.tag.value, f.claim) for f in out.failures_observed],
        failure=out.failure,
    )


def _run_packed(args):
    return run_one(*args)


@dataclass
class StressResult:
    config: StressConfig
    runs: list[RunResult]

    @property
    def successes(self) -> list[RunResult]:
        return [r for r in self.runs if r.ok]

    def case_totals(self) -> Counter:
        total: Counter = Counter()
        for r in self.runs:
            total.update(r.cases)
        return total

    def observed_failures(self) -> Counter:
        return Counter(f"{t}:{c}" for r in self.runs for t, c in r.observed)

    def final_failures(self) -> Counter:
        return Counter(f"{r.failure.tag}:{r.failure.claim}" for r in self.runs if r.failure)

    def recovery_counts(self) -> Counter:
        return Counter(r.recovery_used for r in self.runs)

    @property
    def failure_count(self) -> int:
        return sum(1 for r in self.runs if not r.ok)

    @property
    def improper_count(self) -> int:
        return sum(1 for r in self.runs if r.improper)

    def total_reinsertions(self) -> int:
        return sum(r.reinsertions for r in self.successes)

    def expected_reinsertions(self) -> int:
        return sum(max(r.spec.n - 5, 0) for r in self.successes)

    def missing_tags(self) -> list[str]:
        totals = self.case_totals()
        return [t.value for t in CaseTag if not totals.get(t.value)]

    def summary(self) -> list[tuple[str, str]]:
        cfg = self.config
        rows = [
            ("generator", "apollonian_flipped"),
            ("prng", "python random.Random (MT19937)"),
            ("seed", str(cfg.seed)),
            ("runs", str(cfg.runs)),
            ("n_min", str(cfg.n_min)),
            ("n_max", str(cfg.n_max)),
            ("flips", ",".join(map(str, cfg.flips))),
            ("elimination", cfg.elimination),
            ("policy", str(cfg.policy)),
            ("successes", str(len(self.successes))),
            ("failures", str(self.failure_count)),
            ("improper_colorings", str(self.improper_count)),
            ("zero_improper", "pass" if self.improper_count == 0 else "FAIL"),
            ("reinsertions", str(self.total_reinsertions())),
            ("expected_reinsertions", str(self.expected_reinsertions())),
            ("branch_failures_observed", str(sum(self.observed_failures().values()))),
            ("missing_tags", ",".join(self.missing_tags()) or "-"),
        ]
        rows += [(f"recovery.{k}", str(v)) for k, v in sorted(self.recovery_counts().items())]
        totals = self.case_totals()
        rows += [(f"case.{t.value}", str(totals.get(t.value, 0))) for t in CaseTag]
        rows += [(f"failure.{k}", str(v)) for k, v in sorted(self.observed_failures().items())]
        return rows


def run_stress(cfg: StressConfig, jobs: int = 1) -> StressResult:
    plan = [(cfg, i, spec) for i, spec in cfg.plan()]
    if jobs > 1 and len(plan) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            runs = list(pool.map(_run_packed, plan, chunksize=max(1, len(plan) // (4 * jobs))))
    else:
        runs = [run_one(*p) for p in plan]
    return StressResult(cfg, runs)


def _write_tsv(path: Path, header: list[str], rows) -> None:
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh, delimiter="\t", lineterminator="\n")
        w.writerow(header)
        w.writerows(rows)


def write_report(result: StressResult, out_dir: str | Path, figures: bool = True) -> dict[str, Path]:
    """Write manifest, per-run table, failure archives and figures into ``out_dir``."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    paths = {"manifest": out / "manifest.tsv", "runs": out / "runs.tsv", "cases": out / "cases.tsv"}
    _write_tsv(paths["manifest"], ["key", "value"], result.summary())
    tags = [t.value for t in CaseTag]
    _write_tsv(
        paths["runs"],
        ["index", "genspec", "n", "flips", "status", "recovery", "reinsertions", "fallback_steps", "observed_failures", *tags],
        (
            [r.index, str(r.spec), r.spec.n, r.spec.flips, "success" if r.ok else "failure", r.recovery_used,
             r.reinsertions, r.fallback_steps, len(r.observed), *(r.cases.get(t, 0) for t in tags)]
            for r in result.runs
        ),
    )  # fmt: skip
    totals = result.case_totals()
    _write_tsv(paths["cases"], ["tag", "count"], ([t, totals.get(t, 0)] for t in tags))
    fail_dir = out / "failures"
    failed = [r for r in result.runs if r.failure is not None]
    if failed:
        fail_dir.mkdir(exist_ok=True)
    for r in failed:
        p = fail_dir / f"run{r.index:05d}.outcome"
        p.write_text(f"# {r.spec}\n" + serialize_failure(r.failure))
    paths["failures"] = fail_dir
    if figures:
        from .plotting import case_histogram, failure_histogram

        paths["case_figure"] = case_histogram(totals, out / "case_histogram.png")
        paths["failure_figure"] = failure_histogram(
            result.observed_failures(), result.final_failures(), out / "failures.png"
        )
    return paths
