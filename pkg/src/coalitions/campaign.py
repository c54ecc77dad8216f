"""Seeded simulation campaigns for the core heuristic.

A campaign is described by an INI file with a single ``[campaign]``
section::

    [campaign]
    families = gnp(0.5), uniform_tree, watts_strogatz(5, 0.5)
    instances = 1000        ; per family
    n = 30
    k = 5
    seed = 2024             ; master seed
    restart_threshold = 100
    max_restarts = 50
    workers = 1             ; optional, COALITIONS_WORKERS otherwise

A family may also be ``fixture:<name>`` (for example ``fixture:fig5_empty_core``),
in which case the same fixed game is run with fresh seeds.

Instance ``i`` of family ``f`` draws everything (graph and heuristic
choices) from one Mersenne Twister stream seeded with
``SeedSequence([seed, f, i])``, so the report depends only on the config.
"""

from __future__ import annotations

import configparser
import json
import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field

import numpy as np

from .errors import CoalitionError, GraphParseError
from .fixtures import gen_fixture
from .heuristic import HeuristicFailure, core_heuristic
from .oracle import membership_violation
from .random_graphs import RngStream, gen_random

REPORT_VERSION = 1


@dataclass(frozen=True)
class CampaignConfig:
    families: tuple = ("gnp(0.5)", "uniform_tree", "watts_strogatz(5, 0.5)")
    instances: int = 100
    n: int = 30
    k: int = 5
    seed: int = 0
    restart_threshold: int = 100
    max_restarts: int = 50
    workers: int | None = None

    @classmethod
    def from_text(cls, text: str) -> "CampaignConfig":
        parser = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
        try:
            parser.read_string(text)
        except configparser.Error as exc:
            raise GraphParseError(f"bad campaign config: {exc}") from exc
        if "campaign" not in parser:
            raise GraphParseError("campaign config needs a [campaign] section")
        sec = parser["campaign"]
        known = {"families", "instances", "n", "k", "seed", "restart_threshold",
                 "max_restarts", "workers"}
        unknown = set(sec) - known
        if unknown:
            raise GraphParseError(f"unknown campaign keys: {sorted(unknown)}")
        try:
            kwargs = {key: sec.getint(key) for key in known - {"families"} if key in sec}
        except ValueError as exc:
            raise GraphParseError(f"bad campaign config: {exc}") from exc
        if "families" in sec:
            kwargs["families"] = tuple(_split_families(sec["families"]))
        return cls(**kwargs)

    @classmethod
    def from_file(cls, path) -> "CampaignConfig":
        with open(path, encoding="utf-8") as fh:
            return cls.from_text(fh.read())

    def to_dict(self) -> dict:
        d = asdict(self)
        d["families"] = list(self.families)
        del d["workers"]  # never affects the result
        return d


def _split_families(text: str) -> list:
    """Split on commas that are not inside parentheses."""
    out, depth, cur = [], 0, ""
    for ch in text:
        if ch == "," and depth == 0:
            out.append(cur)
            cur = ""
            continue
        depth += (ch == "(") - (ch == ")")
        cur += ch
    out.append(cur)
    return [f.strip() for f in out if f.strip()]


def instance_seed(master: int, family_index: int, index: int) -> int:
    seq = np.random.SeedSequence([master, family_index, index])
    return int(seq.generate_state(1, dtype=np.uint64)[0])


@dataclass
class InstanceResult:
    family: str
    index: int
    seed: int
    success: bool
    restarts: int
    applied_blocks: int
    verified: bool
    error: str = ""


def run_instance(family: str, family_index: int, index: int, cfg: CampaignConfig) -> InstanceResult:
    seed = instance_seed(cfg.seed, family_index, index)
    rng = RngStream(seed).generator()
    if family.startswith("fixture:"):
        game = gen_fixture(family.split(":", 1)[1], k=cfg.k)
    else:
        game = gen_random(family, cfg.n, cfg.k, rng)
    try:
        p, stats = core_heuristic(game, rng, cfg.restart_threshold, cfg.max_restarts)
    except HeuristicFailure as exc:
        return InstanceResult(family, index, seed, False, exc.stats.restarts,
                              exc.stats.applied_blocks, False, "max_restarts exceeded")
    verified = membership_violation(game, p, "core", force=True) is None
    return InstanceResult(family, index, seed, verified, stats.restarts, stats.applied_blocks,
                          verified, "" if verified else "returned partition is not in the core")


def _run_task(task):
    return run_instance(*task)


@dataclass
class FamilySummary:
    family: str
    instances: int = 0
    successes: int = 0
    failures: int = 0
    restarts: int = 0
    instances_restarted: int = 0
    mean_iterations: float = 0.0
    seeds: list = field(default_factory=list)
    counterexamples: list = field(default_factory=list)


@dataclass
class CampaignReport:
    config: CampaignConfig
    families: list

    def to_dict(self) -> dict:
        return {
            "version": REPORT_VERSION,
            "command": "simulate",
            "master_seed": self.config.seed,
            "config": self.config.to_dict(),
            "families": [asdict(f) for f in self.families],
            "total": {
                "instances": sum(f.instances for f in self.families),
                "successes": sum(f.successes for f in self.families),
                "failures": sum(f.failures for f in self.families),
            },
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True) + "\n"

    @property
    def success_rate(self) -> float:
        total = sum(f.instances for f in self.families)
        return 1.0 if total == 0 else sum(f.successes for f in self.families) / total


def default_workers() -> int:
    try:
        return max(1, int(os.environ.get("COALITIONS_WORKERS", "1")))
    except ValueError:
        return 1


def run_campaign(config: CampaignConfig, workers: int | None = None) -> CampaignReport:
    """Run every instance of ``config`` and aggregate per family.

    Instance failures (restart budget exhausted, or an output rejected by
    the core membership check) are recorded with their seeds rather than
    raised. The report does not depend on ``workers``.
    """
    if config.instances < 0:
        raise CoalitionError("instances must be non-negative")
    workers = workers or config.workers or default_workers()
    tasks = [(fam, fi, i, config) for fi, fam in enumerate(config.families)
             for i in range(config.instances)]
    if workers > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(_run_task, tasks, chunksize=max(1, len(tasks) // (8 * workers))))
    else:
        results = [_run_task(t) for t in tasks]

    summaries = []
    for fam in config.families:
        rows = sorted((r for r in results if r.family == fam), key=lambda r: r.index)
        s = FamilySummary(fam, instances=len(rows))
        for r in rows:
            s.seeds.append(r.seed)
            s.restarts += r.restarts
            s.instances_restarted += r.restarts > 0
            if r.success:
                s.successes += 1
            else:
                s.failures += 1
                s.counterexamples.append({"index": r.index, "seed": r.seed, "reason": r.error})
        if rows:
            s.mean_iterations = round(sum(r.applied_blocks for r in rows) / len(rows), 6)
        summaries.append(s)
    return CampaignReport(config, summaries)
