"""Reproducible reconstruction experiments driven by an INI config file.

Example config::

    [gen]
    family = random_forest
    n = 140
    d = 2
    seed = 0
    edges = 139          ; any extra key becomes a family parameter

    [removal]
    policy = random      ; random | max_edges_first | min_edges_first | target_degrees
    k = 3                ; or k_fraction = 0.02
    trials = 200
    seed = 0
    targets = 1,2        ; target_degrees only

    [tasks]
    tasks = edges, cliques(3), degseq
    d_override =         ; optional integer handed to the reconstruction
    workers = 1

    [output]
    report = report.json
"""

from __future__ import annotations

import configparser
import csv
import hashlib
import io
import json
import re
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Any

from . import __version__
from .count import infer_d, reconstruct_clique_count, reconstruct_edge_count, regime_check
from .deck import POLICIES, PartialDeck, full_deck, remove_cards
from .degseq import reconstruct_degree_sequence
from .errors import DeckReconError, InputError
from .generators import GenSpec, generate
from .graph import DegreeHistogram, Graph, clique_profile, degree_histogram

_TASK_RE = re.compile(r"^(edges|degseq|cliques\((\d+)\))$")


@dataclass(frozen=True)
class RemovalSpec:
    policy: str = "random"
    k: int | None = None
    k_fraction: float | None = None
    trials: int = 1
    seed: int = 0
    targets: tuple[int, ...] = ()

    def resolve_k(self, n: int) -> int:
        k = self.k if self.k is not None else int(self.k_fraction * n)
        if not 0 <= k <= n:
            raise InputError(f"k={k} must lie in [0, n={n}]")
        return k


@dataclass(frozen=True)
class ExperimentConfig:
    gen: GenSpec
    removal: RemovalSpec
    tasks: tuple[str, ...] = ("edges",)
    d_override: int | None = None
    output: str | None = None
    workers: int = 1

    def __post_init__(self) -> None:
        if self.removal.trials < 1:
            raise InputError("trials must be >= 1")
        if self.removal.k is None and self.removal.k_fraction is None:
            raise InputError("removal needs k or k_fraction")
        if self.removal.policy not in POLICIES:
            raise InputError(f"unknown policy {self.removal.policy!r}")
        for task in self.tasks:
            if not _TASK_RE.match(task):
                raise InputError(f"unknown task {task!r}; use edges, cliques(r) or degseq")

    def digest(self) -> str:
        blob = json.dumps(asdict(self), sort_keys=True, default=str)
        return hashlib.sha256(blob.encode()).hexdigest()[:16]


def _parse_int(value: str | None) -> int | None:
    return int(value) if value not in (None, "") else None


def load_config(path: str | Path) -> ExperimentConfig:
    cp = configparser.ConfigParser(inline_comment_prefixes=(";", "#"))
    try:
        if not cp.read(path):
            raise InputError(f"cannot read config {path}")
        g = dict(cp["gen"])
        gen = GenSpec(
            family=g.pop("family"),
            n=int(g.pop("n", 0)),
            d=int(g.pop("d", 1)),
            seed=int(g.pop("seed", 0)),
            params=g,
        )
        r = cp["removal"]
        removal = RemovalSpec(
            policy=r.get("policy", "random"),
            k=_parse_int(r.get("k")),
            k_fraction=float(r["k_fraction"]) if r.get("k_fraction") else None,
            trials=int(r.get("trials", 1)),
            seed=int(r.get("seed", 0)),
            targets=tuple(int(x) for x in r.get("targets", "").split(",") if x.strip()),
        )
        t = cp["tasks"] if cp.has_section("tasks") else {}
        tasks = tuple(x.strip() for x in t.get("tasks", "edges").split(",") if x.strip())
        out = cp["output"] if cp.has_section("output") else {}
        return ExperimentConfig(
            gen=gen,
            removal=removal,
            tasks=tasks,
            d_override=_parse_int(t.get("d_override")),
            output=out.get("report"),
            workers=int(t.get("workers", 1)),
        )
    except (KeyError, ValueError, configparser.Error) as exc:
        raise InputError(f"bad config {path}: {exc}") from exc


@dataclass
class ReconReport:
    records: list[dict[str, Any]] = field(default_factory=list)
    aggregate: dict[str, dict[str, Any]] = field(default_factory=dict)
    provenance: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict:
        return {"records": self.records, "aggregate": self.aggregate, "provenance": self.provenance}

    def to_text(self) -> str:
        rows = [("task", "trials", "success_rate", "max_error", "in_regime", "runtime_ms")]
        for task, agg in self.aggregate.items():
            rows.append(
                (task, str(agg["trials"]), f"{agg['success_rate']:.4f}", str(agg["max_error"]),
                 f"{agg['in_regime_rate']:.4f}", f"{agg['runtime_ms']:.1f}")
            )
        widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
        return "\n".join("  ".join(c.ljust(w) for c, w in zip(r, widths)) for r in rows) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["task", "trials", "success_rate", "max_error", "in_regime_rate", "runtime_ms"])
        for task, agg in self.aggregate.items():
            w.writerow([task, agg["trials"], agg["success_rate"], agg["max_error"],
                        agg["in_regime_rate"], round(agg["runtime_ms"], 3)])
        return buf.getvalue()


def _hist_distance(a: DegreeHistogram, b: DegreeHistogram) -> int:
    keys = set(a.keys()) | set(b.keys())
    return sum(abs(a[t] - b[t]) for t in keys)


def _run_task(task: str, deck: PartialDeck, cdecks: dict[int, PartialDeck], g: Graph, d: int | None) -> dict:
    """Runs one task; ``g`` is touched only to compute the ground truth afterwards."""
    rec: dict[str, Any] = {"task": task, "value": None, "ground_truth": None, "exact": False,
                           "in_regime": False, "trace": None, "error": None}
    try:
        if task == "edges":
            value, trace = reconstruct_edge_count(deck, d)
            rec.update(value=value, in_regime=trace.in_regime, trace=trace.to_json())
            rec["regime"] = asdict(regime_check("edge_count", deck.n, trace.d, deck.k))
            truth = g.m
            rec["error_size"] = abs(value - truth)
        elif task == "degseq":
            hist, state = reconstruct_degree_sequence(deck, d)
            rec.update(value=[list(x) for x in hist.items()], in_regime=state.in_regime, trace=state.to_json())
            rec["regime"] = asdict(regime_check("degree_sequence", deck.n, state.d or 1, deck.k))
            truth_h = degree_histogram(g)
            truth = [list(x) for x in truth_h.items()]
            rec["error_size"] = _hist_distance(hist, truth_h)
        else:
            r = int(_TASK_RE.match(task).group(2))
            value, trace = reconstruct_clique_count(cdecks[r], d, r)
            rec.update(value=value, in_regime=trace.in_regime, trace=trace.to_json())
            rec["regime"] = asdict(regime_check("clique_count", deck.n, trace.d, deck.k, r))
            truth = clique_profile(g, r).total
            rec["error_size"] = abs(value - truth)
        rec["ground_truth"] = truth
        rec["exact"] = rec["value"] == truth
    except DeckReconError as exc:
        rec["error"] = f"{type(exc).__name__}: {exc}"
    if "regime" not in rec:
        try:
            rec["regime"] = _regime_flags(task, deck.n, d if d is not None else infer_d(deck), deck.k)
        except DeckReconError:
            rec["regime"] = None
    return rec


def _regime_flags(task: str, n: int, d: int, k: int) -> dict:
    m = _TASK_RE.match(task)
    if m.group(2):
        return asdict(regime_check("clique_count", n, d, k, int(m.group(2))))
    return asdict(regime_check("edge_count" if task == "edges" else "degree_sequence", n, d, k))


def _run_trial(args: tuple[ExperimentConfig, int]) -> list[dict]:
    config, trial = args
    gen = config.gen
    rm = config.removal
    rseed = rm.seed + trial
    try:
        return _trial_body(config, trial, rseed)
    except DeckReconError as exc:
        return [
            {"task": task, "value": None, "ground_truth": None, "exact": False, "in_regime": False,
             "trace": None, "error": f"{type(exc).__name__}: {exc}", "runtime_ms": 0.0,
             "trial": trial, "graph_seed": gen.seed + trial, "removal_seed": rseed, "k": None,
             "regime": None}
            for task in config.tasks
        ]


def _trial_body(config: ExperimentConfig, trial: int, rseed: int) -> list[dict]:
    gen, rm = config.gen, config.removal
    g = generate(GenSpec(gen.family, gen.n, gen.d, gen.seed + trial, gen.params))
    k = rm.resolve_k(g.n)

    def cut(deck: PartialDeck) -> PartialDeck:
        return remove_cards(deck, k, rm.policy, rseed, rm.targets or None, g.m)

    deck = cut(full_deck(g, with_subcards="degseq" in config.tasks))
    cdecks = {}
    for task in config.tasks:
        m = _TASK_RE.match(task)
        if m.group(2):
            r = int(m.group(2))
            cdecks[r] = cut(full_deck(g, r=r))
    out = []
    for task in config.tasks:
        start = time.perf_counter()
        rec = _run_task(task, deck, cdecks, g, config.d_override)
        rec["runtime_ms"] = (time.perf_counter() - start) * 1000
        rec.update(trial=trial, graph_seed=gen.seed + trial, removal_seed=rseed, k=k)
        out.append(rec)
    return out


def run_experiment(config: ExperimentConfig) -> ReconReport:
    jobs = [(config, i) for i in range(config.removal.trials)]
    if config.workers > 1:
        with ProcessPoolExecutor(config.workers) as pool:
            per_trial = list(pool.map(_run_trial, jobs))
    else:
        per_trial = [_run_trial(j) for j in jobs]
    report = ReconReport()
    for recs in per_trial:
        report.records.extend(recs)
    for task in config.tasks:
        recs = [r for r in report.records if r["task"] == task]
        report.aggregate[task] = {
            "trials": len(recs),
            "success_rate": sum(r["exact"] for r in recs) / len(recs),
            "in_regime_rate": sum(bool(r["in_regime"]) for r in recs) / len(recs),
            "max_error": max((r.get("error_size", 0) for r in recs), default=0),
            "errors": sum(r["error"] is not None for r in recs),
            "runtime_ms": sum(r["runtime_ms"] for r in recs),
        }
    report.provenance = {
        "config_hash": config.digest(),
        "graph_seeds": [config.gen.seed + i for i in range(config.removal.trials)],
        "removal_seeds": [config.removal.seed + i for i in range(config.removal.trials)],
        "version": __version__,
    }
    return report
