"""Multi-seed campaigns over one problem and several algorithms."""

import dataclasses
import itertools
import json
import logging
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import List

import numpy as np

from .. import __version__
from ..benchmarks import make_problem
from ..bo import ALGORITHMS, BoConfig, RunRecord, run_algorithm
from ..exceptions import InvalidArgumentError
from . import io
from .stats import paired_finals, summarize, wilcoxon_signed_rank

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class ExperimentConfig:
    problem: str
    dim: int
    algorithms: List[str] = field(default_factory=lambda: ["eci-bo"])
    n_init: int = 200
    n_max: int = 1000
    runs: int = 30
    seed: int = 0
    out: str = "results"
    threads: int = 1

    def __post_init__(self):
        object.__setattr__(self, "algorithms", list(self.algorithms))
        if self.runs < 1:
            raise InvalidArgumentError("runs must be at least 1")
        if not self.algorithms:
            raise InvalidArgumentError("at least one algorithm is required")
        for a in self.algorithms:
            if a not in ALGORITHMS:
                raise InvalidArgumentError(f"unknown algorithm {a!r}; choose from {', '.join(ALGORITHMS)}")
        if len(set(self.algorithms)) != len(self.algorithms):
            raise InvalidArgumentError("algorithms must be distinct")
        if self.threads < 1:
            raise InvalidArgumentError("threads must be at least 1")
        # fail fast on bad problem/dimension and budget
        make_problem(self.problem, self.dim)
        BoConfig(self.n_init, self.n_max, seed=self.seed)

    @classmethod
    def from_json(cls, path) -> "ExperimentConfig":
        raw = json.loads(Path(path).read_text(encoding="utf-8"))
        names = {f.name for f in dataclasses.fields(cls)}
        unknown = set(raw) - names
        if unknown:
            raise InvalidArgumentError(f"unknown config keys: {', '.join(sorted(unknown))}")
        return cls(**raw)

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)


def run_seed(base_seed: int, run: int) -> int:
    """Root seed of run ``run``; shared by every algorithm in that run."""
    ss = np.random.SeedSequence(entropy=int(base_seed), spawn_key=(int(run),))
    return int(ss.generate_state(1, np.uint64)[0])


def _job(cfg: ExperimentConfig, algorithm: str, run: int) -> dict:
    problem = make_problem(cfg.problem, cfg.dim)
    bo_cfg = BoConfig(cfg.n_init, cfg.n_max, seed=run_seed(cfg.seed, run))
    t0 = time.perf_counter()
    try:
        record = run_algorithm(algorithm, problem, bo_cfg)
    except Exception as exc:  # campaign keeps going
        log.exception("%s run %d crashed", algorithm, run)
        return {
            "algorithm": algorithm,
            "run": run,
            "status": "failed",
            "message": f"{type(exc).__name__}: {exc}",
            "wall_time": time.perf_counter() - t0,
            "n_evals": 0,
            "fallbacks": [],
        }
    record.run = run
    io.write_run_csv(cfg.out, record)
    return {
        "algorithm": algorithm,
        "run": run,
        "status": record.status,
        "message": record.message,
        "wall_time": record.wall_time,
        "n_evals": record.n,
        "fallbacks": list(record.fallbacks),
    }


def build_summary(cfg_dict: dict, records: List[RunRecord], run_info: list) -> dict:
    """Campaign summary: config echo, stats, pairwise tests, per-run status."""
    status = {(r["algorithm"], r["run"]): r for r in run_info}
    for rec in records:
        info = status.get((rec.algorithm, rec.run))
        if info and info["status"] != "ok":
            rec.status = info["status"]
    present = sorted({r.algorithm for r in records})
    stats = summarize(records) if records else {}
    tests = []
    for a, b in itertools.combinations(present, 2):
        xa, xb = paired_finals(records, a, b)
        if xa.size == 0:
            continue
        res = wilcoxon_signed_rank(xa, xb)
        tests.append({"a": a, "b": b, "n_pairs": int(xa.size), **res.to_dict()})
    return {
        "software": {"name": "ecibo", "version": __version__},
        "config": cfg_dict,
        "stats": {k: dataclasses.asdict(v) for k, v in stats.items()},
        "tests": tests,
        "runs": sorted(run_info, key=lambda r: (r["algorithm"], r["run"])),
    }


def run_experiment(cfg: ExperimentConfig) -> dict:
    """Run every (algorithm, run) job, write CSVs and ``summary.json``.

    Statistics are recomputed from the CSVs just written. Job scheduling
    (``cfg.threads`` worker processes) does not affect any output file
    except the wall times recorded in the summary.
    """
    out = Path(cfg.out)
    out.mkdir(parents=True, exist_ok=True)
    jobs = [(a, r) for r in range(cfg.runs) for a in cfg.algorithms]
    t0 = time.perf_counter()
    if cfg.threads > 1:
        with ProcessPoolExecutor(max_workers=cfg.threads) as pool:
            futures = [pool.submit(_job, cfg, a, r) for a, r in jobs]
            run_info = [f.result() for f in futures]
    else:
        run_info = [_job(cfg, a, r) for a, r in jobs]

    records = []
    for info in run_info:
        if info["n_evals"] > 0:
            rec = io.read_run_csv(out / io.csv_name(info["algorithm"], info["run"]), cfg.problem)
            records.append(rec)
    summary = build_summary(cfg.to_dict(), records, run_info)
    summary["wall_time"] = time.perf_counter() - t0
    io.write_summary(out, summary)
    return summary
