"""Command-line entry point: ``ecibo run | summarize | compare``.

On failure the process exits with status 2 and prints a one-line JSON object
``{"error": ..., "type": ...}`` on stderr.
"""

import argparse
import json
import logging
import sys
from pathlib import Path

from .bo import ALGORITHMS
from .harness import io
from .harness.experiment import ExperimentConfig, run_experiment
from .harness.stats import SYMBOLS, paired_finals, summarize, wilcoxon_signed_rank

_RUN_FLAGS = {
    "problem": "problem",
    "dim": "dim",
    "algo": "algorithms",
    "n_init": "n_init",
    "n_max": "n_max",
    "runs": "runs",
    "seed": "seed",
    "threads": "threads",
    "out": "out",
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="ecibo", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a multi-seed campaign")
    run.add_argument("--config", type=Path, help="JSON file with ExperimentConfig fields")
    run.add_argument("--problem")
    run.add_argument("--dim", type=int)
    run.add_argument("--algo", action="append", choices=ALGORITHMS)
    run.add_argument("--n-init", dest="n_init", type=int)
    run.add_argument("--n-max", dest="n_max", type=int)
    run.add_argument("--runs", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--threads", type=int)
    run.add_argument("--out")

    summ = sub.add_parser("summarize", help="statistics of a finished campaign")
    summ.add_argument("--in", dest="indir", type=Path, required=True)
    summ.add_argument("--json", action="store_true", help="print JSON instead of a table")

    comp = sub.add_parser("compare", help="Wilcoxon table against a baseline algorithm")
    comp.add_argument("--in", dest="indir", type=Path, required=True)
    comp.add_argument("--baseline", required=True, choices=ALGORITHMS)
    comp.add_argument("--json", action="store_true", help="print JSON instead of a table")
    return parser


def _config_from_args(args) -> ExperimentConfig:
    values = {}
    if args.config is not None:
        values.update(json.loads(args.config.read_text(encoding="utf-8")))
    for flag, key in _RUN_FLAGS.items():
        v = getattr(args, flag)
        if v is not None:
            values[key] = v
    missing = [k for k in ("problem", "dim") if k not in values]
    if missing:
        raise ValueError(f"missing required settings: {', '.join(missing)}")
    return ExperimentConfig(**values)


def _load_records(indir: Path):
    problem = ""
    statuses = {}
    if (indir / io.SUMMARY_NAME).exists():
        summary = io.read_summary(indir)
        problem = summary.get("config", {}).get("problem", "")
        statuses = {(r["algorithm"], r["run"]): r["status"] for r in summary.get("runs", [])}
    records = io.read_campaign(indir, problem)
    for rec in records:
        rec.status = statuses.get((rec.algorithm, rec.run), "ok")
    return records


def cmd_run(args) -> int:
    cfg = _config_from_args(args)
    summary = run_experiment(cfg)
    failed = [r for r in summary["runs"] if r["status"] != "ok"]
    print(
        json.dumps(
            {
                "out": str(cfg.out),
                "jobs": len(summary["runs"]),
                "failed": len(failed),
                "summary": str(Path(cfg.out) / io.SUMMARY_NAME),
            }
        )
    )
    return 0


def cmd_summarize(args) -> int:
    stats = summarize(_load_records(args.indir))
    if args.json:
        print(io.dump_json({k: vars(v) for k, v in stats.items()}), end="")
        return 0
    print(f"{'algorithm':<20} {'runs':>4} {'failed':>6} {'mean':>12} {'median':>12} {'std':>12} {'min':>12} {'max':>12}")
    for name in sorted(stats):
        s = stats[name]
        print(
            f"{name:<20} {s.runs:>4} {s.failed:>6} {s.mean:>12.4e} {s.median:>12.4e} "
            f"{s.std:>12.4e} {s.min:>12.4e} {s.max:>12.4e}"
        )
    return 0


def cmd_compare(args) -> int:
    records = _load_records(args.indir)
    algorithms = sorted({r.algorithm for r in records})
    if args.baseline not in algorithms:
        raise ValueError(f"baseline {args.baseline!r} has no runs in {args.indir}")
    stats = summarize(records)
    rows = []
    for other in algorithms:
        if other == args.baseline:
            continue
        base, oth = paired_finals(records, args.baseline, other)
        res = wilcoxon_signed_rank(base, oth)
        rows.append(
            {
                "algorithm": other,
                "mean": stats[other].mean,
                "baseline_mean": stats[args.baseline].mean,
                "n_pairs": int(base.size),
                "W": res.statistic,
                "p_value": res.p_value,
                "verdict": res.verdict,
                "symbol": SYMBOLS[res.verdict],
            }
        )
    if args.json:
        print(io.dump_json({"baseline": args.baseline, "rows": rows}), end="")
        return 0
    print(f"baseline: {args.baseline} (mean {stats[args.baseline].mean:.4e})")
    print("+ baseline significantly better, - significantly worse, ≈ no significant difference")
    print(f"{'algorithm':<20} {'mean':>12} {'pairs':>5} {'W':>8} {'p':>10}  ")
    for r in rows:
        print(f"{r['algorithm']:<20} {r['mean']:>12.4e} {r['n_pairs']:>5} {r['W']:>8g} {r['p_value']:>10.4g}  {r['symbol']}")
    return 0


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(levelname)s %(name)s: %(message)s")
    handler = {"run": cmd_run, "summarize": cmd_summarize, "compare": cmd_compare}[args.command]
    try:
        return handler(args)
    except (ValueError, TypeError, OSError, KeyError) as exc:
        print(json.dumps({"error": str(exc), "type": type(exc).__name__}), file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
