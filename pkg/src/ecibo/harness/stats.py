"""Summary statistics and the paired Wilcoxon signed-rank test."""

import math
from dataclasses import asdict, dataclass
from typing import Dict, Iterable, List

import numpy as np
from scipy.stats import norm, rankdata

from ..exceptions import InvalidArgumentError

ALPHA = 0.05
EXACT_MAX_N = 12

BETTER, WORSE, SIMILAR = "better", "worse", "similar"
SYMBOLS = {BETTER: "+", WORSE: "-", SIMILAR: "≈"}


@dataclass(frozen=True)
class TestResult:
    """Outcome of comparing paired samples ``a`` against ``b`` (lower is better).

    ``verdict`` is from the point of view of ``a``.
    """

    __test__ = False  # not a pytest class

    statistic: float
    p_value: float
    verdict: str
    n_effective: int
    method: str
    median_difference: float

    def to_dict(self) -> dict:
        return asdict(self)


def _exact_lower_tail(doubled_ranks: np.ndarray, w2: int) -> float:
    """P(W+ <= w) under random signs, with ranks and ``w`` doubled to integers."""
    total = int(doubled_ranks.sum())
    counts = np.zeros(total + 1)
    counts[0] = 1.0
    for r in doubled_ranks:
        r = int(r)
        shifted = np.zeros_like(counts)
        shifted[r:] = counts[: total + 1 - r]
        counts = counts + shifted
    return float(counts[: w2 + 1].sum() / counts.sum())


def wilcoxon_signed_rank(a, b, alpha: float = ALPHA) -> TestResult:
    """Two-sided Wilcoxon signed-rank test on paired samples.

    Zero differences are dropped and tied magnitudes get mid-ranks. The
    statistic is ``W = min(W+, W-)``. With at most 12 nonzero differences
    the p-value comes from the exact null distribution over all sign
    assignments; otherwise from the normal approximation with tie and
    continuity corrections. If every difference is zero the result is
    ``similar`` with ``p = 1``.
    """
    a = np.asarray(a, dtype=float).ravel()
    b = np.asarray(b, dtype=float).ravel()
    if a.size != b.size:
        raise InvalidArgumentError("paired samples must have equal length")
    if a.size == 0:
        raise InvalidArgumentError("need at least one pair")
    diff = a - b
    med = float(np.median(diff))
    diff = diff[diff != 0]
    m = diff.size
    if m == 0:
        return TestResult(0.0, 1.0, SIMILAR, 0, "exact", med)

    ranks = rankdata(np.abs(diff))
    w_plus = float(ranks[diff > 0].sum())
    w_minus = float(ranks[diff < 0].sum())
    w = min(w_plus, w_minus)

    if m <= EXACT_MAX_N:
        doubled = np.rint(2.0 * ranks).astype(int)
        p = min(1.0, 2.0 * _exact_lower_tail(doubled, int(round(2.0 * w))))
        method = "exact"
    else:
        mean = m * (m + 1) / 4.0
        _, tie_counts = np.unique(ranks, return_counts=True)
        var = m * (m + 1) * (2 * m + 1) / 24.0 - np.sum(tie_counts**3 - tie_counts) / 48.0
        if var <= 0:
            p = 1.0
        else:
            z = max(abs(w_plus - mean) - 0.5, 0.0) / math.sqrt(var)
            p = min(1.0, 2.0 * float(norm.sf(z)))
        method = "normal"

    if p < alpha:
        if med != 0:
            verdict = BETTER if med < 0 else WORSE
        else:
            verdict = BETTER if w_plus < w_minus else WORSE
    else:
        verdict = SIMILAR
    return TestResult(w, p, verdict, m, method, med)


@dataclass
class AlgorithmStats:
    runs: int
    failed: int
    mean: float
    median: float
    std: float
    min: float
    max: float
    mean_curve: List[float]


def summarize(records: Iterable) -> Dict[str, AlgorithmStats]:
    """Per-algorithm statistics of the final best value over runs.

    Failed runs are counted but excluded from the statistics. ``std`` is the
    population standard deviation. ``mean_curve`` is the evaluation-aligned
    mean of the best-so-far sequences.
    """
    records = list(records)
    if not records:
        raise InvalidArgumentError("no run records to summarize")
    lengths = {r.n for r in records if not r.failed}
    if len(lengths) > 1:
        raise InvalidArgumentError(f"records disagree on the evaluation budget: {sorted(lengths)}")

    grouped: Dict[str, list] = {}
    for r in records:
        grouped.setdefault(r.algorithm, []).append(r)

    out = {}
    for name, recs in grouped.items():
        ok = [r for r in recs if not r.failed]
        failed = len(recs) - len(ok)
        if not ok:
            nan = float("nan")
            out[name] = AlgorithmStats(len(recs), failed, nan, nan, nan, nan, nan, [])
            continue
        finals = np.array([r.final_best for r in ok])
        curves = np.vstack([r.best_f for r in ok])
        out[name] = AlgorithmStats(
            runs=len(recs),
            failed=failed,
            mean=float(np.mean(finals)),
            median=float(np.median(finals)),
            std=float(np.std(finals)),
            min=float(np.min(finals)),
            max=float(np.max(finals)),
            mean_curve=[float(v) for v in np.mean(curves, axis=0)],
        )
    return out


def paired_finals(records: Iterable, a: str, b: str):
    """Final best values of algorithms ``a`` and ``b`` paired by run index."""
    by_key = {(r.algorithm, r.run): r for r in records if not r.failed}
    runs = sorted({run for alg, run in by_key if alg == a} & {run for alg, run in by_key if alg == b})
    return (
        np.array([by_key[(a, run)].final_best for run in runs]),
        np.array([by_key[(b, run)].final_best for run in runs]),
    )
