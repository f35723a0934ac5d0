import numpy as np
import pytest
from scipy import stats as sps

from ecibo.bo import RunRecord
from ecibo.exceptions import InvalidArgumentError
from ecibo.harness.stats import BETTER, SIMILAR, WORSE, summarize, wilcoxon_signed_rank

from oracles import brute_wilcoxon_p


def test_identical_samples():
    res = wilcoxon_signed_rank([1.0, 2.0, 3.0], [1.0, 2.0, 3.0])
    assert res.verdict == SIMILAR and res.p_value == 1.0 and res.statistic == 0.0


def test_five_positive_differences():
    # full enumeration of 2^5 sign patterns: W = 0 is hit by 2 of 32
    a = np.array([1.0, 2.0, 3.0, 4.0, 5.0])
    res = wilcoxon_signed_rank(a + 10.0, np.full(5, 10.0))
    assert res.statistic == 0.0
    assert res.p_value == pytest.approx(2 / 32, abs=1e-15)
    assert res.method == "exact"


def test_swap_flips_verdict():
    rng = np.random.default_rng(0)
    a = rng.normal(size=12)
    b = a + 1.0 + 0.1 * rng.normal(size=12)
    ab, ba = wilcoxon_signed_rank(a, b), wilcoxon_signed_rank(b, a)
    assert ab.verdict == BETTER and ba.verdict == WORSE
    assert ab.p_value == ba.p_value and ab.statistic == ba.statistic


def test_exact_branch_matches_enumeration():
    rng = np.random.default_rng(1)
    for trial in range(300):
        m = int(rng.integers(1, 11))
        a = rng.normal(size=m)
        if trial % 3 == 0:
            # force ties and zeros
            a = np.round(a * 2) / 2
        b = np.round(rng.normal(size=m) * 2) / 2 if trial % 3 == 0 else rng.normal(size=m)
        p, w = brute_wilcoxon_p(a, b)
        res = wilcoxon_signed_rank(a, b)
        assert res.statistic == pytest.approx(w)
        assert res.p_value == pytest.approx(p, abs=1e-12)


def test_exact_matches_scipy_without_ties():
    rng = np.random.default_rng(2)
    for _ in range(50):
        m = int(rng.integers(2, 13))
        a, b = rng.normal(size=m), rng.normal(size=m)
        ref = sps.wilcoxon(a, b, method="exact")
        assert wilcoxon_signed_rank(a, b).p_value == pytest.approx(ref.pvalue, rel=1e-10)


def test_normal_branch_matches_scipy():
    rng = np.random.default_rng(3)
    for _ in range(50):
        m = int(rng.integers(13, 60))
        a, b = rng.normal(size=m), rng.normal(size=m) + 0.3
        ref = sps.wilcoxon(a, b, method="approx", correction=True)
        res = wilcoxon_signed_rank(a, b)
        assert res.method == "normal"
        assert res.statistic == pytest.approx(ref.statistic)
        assert res.p_value == pytest.approx(ref.pvalue, rel=1e-9)


def test_normal_branch_tie_correction():
    a = np.array([1.0] * 10 + [2.0] * 10 + [3.0] * 5)
    b = np.zeros(25)
    b[::4] = 4.0
    ref = sps.wilcoxon(a, b, method="approx", correction=True, zero_method="wilcox")
    assert wilcoxon_signed_rank(a, b).p_value == pytest.approx(ref.pvalue, rel=1e-9)


def test_input_validation():
    with pytest.raises(InvalidArgumentError):
        wilcoxon_signed_rank([1.0], [1.0, 2.0])
    with pytest.raises(InvalidArgumentError):
        wilcoxon_signed_rank([], [])


def fake_record(alg, run, best):
    best = np.asarray(best, dtype=float)
    return RunRecord(alg, "p", 1, best[:, None], best, best, np.full(best.size, -1), run=run)


def test_summarize_single_run():
    s = summarize([fake_record("a", 0, [3.0, 2.0, 1.5])])["a"]
    assert s.mean == s.median == 1.5 and s.std == 0.0
    assert s.mean_curve == [3.0, 2.0, 1.5]


def test_summarize_curve_and_stats():
    recs = [fake_record("a", i, [5.0, 4.0 - i, 3.0 - i]) for i in range(4)]
    recs.append(fake_record("b", 0, [1.0, 1.0, 1.0]))
    out = summarize(recs)
    finals = np.array([3.0, 2.0, 1.0, 0.0])
    assert out["a"].mean == pytest.approx(finals.mean())
    assert out["a"].median == pytest.approx(np.median(finals))
    assert out["a"].std == pytest.approx(finals.std())
    assert (out["a"].min, out["a"].max) == (0.0, 3.0)
    assert out["a"].mean_curve[-1] == pytest.approx(out["a"].mean)
    assert out["b"].runs == 1


def test_summarize_errors():
    with pytest.raises(InvalidArgumentError):
        summarize([])
    with pytest.raises(InvalidArgumentError):
        summarize([fake_record("a", 0, [1.0, 0.5]), fake_record("a", 1, [1.0])])


def test_summarize_skips_failed():
    bad = fake_record("a", 1, [9.0])
    bad.status = "failed"
    s = summarize([fake_record("a", 0, [2.0, 1.0]), bad])["a"]
    assert s.runs == 2 and s.failed == 1 and s.mean == 1.0
